"""Exception hierarchy shared by all queuelay modules."""


class QueuelayError(Exception):
    """Base class for every error raised by the package."""


class InvalidSequence(QueuelayError):
    pass


class InvalidParent(InvalidSequence):
    pass


class DuplicateChild(InvalidSequence):
    pass


class SizeOverflow(QueuelayError):
    pass


class UnknownVertex(QueuelayError, KeyError):
    pass


class EmptySet(QueuelayError, ValueError):
    pass


class CoverageError(QueuelayError):
    pass


class NotAParent(QueuelayError):
    pass


class NotATree(QueuelayError):
    pass


class EmptyGraph(QueuelayError, ValueError):
    pass


class TooSmall(QueuelayError, ValueError):
    pass


class InvalidLayout(QueuelayError):
    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class Timeout(QueuelayError):
    """Search budget ran out; ``best`` holds the best feasible result found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InvalidAliceMove(QueuelayError):
    pass


class ConfigMismatch(QueuelayError):
    pass


class BudgetExceeded(QueuelayError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PigeonholeFailure(QueuelayError):
    """A counting argument that cannot fail did fail: an engine bug."""


class DepthMismatch(QueuelayError):
    pass


class ParseError(QueuelayError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BobDeviation(QueuelayError):
    """Bob broke a condition a lifted strategy relies on; ``witness`` is a
    re-checkable violation of his layout, or None if none could be found."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CopyDivergence(QueuelayError):
    """Copies left the same-queue regime; restoring it needs whole-graph
    cloning beyond the configured caps."""
