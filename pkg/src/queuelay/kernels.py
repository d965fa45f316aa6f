"""Select the compiled kernels when available, else the Python fallback.

The choice is made at import; :func:`set_backend` switches explicitly (the
benchmark and the kernel-equivalence tests use it).
"""

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def set_backend(name: str) -> str:
    """Switch to ``"python"`` or ``"cython"``; returns the previous name."""
    global _impl, BACKEND
    previous = BACKEND
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = _compiled
    elif name == "python":
        _impl = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return previous


def first_nesting_pair(left, right, queue):
    return _impl.first_nesting_pair(left, right, queue)


def longest_nesting_chain(left, right):
    return _impl.longest_nesting_chain(left, right)


def locality_search(left, right, n, ell, node_limit):
    return _impl.locality_search(left, right, n, ell, node_limit)
