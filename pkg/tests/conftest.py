"""Suite-wide hooks.

* Every layout that passes ``validate_layout`` anywhere in the suite is
  checked against |E(Q)| <= 2|V_Q| - 3; a single breach fails the session.
* Acceptance tests record a PASS/FAIL line that is printed at the end.
"""

import queuelay.layout as _layout
from queuelay.bounds import _queue_edge_violations

QUEUE_BOUND = {"layouts": 0, "queues": 0, "violations": []}
ACCEPTANCE = {}


def _observe(g, layout, res):
    if not res.ok:
        return
    QUEUE_BOUND["layouts"] += 1
    QUEUE_BOUND["queues"] += len(layout.queues())
    bad = _queue_edge_violations(layout)
    if bad:
        QUEUE_BOUND["violations"].append((g.n, g.m, bad))


_layout._validation_observers.append(_observe)


def record(criterion: int, ok: bool, detail: str):
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_sessionfinish(session, exitstatus):
    if QUEUE_BOUND["violations"]:
        session.exitstatus = 1


def _suite_wide():
    """Criteria 6 and 10 cover the whole session, so their lines are
    restated from the final tallies."""
    from clihelp import RUNS

    if 6 in ACCEPTANCE:
        v = QUEUE_BOUND["violations"]
        ACCEPTANCE[6] = (ACCEPTANCE[6][0] and not v,
                         f"{QUEUE_BOUND['queues']} queues in {QUEUE_BOUND['layouts']} validated layouts "
                         f"across the session, {len(v)} over 2|V_Q| - 3")
    if 10 in ACCEPTANCE:
        bad = [argv for argv, same in RUNS if not same]
        ACCEPTANCE[10] = (ACCEPTANCE[10][0] and not bad,
                          f"{len(RUNS)} CLI invocations across the session run twice, {len(bad)} differed")


def pytest_terminal_summary(terminalreporter):
    tr = terminalreporter
    _suite_wide()
    if ACCEPTANCE:
        tr.section("acceptance criteria")
        for c in sorted(ACCEPTANCE):
            ok, detail = ACCEPTANCE[c]
            tr.write_line(f"criterion {c}: {'PASS' if ok else 'FAIL'} - {detail}")
    tr.section("queue edge bound observer")
    v = QUEUE_BOUND["violations"]
    tr.write_line(
        f"{QUEUE_BOUND['layouts']} valid layouts, {QUEUE_BOUND['queues']} queues checked, {len(v)} violations"
        + (f": {v[:5]}" if v else "")
    )
