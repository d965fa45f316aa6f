"""Turn a winning level-(ii) strategy plus a family with non-nesting
children into one k-tree whose l-local layouts all fail.

The game graph of every candidate clique is grown universally: in round r
each k'-clique of the candidate's game graph receives m_r new children, so
whatever clique Alice would pick is already present.  For k > k' every game
vertex is also joined to the rest ``R`` of the k-clique the candidate sits
in, which keeps each step a k-clique step.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ConfigMismatch, SizeOverflow
from ..graph import ConstructionSequence, Step, expand, halfclique_family, mary_ktree, mary_vertex_count
from .engine import Strategy

MARY_DEPTH = 6
GENERATE_CAP = 2_000_000
VERIFY_CAP = 9


@dataclass
class LowerBoundInstance:
    seq: Optional[ConstructionSequence]
    k: int
    k_prime: int
    ell: int
    s: int
    route: str
    demands: List[int]
    n: int
    chain_complete: bool
    flagged: bool
    verified: Optional[bool] = None
    lqn: Optional[int] = None
    notes: Dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from ..io import sequence_to_json

        return {
            "schema": "queuelay/1",
            "kind": "lower-bound-instance",
            "k": self.k,
            "k_prime": self.k_prime,
            "ell": self.ell,
            "s": self.s,
            "route": self.route,
            "demands": self.demands,
            "n": self.n,
            "chain_complete": self.chain_complete,
            "flagged": self.flagged,
            "verified": self.verified,
            "lqn": self.lqn,
            "sequence": sequence_to_json(self.seq) if self.seq is not None else None,
        }


def _candidates(k: int, k_prime: int, s: int):
    """(route, base size, [(clique, rest, children)] or a count, children per candidate)."""
    if k == k_prime:
        if k != 2:
            raise ConfigMismatch("non-nesting children for k' = k are only known for k = 2")
        m = s + 4
        count = sum((2 * m) ** i for i in range(MARY_DEPTH))
        return "mary", mary_vertex_count(m, MARY_DEPTH), count, m
    if math.ceil(k / 2) != k_prime:
        raise ConfigMismatch(f"the half-clique family gives k' = ceil(k/2) = {math.ceil(k / 2)}, not {k_prime}")
    return "halfclique", k + 1 + 2 * s, math.comb(k, k_prime), 2 * s


def universal_size(k_prime: int, children: int, demands: Sequence[int]) -> int:
    """Vertices added to one candidate's game graph by rounds 2, 3, ..."""
    cliques = 1 + k_prime * children
    added = 0
    for m in demands[1:]:
        added += m * cliques
        cliques *= 1 + k_prime * m
    return added


def _grow(steps: List[Step], nxt: int, clique, rest, children, k_prime, demands) -> int:
    cl = list(clique)
    cliques = [tuple(cl)]
    for x in children:
        cliques += [sub + (x,) for sub in itertools.combinations(cl, k_prime - 1)]
    for m in demands[1:]:
        new = []
        for q in cliques:
            for _ in range(m):
                steps.append(Step(tuple(sorted(q + rest)), nxt))
                new += [sub + (nxt,) for sub in itertools.combinations(q, k_prime - 1)]
                nxt += 1
        cliques += new
    return nxt


def assemble_lower_bound(
    k_prime: int,
    ell: int,
    s: int,
    strategy: Strategy,
    k: Optional[int] = None,
    generate_cap: int = GENERATE_CAP,
    verify_cap: int = VERIFY_CAP,
) -> LowerBoundInstance:
    """Compose the witness family for (k, k', s) with the rounds ``strategy``
    demands at level (ii).

    ``k`` defaults to ``k_prime`` (the m-ary 2-tree route, k = 2 only);
    otherwise ``k_prime`` must be ceil(k/2) and the half-clique family is
    used.  Sizes are counted before anything is built: above
    ``generate_cap`` vertices SizeOverflow is raised, above ``verify_cap``
    the sequence is returned flagged and unverified, and below it the exact
    solver checks lqn >= ell + 1.
    """
    k = k_prime if k is None else k
    if not 1 <= ell <= k_prime:
        raise ConfigMismatch("need 1 <= ell <= k'")
    if s < 1:
        raise ValueError("s must be positive")
    demands = list(strategy.demands(k_prime))
    if not demands:
        raise ValueError("strategy plays no rounds")
    route, base_n, count, children = _candidates(k, k_prime, s)
    n = base_n + count * universal_size(k_prime, children, demands)
    # reversal puts at least ceil(s/2) of the non-nesting children on one side
    chain_complete = math.ceil(s / 2) >= demands[0]
    if n > generate_cap:
        raise SizeOverflow(f"lower-bound instance needs {n} vertices > cap {generate_cap}")

    if route == "mary":
        base, depths = mary_ktree(s + 4, MARY_DEPTH)
        kids: Dict[Tuple[int, int], List[int]] = {}
        for st in base.steps:
            kids.setdefault(st.parent, []).append(st.child)
        cands = [(e, (), kids.get(e, [])) for e in sorted(depths.depth, key=lambda e: (depths.depth[e], e))
                 if depths.depth[e] < MARY_DEPTH]
    else:
        base = halfclique_family(k, s)
        parent = base.steps[0].parent
        ch = [st.child for st in base.steps]
        cands = [(c, tuple(v for v in parent if v not in c), ch) for c in itertools.combinations(parent, k_prime)]

    steps = list(base.steps)
    nxt = base.n
    for clique, rest, ch in cands:
        nxt = _grow(steps, nxt, clique, rest, ch, k_prime, demands)
    seq = ConstructionSequence(k, base.init, tuple(steps))
    assert seq.n == n, (seq.n, n)

    inst = LowerBoundInstance(seq, k, k_prime, ell, s, route, demands, n, chain_complete, flagged=True)
    if n <= verify_cap:
        from ..solver import exact_lqn

        res = exact_lqn(expand(seq), cap=verify_cap)
        inst.lqn = res.value
        inst.verified = res.value >= ell + 1
        inst.flagged = False
    return inst


def lifted_fig3(k: int = 2, ell: int = 2) -> Strategy:
    """The fig3 strategy lifted from level (v) down to level (ii)."""
    from .lifts import lift_iii_to_ii, lift_iv_to_iii, lift_v_to_iv
    from .strategies import fig3_strategy

    return lift_iii_to_ii(lift_iv_to_iii(lift_v_to_iv(fig3_strategy()), k=k, ell=ell))
