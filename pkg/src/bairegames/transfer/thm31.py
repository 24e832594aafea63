"""Disjoint families of Krom basic opens below f ⌢ U, on the rationals.

A family is grown by splitting leaves of a dyadic partition of U: each
split appends the two halves to copies of the parent stem, so the two
children disagree at the split position. Every leaf then descends a few
more random steps inside its own piece.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from ..errors import PreconditionError
from ..krom import DecreasingSeq, ccc_pi_base_step, disjoint_family_projection, extend, stems_disjoint
from ..topology.rationals import Rationals


def disjoint_family(f0: DecreasingSeq, count: int, seed: int = 0) -> List[DecreasingSeq]:
    if count < 1:
        raise PreconditionError("family needs at least one member")
    Q = f0.space
    rng = random.Random(f"thm31:{seed}")
    leaves = [f0]
    while len(leaves) < count:
        g = leaves.pop(rng.randrange(len(leaves)))
        lo, hi = g.last.descriptor
        mid = lo + (hi - lo) * Fraction(rng.randint(1, 3), 4)
        leaves.append(extend(g, Q.interval(lo, mid)))
        leaves.append(extend(g, Q.interval(mid, hi)))
    family = []
    for g in leaves:
        for _ in range(rng.randint(0, 3)):
            lo, hi = g.last.descriptor
            a = lo + (hi - lo) * Fraction(rng.randint(0, 2), 8)
            b = hi - (hi - lo) * Fraction(rng.randint(0, 2), 8)
            g = extend(g, Q.interval(a, b))
        family.append(g)
    return family


def run_thm31(count: int = 100, seed: int = 0) -> dict:
    Q = Rationals()
    f0 = ccc_pi_base_step(DecreasingSeq(Q, (Q.interval(Fraction(0), Fraction(1)),)))
    family = disjoint_family(f0, count, seed)
    stems_ok = all(stems_disjoint(family[i], family[j])
                   for i in range(len(family)) for j in range(i + 1, len(family)))
    verdict = disjoint_family_projection(f0, family)
    return {"theorem": "3.1", "family": len(family), "f0": f0.to_json(),
            "stems_disjoint": stems_ok, "projection_disjoint": verdict,
            "ok": stems_ok and verdict,
            "finals": [Q.encode_open(g.last) for g in family]}
