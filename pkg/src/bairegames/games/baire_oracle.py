"""Brute-force Baire test for finite spaces.

In a finite space every decreasing chain of nonempty open sets stabilizes,
so the space is always Baire; this oracle exists to cross-check the
referee and certificate machinery on lattices small enough to enumerate.
"""

from __future__ import annotations

from ..errors import UnsupportedError
from ..topology.finite import FiniteSpace


def dense_opens(space: FiniteSpace):
    """Open sets (as frozensets, ∅ excluded) meeting every nonempty open."""
    return [o for o in space.opens if all(o & u for u in space.opens)]


def finite_space_baire_oracle(space) -> bool:
    if not isinstance(space, FiniteSpace):
        raise UnsupportedError(f"{space!r} is not a finite space")
    core = frozenset(space.points)
    for o in dense_opens(space):
        core &= o
    return all(core & u for u in space.opens)
