"""Dense open subsets of a product X × Y, presented as refinement oracles.

Proofs only ever use a dense open set O through one move: given a box
U × V, find a sub-box inside O. An oracle packages exactly that move,
plus optional membership tests used for soundness spot checks.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from ..errors import FuelExhausted, InvariantViolation
from .base import BaseElement, Space, default_fuel


class DenseOpenOracle:
    """The whole product X × Y; refinement never shrinks anything."""

    name = "whole"

    def __init__(self, X: Space, Y: Space, schedule_index: int = 0, fuel: Optional[int] = None):
        self.X = X
        self.Y = Y
        self.schedule_index = schedule_index
        self.fuel = default_fuel() if fuel is None else fuel

    def refine(self, U: BaseElement, V: BaseElement) -> Tuple[BaseElement, BaseElement]:
        return U, V

    def member(self, x, y) -> bool:
        return True

    def box_inside(self, U: BaseElement, V: BaseElement) -> Optional[bool]:
        """Exact test of U × V ⊆ O when decidable, else None."""
        return True

    def describe(self):
        return {"oracle": self.name, "index": self.schedule_index}


class PunctureOracle(DenseOpenOracle):
    """X × Y minus a finite set of points."""

    name = "puncture"

    def __init__(self, X, Y, punctures: Sequence[tuple], schedule_index=0, fuel=None):
        super().__init__(X, Y, schedule_index, fuel)
        self.punctures = tuple(punctures)

    def refine(self, U, V):
        steps = 0
        for p, q in self.punctures:
            if not (self.X.member(p, U) and self.Y.member(q, V)):
                continue
            steps += 1
            if steps > self.fuel:
                raise FuelExhausted(f"oracle O_{self.schedule_index} out of fuel")
            U2 = self.X.avoid(p, U)
            if U2 is not None:
                U = U2
                continue
            V2 = self.Y.avoid(q, V)
            if V2 is None:
                raise FuelExhausted(
                    f"oracle O_{self.schedule_index} cannot avoid {(p, q)!r} inside the box")
            V = V2
        return U, V

    def member(self, x, y):
        return (x, y) not in self.punctures

    def box_inside(self, U, V):
        return not any(self.X.member(p, U) and self.Y.member(q, V) for p, q in self.punctures)

    def describe(self):
        return {"oracle": self.name, "index": self.schedule_index,
                "punctures": [[self.X.encode_point(p), self.Y.encode_point(q)]
                              for p, q in self.punctures]}


def dense_refine(oracle: DenseOpenOracle, U: BaseElement, V: BaseElement):
    """Sub-box (U', V') of U × V inside the oracle's dense open set."""
    U2, V2 = oracle.refine(U, V)
    if not (oracle.X.contains(U2, U) and oracle.Y.contains(V2, V)):
        raise InvariantViolation(f"oracle {oracle.name} returned a box outside its input")
    return U2, V2


def puncture_schedule(X: Space, Y: Space, points: Sequence[tuple], fuel=None) -> List[PunctureOracle]:
    """Decreasing schedule: O_n removes the first n+1 points."""
    return [PunctureOracle(X, Y, points[: n + 1], n, fuel) for n in range(len(points))]


def whole_schedule(X: Space, Y: Space, length: int) -> List[DenseOpenOracle]:
    return [DenseOpenOracle(X, Y, n) for n in range(length)]
