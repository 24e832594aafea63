"""Core value types and the abstract space interface.

A space is presented through a countable base whose members are named by
finite, canonical descriptors. Every relation the games need (inclusion,
membership, intersection) is decidable on descriptors, so referees never
have to reason about arbitrary open sets.
"""

from __future__ import annotations

import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, Optional, Sequence

from ..errors import DomainError, PreconditionError, UnsupportedError

DEFAULT_FUEL = 256


def default_fuel() -> int:
    """Fuel for bounded searches; BAIRE_GAMES_FUEL overrides the default."""
    raw = os.environ.get("BAIRE_GAMES_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        fuel = int(raw)
    except ValueError:
        return DEFAULT_FUEL
    return max(fuel, 1)


@dataclass(frozen=True)
class BaseElement:
    space_id: str
    descriptor: Any

    def __repr__(self):
        return f"<{self.space_id}:{self.descriptor!r}>"


@dataclass(frozen=True)
class Point:
    space_id: str
    coords: Any

    def __repr__(self):
        return f"<{self.space_id}@{self.coords!r}>"


@dataclass(frozen=True)
class PointedOpen:
    """A move of beta in the strong Choquet game: a point inside an open."""

    point: Any
    open: BaseElement

    @classmethod
    def make(cls, space: "Space", point, open_: BaseElement) -> "PointedOpen":
        if not space.member(point, open_):
            raise PreconditionError(f"{point!r} is not inside {open_!r}")
        return cls(point, open_)


def rat(value) -> Fraction:
    """Parse an exact rational from int, str ('3/4') or Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(value)


def enc_rat(q: Optional[Fraction]):
    return None if q is None else str(q)


class Space(ABC):
    """A countably based topological space with decidable base relations.

    Instances are immutable; all methods are pure functions of their inputs.
    """

    space_id: str = ""
    first_countable: bool = True
    ccc: bool = True
    has_bco: bool = False

    # -- construction helpers -------------------------------------------------

    def element(self, descriptor) -> BaseElement:
        return BaseElement(self.space_id, self.normalize(descriptor))

    def point(self, coords) -> Point:
        return Point(self.space_id, self.normalize_point(coords))

    def normalize(self, descriptor):
        return descriptor

    def normalize_point(self, coords):
        return coords

    def check(self, *objs):
        sid = self.space_id
        for obj in objs:
            if getattr(obj, "space_id", None) != sid:
                raise DomainError(f"{obj!r} does not belong to space {self.space_id}")

    # -- relations ------------------------------------------------------------

    @abstractmethod
    def whole(self) -> BaseElement:
        """The base element denoting the entire space."""

    def contains(self, inner: BaseElement, outer: BaseElement) -> bool:
        """True iff the set named by inner is a subset of that named by outer."""
        self.check(inner, outer)
        return self._contains(inner.descriptor, outer.descriptor)

    @abstractmethod
    def _contains(self, inner, outer) -> bool: ...

    def member(self, x, U: BaseElement) -> bool:
        self.check(x, U)
        return self._member(x.coords, U.descriptor)

    @abstractmethod
    def _member(self, coords, descriptor) -> bool: ...

    @abstractmethod
    def intersect(self, U: BaseElement, V: BaseElement) -> Optional[BaseElement]:
        """U ∩ V as a base element, or None when empty."""

    def disjoint(self, U: BaseElement, V: BaseElement) -> bool:
        return self.intersect(U, V) is None

    def is_singleton(self, U: BaseElement) -> bool:
        return False

    def is_minimal(self, U: BaseElement) -> bool:
        """No base element is strictly inside U."""
        return self.is_singleton(U)

    # -- canonical choices -------------------------------------------------------

    @abstractmethod
    def pick_point(self, U: BaseElement):
        """Deterministic canonical member of U."""

    @abstractmethod
    def refine(self, x, V: BaseElement, step: int) -> BaseElement:
        """A base element around x inside V, shrinking as step grows."""

    def _require_member(self, x, V):
        if not self.member(x, V):
            raise PreconditionError(f"{x!r} is not inside {V!r}")

    def neighborhood_base(self, x) -> Iterator[BaseElement]:
        """Decreasing stream of base elements forming a neighborhood base at x."""
        if not self.first_countable:
            raise UnsupportedError(f"{self.space_id} is not first countable")
        k = 0
        while True:
            yield self.nbhd(x, k)
            k += 1

    def nbhd(self, x, k: int) -> BaseElement:
        """Member k of the canonical neighborhood base at x."""
        raise UnsupportedError(f"{self.space_id} has no canonical neighborhood base")

    def proper_subelement(self, x, U: BaseElement) -> BaseElement:
        """A base element V with x ∈ V ⊊ U.

        Raises UnsupportedError when no such element exists.
        """
        self._require_member(x, U)
        V = self.refine(x, U, 1)
        if V == U:
            raise UnsupportedError(f"no proper base subelement of {U!r} around {x!r}")
        return V

    def avoid(self, x, U: BaseElement) -> Optional[BaseElement]:
        """A base element inside U that does not contain x (None if impossible)."""
        if not self.member(x, U):
            return U
        return None

    def ccc_subelement(self, U: BaseElement) -> BaseElement:
        """An open ccc subspace inside U (every zoo space is ccc)."""
        if not self.ccc:
            raise UnsupportedError(f"{self.space_id} has no ccc chooser")
        return U

    # -- enumerations -------------------------------------------------------------

    def base_enumeration(self) -> Iterator[BaseElement]:
        raise UnsupportedError(f"{self.space_id} has no base enumeration")

    def point_enumeration(self) -> Optional[Iterator]:
        """Enumeration of all points for countable spaces, else None."""
        return None

    # -- fuzzing ----------------------------------------------------------------------

    @abstractmethod
    def sample_point(self, U: BaseElement, rng):
        """A pseudo-random member of U drawn with rng."""

    @abstractmethod
    def sample_subelement(self, U: BaseElement, rng, around=None) -> BaseElement:
        """A pseudo-random base element inside U (containing `around` if given)."""

    # -- serialization ----------------------------------------------------------------

    @abstractmethod
    def encode_open(self, U: BaseElement): ...

    @abstractmethod
    def encode_point(self, x): ...

    def parse_open(self, text: str) -> BaseElement:
        raise UnsupportedError(f"{self.space_id} has no open-set parser")

    def parse_point(self, text: str):
        raise UnsupportedError(f"{self.space_id} has no point parser")

    def __repr__(self):
        return f"{type(self).__name__}({self.space_id!r})"


class WPointStrategy:
    """Player I's strategy in the Gruenhage game at a fixed center.

    After k reply points it answers with member k of the center's
    neighborhood base, which forces every compliant reply sequence to
    converge to the center.
    """

    def __init__(self, space: Space, center, responder: Optional[Callable] = None):
        self.space = space
        self.center = center
        self._responder = responder

    def __call__(self, points: Sequence = ()) -> BaseElement:
        points = tuple(points)
        if self._responder is not None:
            U = self._responder(points)
        else:
            U = self.space.nbhd(self.center, len(points))
        if not self.space.member(self.center, U):
            raise PreconditionError("W-point responder left its center")
        return U

    def __repr__(self):
        return f"WPointStrategy({self.space.space_id}, {self.center!r})"


def gruenhage_w_strategy(space: Space, x) -> WPointStrategy:
    if not space.first_countable:
        raise UnsupportedError(f"{space.space_id} is not first countable")
    return WPointStrategy(space, x)
