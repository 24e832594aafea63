"""Finite-support boxes in products of spaces.

A box is a finite map index -> base element of that factor; indices off
the support range over the whole factor. The support is part of the
datum: two boxes may denote the same set yet differ in support, and the
Krom transfers read the support, so it is never normalized away.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

from ..errors import DomainError, PreconditionError
from ..topology.base import BaseElement, Point, Space


class ProductSpace(Space):
    """∏_{i∈I} X_i over a finite, ordered index set."""

    first_countable = True
    ccc = True

    def __init__(self, factors: Mapping[int, Space], name: str = ""):
        if not factors:
            raise PreconditionError("a product needs at least one factor")
        self.factors: Dict[int, Space] = dict(sorted(factors.items()))
        self.indices: Tuple[int, ...] = tuple(self.factors)
        inner = ",".join(f"{i}:{s.space_id}" for i, s in self.factors.items())
        self.space_id = name or f"prod({inner})"

    # -- boxes --------------------------------------------------------------------------

    def normalize(self, descriptor):
        items = dict(descriptor)
        for i, U in items.items():
            if i not in self.factors:
                raise DomainError(f"index {i!r} is not in the product")
            self.factors[i].check(U)
        return tuple(sorted(items.items()))

    def box(self, entries) -> BaseElement:
        return self.element(entries)

    def support(self, U: BaseElement) -> Tuple[int, ...]:
        return tuple(i for i, _ in U.descriptor)

    def entries(self, U: BaseElement) -> Dict[int, BaseElement]:
        return dict(U.descriptor)

    def entry(self, U: BaseElement, i: int) -> BaseElement:
        for j, E in U.descriptor:
            if j == i:
                return E
        return self.factors[i].whole()

    def whole(self):
        return BaseElement(self.space_id, ())

    def contains(self, inner, outer):
        self.check(inner, outer)
        a, b = dict(inner.descriptor), dict(outer.descriptor)
        # off the outer support the entry is the whole factor, which contains anything
        return all(self.factors[i].contains(a[i] if i in a else self.factors[i].whole(), E)
                   for i, E in b.items())

    def _contains(self, inner, outer):
        raise NotImplementedError

    # -- points ---------------------------------------------------------------------------

    def make_point(self, coords: Mapping[int, object]) -> Point:
        if set(coords) != set(self.indices):
            raise PreconditionError("a product point needs every coordinate")
        for i, x in coords.items():
            self.factors[i].check(x)
        return Point(self.space_id, tuple(sorted(coords.items(), key=lambda kv: kv[0])))

    def coord(self, x: Point, i: int):
        return dict(x.coords)[i]

    def member(self, x, U):
        self.check(x, U)
        coords = dict(x.coords)
        return all(X.member(coords[i], self.entry(U, i)) for i, X in self.factors.items())

    def _member(self, coords, descriptor):
        raise NotImplementedError

    def intersect(self, U, V):
        self.check(U, V)
        out = {}
        for i in sorted(set(self.support(U)) | set(self.support(V))):
            W = self.factors[i].intersect(self.entry(U, i), self.entry(V, i))
            if W is None:
                return None
            out[i] = W
        return self.box(out)

    def pick_point(self, U):
        self.check(U)
        return self.make_point({i: X.pick_point(self.entry(U, i)) for i, X in self.factors.items()})

    def refine(self, x, V, step):
        self._require_member(x, V)
        coords = dict(x.coords)
        return self.box({i: X.refine(coords[i], self.entry(V, i), step)
                         for i, X in self.factors.items()})

    def sample_point(self, U, rng):
        return self.make_point({i: X.sample_point(self.entry(U, i), rng)
                                for i, X in self.factors.items()})

    def sample_subelement(self, U, rng, around=None):
        coords = dict(around.coords) if around is not None else {}
        return self.box({i: X.sample_subelement(self.entry(U, i), rng, coords.get(i))
                         for i, X in self.factors.items()})

    def encode_open(self, U):
        return {str(i): self.factors[i].encode_open(E) for i, E in U.descriptor}

    def encode_point(self, x):
        return {str(i): self.factors[i].encode_point(p) for i, p in x.coords}


def product_of(space: Space, indices: Iterable[int], factory=None) -> ProductSpace:
    """Product of copies of `space` (or factory(space)) over `indices`."""
    make = factory or (lambda s: s)
    return ProductSpace({i: make(space) for i in indices})
