"""Finite topological spaces given by their lattice of open sets.

Points are integers; open sets are frozensets. The base is the family of
all nonempty open sets, which makes every relation a plain set operation.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence

from ..errors import ConfigError, PreconditionError, UnsupportedError
from .base import BaseElement, Point, Space


def close_topology(points: Iterable[int], generators: Iterable[Iterable[int]]) -> FrozenSet[FrozenSet[int]]:
    """Smallest topology on `points` containing the generating sets."""
    full = frozenset(points)
    opens = {frozenset(), full} | {frozenset(g) for g in generators}
    for g in opens:
        if not g <= full:
            raise ConfigError(f"open set {sorted(g)} leaves the point set")
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(opens), 2):
            for c in (a | b, a & b):
                if c not in opens:
                    opens.add(c)
                    changed = True
    return frozenset(opens)


def is_topology(points: FrozenSet[int], opens: FrozenSet[FrozenSet[int]]) -> bool:
    if frozenset() not in opens or points not in opens:
        return False
    return all(a | b in opens and a & b in opens for a in opens for b in opens)


def all_topologies(n: int) -> List[FrozenSet[FrozenSet[int]]]:
    """Every topology on the points 0..n-1, by brute force over families."""
    points = frozenset(range(n))
    middle = [frozenset(c) for k in range(1, n) for c in combinations(range(n), k)]
    found = []
    for mask in range(2 ** len(middle)):
        fam = {frozenset(), points} | {middle[i] for i in range(len(middle)) if mask >> i & 1}
        fam = frozenset(fam)
        if is_topology(points, fam):
            found.append(fam)
    return found


def _fmt(s) -> str:
    return ",".join(str(p) for p in sorted(s))


class FiniteSpace(Space):
    first_countable = True
    ccc = True
    # Every strictly decreasing sequence of opens is finite here, so the
    # base of all opens is (vacuously) a base of countable order.
    has_bco = True

    def __init__(self, points: Sequence[int], opens: Iterable[Iterable[int]], name: Optional[str] = None):
        self.points = tuple(sorted(set(points)))
        if not self.points:
            raise ConfigError("finite space needs at least one point")
        topo = close_topology(self.points, opens)
        self.opens = tuple(sorted((o for o in topo if o), key=lambda s: (len(s), sorted(s))))
        self.space_id = "finite:" + (name or self.describe())

    def describe(self) -> str:
        gens = [o for o in self.opens if len(o) < len(self.points)]
        return _fmt(self.points) + "/" + "|".join(_fmt(o) for o in gens)

    def normalize(self, descriptor):
        s = frozenset(descriptor)
        if s not in self.opens:
            raise PreconditionError(f"{sorted(s)} is not a nonempty open set of {self.space_id}")
        return s

    def normalize_point(self, coords):
        if coords not in self.points:
            raise PreconditionError(f"{coords!r} is not a point of {self.space_id}")
        return coords

    def whole(self):
        return BaseElement(self.space_id, frozenset(self.points))

    def _contains(self, inner, outer):
        return inner <= outer

    def _member(self, coords, descriptor):
        return coords in descriptor

    def intersect(self, U, V):
        self.check(U, V)
        s = U.descriptor & V.descriptor
        return BaseElement(self.space_id, s) if s else None

    def is_singleton(self, U):
        return len(U.descriptor) == 1

    def is_minimal(self, U):
        self.check(U)
        return all(V == U for V in self.subelements(U))

    def minimal_open(self, x) -> BaseElement:
        self.check(x)
        s = frozenset(self.points)
        for o in self.opens:
            if x.coords in o:
                s &= o
        return BaseElement(self.space_id, s)

    def elements(self) -> List[BaseElement]:
        return [BaseElement(self.space_id, o) for o in self.opens]

    def subelements(self, U: BaseElement) -> List[BaseElement]:
        return [BaseElement(self.space_id, o) for o in self.opens if o <= U.descriptor]

    def all_points(self) -> List[Point]:
        return [Point(self.space_id, p) for p in self.points]

    def pick_point(self, U):
        self.check(U)
        return Point(self.space_id, min(U.descriptor))

    def refine(self, x, V, step):
        self._require_member(x, V)
        return self.minimal_open(x)

    def nbhd(self, x, k):
        return self.minimal_open(x)

    def proper_subelement(self, x, U):
        self._require_member(x, U)
        m = self.minimal_open(x)
        if m.descriptor < U.descriptor:
            return m
        raise UnsupportedError(f"{_fmt(U.descriptor)} has no proper open subset around {x.coords}")

    def avoid(self, x, U):
        self.check(x, U)
        if not self.member(x, U):
            return U
        options = [o for o in self.opens if o <= U.descriptor and x.coords not in o]
        if not options:
            return None
        return BaseElement(self.space_id, max(options, key=lambda s: (len(s), sorted(s))))

    def ccc_subelement(self, U):
        return self.minimal_open(self.pick_point(U))

    def base_enumeration(self):
        return iter(self.elements())

    def point_enumeration(self):
        return iter(self.all_points())

    def sample_point(self, U, rng):
        return Point(self.space_id, rng.choice(sorted(U.descriptor)))

    def sample_subelement(self, U, rng, around=None):
        subs = self.subelements(U)
        if around is not None:
            self._require_member(around, U)
            subs = [s for s in subs if around.coords in s.descriptor]
        return rng.choice(subs)

    def encode_open(self, U):
        return sorted(U.descriptor)

    def encode_point(self, x):
        return x.coords

    def parse_open(self, text):
        body = text.strip().strip("{}")
        try:
            pts = [int(t) for t in body.split(",") if t.strip()]
        except ValueError as exc:
            raise ConfigError(f"not a finite open set: {text!r}") from exc
        return self.element(pts)

    def parse_point(self, text):
        try:
            return self.point(int(text))
        except ValueError as exc:
            raise ConfigError(f"not a point: {text!r}") from exc


PRESETS = {
    "point": lambda: FiniteSpace([0], [], "point"),
    "sierpinski": lambda: FiniteSpace([1, 2], [[1]], "sierpinski"),
}


def finite_space(spec: str) -> FiniteSpace:
    """Build from 'sierpinski', 'point', 'discrete:3', 'indiscrete:3' or '1,2/1|1,2'."""
    spec = spec.strip()
    if spec in PRESETS:
        return PRESETS[spec]()
    m = re.fullmatch(r"(discrete|indiscrete):(\d+)", spec)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise ConfigError("need at least one point")
        gens = [[p] for p in range(n)] if m.group(1) == "discrete" else []
        return FiniteSpace(range(n), gens, spec)
    pts, slash, gens = spec.partition("/")
    try:
        points = [int(t) for t in pts.split(",") if t.strip()]
        opens = [[int(t) for t in g.split(",") if t.strip()] for g in gens.split("|")] if slash and gens else []
    except ValueError as exc:
        raise ConfigError(f"bad finite lattice spec {spec!r}") from exc
    return FiniteSpace(points, opens, spec)
