"""Krom spaces: decreasing sequences of base elements with a carried witness.

Length convention: a stem of length n has entries 0..n-1, and the basic
open [f] is the set of Krom points whose first |f| entries are f. With it,
[f↾k] is defined for every k <= |f| and the empty stem names the whole
Krom space.

A KromPoint is an infinite decreasing sequence produced lazily by a tail
rule. It always carries a witness point lying in every entry, which makes
"the intersection is nonempty" checkable at any materialized depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import (DomainError, InvariantViolation, NotCertifiedAtDepth, PreconditionError,
                     UnsupportedError)
from .topology.base import BaseElement, Space, default_fuel

Stem = Tuple[BaseElement, ...]


def _is_decreasing(space: Space, elems: Sequence[BaseElement]) -> bool:
    return all(space.contains(elems[k + 1], elems[k]) for k in range(len(elems) - 1))


@dataclass(frozen=True)
class DecreasingSeq:
    space: Space = field(compare=False, hash=False, repr=False)
    elems: Stem

    def __post_init__(self):
        elems = tuple(self.elems)
        object.__setattr__(self, "elems", elems)
        if not elems:
            raise PreconditionError("a decreasing sequence needs at least one entry")
        self.space.check(*elems)
        if not _is_decreasing(self.space, elems):
            raise PreconditionError("entries are not decreasing")

    @property
    def space_id(self) -> str:
        return self.space.space_id

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, k):
        return self.elems[k]

    @property
    def last(self) -> BaseElement:
        return self.elems[-1]

    def restrict(self, k: int) -> Stem:
        return self.elems[:k]

    def to_json(self) -> list:
        return [self.space.encode_open(U) for U in self.elems]


def stem_of(f) -> Stem:
    return f.elems if isinstance(f, DecreasingSeq) else tuple(f)


def extend(f: DecreasingSeq, U: BaseElement) -> DecreasingSeq:
    """f ⌢ U, allowed when U ⊆ last(f) (equality permitted)."""
    f.space.check(U)
    if not f.space.contains(U, f.last):
        raise PreconditionError(f"{U!r} is not inside the last entry {f.last!r}")
    return DecreasingSeq(f.space, f.elems + (U,))


def basic_subset(g_stem, f_stem, space: Optional[Space] = None) -> bool:
    """[g] ⊆ [f].

    True when g's stem extends f's. Given the base space, a shorter g also
    qualifies when its last entry is minimal and f only repeats it, since
    every continuation of g is then forced.
    """
    g, f = stem_of(g_stem), stem_of(f_stem)
    if isinstance(g_stem, DecreasingSeq) and isinstance(f_stem, DecreasingSeq):
        if g_stem.space_id != f_stem.space_id:
            raise DomainError("stems from different spaces")
        space = space or g_stem.space
    if len(g) >= len(f):
        return g[: len(f)] == f
    if space is None or f[: len(g)] != g:
        return False
    last = g[-1] if g else space.whole()
    return all(U == last for U in f[len(g):]) and space.is_minimal(last)


def stems_disjoint(g_stem, h_stem) -> bool:
    """[g] ∩ [h] = ∅ iff neither stem extends the other."""
    g, h = stem_of(g_stem), stem_of(h_stem)
    n = min(len(g), len(h))
    return g[:n] != h[:n]


# -- lazy points ---------------------------------------------------------------------------------

TailRule = Callable[["KromPoint", int], BaseElement]


def constant_tail(f: "KromPoint", p: int) -> BaseElement:
    return f.prefix[-1]


def nbhd_tail(f: "KromPoint", p: int) -> BaseElement:
    """Shrink around the witness inside the last prefix entry."""
    return f.space.refine(f.witness, f.prefix[-1], p - len(f.prefix) + 1)


class KromPoint:
    """An element of K(X): lazily extended decreasing sequence plus witness.

    Materialization is memoized; use from one thread at a time, or call
    materialize(n) first and share the result.
    """

    def __init__(self, space: Space, prefix: Sequence[BaseElement], witness,
                 tail_rule: TailRule = constant_tail, name: str = ""):
        prefix = tuple(prefix)
        if not prefix:
            raise PreconditionError("a Krom point needs a nonempty prefix")
        space.check(*prefix)
        if not _is_decreasing(space, prefix):
            raise PreconditionError("prefix is not decreasing")
        self.space = space
        self.prefix = prefix
        self.witness = witness
        self.tail_rule = tail_rule
        self.name = name
        self._elems: List[BaseElement] = []
        for U in prefix:
            self._push(U)

    @property
    def space_id(self) -> str:
        return f"krom({self.space.space_id})"

    def _push(self, U: BaseElement):
        if self._elems and not self.space.contains(U, self._elems[-1]):
            raise InvariantViolation(f"tail rule broke the decreasing chain at {len(self._elems)}")
        if not self.space.member(self.witness, U):
            raise InvariantViolation(f"witness left entry {len(self._elems)}")
        self._elems.append(U)

    def element(self, k: int) -> BaseElement:
        while len(self._elems) <= k:
            self._push(self.tail_rule(self, len(self._elems)))
        return self._elems[k]

    def materialize(self, n: int) -> Stem:
        if n > 0:
            self.element(n - 1)
        return tuple(self._elems[:n])

    def stem(self, n: int) -> DecreasingSeq:
        return DecreasingSeq(self.space, self.materialize(n))

    def same_as(self, other: "KromPoint") -> bool:
        return self is other or (self.prefix == other.prefix and self.tail_rule is other.tail_rule
                                 and self.witness == other.witness)

    def __eq__(self, other):
        return isinstance(other, KromPoint) and self.same_as(other)

    def __hash__(self):
        return hash((self.prefix, self.witness))

    def to_json(self, extra: int = 0) -> dict:
        return {"prefix": [self.space.encode_open(U) for U in self.materialize(len(self.prefix) + extra)],
                "witness": self.space.encode_point(self.witness)}

    def __repr__(self):
        return f"KromPoint({self.space.space_id}, len={len(self.prefix)}, witness={self.witness!r})"


def spliced(space: Space, h: Sequence[BaseElement], tail: KromPoint, name="spliced") -> KromPoint:
    """h ⌢ tail, where tail's first entry lies inside h's last entry."""
    h = tuple(h)
    offset = len(h)

    def rule(f, p):
        return tail.element(p - offset)

    if h and not space.contains(tail.element(0), h[-1]):
        raise PreconditionError("tail does not start below the stem")
    return KromPoint(space, h + (tail.element(0),), tail.witness, rule, name)


# -- ultrametric -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceBound:
    """Undecided distance: no difference within `fuel` entries, so d ≤ 2^-fuel."""

    fuel: int

    @property
    def upper(self) -> Fraction:
        return Fraction(1, 2 ** self.fuel)


def prefix_dist(a: Sequence, b: Sequence) -> Fraction:
    """2^-m for the first index m where the finite sequences differ; 0 if equal."""
    a, b = tuple(a), tuple(b)
    n = min(len(a), len(b))
    for m in range(n):
        if a[m] != b[m]:
            return Fraction(1, 2 ** m)
    if len(a) != len(b):
        return Fraction(1, 2 ** n)
    return Fraction(0)


_HALVES = [Fraction(1, 2 ** m) for m in range(64)]


def _half_power(m: int) -> Fraction:
    return _HALVES[m] if m < len(_HALVES) else Fraction(1, 2 ** m)


def ultradist(f: KromPoint, g: KromPoint, fuel: Optional[int] = None):
    if f.space.space_id != g.space.space_id:
        raise DomainError("Krom points from different spaces")
    if f.same_as(g):
        return Fraction(0)
    fuel = default_fuel() if fuel is None else fuel
    for m in range(fuel):
        a, b = f.element(m), g.element(m)
        if a is not b and a != b:
            return _half_power(m)
    return DistanceBound(fuel)


# -- π-base machinery -----------------------------------------------------------------------------


def ccc_pi_base_step(f: DecreasingSeq, chooser: Optional[Callable] = None) -> DecreasingSeq:
    """f ⌢ U with U an open ccc subspace of f's last entry."""
    choose = chooser or f.space.ccc_subelement
    try:
        U = choose(f.last)
    except UnsupportedError:
        raise
    except Exception as exc:
        raise UnsupportedError(f"ccc chooser failed: {exc}") from exc
    return extend(f, U)


def disjoint_family_projection(f0: DecreasingSeq, family: Sequence[DecreasingSeq]) -> bool:
    """Whether the final entries of pairwise-disjoint [g] ⊆ [f0] are pairwise disjoint.

    Every projected entry lies inside U = last(f0) by the prefix rule, so
    only pairwise disjointness needs checking.
    """
    space = f0.space
    family = list(family)
    for g in family:
        if not basic_subset(g, f0):
            raise PreconditionError("family member is not below f0")
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if not stems_disjoint(family[i], family[j]):
                raise PreconditionError("family basic opens are not pairwise disjoint")
    finals = [g.last for g in family]
    for i in range(len(finals)):
        for j in range(i + 1, len(finals)):
            if not space.disjoint(finals[i], finals[j]):
                return False
    return True


# -- K⁰ certificates -------------------------------------------------------------------------------


@dataclass
class K0Certificate:
    krom_point: KromPoint
    evidence: List[Tuple[int, int]]

    def to_json(self) -> dict:
        space = self.krom_point.space
        return {"witness": space.encode_point(self.krom_point.witness),
                "evidence": [[k, j] for k, j in self.evidence]}

    def recheck(self) -> bool:
        """Independent replay of every containment and of monotonicity."""
        f = self.krom_point
        space = f.space
        prev = -1
        for k, j in self.evidence:
            if j < prev or not space.contains(f.element(j), space.nbhd(f.witness, k)):
                return False
            prev = j
        return True


def k0_certify(f: KromPoint, depth: int, fuel: Optional[int] = None) -> K0Certificate:
    """For k < depth find j(k) with f(j(k)) inside neighborhood-base member k."""
    space = f.space
    if not space.first_countable:
        raise UnsupportedError(f"{space.space_id} is not first countable")
    fuel = default_fuel() if fuel is None else fuel
    evidence = []
    j = 0
    for k in range(depth):
        target = space.nbhd(f.witness, k)
        limit = j + fuel
        while not space.contains(f.element(j), target):
            j += 1
            if j >= limit:
                raise NotCertifiedAtDepth(k)
        evidence.append((k, j))
    return K0Certificate(f, evidence)


# -- Krom spaces as game arenas ---------------------------------------------------------------------


class KromSpace(Space):
    """K(X) with basic opens [stem]; descriptors are stems, () is the whole space."""

    first_countable = True
    ccc = True

    def __init__(self, base: Space):
        self.base = base
        self.space_id = f"krom({base.space_id})"

    def check(self, *objs):
        for obj in objs:
            if isinstance(obj, KromPoint):
                if obj.space.space_id != self.base.space_id:
                    raise DomainError(f"{obj!r} does not belong to {self.space_id}")
            elif getattr(obj, "space_id", None) != self.space_id:
                raise DomainError(f"{obj!r} does not belong to {self.space_id}")

    def normalize(self, descriptor):
        stem = tuple(descriptor)
        self.base.check(*stem)
        if not _is_decreasing(self.base, stem):
            raise PreconditionError("stem is not decreasing")
        return stem

    def basic(self, stem) -> BaseElement:
        return self.element(stem_of(stem))

    def whole(self):
        return BaseElement(self.space_id, ())

    def _contains(self, inner, outer):
        return basic_subset(inner, outer, self.base)

    def member(self, f, U):
        self.check(f, U)
        stem = U.descriptor
        return f.materialize(len(stem)) == stem

    def _member(self, coords, descriptor):
        raise NotImplementedError

    def intersect(self, U, V):
        self.check(U, V)
        if basic_subset(U.descriptor, V.descriptor, self.base):
            return U
        if basic_subset(V.descriptor, U.descriptor, self.base):
            return V
        return None

    def pick_point(self, U):
        self.check(U)
        stem = U.descriptor or (self.base.whole(),)
        return KromPoint(self.base, stem, self.base.pick_point(stem[-1]), constant_tail)

    def refine(self, f, V, step):
        self._require_member(f, V)
        return BaseElement(self.space_id, f.materialize(len(V.descriptor) + step))

    def nbhd(self, f, k):
        self.check(f)
        return BaseElement(self.space_id, f.materialize(k))

    def sample_point(self, U, rng):
        return self.pick_point(self.sample_subelement(U, rng))

    def sample_subelement(self, U, rng, around=None):
        if around is not None:
            return self.refine(around, U, rng.randint(0, 2))
        stem = U.descriptor
        for _ in range(rng.randint(0, 2)):
            last = stem[-1] if stem else self.base.whole()
            stem = stem + (self.base.sample_subelement(last, rng),)
        return BaseElement(self.space_id, stem)

    def encode_open(self, U):
        return [self.base.encode_open(e) for e in U.descriptor]

    def encode_point(self, f):
        return f.to_json()


class K0Space(KromSpace):
    """K⁰_B(X): Krom points whose entries form a neighborhood base at the witness.

    Basic opens are [stem] ∩ K⁰; canonical points shrink around the
    canonical point of the stem's last entry, so they are certifiable on
    first countable X.
    """

    def __init__(self, base: Space):
        super().__init__(base)
        self.space_id = f"k0({base.space_id})"

    def pick_point(self, U):
        self.check(U)
        stem = U.descriptor or (self.base.whole(),)
        return KromPoint(self.base, stem, self.base.pick_point(stem[-1]), nbhd_tail)
