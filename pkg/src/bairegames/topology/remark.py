"""The space Q ∪ D whose D-points are isolated.

A neighborhood of a rational q has the form I ∪ (D \\ C) with I a rational
interval around q and C a finite set of excluded D-points. D is a countable
surrogate d_0, d_1, ... (bounded to n elements when n > 0); the base laws
and alpha's singleton tactic do not depend on D's cardinality.

Descriptors:
    ("d", i)        the singleton {d_i}
    ("n", I, C)     I ∪ (D \\ C); I is an interval or None (no rational part)
Points: ("q", Fraction) or ("d", i).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import FrozenSet, Optional

from ..errors import ConfigError, PreconditionError
from .base import BaseElement, Point, Space, enc_rat, rat
from .rationals import (WHOLE_LINE, iv_avoid, iv_bounded, iv_contains, iv_intersect,
                        iv_member, iv_midpoint, iv_normalize, iv_refine, parse_interval,
                        parse_rational, rational_enumeration)


class RemarkSpace(Space):
    first_countable = True
    ccc = True
    has_bco = False

    def __init__(self, n: int = 0):
        if n < 0:
            raise ConfigError("surrogate bound must be >= 0")
        self.n = n
        self.space_id = f"remark-qd:{n}"

    # -- descriptors --------------------------------------------------------------

    def _in_d(self, i: int) -> bool:
        return i >= 0 and (self.n == 0 or i < self.n)

    def _d_minus(self, C: FrozenSet[int]) -> Optional[int]:
        """Smallest index of D \\ C, None if empty."""
        i = 0
        while True:
            if self.n and i >= self.n:
                return None
            if i not in C:
                return i
            i += 1

    def normalize(self, descriptor):
        tag = descriptor[0]
        if tag == "d":
            if not self._in_d(descriptor[1]):
                raise PreconditionError(f"d_{descriptor[1]} is not in D")
            return ("d", descriptor[1])
        if tag != "n":
            raise PreconditionError(f"bad descriptor {descriptor!r}")
        _, I, C = descriptor
        I = None if I is None else iv_normalize(I)
        C = frozenset(i for i in C if self._in_d(i))
        if I is None:
            first = self._d_minus(C)
            if first is None:
                raise PreconditionError("empty open set")
            if self.n and len(C) == self.n - 1:
                return ("d", first)
        return ("n", I, C)

    def normalize_point(self, coords):
        tag, v = coords
        if tag == "d":
            if not self._in_d(v):
                raise PreconditionError(f"d_{v} is not in D")
            return ("d", v)
        if tag == "q":
            return ("q", rat(v))
        raise PreconditionError(f"bad point {coords!r}")

    def d(self, i: int) -> Point:
        return self.point(("d", i))

    def q(self, v) -> Point:
        return self.point(("q", v))

    def singleton(self, i: int) -> BaseElement:
        return self.element(("d", i))

    def nbhd_set(self, interval, excluded=()) -> BaseElement:
        return self.element(("n", interval, frozenset(excluded)))

    def is_d(self, x) -> bool:
        return x.coords[0] == "d"

    # -- relations --------------------------------------------------------------------

    def whole(self):
        return BaseElement(self.space_id, ("n", WHOLE_LINE, frozenset()))

    def _member(self, coords, desc):
        tag, v = coords
        if desc[0] == "d":
            return tag == "d" and v == desc[1]
        _, I, C = desc
        if tag == "d":
            return v not in C
        return I is not None and iv_member(v, I)

    def _contains(self, inner, outer):
        if inner[0] == "d":
            return self._member(inner, outer)
        if outer[0] == "d":
            # normalization turns a one-point I ∪ D\C into a singleton
            return False
        _, I, C = inner
        _, J, E = outer
        if I is not None and (J is None or not iv_contains(I, J)):
            return False
        return E <= C

    def intersect(self, U, V):
        self.check(U, V)
        a, b = U.descriptor, V.descriptor
        if a[0] == "d":
            return U if self._member(a, b) else None
        if b[0] == "d":
            return V if self._member(b, a) else None
        I = None
        if a[1] is not None and b[1] is not None:
            I = iv_intersect(a[1], b[1])
        C = a[2] | b[2]
        if I is None and self._d_minus(C) is None:
            return None
        return self.element(("n", I, C))

    def is_singleton(self, U):
        return U.descriptor[0] == "d"

    # -- canonical choices -----------------------------------------------------------------

    def pick_point(self, U):
        self.check(U)
        desc = U.descriptor
        if desc[0] == "d":
            return Point(self.space_id, desc)
        if desc[1] is not None:
            return Point(self.space_id, ("q", iv_midpoint(desc[1])))
        return Point(self.space_id, ("d", self._d_minus(desc[2])))

    def _prefix_c(self, k: int) -> FrozenSet[int]:
        return frozenset(i for i in range(k) if self._in_d(i))

    def refine(self, x, V, step):
        self._require_member(x, V)
        if x.coords[0] == "d":
            return BaseElement(self.space_id, x.coords)
        _, I, C = V.descriptor
        return self.element(("n", iv_refine(x.coords[1], I, step), C | self._prefix_c(step)))

    def nbhd(self, x, k):
        self.check(x)
        if x.coords[0] == "d":
            return BaseElement(self.space_id, x.coords)
        q = x.coords[1]
        r = Fraction(1, 2 ** k)
        return self.element(("n", (q - r, q + r), self._prefix_c(k)))

    def proper_subelement(self, x, U):
        self._require_member(x, U)
        if x.coords[0] == "d":
            if U.descriptor[0] == "d":
                return super().proper_subelement(x, U)
            return BaseElement(self.space_id, x.coords)
        return self.refine(x, U, 1)

    def avoid(self, x, U):
        self.check(x, U)
        if not self.member(x, U):
            return U
        if U.descriptor[0] == "d":
            return None
        _, I, C = U.descriptor
        if x.coords[0] == "d":
            C2 = C | {x.coords[1]}
            if I is None and self._d_minus(C2) is None:
                return None
            return self.element(("n", I, C2))
        return self.element(("n", iv_avoid(x.coords[1], I), C))

    # -- enumerations --------------------------------------------------------------------

    def point_enumeration(self):
        def gen():
            i = 0
            for q in rational_enumeration():
                yield Point(self.space_id, ("q", q))
                if self._in_d(i):
                    yield Point(self.space_id, ("d", i))
                i += 1
        return gen()

    def base_enumeration(self):
        from .rationals import Rationals
        i = 0
        for iv in Rationals().base_enumeration():
            yield self.element(("n", iv.descriptor, self._prefix_c(i % 4)))
            if self._in_d(i):
                yield BaseElement(self.space_id, ("d", i))
            i += 1

    # -- fuzzing ---------------------------------------------------------------------------

    def _sample_d(self, C, rng):
        top = self.n if self.n else max(C, default=0) + 8
        choices = [i for i in range(top) if i not in C]
        return rng.choice(choices) if choices else None

    def sample_point(self, U, rng):
        desc = U.descriptor
        if desc[0] == "d":
            return Point(self.space_id, desc)
        _, I, C = desc
        if I is not None and rng.random() < 0.7:
            lo, hi = iv_bounded(I)
            return Point(self.space_id, ("q", lo + (hi - lo) * Fraction(rng.randint(1, 7), 8)))
        i = self._sample_d(C, rng)
        if i is None:
            return self.pick_point(U)
        return Point(self.space_id, ("d", i))

    def sample_subelement(self, U, rng, around=None):
        desc = U.descriptor
        if desc[0] == "d":
            return U
        _, I, C = desc
        if around is not None:
            self._require_member(around, U)
            if around.coords[0] == "d" and (I is None or rng.random() < 0.5):
                return BaseElement(self.space_id, around.coords)
            extra = {rng.randrange(0, 6) for _ in range(rng.randint(0, 2))}
            if around.coords[0] == "d":
                extra.discard(around.coords[1])
            J = None
            if I is not None:
                J = I if around.coords[0] == "d" else iv_refine(around.coords[1], I, rng.randint(0, 3))
            return self.element(("n", J, C | frozenset(extra)))
        if I is not None:
            lo, hi = iv_bounded(I)
            i = rng.randint(0, 7)
            j = rng.randint(i + 1, 8)
            w = hi - lo
            extra = {rng.randrange(0, 6) for _ in range(rng.randint(0, 2))}
            cand = ("n", (lo + w * Fraction(i, 8), lo + w * Fraction(j, 8)), C | frozenset(extra))
            return self.element(cand)
        k = self._sample_d(C, rng)
        return BaseElement(self.space_id, ("d", k)) if k is not None else U

    # -- serialization -----------------------------------------------------------------------

    def encode_open(self, U):
        desc = U.descriptor
        if desc[0] == "d":
            return {"d": desc[1]}
        _, I, C = desc
        return {"interval": None if I is None else [enc_rat(I[0]), enc_rat(I[1])],
                "excluded": sorted(C)}

    def encode_point(self, x):
        tag, v = x.coords
        return {"d": v} if tag == "d" else {"q": str(v)}

    def parse_open(self, text):
        """'{d3}', '(0,1)', '(0,1)\\{0,2}' or 'D\\{0,1}'."""
        text = text.strip()
        m = re.fullmatch(r"\{\s*d(\d+)\s*\}", text)
        if m:
            return self.element(("d", int(m.group(1))))
        body, _, excl = text.partition("\\")
        C = []
        if excl:
            try:
                C = [int(t) for t in excl.strip().strip("{}").split(",") if t.strip()]
            except ValueError as exc:
                raise ConfigError(f"bad excluded set in {text!r}") from exc
        I = None if body.strip() == "D" else parse_interval(body)
        return self.element(("n", I, frozenset(C)))

    def parse_point(self, text):
        text = text.strip()
        m = re.fullmatch(r"d(\d+)", text)
        if m:
            return self.point(("d", int(m.group(1))))
        return self.point(("q", parse_rational(text)))
