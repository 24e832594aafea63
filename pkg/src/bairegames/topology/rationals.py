"""The rationals with the base of open intervals, in exact arithmetic.

Interval descriptors are pairs (lo, hi) of Fractions with lo < hi; None
stands for an infinite endpoint, so (None, None) is the whole line.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import count
from typing import Iterator, Optional, Tuple

from ..errors import ConfigError, PreconditionError
from .base import BaseElement, Point, Space, enc_rat, rat

Interval = Tuple[Optional[Fraction], Optional[Fraction]]

WHOLE_LINE: Interval = (None, None)


def iv_normalize(iv) -> Interval:
    lo, hi = iv
    lo = None if lo is None else rat(lo)
    hi = None if hi is None else rat(hi)
    if lo is not None and hi is not None and not lo < hi:
        raise PreconditionError(f"empty interval ({lo}, {hi})")
    return (lo, hi)


def iv_contains(inner: Interval, outer: Interval) -> bool:
    a, b = inner
    c, d = outer
    left = c is None or (a is not None and c <= a)
    right = d is None or (b is not None and b <= d)
    return left and right


def iv_member(q: Fraction, iv: Interval) -> bool:
    lo, hi = iv
    return (lo is None or lo < q) and (hi is None or q < hi)


def iv_intersect(u: Interval, v: Interval) -> Optional[Interval]:
    lo = u[0] if v[0] is None else v[0] if u[0] is None else max(u[0], v[0])
    hi = u[1] if v[1] is None else v[1] if u[1] is None else min(u[1], v[1])
    if lo is not None and hi is not None and not lo < hi:
        return None
    return (lo, hi)


def iv_midpoint(iv: Interval) -> Fraction:
    lo, hi = iv
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def iv_bounded(iv: Interval) -> Tuple[Fraction, Fraction]:
    """A bounded window inside iv, used by samplers."""
    lo, hi = iv
    if lo is None and hi is None:
        return Fraction(-1), Fraction(1)
    if lo is None:
        return hi - 2, hi
    if hi is None:
        return lo, lo + 2
    return lo, hi


def iv_refine(x: Fraction, iv: Interval, step: int) -> Interval:
    """(x - 2^-step·δ, x + 2^-step·δ), δ the distance from x to iv's ends."""
    lo, hi = iv
    gaps = [g for g in (None if lo is None else x - lo, None if hi is None else hi - x)
            if g is not None]
    delta = min(gaps) if gaps else Fraction(1)
    r = delta / (2 ** step)
    return (x - r, x + r)


def iv_avoid(x: Fraction, iv: Interval) -> Interval:
    """The part of iv strictly left of x (right if x is no left end)."""
    if not iv_member(x, iv):
        return iv
    lo, hi = iv
    return (x - 1 if lo is None else lo, x)


def iv_length(iv: Interval) -> Optional[Fraction]:
    lo, hi = iv
    if lo is None or hi is None:
        return None
    return hi - lo


def calkin_wilf() -> Iterator[Fraction]:
    """Every positive rational exactly once."""
    q = Fraction(1)
    while True:
        yield q
        q = 1 / (2 * (q.numerator // q.denominator) - q + 1)


def rational_enumeration() -> Iterator[Fraction]:
    """0, 1, -1, 1/2, -1/2, 2, -2, 1/3, ... covering all of Q."""
    yield Fraction(0)
    for q in calkin_wilf():
        yield q
        yield -q


_NUM = r"\s*([-+]?(?:inf|\d+(?:/\d+)?))\s*"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational: {text!r}") from exc


def parse_interval(text: str) -> Interval:
    m = re.fullmatch(r"\s*\(" + _NUM + "," + _NUM + r"\)\s*", text)
    if not m:
        raise ConfigError(f"not an interval: {text!r}")

    def end(tok):
        return None if tok.lstrip("+-") == "inf" else parse_rational(tok)

    return iv_normalize((end(m.group(1)), end(m.group(2))))


class Rationals(Space):
    space_id = "rationals"
    first_countable = True
    ccc = True
    has_bco = False

    def normalize(self, descriptor):
        return iv_normalize(descriptor)

    def normalize_point(self, coords):
        return rat(coords)

    def interval(self, lo, hi) -> BaseElement:
        return self.element((lo, hi))

    def whole(self):
        return BaseElement(self.space_id, WHOLE_LINE)

    def _contains(self, inner, outer):
        return iv_contains(inner, outer)

    def _member(self, coords, descriptor):
        return iv_member(coords, descriptor)

    def intersect(self, U, V):
        self.check(U, V)
        iv = iv_intersect(U.descriptor, V.descriptor)
        return None if iv is None else BaseElement(self.space_id, iv)

    def pick_point(self, U):
        self.check(U)
        return Point(self.space_id, iv_midpoint(U.descriptor))

    def refine(self, x, V, step):
        self._require_member(x, V)
        return BaseElement(self.space_id, iv_refine(x.coords, V.descriptor, step))

    def nbhd(self, x, k):
        self.check(x)
        r = Fraction(1, 2 ** k)
        return BaseElement(self.space_id, (x.coords - r, x.coords + r))

    def avoid(self, x, U):
        self.check(x, U)
        return BaseElement(self.space_id, iv_avoid(x.coords, U.descriptor))

    def base_enumeration(self):
        seen = []
        for q in rational_enumeration():
            for p in seen:
                yield BaseElement(self.space_id, (min(p, q), max(p, q)))
            seen.append(q)

    def point_enumeration(self):
        return (Point(self.space_id, q) for q in rational_enumeration())

    def sample_point(self, U, rng):
        lo, hi = iv_bounded(U.descriptor)
        return Point(self.space_id, lo + (hi - lo) * Fraction(rng.randint(1, 7), 8))

    def sample_subelement(self, U, rng, around=None):
        lo, hi = iv_bounded(U.descriptor)
        if around is None:
            i = rng.randint(0, 7)
            j = rng.randint(i + 1, 8)
            w = hi - lo
            return BaseElement(self.space_id, (lo + w * Fraction(i, 8), lo + w * Fraction(j, 8)))
        x = around.coords
        self._require_member(around, U)
        a = x - (x - lo) * Fraction(rng.randint(1, 8), 8)
        b = x + (hi - x) * Fraction(rng.randint(1, 8), 8)
        return BaseElement(self.space_id, iv_intersect((a, b), U.descriptor))

    def encode_open(self, U):
        lo, hi = U.descriptor
        return [enc_rat(lo), enc_rat(hi)]

    def encode_point(self, x):
        return str(x.coords)

    def parse_open(self, text):
        return BaseElement(self.space_id, parse_interval(text))

    def parse_point(self, text):
        return Point(self.space_id, parse_rational(text))
