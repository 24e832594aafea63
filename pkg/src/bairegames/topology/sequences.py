"""Sequence spaces: the Baire space ω^ω and the Cantor space 2^ω.

Base elements are cylinders named by a finite prefix. Points are
eventually-constant sequences, stored as (prefix, tail digit) with the
prefix stripped of trailing tail digits so that equal points compare equal.
"""

from __future__ import annotations

import json
from itertools import count, product
from typing import Optional, Tuple

from ..errors import ConfigError, PreconditionError
from .base import BaseElement, Point, Space


def digit(coords, i: int) -> int:
    prefix, tail = coords
    return prefix[i] if i < len(prefix) else tail


def strip_tail(prefix: Tuple[int, ...], tail: int) -> Tuple[int, ...]:
    prefix = tuple(prefix)
    while prefix and prefix[-1] == tail:
        prefix = prefix[:-1]
    return prefix


def compositions(weight: int):
    """Finite sequences of naturals with len + sum == weight."""
    if weight == 0:
        yield ()
        return
    for first in range(weight):
        for rest in compositions(weight - 1 - first):
            yield (first,) + rest


class SequenceSpace(Space):
    """Shared cylinder machinery; `alphabet` is None for ω, else a bound."""

    alphabet: Optional[int] = None
    first_countable = True
    ccc = True
    has_bco = True

    def _check_digits(self, seq):
        for d in seq:
            if not isinstance(d, int) or d < 0:
                raise PreconditionError(f"bad digit {d!r}")
            if self.alphabet is not None and d >= self.alphabet:
                raise PreconditionError(f"digit {d} outside alphabet {self.alphabet}")

    def normalize(self, descriptor):
        seq = tuple(descriptor)
        self._check_digits(seq)
        return seq

    def normalize_point(self, coords):
        if isinstance(coords, tuple) and len(coords) == 2 and isinstance(coords[0], tuple):
            prefix, tail = coords
        else:
            prefix, tail = tuple(coords), 0
        self._check_digits(tuple(prefix) + (tail,))
        return (strip_tail(prefix, tail), tail)

    def cylinder(self, *digits) -> BaseElement:
        return self.element(digits)

    def whole(self):
        return BaseElement(self.space_id, ())

    def _contains(self, inner, outer):
        return inner[: len(outer)] == outer

    def _member(self, coords, descriptor):
        return all(digit(coords, i) == d for i, d in enumerate(descriptor))

    def intersect(self, U, V):
        self.check(U, V)
        a, b = U.descriptor, V.descriptor
        if a[: len(b)] == b:
            return U
        if b[: len(a)] == a:
            return V
        return None

    def prefix_of(self, x, n: int) -> Tuple[int, ...]:
        return tuple(digit(x.coords, i) for i in range(n))

    def pick_point(self, U):
        self.check(U)
        return Point(self.space_id, (strip_tail(U.descriptor, 0), 0))

    def refine(self, x, V, step):
        self._require_member(x, V)
        return BaseElement(self.space_id, self.prefix_of(x, len(V.descriptor) + step))

    def nbhd(self, x, k):
        self.check(x)
        return BaseElement(self.space_id, self.prefix_of(x, k))

    def avoid(self, x, U):
        self.check(x, U)
        if not self.member(x, U):
            return U
        n = len(U.descriptor)
        d = digit(x.coords, n)
        other = d + 1 if self.alphabet is None else (d + 1) % self.alphabet
        return BaseElement(self.space_id, U.descriptor + (other,))

    def sample_point(self, U, rng):
        top = 4 if self.alphabet is None else self.alphabet
        extra = tuple(rng.randrange(top) for _ in range(rng.randint(0, 3)))
        tail = rng.randrange(top)
        return self.point((U.descriptor + extra, tail))

    def sample_subelement(self, U, rng, around=None):
        top = 4 if self.alphabet is None else self.alphabet
        grow = rng.randint(0, 3)
        if around is not None:
            self._require_member(around, U)
            return self.refine(around, U, grow)
        return BaseElement(self.space_id,
                           U.descriptor + tuple(rng.randrange(top) for _ in range(grow)))

    def encode_open(self, U):
        return list(U.descriptor)

    def encode_point(self, x):
        prefix, tail = x.coords
        return {"prefix": list(prefix), "tail": tail}

    def parse_open(self, text):
        try:
            seq = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"not a cylinder: {text!r}") from exc
        if not isinstance(seq, list):
            raise ConfigError(f"not a cylinder: {text!r}")
        return self.element(seq)

    def parse_point(self, text):
        """'[1,2]' is 1,2,0,0,...; '[1,2]+3' has constant tail 3."""
        body, _, tail = text.partition("+")
        try:
            prefix = json.loads(body)
            t = int(tail) if tail else 0
        except (json.JSONDecodeError, ValueError) as exc:
            raise ConfigError(f"not a sequence point: {text!r}") from exc
        return self.point((tuple(prefix), t))


class BaireSpace(SequenceSpace):
    space_id = "baire-omega"
    alphabet = None

    def base_enumeration(self):
        for w in count():
            for seq in compositions(w):
                yield BaseElement(self.space_id, seq)


class CantorSpace(SequenceSpace):
    space_id = "cantor"
    alphabet = 2

    def base_enumeration(self):
        for n in count():
            for seq in product((0, 1), repeat=n):
                yield BaseElement(self.space_id, seq)
