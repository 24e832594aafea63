"""Stock strategies and the name registry used by the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from ..errors import ConfigError, PreconditionError
from ..topology.base import BaseElement, PointedOpen, Space, gruenhage_w_strategy
from ..topology.rationals import Rationals, iv_bounded, iv_member, rational_enumeration
from ..topology.remark import RemarkSpace
from .core import GameKind, Strategy


def _rng(seed, n: int) -> random.Random:
    return random.Random(f"{seed}:{n}")


def _last_open(moves, space: Space) -> BaseElement:
    if not moves:
        return space.whole()
    last = moves[-1]
    return last.open if isinstance(last, PointedOpen) else last


# -- Banach-Mazur -------------------------------------------------------------------------------


def diagonal_interval(lo: Fraction, hi: Fraction, q: Fraction, n: int) -> Tuple[Fraction, Fraction]:
    """A subinterval of (lo, hi) of length < 2^-n whose closure misses q."""
    if lo < q:
        a, b = lo, min(hi, q - (q - lo) / 4)
    else:
        a, b = max(lo, q + (hi - q) / 4), hi
        if q < lo:
            a = lo
    width = Fraction(1, 2 ** (n + 1))
    if b - a >= 2 * width:
        b = a + width
    return a, b


def bm_rationals_beta_strategy(enumeration: Optional[Callable] = None,
                               start=(Fraction(0), Fraction(1))) -> Strategy:
    """Diagonal beta for BM(Q): round n dodges the n-th enumerated rational.

    Each play compatible with it has empty intersection, witnessing that Q
    is not Baire. Round 0 works inside `start`.
    """
    space = Rationals()
    enum_fn = enumeration or rational_enumeration
    cache = []

    def q(n):
        if not cache:
            cache.append(enum_fn())
            cache.append([])
        gen, seen = cache
        while len(seen) <= n:
            seen.append(next(gen))
        return seen[n]

    def choose(alpha_moves):
        n = len(alpha_moves)
        if n == 0:
            lo, hi = Fraction(start[0]), Fraction(start[1])
        else:
            lo, hi = iv_bounded(alpha_moves[-1].descriptor)
        a, b = diagonal_interval(lo, hi, q(n), n)
        return space.interval(a, b)

    return Strategy("beta", "diagonal", choose)


def echo_beta(space: Space, kind: GameKind) -> Strategy:
    """Beta hands alpha's last open straight back (Ch: with its canonical point)."""

    def choose(alpha_moves):
        U = _last_open(alpha_moves, space)
        if kind is GameKind.STRONG_CHOQUET:
            return PointedOpen.make(space, space.pick_point(U), U)
        return U

    return Strategy("beta", "canonical", choose)


def refine_alpha(space: Space, kind: GameKind, step: int = 1) -> Strategy:
    """Alpha shrinks around beta's point (BM: the canonical point) by `step`.

    On ω^ω and 2^ω this is the cylinder refiner.
    """

    def choose(beta_moves):
        last = beta_moves[-1]
        if kind is GameKind.STRONG_CHOQUET:
            return space.refine(last.point, last.open, step)
        return space.refine(space.pick_point(last), last, step)

    return Strategy("alpha", "cylinder" if step == 1 else f"refine{step}", choose)


def halver_alpha(space: Space) -> Strategy:
    """Alpha keeps the left half of beta's interval (rationals only)."""
    if not isinstance(space, Rationals):
        raise ConfigError("halver needs the rationals")

    def choose(beta_moves):
        lo, hi = iv_bounded(beta_moves[-1].descriptor)
        return space.interval(lo, (lo + hi) / 2)

    return Strategy("alpha", "halver", choose)


def echo_alpha(space: Space, kind: GameKind) -> Strategy:
    """Alpha never shrinks (Ch: replies V to (x, V))."""

    def choose(beta_moves):
        last = beta_moves[-1]
        return last.open if isinstance(last, PointedOpen) else last

    return Strategy("alpha", "echo", choose)


def remark_tactic(space: RemarkSpace) -> Strategy:
    """Alpha's tactic on Q ∪ D: {x} for x ∈ D, V itself for rational x."""
    if not isinstance(space, RemarkSpace):
        raise PreconditionError("the remark tactic lives on remark-qd spaces")

    def choose(beta_moves):
        last = beta_moves[-1]
        if space.is_d(last.point):
            return space.singleton(last.point.coords[1])
        return last.open

    return Strategy("alpha", "remark-tactic", choose)


def random_beta(space: Space, kind: GameKind, seed=0, d_round: Optional[int] = None) -> Strategy:
    """Seeded fuzz player for beta; deterministic in (seed, history).

    On remark-qd spaces, d_round forces a D-point at that round.
    """

    def choose(alpha_moves):
        n = len(alpha_moves)
        rng = _rng(seed, n)
        U = _last_open(alpha_moves, space)
        V = space.sample_subelement(U, rng)
        if kind is GameKind.BANACH_MAZUR:
            return V
        if d_round is not None and n >= d_round and isinstance(space, RemarkSpace):
            x = space.sample_point(U, rng)
            for _ in range(16):
                if space.is_d(x):
                    break
                x = space.sample_point(U, rng)
            if space.is_d(x):
                return PointedOpen.make(space, x, space.singleton(x.coords[1])
                                        if rng.random() < 0.3 else U)
        return PointedOpen.make(space, space.sample_point(V, rng), V)

    return Strategy("beta", f"fuzz{seed}", choose)


def rational_beta(space: RemarkSpace, seed=0) -> Strategy:
    """Beta on Q ∪ D that only ever presents rational points."""

    def choose(alpha_moves):
        n = len(alpha_moves)
        rng = _rng(seed, n)
        U = _last_open(alpha_moves, space)
        I = U.descriptor[1]
        lo, hi = iv_bounded(I)
        x = space.q(lo + (hi - lo) * Fraction(rng.randint(1, 7), 8))
        return PointedOpen.make(space, x, U)

    return Strategy("beta", f"rational{seed}", choose)


def random_alpha(space: Space, kind: GameKind, seed=0) -> Strategy:
    def choose(beta_moves):
        rng = _rng(f"a{seed}", len(beta_moves))
        last = beta_moves[-1]
        if isinstance(last, PointedOpen):
            return space.sample_subelement(last.open, rng, around=last.point)
        return space.sample_subelement(last, rng)

    return Strategy("alpha", f"fuzz{seed}", choose)


# -- Gruenhage -----------------------------------------------------------------------------------


def w_player(space: Space, center) -> Strategy:
    w = gruenhage_w_strategy(space, center)
    return Strategy("playerI", "w-point", lambda pts: w(pts), state=w)


def center_replier(space: Space, center) -> Strategy:
    return Strategy("playerII", "center", lambda nbhds: center)


def edge_replier(space: Space) -> Strategy:
    """Player II hugs the left end of each neighborhood (rationals)."""

    def choose(nbhds):
        U = nbhds[-1]
        if isinstance(space, Rationals):
            lo, hi = iv_bounded(U.descriptor)
            return space.point(lo + (hi - lo) / 1024)
        return space.pick_point(U)

    return Strategy("playerII", "edge", choose)


def random_replier(space: Space, seed=0) -> Strategy:
    return Strategy("playerII", f"fuzz{seed}",
                    lambda nbhds: space.sample_point(nbhds[-1], _rng(f"g{seed}", len(nbhds))))


# -- registry ---------------------------------------------------------------------------------------


def make_strategy(kind: GameKind, side: str, name: str, space: Space, seed=0, center=None) -> Strategy:
    """Build a stock strategy from its CLI name."""
    try:
        if kind is GameKind.GRUENHAGE:
            if side == "playerI":
                if name in ("w", "w-point"):
                    return w_player(space, center)
            elif name == "center":
                return center_replier(space, center)
            elif name == "edge":
                return edge_replier(space)
            elif name == "fuzz":
                return random_replier(space, seed)
        elif side == "beta":
            if name == "diagonal" and kind is GameKind.BANACH_MAZUR:
                return bm_rationals_beta_strategy() if isinstance(space, Rationals) else _bad(name, space)
            if name == "canonical":
                return echo_beta(space, kind)
            if name == "fuzz":
                return random_beta(space, kind, seed)
            if name == "fuzz-d" and isinstance(space, RemarkSpace):
                return random_beta(space, kind, seed, d_round=seed % 5)
            if name == "rational" and isinstance(space, RemarkSpace):
                return rational_beta(space, seed)
        else:
            if name == "cylinder":
                return refine_alpha(space, kind, 1)
            if name == "halver":
                return halver_alpha(space)
            if name == "echo":
                return echo_alpha(space, kind)
            if name == "remark" and kind is GameKind.STRONG_CHOQUET:
                return remark_tactic(space)
            if name == "fuzz":
                return random_alpha(space, kind, seed)
    except PreconditionError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"no {side} strategy {name!r} for {kind.value} on {space.space_id}")


def _bad(name, space):
    raise ConfigError(f"strategy {name!r} does not apply to {space.space_id}")


STRATEGY_NAMES: Dict[str, Tuple[str, ...]] = {
    "bm/beta": ("diagonal", "canonical", "fuzz"),
    "bm/alpha": ("halver", "cylinder", "echo", "fuzz"),
    "ch/beta": ("canonical", "fuzz", "fuzz-d", "rational"),
    "ch/alpha": ("cylinder", "echo", "remark", "fuzz"),
    "gruenhage/playerI": ("w",),
    "gruenhage/playerII": ("center", "edge", "fuzz"),
}
