"""Lowering a β strategy from Ch(K⁰(X)) to Ch(X) on spaces with a BCO.

β in Ch(X) shadows a play of σ* on K⁰(X). Each σ* move is a certified
Krom point f_k with a basic open [f_k↾m_k]; β presents the witness of
f_k together with f_k(m_k - 1) (if it is a singleton) or a strictly
smaller open around the witness. When α answers U_k, the first entry
f_k(n_k) inside U_k exists because f_k shrinks to a neighborhood base,
and [f_k↾(n_k + 1)] becomes α's move in the shadow play.

The glue companion turns a surviving Ch(X) play into a Krom point that
survives the shadow play: it agrees with f_k on [m_{k-1}, m_k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from ..errors import FuelExhausted, IllegalStrategyMove, InvariantViolation, PreconditionError, UnsupportedError
from ..games.core import GameKind, History, Strategy, legal_move
from ..krom import K0Space, KromPoint, k0_certify, nbhd_tail
from ..topology.base import BaseElement, PointedOpen, Space, default_fuel


def canonical_krom_beta(K0: K0Space) -> Strategy:
    """β in Ch(K⁰): shrink around the canonical point of α's last stem.

    Round 0 plays the canonical point of the whole space with m = 1;
    afterwards f = h ⌢ (neighborhood tail) for α's stem h, with m = |h| + 1.
    """

    def choose(alpha_moves):
        h = alpha_moves[-1].descriptor if alpha_moves else ()
        f = K0.pick_point(K0.element(h))
        m = len(h) + 1 if h else 1
        return PointedOpen.make(K0, f, K0.element(f.materialize(m)))

    return Strategy("beta", "krom-canonical", choose)


def krom_shrink_alpha(K0: K0Space, step: int = 1) -> Strategy:
    """α in Ch(K⁰): answer (f, [f↾m]) with [f↾(m + step)]."""

    def choose(beta_moves):
        last = beta_moves[-1]
        m = len(last.open.descriptor)
        return K0.element(last.point.materialize(m + step))

    return Strategy("alpha", f"krom-shrink{step}", choose)


@dataclass
class LoweredRound:
    f: KromPoint
    m: int
    x: object
    V: BaseElement
    n: Optional[int] = None


@dataclass
class LoweredState:
    rounds: List[LoweredRound] = field(default_factory=list)
    shadow: List[object] = field(default_factory=list)


def _beta_open(X: Space, f: KromPoint, m: int) -> BaseElement:
    last = f.element(m - 1)
    if X.is_singleton(last):
        return last
    try:
        V = X.proper_subelement(f.witness, last)
    except UnsupportedError as exc:
        raise UnsupportedError(f"no strictly smaller open inside f({m - 1}): {exc}") from exc
    if V == last or not X.contains(V, last):
        raise UnsupportedError(f"proper subelement of f({m - 1}) is not strictly smaller")
    return V


def lowered_ch_replay(sigma_star: Strategy, X: Space, K0: K0Space, alpha_moves: Sequence[BaseElement],
                      fuel: Optional[int] = None) -> LoweredState:
    fuel = default_fuel() if fuel is None else fuel
    state = LoweredState()
    shadow_alpha: List[BaseElement] = []
    for k in range(len(alpha_moves) + 1):
        move = sigma_star(tuple(shadow_alpha))
        if not isinstance(move, PointedOpen):
            raise IllegalStrategyMove("beta", k, move, "σ* must play a pointed open")
        f, box = move.point, move.open
        K0.check(f, box)
        if not K0.member(f, box) or (shadow_alpha and not K0.contains(box, shadow_alpha[-1])):
            raise IllegalStrategyMove("beta", k, move, f"{sigma_star.name} broke the Ch(K⁰) rules")
        m = len(box.descriptor)
        if m < 1:
            raise IllegalStrategyMove("beta", k, move, "σ* must fix at least one entry")
        state.shadow.append(move)
        state.rounds.append(LoweredRound(f, m, f.witness, _beta_open(X, f, m)))
        if k == len(alpha_moves):
            break
        cur = state.rounds[-1]
        U = alpha_moves[k]
        X.check(U)
        if not (X.member(cur.x, U) and X.contains(U, cur.V)):
            raise PreconditionError(f"α's move {k} is not a legal Ch(X) reply")
        n = cur.m
        while not X.contains(f.element(n), U):
            n += 1
            if n - cur.m >= fuel:
                raise FuelExhausted(f"no entry of f_{k} below m_{k} + {fuel} fits inside U_{k}")
        cur.n = n
        answer = K0.element(f.materialize(n + 1))
        shadow_alpha.append(answer)
        state.shadow.append(answer)
    return state


def bco_ch_lower(sigma_star: Strategy, X: Space, K0: Optional[K0Space] = None,
                 fuel: Optional[int] = None) -> Strategy:
    """β in Ch(X) from β in Ch(K⁰(X))."""
    if not X.has_bco:
        raise UnsupportedError(f"{X.space_id} carries no base of countable order")
    K0 = K0 or K0Space(X)
    holder = {"state": LoweredState()}

    def choose(alpha_moves):
        state = lowered_ch_replay(sigma_star, X, K0, alpha_moves, fuel)
        holder["state"] = state
        last = state.rounds[-1]
        return PointedOpen.make(X, last.x, last.V)

    return Strategy("beta", f"lower({sigma_star.name})", choose, holder)


# -- glue companion --------------------------------------------------------------------------------


@dataclass
class GlueReport:
    f: KromPoint
    ms: List[int]
    agree: List[bool]
    in_shadow: List[bool]
    strict: bool
    certified: bool
    f_certificates: List[bool]

    @property
    def ok(self) -> bool:
        return all(self.agree) and all(self.in_shadow) and self.strict and self.certified \
            and all(self.f_certificates)

    def to_json(self) -> dict:
        return {"m": self.ms, "agree": self.agree, "in_shadow": self.in_shadow,
                "strict": self.strict, "certified": self.certified,
                "f_certificates": self.f_certificates, "ok": self.ok,
                "glued": self.f.to_json(extra=2)}


def glue(state: LoweredState, X: Space, y, depth: Optional[int] = None) -> KromPoint:
    """f with f(p) = f_k(p) for m_{k-1} <= p < m_k, then shrinking around y."""
    prefix: List[BaseElement] = []
    for r in state.rounds:
        prefix.extend(r.f.materialize(r.m)[len(prefix):])
    if not prefix:
        raise PreconditionError("nothing to glue")
    return KromPoint(X, prefix, y, nbhd_tail, name="glued")


def _strict_or_singleton(X: Space, f: KromPoint, upto: int) -> bool:
    elems = f.materialize(upto)
    for p in range(len(elems) - 1):
        if elems[p + 1] == elems[p]:
            if not X.is_singleton(elems[p]):
                return False
        elif not X.contains(elems[p + 1], elems[p]):
            return False
    return True


def glue_check(state: LoweredState, X: Space, K0: K0Space, y, cert_depth: int = 8) -> GlueReport:
    f = glue(state, X, y)
    ms = [r.m for r in state.rounds]
    agree = [f.materialize(r.m) == r.f.materialize(r.m) for r in state.rounds]
    in_shadow = [K0.member(f, mv.open if isinstance(mv, PointedOpen) else mv) for mv in state.shadow]
    upto = max(ms) + cert_depth
    strict = _strict_or_singleton(X, f, upto)
    try:
        k0_certify(f, cert_depth)
        certified = True
    except Exception:
        certified = False
    f_certs = []
    for r in state.rounds:
        try:
            f_certs.append(k0_certify(r.f, cert_depth).recheck())
        except Exception:
            f_certs.append(False)
    return GlueReport(f, ms, agree, in_shadow, strict, certified, f_certs)


def run_thm43(X: Space, depth: int, alpha: Optional[Strategy] = None, fuel: Optional[int] = None,
              cert_depth: int = 8) -> dict:
    """Lower the canonical Ch(K⁰) player, play `depth` rounds, glue and certify."""
    from ..games.core import run_game
    from ..games.strategies import refine_alpha

    K0 = K0Space(X)
    sigma = bco_ch_lower(canonical_krom_beta(K0), X, K0, fuel)
    alpha = alpha or refine_alpha(X, GameKind.STRONG_CHOQUET)
    tr = run_game(GameKind.STRONG_CHOQUET, X, sigma, alpha, depth)
    state = lowered_ch_replay(sigma_star=canonical_krom_beta(K0), X=X, K0=K0,
                              alpha_moves=tr.history.second_moves(), fuel=fuel)
    if depth == 0:
        return {"theorem": "4.3", "depth": 0, "ok": True, "trace": tr.to_jsonl()}
    y = X.pick_point(tr.history.last_open())
    report = glue_check(state, X, K0, y, cert_depth)
    strict_beta = []
    for r in state.rounds:
        last = r.f.element(r.m - 1)
        strict_beta.append(X.is_singleton(last) and r.V == last
                           or (r.V != last and X.contains(r.V, last)))
    shadow = History(GameKind.STRONG_CHOQUET, K0)
    shadow_legal = True
    for mv in state.shadow:
        if not legal_move(shadow, mv):
            shadow_legal = False
            break
        shadow = shadow.append(mv)
    return {"theorem": "4.3", "depth": depth, "space": X.space_id,
            "n": [r.n for r in state.rounds if r.n is not None],
            "beta_strict": strict_beta, "shadow_legal": shadow_legal,
            "glue": report.to_json(),
            "ok": report.ok and all(strict_beta) and shadow_legal,
            "trace": tr.to_jsonl()}
