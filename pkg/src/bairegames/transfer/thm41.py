"""Moving β strategies between BM(∏ X_i) and BM(∏ K(X_i)).

X-side moves are finite-support boxes of base elements; Krom-side moves
are finite-support boxes of stems. Projection keeps each stem's last
entry. Lifting lets σ answer the projected play and appends its answers
to the stems; lowering feeds σ* the stems extended by α's entries.

Both transfers are pure functions of the history: each call replays the
whole play, so strategies can be shared between plays and compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import IllegalStrategyMove, InvariantViolation, PreconditionError
from ..games.core import GameKind, History, Strategy, legal_move
from ..krom import KromPoint, KromSpace, constant_tail
from ..topology.base import BaseElement, Point, Space
from ..topology.finite import FiniteSpace
from .products import ProductSpace


def krom_product(X: ProductSpace) -> ProductSpace:
    return ProductSpace({i: KromSpace(F) for i, F in X.factors.items()})


def project(X: ProductSpace, K: ProductSpace, box_star: BaseElement) -> BaseElement:
    """∏ U_i(m_i) over the support, whole factor elsewhere."""
    K.check(box_star)
    return X.box({i: stem[-1] for i, E in box_star.descriptor
                  for stem in [E.descriptor] if stem})


def _stems(K: ProductSpace, box_star: BaseElement) -> Dict[int, tuple]:
    return {i: E.descriptor for i, E in box_star.descriptor if E.descriptor}


def _stem_box(K: ProductSpace, stems: Dict[int, tuple]) -> BaseElement:
    return K.box({i: K.factors[i].element(stem) for i, stem in stems.items()})


# -- lift ------------------------------------------------------------------------------------------


def lift_step(sigma: Strategy, X: ProductSpace, K: ProductSpace,
              projected: Sequence[BaseElement], last_alpha_star: Optional[BaseElement]):
    """One σ* answer: σ's move on the projected play, appended to α's stems."""
    k = len(projected)
    V = sigma(tuple(projected))
    X.check(V)
    if projected and not X.contains(V, projected[-1]):
        raise IllegalStrategyMove("beta", k, V, f"{sigma.name} left the projected box")
    prev = _stems(K, last_alpha_star) if last_alpha_star is not None else {}
    stems = {}
    for i in sorted(set(X.support(V)) | set(prev)):
        Vi = X.entry(V, i)
        if i in prev:
            stem = prev[i]
            if not X.factors[i].contains(Vi, stem[-1]):
                raise InvariantViolation(f"σ's entry at index {i} is not inside its stem")
            stems[i] = stem + (Vi,)
        else:
            stems[i] = (Vi,)
    star = _stem_box(K, stems)
    if last_alpha_star is not None and not K.contains(star, last_alpha_star):
        raise InvariantViolation(f"lifted move {k} is not inside α's Krom box")
    return V, star


def lifted_replay(sigma: Strategy, X: ProductSpace, K: ProductSpace, alpha_star: Sequence[BaseElement]):
    """Replay the lift on α's Krom moves.

    Returns (star_moves, projected_alpha, sigma_moves): σ*'s answers, the
    projections U_k of α's moves and σ's answers V_k on them.
    """
    projected: List[BaseElement] = []
    sigma_moves: List[BaseElement] = []
    star_moves: List[BaseElement] = []
    for k in range(len(alpha_star) + 1):
        V, star = lift_step(sigma, X, K, projected, alpha_star[k - 1] if k else None)
        sigma_moves.append(V)
        star_moves.append(star)
        if k < len(alpha_star):
            U_star = alpha_star[k]
            K.check(U_star)
            if not K.contains(U_star, star):
                raise PreconditionError(f"α's Krom move {k} is not inside σ*'s box")
            projected.append(project(X, K, U_star))
    return star_moves, projected, sigma_moves


def krom_lift_beta(sigma: Strategy, X: ProductSpace, K: Optional[ProductSpace] = None) -> Strategy:
    """σ* for β in BM(∏ K(X_i)) from σ for β in BM(∏ X_i)."""
    K = K or krom_product(X)

    def choose(alpha_star):
        return lifted_replay(sigma, X, K, alpha_star)[0][-1]

    return Strategy("beta", f"lift({sigma.name})", choose, {"X": X, "K": K, "sigma": sigma})


# -- lower -----------------------------------------------------------------------------------------


def lower_step(sigma_star: Strategy, X: ProductSpace, K: ProductSpace,
               star_alpha: Sequence[BaseElement]):
    """σ*'s answer to the translated α moves, and its projection."""
    V_star = sigma_star(tuple(star_alpha))
    K.check(V_star)
    if star_alpha and not K.contains(V_star, star_alpha[-1]):
        raise IllegalStrategyMove("beta", len(star_alpha), V_star,
                                  f"{sigma_star.name} left α's Krom box")
    return V_star, project(X, K, V_star)


def translate_alpha(X: ProductSpace, K: ProductSpace, V_star: BaseElement, V: BaseElement,
                    U: BaseElement) -> BaseElement:
    """U*: σ*'s stems extended by α's entries U_i (fresh stems for new indices)."""
    X.check(U)
    if not X.contains(U, V):
        raise PreconditionError("α's move is not inside σ's box")
    prev = _stems(K, V_star)
    stems = {i: prev.get(i, ()) + (X.entry(U, i),) for i in sorted(set(prev) | set(X.support(U)))}
    U_star = _stem_box(K, stems)
    if not K.contains(U_star, V_star):
        raise InvariantViolation("lowered α move is not inside σ*'s box")
    return U_star


def lowered_replay(sigma_star: Strategy, X: ProductSpace, K: ProductSpace,
                   alpha_moves: Sequence[BaseElement]):
    """Replay the lowering on α's X moves.

    Returns (star_history, projections): the interleaved Krom play
    V*_0, U*_0, V*_1, ..., V*_k, and σ's answers (the projections of
    the V*_k).
    """
    star_history: List[BaseElement] = []
    projections: List[BaseElement] = []
    star_alpha: List[BaseElement] = []
    for k in range(len(alpha_moves) + 1):
        V_star, V = lower_step(sigma_star, X, K, star_alpha)
        star_history.append(V_star)
        projections.append(V)
        if k < len(alpha_moves):
            U_star = translate_alpha(X, K, V_star, V, alpha_moves[k])
            star_alpha.append(U_star)
            star_history.append(U_star)
    return star_history, projections


def krom_lower_beta(sigma_star: Strategy, X: ProductSpace, K: Optional[ProductSpace] = None) -> Strategy:
    """σ for β in BM(∏ X_i) from σ* for β in BM(∏ K(X_i))."""
    K = K or krom_product(X)

    def choose(alpha_moves):
        return lowered_replay(sigma_star, X, K, alpha_moves)[1][-1]

    return Strategy("beta", f"lower({sigma_star.name})", choose, {"X": X, "K": K, "sigma_star": sigma_star})


# -- counterplay extraction ------------------------------------------------------------------------


@dataclass
class Extraction:
    point: object
    checks: List[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks)


def extract_counterplay_lift(f: Dict[int, KromPoint], X: ProductSpace,
                             projected_play: Sequence[BaseElement]) -> Extraction:
    """x_i = witness of f(i) (canonical point off the family); checked against the projected play."""
    coords = {}
    for i, F in X.factors.items():
        g = f.get(i)
        if g is None:
            coords[i] = F.pick_point(F.whole())
            continue
        if getattr(g, "witness", None) is None:
            raise PreconditionError(f"Krom point at index {i} carries no witness")
        coords[i] = g.witness
    x = X.make_point(coords)
    return Extraction(x, [X.member(x, B) for B in projected_play])


def extract_counterplay_lower(x: Point, X: ProductSpace, K: ProductSpace,
                              star_play: Sequence[BaseElement]) -> Extraction:
    """f(i) = the longest stem at i, held constant, witnessed by x_i; (X_i) off support."""
    coords = dict(x.coords)
    family = {}
    for i, F in X.factors.items():
        longest: tuple = ()
        for B in star_play:
            stem = K.entry(B, i).descriptor
            if len(stem) > len(longest):
                longest = stem
        family[i] = KromPoint(F, longest or (F.whole(),), coords[i], constant_tail)
    f = K.make_point(family)
    return Extraction(f, [K.member(f, B) for B in star_play])


# -- stock strategies -------------------------------------------------------------------------------


def _minimal(F: Space, U: BaseElement) -> BaseElement:
    if isinstance(F, FiniteSpace):
        return F.minimal_open(F.pick_point(U))
    return F.refine(F.pick_point(U), U, 1)


def shrink_beta(X: ProductSpace) -> Strategy:
    """Round k: shrink every supported entry to a minimal open, add index k."""

    def choose(alpha_moves):
        base = alpha_moves[-1] if alpha_moves else X.whole()
        support = set(X.support(base))
        k = len(alpha_moves)
        if k < len(X.indices):
            support.add(X.indices[k])
        return X.box({i: _minimal(X.factors[i], X.entry(base, i)) for i in sorted(support)})

    return Strategy("beta", "shrink", choose)


def expand_beta(X: ProductSpace) -> Strategy:
    """Echo α's box and add index k to the support with the whole factor."""

    def choose(alpha_moves):
        base = alpha_moves[-1] if alpha_moves else X.whole()
        support = set(X.support(base))
        k = len(alpha_moves)
        if k < len(X.indices):
            support.add(X.indices[k])
        return X.box({i: X.entry(base, i) for i in sorted(support)})

    return Strategy("beta", "expand", choose)


def krom_shrink_beta(K: ProductSpace) -> Strategy:
    """Native σ*: extend each stem by a minimal open, open a stem at index k."""

    def choose(alpha_star):
        base = alpha_star[-1] if alpha_star else K.whole()
        stems = _stems(K, base)
        k = len(alpha_star)
        if k < len(K.indices) and K.indices[k] not in stems:
            stems[K.indices[k]] = ()
        out = {}
        for i, stem in stems.items():
            F = K.factors[i].base
            last = stem[-1] if stem else F.whole()
            out[i] = stem + (_minimal(F, last),)
        return _stem_box(K, out)

    return Strategy("beta", "krom-shrink", choose)


# -- exhaustive checking on finite factors ---------------------------------------------------------


def _x_replies(X: ProductSpace, V: BaseElement):
    options = []
    for i, F in X.factors.items():
        if i in X.support(V):
            options.append([(i, E) for E in F.subelements(X.entry(V, i))])
        else:
            options.append([None] + [(i, E) for E in F.elements()])
    for combo in cartesian(*options):
        yield X.box({i: E for i, E in (c for c in combo if c is not None)})


def _krom_replies(K: ProductSpace, V_star: BaseElement):
    """α keeps each stem or extends it by one entry; unsupported indices may open a stem."""
    options = []
    for i, KF in K.factors.items():
        F = KF.base
        stem = K.entry(V_star, i).descriptor
        if stem:
            options.append([(i, stem)] + [(i, stem + (E,)) for E in F.subelements(stem[-1])])
        else:
            options.append([None] + [(i, (E,)) for E in F.elements()])
    for combo in cartesian(*options):
        yield _stem_box(K, {i: s for i, s in (c for c in combo if c is not None)})


@dataclass
class DualityReport:
    direction: str
    strategy: str
    plays: int = 0
    moves_checked: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {"direction": self.direction, "strategy": self.strategy, "plays": self.plays,
                "moves_checked": self.moves_checked, "counterexamples": self.counterexamples[:10],
                "ok": self.ok}


def _bm_legal(space: Space, moves: Sequence[BaseElement]) -> bool:
    h = History(GameKind.BANACH_MAZUR, space)
    for m in moves:
        if not legal_move(h, m):
            return False
        h = h.append(m)
    return True


def memoized(strategy: Strategy) -> Strategy:
    """Cache a deterministic strategy's answers by history."""
    cache = {}

    def choose(moves):
        if moves not in cache:
            cache[moves] = strategy(moves)
        return cache[moves]

    return Strategy(strategy.side, strategy.name, choose, strategy.state)


def _extend(history: Optional[History], *moves) -> Optional[History]:
    """Append moves through the referee; None once a move is illegal."""
    for m in moves:
        if history is None or not legal_move(history, m):
            return None
        history = history.append(m)
    return history


def check_lift(sigma: Strategy, X: ProductSpace, depth: int) -> DualityReport:
    """All α replies on the Krom side: legality, projection and extraction."""
    K = krom_product(X)
    sigma = memoized(sigma)
    report = DualityReport("lift", sigma.name)

    def walk(alpha_star, history, stars, projected, sigma_moves):
        V, star = lift_step(sigma, X, K, projected, alpha_star[-1] if alpha_star else None)
        stars, sigma_moves = stars + [star], sigma_moves + [V]
        report.moves_checked += 1
        if alpha_star:
            history = _extend(history, alpha_star[-1], stars[-1])
        else:
            history = _extend(history, stars[0])
        if history is None:
            report.counterexamples.append(f"illegal σ*-play after {len(alpha_star)} α moves")
            return
        if len(alpha_star) == depth:
            _finish_lift(X, K, alpha_star, stars, projected, sigma_moves, report)
            return
        for U_star in _krom_replies(K, star):
            walk(alpha_star + [U_star], history, stars, projected + [project(X, K, U_star)],
                 sigma_moves)

    walk([], History(GameKind.BANACH_MAZUR, K), [], [], [])
    return report


def _finish_lift(X, K, alpha_star, stars, projected, sigma_moves, report):
    """Leaf of the lift walk; the play ends with α's move alpha_star[-1]."""
    report.plays += 1
    sigma_moves = sigma_moves[: len(projected)]
    stars = stars[: len(alpha_star)]
    projected_play = [m for pair in zip(sigma_moves, projected) for m in pair]
    if not _bm_legal(X, projected_play):
        report.counterexamples.append("projected play is not a legal σ-play")
        return
    for V, V_star in zip(sigma_moves, stars):
        if project(X, K, V_star) != V:
            report.counterexamples.append("σ*'s move does not project to σ's move")
            return
    star_play = [m for pair in zip(stars, alpha_star) for m in pair]
    f_box = K.pick_point(alpha_star[-1])
    if not all(K.member(f_box, B) for B in star_play):
        report.counterexamples.append("canonical Krom point left the σ*-play")
        return
    ext = extract_counterplay_lift(dict(f_box.coords), X, projected_play)
    if not ext.ok:
        report.counterexamples.append("lift extraction left the projected play")


def check_lower(sigma_star: Strategy, X: ProductSpace, depth: int) -> DualityReport:
    """All α replies on the X side: legality and extraction back to the Krom play."""
    K = krom_product(X)
    sigma_star = memoized(sigma_star)
    report = DualityReport("lower", sigma_star.name)

    def walk(alpha, history, star_alpha, star_history, projections):
        V_star, V = lower_step(sigma_star, X, K, star_alpha)
        projections = projections + [V]
        star_history = star_history + [V_star]
        report.moves_checked += 1
        history = _extend(history, *((alpha[-1], V) if alpha else (V,)))
        if history is None:
            report.counterexamples.append(f"illegal lowered move after {len(alpha)} α moves")
            return
        if len(alpha) == depth:
            _finish_lower(X, K, alpha, star_history, projections, report)
            return
        for U in _x_replies(X, V):
            U_star = translate_alpha(X, K, V_star, V, U)
            walk(alpha + [U], history, star_alpha + [U_star], star_history + [U_star], projections)

    walk([], History(GameKind.BANACH_MAZUR, X), [], [], [])
    return report


def _finish_lower(X, K, alpha, star_history, projections, report):
    """Leaf of the lower walk; the play ends with α's move alpha[-1]."""
    report.plays += 1
    star_play = star_history[: 2 * len(alpha)]
    if not _bm_legal(K, star_play):
        report.counterexamples.append("replayed σ*-play is not legal")
        return
    play = [m for pair in zip(projections, alpha) for m in pair]
    x = X.pick_point(alpha[-1])
    if not all(X.member(x, B) for B in play):
        report.counterexamples.append("canonical point left the lowered play")
        return
    ext = extract_counterplay_lower(x, X, K, star_play)
    if not ext.ok:
        report.counterexamples.append("lower extraction left the σ*-play")


def check_roundtrip(sigma: Strategy, X: ProductSpace, depth: int) -> DualityReport:
    """lower(lift(σ)) answers inside σ's answers on every α history."""
    K = krom_product(X)
    sigma = memoized(sigma)
    twice = krom_lower_beta(memoized(krom_lift_beta(sigma, X, K)), X, K)
    report = DualityReport("roundtrip", sigma.name)

    def walk(alpha):
        V, W = sigma(tuple(alpha)), twice(tuple(alpha))
        report.moves_checked += 1
        if not X.contains(W, V):
            report.counterexamples.append(f"round trip left σ's move after {len(alpha)} α moves")
            return
        if len(alpha) == depth:
            report.plays += 1
            return
        for U in _x_replies(X, V):
            walk(alpha + [U])

    walk([])
    return report


def duality_suite(F: FiniteSpace, n_indices: int, depth: int) -> List[DualityReport]:
    """Lift, lower and round trip for the stock strategies on F^n_indices."""
    X = ProductSpace({i: F for i in range(n_indices)})
    K = krom_product(X)
    reports = []
    for sigma in (shrink_beta(X), expand_beta(X)):
        reports.append(check_lift(sigma, X, depth))
        reports.append(check_lower(krom_lift_beta(memoized(sigma), X, K), X, depth))
        reports.append(check_roundtrip(sigma, X, depth))
    reports.append(check_lower(krom_shrink_beta(K), X, depth))
    return reports
