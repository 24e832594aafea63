"""β strategies for BM(X) and Ch(Y) built from dense open sets of X × Y.

σ_X plays BM(X) while growing, level by level of the branching tree, a
family of Y-boxes V_t with W-points y_t. Each call runs an H-chain: one
dense refinement per t⁻ and per t⁺ of the current level, in lexicographic
order. σ_Y then walks the tree in Ch(Y), always entering the first
child whose W-point lies in α's last open. A surviving BM(X) point x and
a surviving Ch(Y) point y land together in every dense open set.

Box containment in a dense open set is read as O_n ∩ (A × V_t).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .. import branchtree as bt
from ..errors import FuelExhausted, InvariantViolation, PreconditionError
from ..games.core import GameKind, Strategy, Transcript, run_game
from ..games.strategies import echo_alpha, refine_alpha
from ..topology.base import BaseElement, PointedOpen, Space, WPointStrategy, default_fuel, gruenhage_w_strategy
from ..topology.oracles import DenseOpenOracle, dense_refine, puncture_schedule, whole_schedule

SAMPLES = 32


@dataclass
class NodeRecord:
    y: object
    V: BaseElement
    W: WPointStrategy


def default_w_chooser(Y: Space):
    """W-point at the canonical point of V_t, answered by its neighborhood base."""

    def choose(V: BaseElement):
        y = Y.pick_point(V)
        return y, gruenhage_w_strategy(Y, y)

    return choose


@dataclass
class LevelReport:
    level: int
    refinements: int
    nodes: int = 0
    O_ok: bool = True
    W_ok: bool = True
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"level": self.level, "refinements": self.refinements, "nodes": self.nodes,
                "O": self.O_ok, "W": self.W_ok, "failures": self.failures}


@dataclass
class Thm32State:
    X: Space
    Y: Space
    schedule: Sequence[DenseOpenOracle]
    U: BaseElement
    V: BaseElement
    w_chooser: Optional[Callable] = None
    seed: int = 0
    records: Dict[tuple, NodeRecord] = field(default_factory=dict)
    U_seq: List[BaseElement] = field(default_factory=list)
    A_seq: List[BaseElement] = field(default_factory=list)
    reports: List[LevelReport] = field(default_factory=list)

    def __post_init__(self):
        self.X.check(self.U)
        self.Y.check(self.V)
        if self.w_chooser is None:
            self.w_chooser = default_w_chooser(self.Y)

    @property
    def n(self) -> int:
        """Number of U_n emitted so far."""
        return len(self.U_seq)

    def oracle(self, n: int) -> DenseOpenOracle:
        if n >= len(self.schedule):
            raise FuelExhausted(f"schedule has no dense open set O_{n}")
        return self.schedule[n]

    def record(self, t, V: BaseElement):
        y, w = self.w_chooser(V)
        if not self.Y.member(y, V):
            raise InvariantViolation(f"W-point for node {t} is outside V_t")
        self.records[tuple(t)] = NodeRecord(y, V, w)

    def node(self, t) -> NodeRecord:
        try:
            return self.records[tuple(t)]
        except KeyError:
            raise FuelExhausted(f"node {list(t)} has not been built yet") from None

    def w_nbhd(self, t) -> BaseElement:
        """W_{y_s}(y_{s⌢0}, ..., y_t) for s = s_t."""
        s, _ = bt.source(t)
        points = [self.node(s + (j,)).y for j in range(t[-1] + 1)]
        return self.node(s).W(points)

    def plus_target(self, t) -> BaseElement:
        s, _ = bt.source(t)
        target = self.Y.intersect(self.node(s).V, self.w_nbhd(t))
        if target is None:
            raise InvariantViolation(f"V_s ∩ W-neighborhood is empty at node {list(t)}")
        return target


# -- σ_X -------------------------------------------------------------------------------------------


def _sampled_inside(state: Thm32State, oracle, U, V, rng) -> bool:
    for _ in range(SAMPLES):
        if not oracle.member(state.X.sample_point(U, rng), state.Y.sample_point(V, rng)):
            return False
    return True


def _box_in_oracle(state, oracle, U, V, rng) -> bool:
    exact = oracle.box_inside(U, V)
    if exact is False:
        return False
    return _sampled_inside(state, oracle, U, V, rng)


def certify_level(state: Thm32State, n: int) -> Tuple[bool, bool, List[str]]:
    """Check the two containments for U_n and every t in T_n (n ≥ 1)."""
    X, Y = state.X, state.Y
    U_n, A = state.U_seq[n], state.A_seq[n - 1]
    oracle = state.oracle(n)
    rng = random.Random(f"{state.seed}:certify:{n}")
    o_ok = w_ok = X.contains(U_n, A)
    failures = [] if o_ok else [f"U_{n} is not inside A_{n - 1}"]
    for t in bt.level(n):
        t_minus, t_plus = bt.successors(t)
        Vm, Vp = state.node(t_minus).V, state.node(t_plus).V
        if not (Y.contains(Vm, state.node(t).V) and _box_in_oracle(state, oracle, U_n, Vm, rng)):
            o_ok = False
            failures.append(f"(O) fails at node {list(t)}")
        s, _ = bt.source(t)
        if not (Y.contains(Vp, state.node(s).V) and Y.contains(Vp, state.w_nbhd(t))
                and _box_in_oracle(state, oracle, U_n, Vp, rng)):
            w_ok = False
            failures.append(f"(W) fails at node {list(t)}")
    return o_ok, w_ok, failures


def certify_base(state: Thm32State) -> Tuple[bool, List[str]]:
    X, Y = state.X, state.Y
    U0, V0 = state.U_seq[0], state.node((0,)).V
    rng = random.Random(f"{state.seed}:certify:0")
    ok = X.contains(U0, state.U) and Y.contains(V0, state.V) and \
        _box_in_oracle(state, state.oracle(0), U0, V0, rng)
    return ok, [] if ok else ["U_0 × V_(0) is not inside O_0 ∩ (U × V)"]


def sigma_x_step(state: Thm32State, A_moves: Sequence[BaseElement]) -> BaseElement:
    """Advance σ_X by one call; A_moves must extend the moves already seen."""
    X = state.X
    n = len(A_moves)
    if list(A_moves[: len(state.A_seq)]) != state.A_seq:
        raise PreconditionError("history does not extend the one σ_X has seen")
    if n != state.n:
        raise PreconditionError(f"σ_X expected a history of length {state.n}, got {n}")
    if n == 0:
        state.record(bt.ROOT, state.V)
        U0, V0 = dense_refine(state.oracle(0), state.U, state.V)
        state.record((0,), V0)
        state.U_seq.append(U0)
        ok, failures = certify_base(state)
        state.reports.append(LevelReport(0, 1, 1, ok, ok, failures))
        if not ok:
            raise InvariantViolation("; ".join(failures))
        return U0
    A = A_moves[-1]
    X.check(A)
    if not X.contains(A, state.U_seq[-1]):
        raise PreconditionError(f"A_{n - 1} is not inside U_{n - 1}")
    state.A_seq.append(A)
    oracle = state.oracle(n)
    nodes = bt.level(n)
    H = A
    count = 0
    for t in nodes:
        H2, Vm = dense_refine(oracle, H, state.node(t).V)
        state.record(bt.minus(t), Vm)
        H, count = H2, count + 1
    for t in nodes:
        H2, Vp = dense_refine(oracle, H, state.plus_target(t))
        state.record(bt.plus(t), Vp)
        H, count = H2, count + 1
    state.U_seq.append(H)
    o_ok, w_ok, failures = certify_level(state, n)
    state.reports.append(LevelReport(n, count, len(nodes), o_ok, w_ok, failures))
    if not (o_ok and w_ok):
        raise InvariantViolation("; ".join(failures))
    return H


def build_sigma_x(state: Thm32State) -> Strategy:
    """β in BM(X). Calls must follow one play (the strategy is stateful)."""

    def choose(alpha_moves):
        alpha_moves = list(alpha_moves)
        if len(alpha_moves) < state.n:
            if alpha_moves != state.A_seq[: len(alpha_moves)]:
                raise PreconditionError("σ_X follows a single play; start a fresh state")
            return state.U_seq[len(alpha_moves)]
        return sigma_x_step(state, alpha_moves)

    return Strategy("beta", "sigma_X", choose, state)


# -- σ_Y -------------------------------------------------------------------------------------------


@dataclass
class Thm32ChoquetState:
    x: object
    path: Tuple[int, ...] = ()
    z: object = None
    W: Optional[BaseElement] = None
    ks: List[int] = field(default_factory=list)


def sigma_y_replay(state: Thm32State, B_moves: Sequence[BaseElement], fuel: Optional[int] = None):
    """Replay σ_Y on α's moves; returns (path, z, W, ks)."""
    Y = state.Y
    fuel = default_fuel() if fuel is None else fuel
    root = state.node(bt.ROOT)
    t, z, W, ks = bt.ROOT, root.y, root.V, []
    for n, B in enumerate(B_moves):
        Y.check(B)
        if not (Y.member(z, B) and Y.contains(B, W)):
            raise PreconditionError(f"B_{n} is not a legal Ch move")
        start = 0 if n == 0 else n
        k = start
        while not Y.member(state.node(t + (k,)).y, B):
            k += 1
            if k - start >= fuel:
                raise FuelExhausted(f"no W-point below node {list(t)} entered B_{n}")
        t = t + (k,)
        ks.append(k)
        rec = state.node(t)
        W = Y.intersect(B, rec.V)
        if W is None:
            raise InvariantViolation(f"B_{n} ∩ V_{list(t)} is empty")
        z = rec.y
    return t, z, W, ks


def build_sigma_y(x_transcript: Transcript, state: Thm32State, fuel: Optional[int] = None) -> Strategy:
    """β in Ch(Y), driven by the tree built while σ_X played x_transcript."""
    if x_transcript.kind is not GameKind.BANACH_MAZUR or not x_transcript.moves:
        raise PreconditionError("σ_Y needs a nonempty BM(X) play of σ_X")
    x = state.X.pick_point(x_transcript.history.last_open())
    ch_state = Thm32ChoquetState(x)

    def choose(alpha_moves):
        t, z, W, ks = sigma_y_replay(state, alpha_moves, fuel)
        ch_state.path, ch_state.z, ch_state.W, ch_state.ks = t, z, W, ks
        return PointedOpen.make(state.Y, z, W)

    return Strategy("beta", "sigma_Y", choose, ch_state)


# -- witness assembly ------------------------------------------------------------------------------


@dataclass
class WitnessCertificate:
    x: object
    y: object
    checks: List[dict]

    def to_json(self, X: Space, Y: Space) -> dict:
        return {"x": X.encode_point(self.x), "y": Y.encode_point(self.y), "checks": self.checks}


def assemble_witness(x, ch_transcript: Optional[Transcript], state: Thm32State, N: int):
    """(x, y) with a membership certificate for U × V and O_0..O_{N-1}."""
    X, Y = state.X, state.Y
    if ch_transcript is None or not ch_transcript.moves:
        y = Y.pick_point(state.V)
    else:
        y = Y.pick_point(ch_transcript.history.last_open())
    checks = [{"set": "U", "ok": X.member(x, state.U)}, {"set": "V", "ok": Y.member(y, state.V)}]
    for n in range(N):
        checks.append({"set": f"O_{n}", "ok": state.oracle(n).member(x, y)})
    bad = [c["set"] for c in checks if not c["ok"]]
    if bad:
        raise InvariantViolation(f"assembled pair fails membership in {', '.join(bad)}")
    return (x, y), WitnessCertificate(x, y, checks)


# -- end-to-end scenario ---------------------------------------------------------------------------


def sample_punctures(X: Space, Y: Space, count: int, seed: int = 0) -> List[tuple]:
    """The centre (1/2, 1/2) first, then seeded small-denominator points of (0,1)²."""
    rng = random.Random(f"punctures:{seed}")
    pts = [(Fraction(1, 2), Fraction(1, 2))]
    while len(pts) < count:
        d = rng.randint(2, 16)
        p = (Fraction(rng.randint(1, d - 1), d), Fraction(rng.randint(1, d - 1), d))
        if p not in pts:
            pts.append(p)
    return [(X.point(p), Y.point(q)) for p, q in pts[:count]]


def thm32_state(X: Space, Y: Space, N: int, oracle: str = "puncture", seed: int = 0,
                fuel: Optional[int] = None, start=None) -> Thm32State:
    if N < 0:
        raise PreconditionError("depth must be >= 0")
    levels = max(N, 1)
    if oracle == "puncture":
        schedule = puncture_schedule(X, Y, sample_punctures(X, Y, levels, seed), fuel)
    elif oracle == "whole":
        schedule = whole_schedule(X, Y, levels)
    else:
        raise PreconditionError(f"unknown oracle family {oracle!r}")
    if start is None:
        U = X.element((Fraction(0), Fraction(1)))
        V = Y.element((Fraction(0), Fraction(1)))
    else:
        U, V = start
    return Thm32State(X, Y, schedule, U, V, seed=seed)


def _thm32_play(state, X, Y, N, built, fuel, x_alpha, y_alpha):
    sigma_x = build_sigma_x(state)
    x_tr = run_game(GameKind.BANACH_MAZUR, X, sigma_x,
                    x_alpha or refine_alpha(X, GameKind.BANACH_MAZUR), built)
    x = X.pick_point(x_tr.history.last_open())
    for U_n in state.U_seq:
        if not X.member(x, U_n):
            raise InvariantViolation("BM(X) witness left some U_n")
    sigma_y = build_sigma_y(x_tr, state, fuel)
    y_alpha = y_alpha or echo_alpha(Y, GameKind.STRONG_CHOQUET)
    rounds = 0
    while True:
        rounds += 1
        ch_tr = run_game(GameKind.STRONG_CHOQUET, Y, sigma_y, y_alpha, rounds)
        if bt.node_level(sigma_y.state.path) >= N:
            return x_tr, x, sigma_y, ch_tr, rounds
        if rounds > 4 * built + 4:
            raise FuelExhausted("σ_Y did not reach the last built level")


def run_thm32(X: Space, Y: Space, N: int, oracle: str = "puncture", seed: int = 0,
              fuel: Optional[int] = None, x_alpha: Optional[Strategy] = None,
              y_alpha: Optional[Strategy] = None, start=None) -> dict:
    """Play σ_X for N rounds, then σ_Y until its node reaches level N; assemble (x, y)."""
    if N == 0:
        state = thm32_state(X, Y, N, oracle, seed, fuel, start)
        x = X.pick_point(state.U)
        pair, cert = assemble_witness(x, None, state, 0)
        return {"theorem": "3.2", "depth": 0, "levels": [], "x_rounds": 0, "y_rounds": 0,
                "path": [], "witness": cert.to_json(X, Y), "certified": True}
    # σ_Y's node level grows by k + 1 per round, so it can overshoot the
    # levels σ_X has built; play σ_X deeper and retry when that happens.
    built = N
    while True:
        state = thm32_state(X, Y, built, oracle, seed, fuel, start)
        try:
            x_tr, x, sigma_y, ch_tr, rounds = _thm32_play(state, X, Y, N, built, fuel, x_alpha, y_alpha)
            break
        except FuelExhausted:
            if built >= 2 * N + 4:
                raise
            built += 1
    pair, cert = assemble_witness(x, ch_tr, state, N)
    return {
        "theorem": "3.2",
        "depth": N,
        "oracles": [o.describe() for o in state.schedule[:N]],
        "levels": [r.to_json() for r in state.reports],
        "x_rounds": built,
        "y_rounds": rounds,
        "path": list(sigma_y.state.path),
        "k": list(sigma_y.state.ks),
        "witness": cert.to_json(X, Y),
        "certified": all(r.O_ok and r.W_ok for r in state.reports),
        "x_trace": x_tr.to_jsonl(),
        "y_trace": ch_tr.to_jsonl(),
    }
