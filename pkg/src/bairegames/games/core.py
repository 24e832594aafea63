"""Referee, game runner and outcome certificates.

Strategies follow the signatures of the games exactly: a chooser receives
the tuple of the opponent's moves so far and returns its own next move.
In BM and Ch beta moves first; in the Gruenhage game Player I does.

Infinite plays cannot be adjudicated, so a finite transcript carries one
of three outcomes:

AlphaCertified(w)
    w lies in every open of the play and is pinned down structurally:
    either some open is the singleton {w} (so the full intersection is
    {w} however the play continues), or the play is *threaded* through w
    (every beta point in Ch, every canonical point of an open in BM, is w).
BetaCertified(evidence)
    every point in the first `depth` entries of the space's point
    enumeration is excluded by a named round.
UndecidedAtDepth
    neither certificate exists.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

from ..errors import (BaireGamesError, FuelExhausted, IllegalStrategyMove,
                      PreconditionError)
from ..topology.base import BaseElement, PointedOpen, Space

ALPHA = "AlphaCertified"
BETA = "BetaCertified"
UNDECIDED = "UndecidedAtDepth"


class GameKind(enum.Enum):
    BANACH_MAZUR = "bm"
    STRONG_CHOQUET = "ch"
    GRUENHAGE = "gruenhage"

    @property
    def sides(self) -> Tuple[str, str]:
        if self is GameKind.GRUENHAGE:
            return ("playerI", "playerII")
        return ("beta", "alpha")

    @classmethod
    def parse(cls, text: str) -> "GameKind":
        aliases = {"bm": cls.BANACH_MAZUR, "banach-mazur": cls.BANACH_MAZUR,
                   "ch": cls.STRONG_CHOQUET, "choquet": cls.STRONG_CHOQUET,
                   "strong-choquet": cls.STRONG_CHOQUET,
                   "g": cls.GRUENHAGE, "gruenhage": cls.GRUENHAGE}
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown game {text!r}") from None


@dataclass(frozen=True)
class History:
    kind: GameKind
    space: Space
    moves: Tuple[Any, ...] = ()
    center: Any = None

    @property
    def next_side(self) -> str:
        return self.kind.sides[len(self.moves) % 2]

    @property
    def round(self) -> int:
        return len(self.moves) // 2

    def first_moves(self) -> Tuple[Any, ...]:
        return self.moves[0::2]

    def second_moves(self) -> Tuple[Any, ...]:
        return self.moves[1::2]

    def opponent_moves(self) -> Tuple[Any, ...]:
        """What the side to move gets to see."""
        return self.second_moves() if len(self.moves) % 2 == 0 else self.first_moves()

    def append(self, move) -> "History":
        return History(self.kind, self.space, self.moves + (move,), self.center)

    def opens(self) -> List[BaseElement]:
        """Open sets of the play in order (Gruenhage: Player I's neighborhoods)."""
        out = []
        for m in self.moves:
            if isinstance(m, PointedOpen):
                out.append(m.open)
            elif isinstance(m, BaseElement):
                out.append(m)
        return out

    def last_open(self) -> Optional[BaseElement]:
        opens = self.opens()
        return opens[-1] if opens else None


def legal_move(history: History, move) -> bool:
    """True iff appending move keeps the history legal for its game kind."""
    space = history.space
    kind = history.kind
    moves = history.moves
    n = len(moves)
    if kind is GameKind.BANACH_MAZUR:
        if not isinstance(move, BaseElement):
            return False
        space.check(move)
        return n == 0 or space.contains(move, moves[-1])
    if kind is GameKind.STRONG_CHOQUET:
        if n % 2 == 0:
            if not isinstance(move, PointedOpen):
                return False
            space.check(move.point, move.open)
            if not space.member(move.point, move.open):
                return False
            return n == 0 or space.contains(move.open, moves[-1])
        if not isinstance(move, BaseElement):
            return False
        space.check(move)
        last = moves[-1]
        return space.member(last.point, move) and space.contains(move, last.open)
    # Gruenhage
    if n % 2 == 0:
        if not isinstance(move, BaseElement):
            return False
        space.check(move)
        return space.member(history.center, move)
    if isinstance(move, (BaseElement, PointedOpen)):
        return False
    space.check(move)
    return space.member(move, moves[-1])


@dataclass
class Strategy:
    """A deterministic move rule: opponent moves so far -> next move."""

    side: str
    name: str
    chooser: Callable[[Tuple[Any, ...]], Any]
    state: Any = None

    def __call__(self, opponent_moves=()):
        return self.chooser(tuple(opponent_moves))


@dataclass
class Outcome:
    tag: str
    witness: Any = None
    evidence: Any = None
    reason: str = ""


@dataclass
class Transcript:
    history: History
    depth: int
    outcome: Outcome
    attestations: List[bool] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def kind(self) -> GameKind:
        return self.history.kind

    @property
    def space(self) -> Space:
        return self.history.space

    @property
    def moves(self):
        return self.history.moves

    def to_jsonl(self) -> str:
        return "".join(json.dumps(line) + "\n" for line in transcript_lines(self))


def _side_of(kind: GameKind, index: int) -> str:
    return kind.sides[index % 2]


def encode_move(space: Space, move) -> dict:
    if isinstance(move, PointedOpen):
        return {"point": space.encode_point(move.point), "open": space.encode_open(move.open)}
    if isinstance(move, BaseElement):
        return {"open": space.encode_open(move)}
    return {"point": space.encode_point(move)}


def move_lines(history: History, start: int = 0):
    for i, move in enumerate(history.moves[start:], start):
        yield {"round": i // 2, "side": _side_of(history.kind, i),
               "move": encode_move(history.space, move), "legal": True}


def outcome_line(transcript: Transcript) -> dict:
    out = transcript.outcome
    space = transcript.space
    cert = {}
    if out.tag == ALPHA:
        cert = {"witness": space.encode_point(out.witness), "reason": out.reason}
    elif out.tag == BETA:
        cert = {"excluded": out.evidence}
    if transcript.diagnostics:
        cert["diagnostics"] = transcript.diagnostics
    return {"outcome": out.tag, "depth": transcript.depth, "certificate": cert}


def transcript_lines(transcript: Transcript) -> List[dict]:
    return list(move_lines(transcript.history)) + [outcome_line(transcript)]


# -- certificates ----------------------------------------------------------------------------


def _in_all(space, w, opens) -> bool:
    return all(space.member(w, U) for U in opens)


def alpha_certificate(history: History) -> Optional[Outcome]:
    space = history.space
    opens = history.opens()
    if not opens:
        return None
    for r, U in enumerate(opens):
        if space.is_singleton(U):
            w = space.pick_point(U)
            if _in_all(space, w, opens):
                return Outcome(ALPHA, w, reason=f"singleton open at move {r}")
    if history.kind is GameKind.STRONG_CHOQUET:
        pts = [m.point for m in history.first_moves()]
    else:
        pts = [space.pick_point(U) for U in opens]
    w = pts[0]
    if all(p == w for p in pts) and _in_all(space, w, opens):
        return Outcome(ALPHA, w, reason="threaded")
    return None


def beta_certificate(history: History, prefix: int) -> Optional[Outcome]:
    space = history.space
    enum_ = space.point_enumeration()
    if enum_ is None or prefix <= 0:
        return None
    opens = history.opens()
    evidence = []
    for k in range(prefix):
        q = next(enum_)
        hit = next((i for i, U in enumerate(opens) if not space.member(q, U)), None)
        if hit is None:
            return None
        move_index = _open_move_index(history, hit)
        evidence.append({"index": k, "point": space.encode_point(q),
                         "round": move_index // 2, "side": _side_of(history.kind, move_index)})
    return Outcome(BETA, evidence=evidence)


def _open_move_index(history: History, open_index: int) -> int:
    seen = -1
    for i, m in enumerate(history.moves):
        if isinstance(m, (BaseElement, PointedOpen)):
            seen += 1
            if seen == open_index:
                return i
    raise IndexError(open_index)


def verify_beta_evidence(history: History, evidence) -> bool:
    """Independent replay: each named round's open really excludes its point."""
    space = history.space
    enum_ = space.point_enumeration()
    for k, item in enumerate(evidence):
        q = next(enum_)
        if item["index"] != k or space.encode_point(q) != item["point"]:
            return False
        i = 2 * item["round"] + (0 if item["side"] == history.kind.sides[0] else 1)
        move = history.moves[i]
        U = move.open if isinstance(move, PointedOpen) else move
        if space.member(q, U):
            return False
    return True


def adjudicate(history: History, depth: int) -> Outcome:
    if history.kind is GameKind.GRUENHAGE or not history.moves:
        return Outcome(UNDECIDED)
    return alpha_certificate(history) or beta_certificate(history, depth) or Outcome(UNDECIDED)


# -- running ------------------------------------------------------------------------------------


def _play(history: History, first: Strategy, second: Strategy, depth: int):
    attest = []
    strategies = (first, second)
    for _ in range(2 * depth):
        side = history.next_side
        strat = strategies[len(history.moves) % 2]
        try:
            move = strat(history.opponent_moves())
        except IllegalStrategyMove as exc:
            exc.transcript = exc.transcript or _partial(history, depth, attest)
            raise
        except FuelExhausted as exc:
            exc.transcript = exc.transcript or _partial(history, depth, attest)
            raise
        except PreconditionError as exc:
            raise IllegalStrategyMove(side, history.round, None, f"strategy failed: {exc}",
                                      _partial(history, depth, attest)) from exc
        try:
            ok = legal_move(history, move)
        except BaireGamesError:
            ok = False
        if not ok:
            raise IllegalStrategyMove(side, history.round, move, f"{strat.name} broke the rules",
                                      _partial(history, depth, attest))
        history = history.append(move)
        attest.append(True)
    return history, attest


def _partial(history, depth, attest):
    return Transcript(history, depth, Outcome(UNDECIDED, reason="truncated"), list(attest))


def run_game(kind: GameKind, space: Space, beta: Strategy, alpha: Strategy, depth: int) -> Transcript:
    """Play `depth` rounds of BM or Ch with referee checks and adjudicate."""
    if kind is GameKind.GRUENHAGE:
        raise PreconditionError("use gruenhage_run for the Gruenhage game")
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    history, attest = _play(History(kind, space), beta, alpha, depth)
    return Transcript(history, depth, adjudicate(history, depth), attest)


def convergence_profile(space: Space, center, replies, cap: int) -> List[int]:
    """For each k, the deepest base index j <= cap with replies[k:] inside nbhd(center, j)."""
    profile = []
    for k in range(len(replies)):
        tail = replies[k:]
        j = 0
        while j < cap and all(space.member(x, space.nbhd(center, j + 1)) for x in tail):
            j += 1
        profile.append(j)
    return profile


def gruenhage_run(space: Space, x, w, replier: Strategy, depth: int) -> Transcript:
    """Gruenhage game at x: w answers reply points with neighborhoods of x."""
    if getattr(w, "center", x) != x:
        raise PreconditionError("W-point strategy is centered elsewhere")
    player_one = w if isinstance(w, Strategy) else Strategy("playerI", "w-point", lambda pts: w(pts))
    history, attest = _play(History(GameKind.GRUENHAGE, space, (), x), player_one, replier, depth)
    replies = list(history.second_moves())
    diag = {"convergence": convergence_profile(space, x, replies, depth + 8)} if replies else {}
    return Transcript(history, depth, Outcome(UNDECIDED, reason="no finite-depth winner"), attest, diag)
