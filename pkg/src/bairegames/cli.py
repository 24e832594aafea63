"""Command-line front end.

    bairegames spaces
    bairegames play --game bm --space rationals --beta diagonal --alpha halver --depth 16
    bairegames demo thm32 --depth 6
    bairegames verify --suite all --budget small

Exit codes: 0 success, 1 outcome differs from --expect or a demo/suite
did not certify, 2 invariant violation or illegal move, 3 fuel
exhausted, 4 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, TextIO

from .errors import (BaireGamesError, ConfigError, FuelExhausted, IllegalStrategyMove, InvariantViolation,
                     NotCertifiedAtDepth)
from .games import GameKind, make_strategy, run_game, gruenhage_run
from .games.core import (ALPHA, BETA, UNDECIDED, History, Outcome, Strategy, Transcript, adjudicate,
                         encode_move, legal_move, move_lines)
from .games.strategies import STRATEGY_NAMES
from .topology import ZOO_NAMES, PointedOpen, space_from_name
from .transfer.scenarios import run_scenario
from .verify import SUITES, run_suites

EXIT_OK, EXIT_MISMATCH, EXIT_INVARIANT, EXIT_FUEL, EXIT_CONFIG = 0, 1, 2, 3, 4

EXPECT = {"alpha": ALPHA, "beta": BETA, "undecided": UNDECIDED}

DEMOS = {
    "thm31": "3.1",
    "thm32": "3.2",
    "thm41-lift": "4.1-lift",
    "thm41-lower": "4.1-lower",
    "thm41-roundtrip": "4.1-roundtrip",
    "thm43": "4.3",
}

SPACE_NOTES = {
    "rationals": "Q with rational open intervals; countable, not Baire",
    "baire-omega": "ω^ω with cylinders; completely metrizable",
    "cantor": "2^ω with cylinders; compact",
    "finite:<lattice-spec>": "finite lattice: point, sierpinski, discrete:n, indiscrete:n or '1,2/1|1,2'",
    "remark-qd:<n>": "Q ∪ D with D isolated, neighborhoods I ∪ D∖C at rationals (n bounds D, 0 = unbounded)",
}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (InvariantViolation, IllegalStrategyMove)):
        return EXIT_INVARIANT
    if isinstance(exc, (FuelExhausted, NotCertifiedAtDepth)):
        return EXIT_FUEL
    return EXIT_CONFIG


# -- config -----------------------------------------------------------------------------------------


def load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("a config file holds a JSON object")
    return data


def _merge(args, config: dict, keys):
    """Flags given on the command line win over the config file."""
    for key in keys:
        if getattr(args, key, None) is None and key in config:
            setattr(args, key, config[key])


def _open_out(path: Optional[str], stdout: TextIO):
    if not path or path == "-":
        return stdout, False
    try:
        return open(path, "w", encoding="utf-8"), True
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc


def _emit_json(obj, path: Optional[str], stdout: TextIO):
    out, close = _open_out(path, stdout)
    try:
        out.write(json.dumps(obj, indent=2) + "\n")
    finally:
        if close:
            out.close()


# -- spaces -----------------------------------------------------------------------------------------


def cmd_spaces(args, stdout: TextIO) -> int:
    rows = []
    for name in ZOO_NAMES:
        sample = {"finite:<lattice-spec>": "finite:sierpinski", "remark-qd:<n>": "remark-qd:0"}.get(name, name)
        X = space_from_name(sample)
        rows.append({"name": name, "first_countable": X.first_countable, "ccc": X.ccc,
                     "has_bco": X.has_bco, "countable": X.point_enumeration() is not None,
                     "note": SPACE_NOTES[name]})
    if args.json:
        stdout.write(json.dumps({"spaces": rows, "strategies": {k: list(v) for k, v in STRATEGY_NAMES.items()}})
                     + "\n")
    else:
        for r in rows:
            flags = ",".join(k for k in ("first_countable", "ccc", "has_bco", "countable") if r[k])
            stdout.write(f"{r['name']:<24} {flags:<36} {r['note']}\n")
        stdout.write("\nstrategies:\n")
        for key, names in STRATEGY_NAMES.items():
            stdout.write(f"  {key:<20} {', '.join(names)}\n")
    return EXIT_OK


# -- play -------------------------------------------------------------------------------------------


def _strategy_or_human(kind, side, name, space, seed, center, human_side, stdin, stdout):
    if side == human_side:
        return human_strategy(kind, side, space, stdin, stdout)
    if name is None:
        raise ConfigError(f"--{'beta' if side in ('beta', 'playerI') else 'alpha'} is required")
    return make_strategy(kind, side, name, space, seed, center)


def human_strategy(kind: GameKind, side: str, space, stdin: TextIO, stdout: TextIO) -> Strategy:
    """Read one side's moves from a text stream, with referee feedback.

    Ch β moves are written `point ; open`; BM moves and α moves are an
    open set; Gruenhage replies are a point. `quit` ends the run.
    """
    holder = {"history": History(kind, space)}

    def parse(line):
        if kind is GameKind.STRONG_CHOQUET and side == "beta":
            pt, sep, op = line.partition(";")
            if not sep:
                raise ConfigError("write a Ch move as `point ; open`")
            return PointedOpen(space.parse_point(pt.strip()), space.parse_open(op.strip()))
        if kind is GameKind.GRUENHAGE and side == "playerII":
            return space.parse_point(line)
        return space.parse_open(line)

    def choose(opponent_moves):
        history = holder["history"]
        if history.moves:
            last = encode_move(space, history.moves[-1])
            stdout.write(f"opponent: {json.dumps(last)}\n")
        while True:
            stdout.write(f"[round {history.round}] {side}> ")
            stdout.flush()
            line = stdin.readline()
            if not line or line.strip() in ("quit", "exit"):
                raise ConfigError("interactive session ended")
            try:
                move = parse(line.strip())
                if legal_move(history, move):
                    return move
                stdout.write("referee: illegal move, try again\n")
            except BaireGamesError as exc:
                stdout.write(f"referee: {exc}\n")

    return Strategy(side, "human", choose, holder)


def _interactive_run(kind, space, first: Strategy, second: Strategy, depth, center, stdout):
    history = History(kind, space, (), center)
    attest = []
    for _ in range(2 * depth):
        strat = first if len(history.moves) % 2 == 0 else second
        if strat.name == "human":
            strat.state["history"] = history
        move = strat(history.opponent_moves())
        if not legal_move(history, move):
            raise IllegalStrategyMove(history.next_side, history.round, move, f"{strat.name} broke the rules",
                                      Transcript(history, depth, Outcome(UNDECIDED, reason="truncated"), attest))
        stdout.write(f"referee: round {history.round} {history.next_side} ok\n")
        history = history.append(move)
        attest.append(True)
    outcome = Outcome(UNDECIDED, reason="interactive") if kind is GameKind.GRUENHAGE else adjudicate(history, depth)
    return Transcript(history, depth, outcome, attest)


def cmd_play(args, stdin: TextIO, stdout: TextIO) -> int:
    config = load_config(args.config)
    _merge(args, config, ("game", "space", "beta", "alpha", "depth", "seed", "fuel", "out", "center",
                          "expect"))
    try:
        kind = GameKind.parse(args.game or "bm")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    space = space_from_name(args.space or "rationals")
    depth = 0 if args.depth is None else args.depth
    if not isinstance(depth, int) or depth < 0:
        raise ConfigError("depth must be >= 0")
    seed = args.seed or 0
    center = None
    if kind is GameKind.GRUENHAGE:
        center = space.parse_point(str(args.center)) if args.center is not None else space.pick_point(space.whole())
    first_side, second_side = kind.sides
    human_side = None
    if args.interactive:
        human_side = {"beta": first_side, "alpha": second_side, "playerI": first_side,
                      "playerII": second_side}.get(args.interactive)
        if human_side is None:
            raise ConfigError("--interactive takes beta, alpha, playerI or playerII")
    beta_name = args.beta or ("w" if kind is GameKind.GRUENHAGE else None)
    first = _strategy_or_human(kind, first_side, beta_name, space, seed, center, human_side, stdin, stdout)
    second = _strategy_or_human(kind, second_side, args.alpha, space, seed, center, human_side, stdin, stdout)
    out, close = _open_out(args.out, stdout)
    try:
        try:
            if human_side:
                tr = _interactive_run(kind, space, first, second, depth, center, stdout)
            elif kind is GameKind.GRUENHAGE:
                tr = gruenhage_run(space, center, first, second, depth)
            else:
                tr = run_game(kind, space, first, second, depth)
        except (IllegalStrategyMove, FuelExhausted) as exc:
            partial = getattr(exc, "transcript", None)
            if partial is not None:
                for line in move_lines(partial.history):
                    out.write(json.dumps(line) + "\n")
            out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
            raise
        out.write(tr.to_jsonl())
    finally:
        if close:
            out.close()
    if args.expect and args.expect != "any":
        want = EXPECT.get(args.expect)
        if want is None:
            raise ConfigError("--expect takes alpha, beta, undecided or any")
        if tr.outcome.tag != want:
            return EXIT_MISMATCH
    return EXIT_OK


# -- demo -------------------------------------------------------------------------------------------


def cmd_demo(args, stdout: TextIO) -> int:
    config = load_config(args.config)
    if args.name:
        if args.name not in DEMOS:
            raise ConfigError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
        config["theorem"] = DEMOS[args.name]
    for key in ("depth", "fuel", "seed", "family", "indices"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    if args.space:
        config["spaces"] = list(args.space)
    if args.oracle:
        config["oracles"] = [args.oracle]
    report = run_scenario(config, fuel=args.fuel)
    report.pop("x_trace", None)
    report.pop("y_trace", None)
    report.pop("trace", None)
    _emit_json(report, args.out, stdout)
    return EXIT_OK if report.get("ok") else EXIT_INVARIANT


# -- verify -----------------------------------------------------------------------------------------


def cmd_verify(args, stdout: TextIO) -> int:
    results = run_suites(args.suite, args.budget, args.triples, args.seed or 0)
    summary = {"suite": args.suite, "budget": args.budget, "ok": all(r.ok for r in results),
               "checks": [r.to_json() for r in results]}
    stdout.write(json.dumps(summary) + "\n")
    return EXIT_OK if summary["ok"] else EXIT_INVARIANT


# -- parser -----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bairegames", description="Topological games with certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spaces", help="list the space zoo")
    sp.add_argument("--json", action="store_true")

    pl = sub.add_parser("play", help="run one game and write a JSONL trace")
    pl.add_argument("--game", help="bm, ch or gruenhage")
    pl.add_argument("--space", help="zoo space name")
    pl.add_argument("--beta", help="first player's strategy (Gruenhage: Player I)")
    pl.add_argument("--alpha", help="second player's strategy (Gruenhage: Player II)")
    pl.add_argument("--depth", type=int)
    pl.add_argument("--seed", type=int)
    pl.add_argument("--fuel", type=int)
    pl.add_argument("--center", help="Gruenhage center point")
    pl.add_argument("--out", help="trace path (default stdout)")
    pl.add_argument("--expect", choices=("alpha", "beta", "undecided", "any"))
    pl.add_argument("--interactive", metavar="SIDE", help="type SIDE's moves at a prompt")
    pl.add_argument("--config", help="JSON config file")

    dm = sub.add_parser("demo", help="run a strategy-transfer scenario")
    dm.add_argument("name", nargs="?", help=", ".join(DEMOS))
    dm.add_argument("--depth", type=int)
    dm.add_argument("--fuel", type=int)
    dm.add_argument("--seed", type=int)
    dm.add_argument("--family", type=int, help="family size for thm31")
    dm.add_argument("--indices", type=int, help="product size for thm41-*")
    dm.add_argument("--space", action="append", help="factor space (repeat for X and Y)")
    dm.add_argument("--oracle", choices=("puncture", "whole"))
    dm.add_argument("--out", help="report path (default stdout)")
    dm.add_argument("--config", help="JSON scenario config")

    vf = sub.add_parser("verify", help="run invariant suites")
    vf.add_argument("--suite", default="all", choices=SUITES)
    vf.add_argument("--budget", default="small", choices=("small", "full"))
    vf.add_argument("--triples", type=int)
    vf.add_argument("--seed", type=int)
    return p


def main(argv: Optional[List[str]] = None, stdin: TextIO = None, stdout: TextIO = None,
         stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    fuel = getattr(args, "fuel", None)
    if fuel is not None and fuel < 1:
        stderr.write("error: fuel must be >= 1\n")
        return EXIT_CONFIG
    try:
        if args.command == "spaces":
            return cmd_spaces(args, stdout)
        if args.command == "play":
            if fuel is not None:
                import os
                os.environ["BAIRE_GAMES_FUEL"] = str(fuel)
            return cmd_play(args, stdin, stdout)
        if args.command == "demo":
            return cmd_demo(args, stdout)
        return cmd_verify(args, stdout)
    except (BaireGamesError, ValueError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
