"""Invariant suites behind `bairegames verify`.

Each suite is a list of named checks; a check returns (ok, detail). The
fuzz budget scales the sample counts: "small" is meant for quick runs,
"full" for the sizes quoted in the docs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import branchtree as bt
from .errors import BaireGamesError, ConfigError
from .games import (ALPHA, BETA, GameKind, gruenhage_run, make_strategy, run_game,
                    verify_beta_evidence)
from .games.strategies import STRATEGY_NAMES, w_player
from .krom import KromPoint, k0_certify, nbhd_tail, spliced, ultradist
from .topology import (FiniteSpace, PunctureOracle, Rationals, RemarkSpace, all_topologies,
                       dense_refine, space_from_name)
from .transfer import duality_suite, run_thm31, run_thm32, run_thm43

BUDGETS = {"small": {"triples": 1000, "runs": 200, "tree": 12, "duality": "small"},
           "full": {"triples": 10000, "runs": 1000, "tree": 12, "duality": "full"}}

FUZZ_SPACES = ("rationals", "baire-omega", "cantor", "finite:sierpinski", "finite:0,1,2/0|0,1",
               "remark-qd:8")


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.name, "ok": self.ok,
                "seconds": round(self.seconds, 3), **self.detail}


# -- topology ---------------------------------------------------------------------------------------


def inclusion_soundness(triples: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"inclusion:{seed}")
    spaces = [space_from_name(n) for n in FUZZ_SPACES]
    checked = 0
    for n in range(triples):
        X = spaces[n % len(spaces)]
        V = X.sample_subelement(X.whole(), rng)
        # half the pairs are nested by construction, half are unrelated
        U = X.sample_subelement(V if n % 2 else X.whole(), rng)
        x = X.sample_point(U, rng)
        if X.contains(U, V):
            checked += 1
            if not X.member(x, V):
                return False, {"space": X.space_id, "inner": repr(U), "outer": repr(V)}
    return True, {"triples": triples, "inclusions": checked}


def refine_chains(samples: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"refine:{seed}")
    for n in range(samples):
        X = space_from_name(FUZZ_SPACES[n % len(FUZZ_SPACES)])
        V = X.sample_subelement(X.whole(), rng)
        x = X.sample_point(V, rng)
        prev = V
        for k in range(1, 6):
            U = X.refine(x, V, k)
            if not (X.member(x, U) and X.contains(U, prev)):
                return False, {"space": X.space_id, "step": k}
            prev = U
    return True, {"chains": samples}


def dense_refine_nesting(samples: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"dense:{seed}")
    Q = Rationals()
    for _ in range(samples):
        pts = [(Q.point(Fraction(rng.randint(1, 15), 16)), Q.point(Fraction(rng.randint(1, 15), 16)))
               for _ in range(rng.randint(1, 6))]
        oracle = PunctureOracle(Q, Q, pts)
        U = Q.sample_subelement(Q.interval(Fraction(0), Fraction(1)), rng)
        V = Q.sample_subelement(Q.interval(Fraction(0), Fraction(1)), rng)
        U2, V2 = dense_refine(oracle, U, V)
        if not (Q.contains(U2, U) and Q.contains(V2, V) and oracle.box_inside(U2, V2)):
            return False, {"box": [repr(U), repr(V)]}
    return True, {"boxes": samples}


def remark_base_law(samples: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"remark:{seed}")
    R = RemarkSpace(0)
    for _ in range(samples):
        q = R.q(Fraction(rng.randint(-20, 20), rng.randint(1, 8)))
        k = rng.randint(0, 10)
        N = R.nbhd(q, k)
        missing = [i for i in range(k + 40) if not R.member(R.d(i), N)]
        if any(i >= k for i in missing):
            return False, {"point": repr(q), "k": k, "missing": missing}
    return True, {"neighborhoods": samples}


def w_point_centres(samples: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"w:{seed}")
    Q = Rationals()
    for _ in range(samples):
        x = Q.point(Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
        w = w_player(Q, x)
        pts = tuple(Q.point(Fraction(rng.randint(-9, 9), 7)) for _ in range(rng.randint(0, 12)))
        if not Q.member(x, w(pts)):
            return False, {"center": repr(x)}
    return True, {"calls": samples}


# -- games ------------------------------------------------------------------------------------------


def _random_pairing(rng, n):
    kinds = [GameKind.BANACH_MAZUR, GameKind.STRONG_CHOQUET, GameKind.GRUENHAGE]
    kind = kinds[n % 3]
    space = space_from_name(rng.choice(FUZZ_SPACES))
    seed = rng.randint(0, 10 ** 6)
    depth = rng.randint(0, 16)
    return kind, space, seed, depth


def play_random(kind, space, seed, depth):
    """One fuzzed run with stock strategies; returns the transcript."""
    rng = random.Random(f"pair:{seed}")
    if kind is GameKind.GRUENHAGE:
        x = space.pick_point(space.whole())
        name = rng.choice(STRATEGY_NAMES["gruenhage/playerII"])
        if name == "edge" and not isinstance(space, Rationals):
            name = "fuzz"
        replier = make_strategy(kind, "playerII", name, space, seed, center=x)
        return gruenhage_run(space, x, w_player(space, x), replier, depth)
    key = kind.value
    betas = [b for b in STRATEGY_NAMES[f"{key}/beta"] if b in ("canonical", "fuzz")]
    alphas = [a for a in STRATEGY_NAMES[f"{key}/alpha"] if a in ("cylinder", "echo", "fuzz")]
    if isinstance(space, RemarkSpace) and kind is GameKind.STRONG_CHOQUET:
        betas += ["fuzz-d", "rational"]
        alphas += ["remark"]
    beta = make_strategy(kind, "beta", rng.choice(betas), space, seed)
    alpha = make_strategy(kind, "alpha", rng.choice(alphas), space, seed)
    return run_game(kind, space, beta, alpha, depth)


def referee_fuzz(runs: int, seed: int = 0) -> Tuple[bool, dict]:
    """Every fuzzed round is legal, opens form a chain, certificates recheck."""
    rng = random.Random(f"referee:{seed}")
    rounds = 0
    for n in range(runs):
        kind, space, s, depth = _random_pairing(rng, n)
        tr = play_random(kind, space, s, depth)
        rounds += len(tr.moves)
        if not all(tr.attestations) or len(tr.attestations) != len(tr.moves):
            return False, {"run": n, "problem": "unattested round"}
        if kind is not GameKind.GRUENHAGE:
            opens = tr.history.opens()
            if any(not space.contains(opens[i + 1], opens[i]) for i in range(len(opens) - 1)):
                return False, {"run": n, "problem": "opens not a chain"}
            if tr.outcome.tag == ALPHA and not all(space.member(tr.outcome.witness, U) for U in opens):
                return False, {"run": n, "problem": "alpha witness escapes"}
            if tr.outcome.tag == BETA and not verify_beta_evidence(tr.history, tr.outcome.evidence):
                return False, {"run": n, "problem": "beta evidence fails replay"}
    return True, {"runs": runs, "rounds": rounds}


def determinism(runs: int, seed: int = 0) -> Tuple[bool, dict]:
    rng = random.Random(f"determinism:{seed}")
    for n in range(runs):
        kind, space, s, depth = _random_pairing(rng, n)
        a = play_random(kind, space, s, depth).to_jsonl()
        b = play_random(kind, space_from_name(space.space_id), s, depth).to_jsonl()
        if a != b:
            return False, {"run": n}
    return True, {"runs": runs}


def diagonal_check(depth: int = 32) -> Tuple[bool, dict]:
    Q = Rationals()
    tr = run_game(GameKind.BANACH_MAZUR, Q, make_strategy(GameKind.BANACH_MAZUR, "beta", "diagonal", Q),
                  make_strategy(GameKind.BANACH_MAZUR, "alpha", "halver", Q), depth)
    ok = tr.outcome.tag == BETA and len(tr.outcome.evidence) == depth \
        and verify_beta_evidence(tr.history, tr.outcome.evidence)
    return ok, {"depth": depth, "outcome": tr.outcome.tag}


# -- krom -------------------------------------------------------------------------------------------


def _random_krom(Q, rng, length=8, cache=None):
    """Depth-8 Krom points over a small alphabet of nested dyadic intervals.

    Intervals are shared through `cache`, so equal entries are usually the
    same object and compare fast.
    """
    cache = {} if cache is None else cache

    def interval(lo, hi):
        key = (lo, hi)
        if key not in cache:
            cache[key] = Q.interval(lo, hi)
        return cache[key]

    elems = [interval(Fraction(0), Fraction(1))]
    for _ in range(length - 1):
        lo, hi = elems[-1].descriptor
        mid = (lo + hi) / 2
        elems.append(rng.choice([elems[-1], interval(lo, mid), interval(mid, hi)]))
    lo, hi = elems[-1].descriptor
    return KromPoint(Q, elems, Q.point((lo + hi) / 2))


def ultrametric_laws(triples: int, seed: int = 0, pool: int = 2000) -> Tuple[bool, dict]:
    """Symmetry and the strong triangle on random triples drawn from a pool of random points."""
    rng = random.Random(f"ultra:{seed}")
    Q = Rationals()
    cache: dict = {}
    points = [_random_krom(Q, rng, cache=cache) for _ in range(min(pool, 3 * triples))]
    for n in range(triples):
        f, g, h = (rng.choice(points) for _ in range(3))
        dfg, dgf = ultradist(f, g, 8), ultradist(g, f, 8)
        dgh, dfh = ultradist(g, h, 8), ultradist(f, h, 8)
        vals = [d.upper if not isinstance(d, Fraction) else d for d in (dfg, dgf, dgh, dfh)]
        if vals[0] != vals[1] or vals[3] > max(vals[0], vals[2]):
            return False, {"triple": n}
    return True, {"triples": triples, "pool": len(points)}


def splice_density(samples: int, seed: int = 0) -> Tuple[bool, dict]:
    """Splicing a certified tail below any stem stays certified inside [h]."""
    rng = random.Random(f"splice:{seed}")
    Q = Rationals()
    for _ in range(samples):
        h = [Q.interval(Fraction(-8), Fraction(8))]
        for _ in range(rng.randint(0, 4)):
            h.append(Q.sample_subelement(h[-1], rng))
        c = Q.pick_point(h[-1])
        tail = KromPoint(Q, (Q.refine(c, h[-1], 1),), c, nbhd_tail)
        f = spliced(Q, h, tail)
        cert = k0_certify(f, 8)
        if f.materialize(len(h)) != tuple(h) or not cert.recheck():
            return False, {"stem": len(h)}
    return True, {"splices": samples}


# -- tree -------------------------------------------------------------------------------------------


def tree_laws(max_n: int = 12) -> Tuple[bool, dict]:
    for n in range(1, max_n + 1):
        cur, nxt = bt.level(n), bt.level(n + 1)
        if len(nxt) != 2 ** n:
            return False, {"level": n + 1, "size": len(nxt)}
        children = [c for t in cur for c in bt.successors(t)]
        if sorted(children) != nxt or len(set(children)) != len(children):
            return False, {"level": n + 1, "problem": "partition"}
        for t in cur:
            s, k = bt.source(t)
            if s + (n - k - 1,) != t or bt.source_by_replay(t) != (s, k):
                return False, {"node": list(t)}
            t_minus, t_plus = bt.successors(t)
            if bt.source(t_minus)[0] != t or bt.source(t_plus)[0] != s:
                return False, {"node": list(t), "problem": "minus-chain"}
    return True, {"levels": max_n + 1}


# -- transfer ---------------------------------------------------------------------------------------


def thm32_check(N: int = 6) -> Tuple[bool, dict]:
    Q = Rationals()
    r = run_thm32(Q, Q, N)
    counts = [lv["refinements"] for lv in r["levels"]]
    ok = r["certified"] and counts == [2 ** n for n in range(N)]
    return ok, {"depth": N, "refinements": counts}


def duality_check(budget: str) -> Tuple[bool, dict]:
    if budget == "small":
        spaces = [space_from_name("finite:sierpinski"), space_from_name("finite:discrete:2")]
    else:
        spaces = [FiniteSpace(range(n), [sorted(o) for o in top])
                  for n in (1, 2, 3) for top in all_topologies(n)]
    plays = 0
    for F in spaces:
        for m in (1, 2):
            for rep in duality_suite(F, m, 3):
                plays += rep.plays
                if not rep.ok:
                    return False, {"space": F.space_id, "indices": m, **rep.to_json()}
    return True, {"spaces": len(spaces), "plays": plays}


def thm43_check(depth: int = 5) -> Tuple[bool, dict]:
    r = run_thm43(space_from_name("baire-omega"), depth)
    return r["ok"], {"depth": depth, "m": r["glue"]["m"]}


# -- suites -----------------------------------------------------------------------------------------


def build_suites(budget: str, triples: Optional[int] = None, seed: int = 0) -> Dict[str, List[Tuple[str, Callable]]]:
    if budget not in BUDGETS:
        raise ConfigError(f"budget must be one of {', '.join(BUDGETS)}")
    b = BUDGETS[budget]
    t = b["triples"] if triples is None else triples
    if t < 1:
        raise ConfigError("triples must be positive")
    runs = b["runs"]
    return {
        "topology": [
            ("inclusion-soundness", lambda: inclusion_soundness(t, seed)),
            ("refine-chain", lambda: refine_chains(max(t // 10, 1), seed)),
            ("dense-refine-nesting", lambda: dense_refine_nesting(max(t // 10, 1), seed)),
            ("remark-base-law", lambda: remark_base_law(max(t // 10, 1), seed)),
            ("w-point-center", lambda: w_point_centres(max(t // 10, 1), seed)),
        ],
        "games": [
            ("referee-fuzz", lambda: referee_fuzz(runs, seed)),
            ("determinism", lambda: determinism(max(runs // 10, 1), seed)),
            ("diagonal-32", lambda: diagonal_check(32)),
        ],
        "krom": [
            ("ultrametric-laws", lambda: ultrametric_laws(t, seed)),
            ("splice-density", lambda: splice_density(max(t // 50, 1), seed)),
            ("disjoint-projection", lambda: (lambda r: (r["ok"], {"family": r["family"]}))(run_thm31(100, seed))),
        ],
        "tree": [("levels-and-sources", lambda: tree_laws(b["tree"]))],
        "transfer": [
            ("thm32-invariants", lambda: thm32_check(6)),
            ("thm41-duality", lambda: duality_check(b["duality"])),
            ("thm43-glue", lambda: thm43_check(5)),
        ],
    }


SUITES = ("topology", "games", "krom", "tree", "transfer", "all")


def run_suites(suite: str, budget: str = "small", triples: Optional[int] = None,
               seed: int = 0) -> List[CheckResult]:
    if suite not in SUITES:
        raise ConfigError(f"suite must be one of {', '.join(SUITES)}")
    suites = build_suites(budget, triples, seed)
    names = list(suites) if suite == "all" else [suite]
    results = []
    for name in names:
        for check, fn in suites[name]:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except BaireGamesError as exc:
                ok, detail = False, {"error": type(exc).__name__, "message": str(exc)}
            results.append(CheckResult(name, check, ok, detail, time.perf_counter() - start))
    return results
