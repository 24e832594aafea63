"""Acceptance criteria, one test each, timed against their stated bounds.

Every test prints a single `PASS` or `FAIL` line (visible in `pytest -v`
output) before asserting.
"""

import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from bairegames import branchtree as bt
from bairegames.games import ALPHA, BETA, GameKind, History, make_strategy, run_game
from bairegames.games.core import legal_move, verify_beta_evidence
from bairegames.games.strategies import remark_tactic
from bairegames.krom import DecreasingSeq, DistanceBound, ccc_pi_base_step, disjoint_family_projection, ultradist
from bairegames.topology import BaireSpace, FiniteSpace, Rationals, RemarkSpace, all_topologies, rational_enumeration
from bairegames.transfer import disjoint_family, duality_suite, run_thm32, run_thm43
from bairegames.verify import _random_krom, _random_pairing, play_random

BM, CH, GR = GameKind.BANACH_MAZUR, GameKind.STRONG_CHOQUET, GameKind.GRUENHAGE


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, limit, detail=""):
        verdict = "PASS" if ok and seconds < limit else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {verdict} {title}: {seconds:.2f}s (limit {limit}s) {detail}")
        assert ok, detail
        assert seconds < limit, f"{seconds:.2f}s exceeds {limit}s"
    return emit


def _replay_legal(tr):
    h = History(tr.kind, tr.space, (), tr.history.center)
    for move in tr.moves:
        if not legal_move(h, move):
            return False
        h = h.append(move)
    return True


def test_referee_soundness(report):
    start = time.perf_counter()
    rng = random.Random("acceptance:referee")
    illegal = runs = rounds = 0
    kinds = set()
    for n in range(1000):
        kind, space, seed, depth = _random_pairing(rng, n)
        tr = play_random(kind, space, seed, depth)
        kinds.add(kind)
        runs += 1
        rounds += len(tr.moves)
        if not _replay_legal(tr) or not all(tr.attestations):
            illegal += 1
        for m in tr.moves:
            coords = getattr(m, "descriptor", None) or getattr(m, "coords", None)
            for v in _flatten(coords):
                if isinstance(v, float):
                    illegal += 1
    seconds = time.perf_counter() - start
    report(1, "referee soundness", illegal == 0 and runs == 1000 and kinds == {BM, CH, GR}, seconds, 10,
           f"runs={runs} rounds={rounds} illegal={illegal}")


def _flatten(obj):
    if isinstance(obj, (tuple, list, frozenset, set)):
        for x in obj:
            yield from _flatten(x)
    else:
        yield obj


def _diagonal_run():
    Q = Rationals()
    return run_game(BM, Q, make_strategy(BM, "beta", "diagonal", Q), make_strategy(BM, "alpha", "halver", Q), 32)


def test_non_baire_witness(report):
    start = time.perf_counter()
    Q = Rationals()
    tr = _diagonal_run()
    qs = list(itertools.islice(rational_enumeration(), 32))
    opens = tr.history.opens()
    excluded = []
    for q in qs:
        # independent membership replay: some open of the play misses q
        excluded.append(any(not Q.member(Q.point(q), U) for U in opens))
    evidence_points = {Fraction(e["point"]) for e in tr.outcome.evidence}
    ok = tr.outcome.tag == BETA and all(excluded) and evidence_points == set(qs) \
        and verify_beta_evidence(tr.history, tr.outcome.evidence)
    seconds = time.perf_counter() - start
    report(2, "BM(rationals) diagonal exclusion", ok, seconds, 1,
           f"outcome={tr.outcome.tag} excluded={sum(excluded)}/32")


def _threaded_runs():
    B = BaireSpace()
    out = []
    for depth in range(65):
        beta = make_strategy(CH, "beta", "canonical", B)
        alpha = make_strategy(CH, "alpha", "cylinder", B)
        out.append(run_game(CH, B, beta, alpha, depth))
    return out


def test_choquet_completeness(report):
    start = time.perf_counter()
    B = BaireSpace()
    bad = []
    for depth, tr in enumerate(_threaded_runs()):
        if depth == 0:
            continue
        w = tr.outcome.witness
        if tr.outcome.tag != ALPHA or tr.outcome.reason != "threaded" \
                or not all(B.member(w, U) for U in tr.history.opens()):
            bad.append(depth)
    seconds = time.perf_counter() - start
    report(3, "Ch(baire-omega) threaded witness at depths 1..64", not bad, seconds, 1, f"failed depths={bad}")


def test_remark_tactic(report):
    start = time.perf_counter()
    R = RemarkSpace(0)
    d_runs = mismatches = 0
    for seed in range(1000):
        beta = make_strategy(CH, "beta", "fuzz-d" if seed % 2 else "fuzz", R, seed)
        tr = run_game(CH, R, beta, remark_tactic(R), 8)
        d_points = [m.point for m in tr.history.first_moves() if R.is_d(m.point)]
        if not d_points:
            continue
        d_runs += 1
        if tr.outcome.tag != ALPHA or tr.outcome.witness != d_points[0]:
            mismatches += 1
    seconds = time.perf_counter() - start
    report(4, "remark tactic certifies the first D point", mismatches == 0 and d_runs > 0, seconds, 1,
           f"runs=1000 with_D={d_runs} mismatches={mismatches}")


def _thm32():
    Q = Rationals()
    return run_thm32(Q, Q, 6)


def test_thm32_pipeline(report):
    start = time.perf_counter()
    r = _thm32()
    counts = [lv["refinements"] for lv in r["levels"]]
    # level 0 seeds the root; the call that builds level n+1 refines 2^(n+1) times
    counts_ok = counts == [2 ** n for n in range(6)]
    levels_ok = all(lv["O"] and lv["W"] and not lv["failures"] for lv in r["levels"])
    x, y = Fraction(r["witness"]["x"]), Fraction(r["witness"]["y"])
    punctures = {(Fraction(p), Fraction(q)) for o in r["oracles"] for p, q in o["punctures"]}
    avoid_ok = len(punctures) == 6 and (x, y) not in punctures and 0 < x < 1 and 0 < y < 1
    ok = counts_ok and levels_ok and avoid_ok and all(c["ok"] for c in r["witness"]["checks"])
    seconds = time.perf_counter() - start
    report(5, "Thm 3.2 pipeline at N=6", ok, seconds, 5, f"refinements={counts} witness=({x}, {y})")


def test_thm41_exhaustive_duality(report):
    start = time.perf_counter()
    plays = bad = spaces = 0
    for n in (1, 2, 3):
        for opens in all_topologies(n):
            X = FiniteSpace(list(range(n)), opens)
            spaces += 1
            for indices in (1, 2):
                for rep in duality_suite(X, indices, 3):
                    plays += rep.plays
                    bad += len(rep.counterexamples)
    seconds = time.perf_counter() - start
    report(6, "Thm 4.1 exhaustive duality", bad == 0 and spaces == 34, seconds, 60,
           f"spaces={spaces} plays={plays} counterexamples={bad}")


def test_thm31_mechanism(report):
    start = time.perf_counter()
    Q = Rationals()
    f0 = ccc_pi_base_step(DecreasingSeq(Q, (Q.interval(0, 1),)))
    family = disjoint_family(f0, 100, 0)
    verdict = disjoint_family_projection(f0, family)
    # independent pairwise check on the raw endpoints
    finals = [g.last.descriptor for g in family]
    raw = all(max(a[0], b[0]) >= min(a[1], b[1]) for a, b in itertools.combinations(finals, 2))
    inside = all(0 <= lo and hi <= 1 for lo, hi in finals)
    seconds = time.perf_counter() - start
    report(7, "Thm 3.1 disjoint projection", verdict and raw and inside and len(family) == 100, seconds, 1,
           f"family={len(family)}")


def test_branchtree_exhaustive(report):
    start = time.perf_counter()
    problems = []
    for n in range(0, 13):
        nodes = bt.level(n + 1)
        if len(nodes) != 2 ** n:
            problems.append(("size", n))
        for t in nodes:
            s, k = bt.source(t)
            if t != s + (n - k,):
                problems.append(("source", t))
            t_minus, t_plus = bt.successors(t)
            if bt.source(t_minus)[0] != t or bt.source(t_plus)[0] != s:
                problems.append(("successor", t))
    seconds = time.perf_counter() - start
    report(8, "branch tree laws for n <= 12", not problems, seconds, 1, f"problems={problems[:3]}")


def _first_difference(a, b, depth=8):
    for m in range(depth):
        if a[m] != b[m]:
            return Fraction(1, 2 ** m)
    return None


def test_ultrametric_laws(report):
    start = time.perf_counter()
    rng = random.Random("acceptance:ultra")
    Q = Rationals()
    cache = {}
    pool = [_random_krom(Q, rng, cache=cache) for _ in range(1500)]
    prefixes = {id(f): f.materialize(8) for f in pool}
    violations = 0
    for _ in range(10 ** 4):
        f, g, h = (rng.choice(pool) for _ in range(3))
        d = {}
        for name, (a, b) in {"fg": (f, g), "gf": (g, f), "gh": (g, h), "fh": (f, h)}.items():
            v = ultradist(a, b, 8)
            v = v.upper if isinstance(v, DistanceBound) else v
            expected = _first_difference(prefixes[id(a)], prefixes[id(b)])
            if (v != expected) if expected is not None else (v > Fraction(1, 2 ** 8)):
                violations += 1
            d[name] = v
        if d["fg"] != d["gf"] or d["fh"] > max(d["fg"], d["gh"]):
            violations += 1
    seconds = time.perf_counter() - start
    report(9, "ultrametric symmetry and strong triangle", violations == 0, seconds, 2,
           f"triples=10000 violations={violations}")


def test_thm43_glue(report):
    start = time.perf_counter()
    r = run_thm43(BaireSpace(), 5)
    g = r["glue"]
    ok = r["ok"] and all(g["agree"]) and g["strict"] and g["certified"] and all(g["f_certificates"]) \
        and all(g["in_shadow"]) and r["shadow_legal"] and len(g["m"]) == 6
    seconds = time.perf_counter() - start
    report(10, "Thm 4.3 glue law on baire-omega at depth 5", ok, seconds, 2, f"m={g['m']}")


def test_determinism(report):
    start = time.perf_counter()
    first = [_diagonal_run().to_jsonl(), "".join(t.to_jsonl() for t in _threaded_runs()),
             json.dumps(_thm32(), sort_keys=True)]
    second = [_diagonal_run().to_jsonl(), "".join(t.to_jsonl() for t in _threaded_runs()),
              json.dumps(_thm32(), sort_keys=True)]
    same = [a == b for a, b in zip(first, second)]
    seconds = time.perf_counter() - start
    report(11, "byte-identical reruns of criteria 2, 3, 5", all(same), seconds, 30, f"same={same}")
