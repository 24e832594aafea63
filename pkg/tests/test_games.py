import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bairegames.errors import IllegalStrategyMove
from bairegames.games import (ALPHA, BETA, UNDECIDED, GameKind, History, Strategy, finite_space_baire_oracle,
                              gruenhage_run, make_strategy, run_game)
from bairegames.games.baire_oracle import dense_opens
from bairegames.games.core import legal_move
from bairegames.games.strategies import diagonal_interval, remark_tactic
from bairegames.topology import (BaireSpace, FiniteSpace, PointedOpen, Rationals, RemarkSpace, all_topologies,
                                 finite_space, gruenhage_w_strategy, rational_enumeration)

Q = Rationals()
BM, CH, GR = GameKind.BANACH_MAZUR, GameKind.STRONG_CHOQUET, GameKind.GRUENHAGE


def test_choquet_nesting_examples():
    h = History(CH, Q, (PointedOpen(Q.point(F(1, 4)), Q.interval(0, 1)), Q.interval(0, F(1, 2))))
    assert legal_move(h, PointedOpen(Q.point(F(1, 8)), Q.interval(0, F(1, 4))))
    assert not legal_move(h, PointedOpen(Q.point(F(1, 8)), Q.interval(0, F(3, 4))))


def test_bm_legality_matches_subsets_on_finite_lattices():
    for opens in all_topologies(3):
        X = FiniteSpace([0, 1, 2], opens)
        elems = X.elements()
        for play in itertools.product(elems, repeat=3):
            h = History(BM, X)
            expected_legal = True
            for k, U in enumerate(play):
                subset = k == 0 or set(U.descriptor) <= set(play[k - 1].descriptor)
                assert legal_move(h, U) == subset
                if not subset:
                    expected_legal = False
                    break
                h = h.append(U)
            assert expected_legal == (len(h.moves) == 3)


def test_choquet_threaded_branch():
    B = BaireSpace()
    beta = make_strategy(CH, "beta", "canonical", B)
    alpha = make_strategy(CH, "alpha", "cylinder", B)
    tr = run_game(CH, B, beta, alpha, 10)
    assert tr.outcome.tag == ALPHA
    assert all(B.member(tr.outcome.witness, U) for U in tr.history.opens())


def test_diagonal_excludes_enumerated_rationals():
    beta = make_strategy(BM, "beta", "diagonal", Q)
    alpha = make_strategy(BM, "alpha", "halver", Q)
    tr = run_game(BM, Q, beta, alpha, 16)
    assert tr.outcome.tag == BETA
    qs = list(itertools.islice(rational_enumeration(), 16))
    opens = tr.history.opens()
    # independent replay: q_k is outside β's round-k move, which every later open sits inside
    for k, q in enumerate(qs):
        assert not Q.member(Q.point(q), opens[2 * k])
        assert all(Q.contains(opens[j], opens[2 * k]) for j in range(2 * k, len(opens)))


def test_diagonal_first_round():
    lo, hi = diagonal_interval(F(0), F(1), F(1, 2), 0)
    assert hi <= F(1, 2) - F(1, 8) or lo >= F(1, 2) + F(1, 8)
    assert hi - lo < 1


def test_diagonal_lengths_shrink():
    beta = make_strategy(BM, "beta", "diagonal", Q)
    alpha = make_strategy(BM, "alpha", "halver", Q)
    tr = run_game(BM, Q, beta, alpha, 32)
    for n, U in enumerate(tr.history.first_moves(), 1):
        lo, hi = U.descriptor
        assert hi - lo < F(1, 2 ** (n - 1))


@pytest.mark.parametrize("kind", [BM, CH])
def test_depth_zero_is_undecided(kind):
    tr = run_game(kind, Q, make_strategy(kind, "beta", "fuzz", Q), make_strategy(kind, "alpha", "fuzz", Q), 0)
    assert tr.outcome.tag == UNDECIDED and tr.moves == ()


def test_illegal_move_names_side_and_round():
    beta = make_strategy(BM, "beta", "canonical", Q)
    bad = Strategy("alpha", "bad", lambda moves: Q.interval(5, 6) if len(moves) > 1 else Q.interval(0, F(1, 2)))
    with pytest.raises(IllegalStrategyMove) as info:
        run_game(BM, Q, beta, bad, 4)
    assert info.value.side == "alpha" and info.value.round == 1
    assert info.value.transcript is not None


def test_remark_tactic_on_d_point():
    R = RemarkSpace(0)
    move = PointedOpen(R.d(3), R.whole())
    assert remark_tactic(R)((move,)) == R.singleton(3)
    tr = run_game(CH, R, Strategy("beta", "d3", lambda a: move if not a else PointedOpen(R.d(3), a[-1])),
                  remark_tactic(R), 4)
    assert tr.outcome.tag == ALPHA and tr.outcome.witness == R.d(3)


def test_remark_tactic_keeps_rational_move():
    R = RemarkSpace(0)
    V = R.nbhd(R.q(0), 2)
    assert remark_tactic(R)((PointedOpen(R.q(0), V),)) == V


def test_rational_beta_stays_undecided():
    R = RemarkSpace(0)
    tr = run_game(CH, R, make_strategy(CH, "beta", "rational", R), remark_tactic(R), 10)
    assert tr.outcome.tag == UNDECIDED


def test_gruenhage_runs():
    x = Q.point(0)
    w = gruenhage_w_strategy(Q, x)
    tr = gruenhage_run(Q, x, w, make_strategy(GR, "playerII", "center", Q, center=x), 8)
    assert all(p == x for p in tr.history.second_moves())
    tr = gruenhage_run(Q, x, w, make_strategy(GR, "playerII", "edge", Q, center=x), 20)
    for k, p in enumerate(tr.history.second_moves()):
        assert abs(p.coords) < F(2, 2 ** k)
    assert gruenhage_run(Q, x, w, make_strategy(GR, "playerII", "fuzz", Q), 0).moves == ()


def test_baire_oracle_on_finite_spaces():
    assert finite_space_baire_oracle(finite_space("point"))
    S = finite_space("sierpinski")
    assert finite_space_baire_oracle(S)
    assert all(1 in D for D in dense_opens(S))
    for opens in all_topologies(3):
        assert finite_space_baire_oracle(FiniteSpace([0, 1, 2], opens))


SPACES = ["rationals", "baire-omega", "cantor", "finite:sierpinski", "finite:discrete:3", "remark-qd:0"]


@given(st.sampled_from(SPACES), st.sampled_from([BM, CH]), st.integers(0, 10 ** 6), st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_fuzzed_play_is_legal_and_replays(name, kind, seed, depth):
    from bairegames.topology import space_from_name
    X = space_from_name(name)
    beta = make_strategy(kind, "beta", "fuzz", X, seed)
    alpha = make_strategy(kind, "alpha", "fuzz", X, seed)
    tr = run_game(kind, X, beta, alpha, depth)
    h = History(kind, X)
    for m in tr.moves:
        assert legal_move(h, m)
        h = h.append(m)
    again = run_game(kind, X, make_strategy(kind, "beta", "fuzz", X, seed),
                     make_strategy(kind, "alpha", "fuzz", X, seed), depth)
    assert again.to_jsonl() == tr.to_jsonl()
