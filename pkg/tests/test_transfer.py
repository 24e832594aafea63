from fractions import Fraction as F

import pytest

from bairegames import branchtree as bt
from bairegames.errors import PreconditionError, UnsupportedError
from bairegames.games import GameKind, Strategy, run_game
from bairegames.krom import K0Space, k0_certify
from bairegames.topology import BaireSpace, Rationals, finite_space
from bairegames.transfer import (ProductSpace, bco_ch_lower, canonical_krom_beta, check_lift, check_lower,
                                 check_roundtrip, disjoint_family, duality_suite, expand_beta,
                                 extract_counterplay_lower, krom_lift_beta, krom_lower_beta, krom_product,
                                 krom_shrink_beta, lowered_replay, run_scenario, run_thm31, run_thm32,
                                 run_thm43, shrink_beta, thm32_state)
from bairegames.transfer.thm32 import build_sigma_x, build_sigma_y, sigma_y_replay

Q = Rationals()


# -- products ---------------------------------------------------------------------------------------


def test_product_boxes():
    S = finite_space("sierpinski")
    X = ProductSpace({0: S, 1: S})
    low = S.element({1})
    box = X.box({0: low})
    assert X.support(box) == (0,)
    assert X.entry(box, 1) == S.whole()
    assert X.contains(box, X.whole())
    assert not X.contains(X.whole(), box)
    x = X.make_point({0: S.point(1), 1: S.point(2)})
    assert X.member(x, box)


# -- Thm 3.2 ------------------------------------------------------------------------------------------


def test_thm32_depth_one_certifies():
    r = run_thm32(Q, Q, 1)
    assert r["certified"]
    assert [lv["refinements"] for lv in r["levels"]] == [1]


def test_thm32_refinement_counts():
    r = run_thm32(Q, Q, 6)
    assert [lv["refinements"] for lv in r["levels"]] == [2 ** n for n in range(6)]
    assert all(lv["O"] and lv["W"] for lv in r["levels"])


def test_thm32_whole_oracles_give_legal_chain():
    r = run_thm32(Q, Q, 4, oracle="whole")
    assert r["certified"]


def test_thm32_zero_depth():
    r = run_thm32(Q, Q, 0)
    assert r["certified"] and r["path"] == []


@pytest.mark.parametrize("N", [2, 4, 5, 7])
def test_thm32_depths_between_reachable_levels(N):
    r = run_thm32(Q, Q, N)
    assert r["certified"] and all(c["ok"] for c in r["witness"]["checks"])
    assert [c["set"] for c in r["witness"]["checks"]][2:] == [f"O_{n}" for n in range(N)]
    assert bt.node_level(tuple(r["path"])) >= N


def _sigma_y_setup(N=6):
    state = thm32_state(Q, Q, N)
    sigma_x = build_sigma_x(state)
    alpha = Strategy("alpha", "echo", lambda moves: moves[-1])
    x_tr = run_game(GameKind.BANACH_MAZUR, Q, sigma_x, alpha, N)
    return state, x_tr


def test_sigma_y_full_replies_take_minimal_index():
    state, x_tr = _sigma_y_setup()
    sigma_y = build_sigma_y(x_tr, state)
    B = []
    for n in range(3):
        move = sigma_y(tuple(B))
        B.append(move.open)
    _, _, _, ks = sigma_y_replay(state, B)
    assert ks == [0, 1, 2]


def test_sigma_y_small_replies_match_linear_search():
    state, x_tr = _sigma_y_setup()
    sigma_y = build_sigma_y(x_tr, state)
    move = sigma_y(())
    B0 = Q.refine(move.point, move.open, 3)
    t, z, W, ks = sigma_y_replay(state, [B0])
    # independent linear search over the recorded y's of the root's children
    expected = next(j for j in range(0, 64)
                    if _recorded(state, bt.ROOT, j) is not None and Q.member(_recorded(state, bt.ROOT, j), B0))
    assert ks == [expected]
    assert all(k >= i for i, k in enumerate(ks))


def _recorded(state, s, k):
    node = s + (k,)
    try:
        return state.node(node).y
    except Exception:
        return None


def test_thm32_k_never_below_round():
    r = run_thm32(Q, Q, 6)
    assert all(k >= i for i, k in enumerate(r["k"]))


def test_thm32_rejects_bad_alpha():
    state = thm32_state(Q, Q, 2)
    sigma_x = build_sigma_x(state)
    U0 = sigma_x(())
    with pytest.raises(PreconditionError):
        sigma_x((Q.interval(5, 6),))
    assert U0 is not None


# -- Thm 4.1 --------------------------------------------------------------------------------------------


def test_lift_first_move_is_fresh_stem():
    S = finite_space("sierpinski")
    X = ProductSpace({0: S, 1: S})
    K = krom_product(X)
    V0 = X.box({1: S.element({1})})
    sigma = Strategy("beta", "fixed", lambda moves: V0 if not moves else moves[-1])
    star = krom_lift_beta(sigma, X, K)(())
    assert K.entry(star, 1).descriptor == (S.element({1}),)
    assert K.support(star) == (1,)
    # a new index later opens a fresh one-entry stem
    U_star = star
    sigma2 = Strategy("beta", "grow", lambda moves: V0 if not moves else X.box({0: S.element({1}), 1: S.element({1})}))
    star2 = krom_lift_beta(sigma2, X, K)((U_star,))
    assert K.entry(star2, 0).descriptor == (S.element({1}),)
    assert K.entry(star2, 1).descriptor == (S.element({1}), S.element({1}))


def test_lower_projects_last_entry():
    S = finite_space("sierpinski")
    X = ProductSpace({0: S})
    K = krom_product(X)
    W1, W2 = S.whole(), S.element({1})
    star = K.box({0: K.factors[0].element((W1, W2))})
    sigma = krom_lower_beta(Strategy("beta", "fixed", lambda moves: star), X, K)
    assert sigma(()) == X.box({0: W2})


@pytest.mark.parametrize("lattice", ["sierpinski", "discrete:2", "1,2,3/1|1,2|3"])
def test_duality_small(lattice):
    for report in duality_suite(finite_space(lattice), 2, 2):
        assert report.ok, report.to_json()


def test_lowered_counterplay_extraction():
    S = finite_space("discrete:2")
    X = ProductSpace({0: S, 1: S})
    K = krom_product(X)
    sigma_star = krom_shrink_beta(K)
    alpha = [X.box({0: S.element({0})})]
    star_history, projections = lowered_replay(sigma_star, X, K, alpha)
    x = X.make_point({0: S.point(0), 1: S.pick_point(S.whole())})
    ex = extract_counterplay_lower(x, X, K, star_history)
    assert ex.ok


def test_single_checks_report_plays():
    S = finite_space("sierpinski")
    X = ProductSpace({0: S})
    assert check_lift(shrink_beta(X), X, 2).plays > 0
    assert check_lower(krom_shrink_beta(krom_product(X)), X, 2).ok
    assert check_roundtrip(expand_beta(X), X, 2).ok


# -- Thm 4.3 --------------------------------------------------------------------------------------------


def test_thm43_glue_on_baire_space():
    r = run_thm43(BaireSpace(), 5)
    assert r["ok"]
    g = r["glue"]
    assert all(g["agree"]) and g["strict"] and g["certified"] and all(g["f_certificates"])


def test_thm43_singleton_branch():
    X = finite_space("point")
    K0 = K0Space(X)
    sigma = bco_ch_lower(canonical_krom_beta(K0), X, K0)
    move = sigma(())
    assert X.is_singleton(move.open)
    first = sigma.state["state"].rounds[0]
    assert first.V == first.f.element(first.m - 1)


def test_thm43_strict_branch_every_round():
    B = BaireSpace()
    r = run_thm43(B, 6)
    assert all(r["beta_strict"])


def test_thm43_requires_bco():
    with pytest.raises(UnsupportedError):
        bco_ch_lower(canonical_krom_beta(K0Space(Q)), Q)


def test_thm43_glued_point_certifies():
    B = BaireSpace()
    r = run_thm43(B, 3)
    assert r["glue"]["ok"]


# -- Thm 3.1 --------------------------------------------------------------------------------------------


def test_thm31_family():
    r = run_thm31(100, 0)
    assert r["ok"] and r["family"] == 100


def test_thm31_generator_is_seeded():
    from bairegames.krom import DecreasingSeq
    f0 = DecreasingSeq(Q, (Q.interval(0, 1),))
    a = [g.elems for g in disjoint_family(f0, 20, 3)]
    b = [g.elems for g in disjoint_family(f0, 20, 3)]
    assert a == b


# -- scenarios ------------------------------------------------------------------------------------------


def test_scenario_configs():
    assert run_scenario({"theorem": "3.1", "family": 10})["ok"]
    assert run_scenario({"theorem": "4.1-roundtrip", "spaces": ["finite:sierpinski"], "indices": 1,
                         "depth": 2})["ok"]
    from bairegames.errors import ConfigError
    with pytest.raises(ConfigError):
        run_scenario({"theorem": "9.9"})
    with pytest.raises(ConfigError):
        run_scenario({"theorem": "3.2", "spaces": ["baire-omega", "rationals"]})


def test_k0_certificate_of_canonical_point():
    K0 = K0Space(BaireSpace())
    f = K0.pick_point(K0.element((BaireSpace().cylinder(1),)))
    assert k0_certify(f, 6).recheck()
