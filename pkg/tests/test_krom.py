import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bairegames.errors import DomainError, NotCertifiedAtDepth, PreconditionError
from bairegames.krom import (DecreasingSeq, DistanceBound, K0Space, KromPoint, KromSpace, basic_subset,
                             ccc_pi_base_step, constant_tail, disjoint_family_projection, extend, k0_certify,
                             nbhd_tail, prefix_dist, spliced, stems_disjoint, ultradist)
from bairegames.topology import BaireSpace, FiniteSpace, Rationals, RemarkSpace, all_topologies, finite_space

Q = Rationals()


def iv(a, b):
    return Q.interval(F(a), F(b))


def test_extend():
    f = DecreasingSeq(Q, (iv(0, 1),))
    assert extend(f, iv(0, F(1, 2))).elems == (iv(0, 1), iv(0, F(1, 2)))
    assert extend(f, iv(0, 1)).elems == (iv(0, 1), iv(0, 1))
    with pytest.raises(PreconditionError):
        extend(f, iv(0, 2))


def test_basic_subset_prefix_rule():
    f = DecreasingSeq(Q, (iv(0, 1),))
    g = extend(f, iv(0, F(1, 2)))
    assert basic_subset(f, f)
    assert basic_subset(g, f)
    assert not basic_subset(f, g)


def test_basic_subset_across_spaces():
    with pytest.raises(DomainError):
        basic_subset(DecreasingSeq(Q, (iv(0, 1),)), DecreasingSeq(BaireSpace(), (BaireSpace().whole(),)))


def _chains(X, length):
    elems = X.elements()
    out = []
    for seq in itertools.product(elems, repeat=length):
        if all(X.contains(seq[k + 1], seq[k]) for k in range(length - 1)):
            out.append(seq)
    return out


def test_basic_subset_against_enumeration():
    # Krom points of a finite space stabilizing by step 4, compared as sets
    for opens in all_topologies(3):
        X = FiniteSpace([0, 1, 2], opens)
        points = _chains(X, 4)
        stems = [()] + _chains(X, 1) + _chains(X, 2)

        def members(stem):
            return {p for p in points if p[:len(stem)] == stem}

        for g, f in itertools.product(stems, repeat=2):
            assert basic_subset(g, f, X) == (members(g) <= members(f)), (opens, g, f)
            assert stems_disjoint(g, f) == (not (members(g) & members(f)))


def test_forced_continuation_needs_minimal_entry():
    S = finite_space("sierpinski")
    low, top = S.element({1}), S.element({1, 2})
    assert basic_subset((low,), (low, low), S)
    assert not basic_subset((top,), (top, top), S)
    assert not basic_subset((low,), (low, low))


def test_ultradist_examples():
    zero = Q.point(0)
    f = KromPoint(Q, (iv(-1, 1),), zero, nbhd_tail)
    g = KromPoint(Q, (iv(-2, 2),), zero, nbhd_tail)
    assert ultradist(f, f) == 0
    assert ultradist(f, g) == 1
    h = KromPoint(Q, (iv(-1, 1), iv(-F(1, 4), F(1, 4))), zero, nbhd_tail)
    assert ultradist(f, h) == F(1, 2)


def test_ultradist_undecided_returns_bound():
    zero = Q.point(0)
    f = KromPoint(Q, (iv(-1, 1),), zero, constant_tail)
    g = KromPoint(Q, (iv(-1, 1), iv(-1, 1)), zero, constant_tail)
    d = ultradist(f, g, fuel=10)
    assert isinstance(d, DistanceBound) and d.upper == F(1, 1024)


def test_prefix_dist():
    assert prefix_dist((1, 2, 3), (1, 2, 3)) == 0
    assert prefix_dist((1, 2, 3), (1, 5, 3)) == F(1, 2)
    assert prefix_dist((1,), (1, 2)) == F(1, 2)


def test_ccc_step():
    f = DecreasingSeq(Q, (iv(0, 1),))
    assert ccc_pi_base_step(f).elems == (iv(0, 1), iv(0, 1))
    X = finite_space("1,2,3/1|1,2|3")
    g = ccc_pi_base_step(DecreasingSeq(X, (X.whole(),)))
    assert X.is_minimal(g.last)
    R = RemarkSpace(0)
    r = ccc_pi_base_step(DecreasingSeq(R, (R.whole(),)))
    assert R.contains(r.last, R.whole())


def test_disjoint_projection_examples():
    f0 = DecreasingSeq(Q, (iv(0, 1),))
    a, b = extend(f0, iv(0, F(1, 2))), extend(f0, iv(F(1, 2), 1))
    assert disjoint_family_projection(f0, [a, b])
    # incomparable stems whose final entries overlap
    c = extend(extend(f0, iv(0, F(2, 3))), iv(F(1, 3), F(2, 3)))
    d = extend(extend(f0, iv(F(1, 3), 1)), iv(F(1, 3), F(2, 3)))
    assert stems_disjoint(c, d)
    assert disjoint_family_projection(f0, [c, d]) is False
    with pytest.raises(PreconditionError):
        disjoint_family_projection(a, [b])


def test_k0_certificates():
    zero = Q.point(0)
    base = KromPoint(Q, (Q.nbhd(zero, 0),), zero, lambda f, p: Q.nbhd(zero, p))
    cert = k0_certify(base, 12)
    assert [j for _, j in cert.evidence] == list(range(12))
    assert cert.recheck()
    stalled = KromPoint(Q, (iv(0, 1),), Q.point(F(1, 2)), constant_tail)
    with pytest.raises(NotCertifiedAtDepth) as info:
        k0_certify(stalled, 5, fuel=50)
    # base members 0 and 1 around 1/2 are (-1/2, 3/2) and (0, 1); (0, 1) sits in both
    assert info.value.k == 2


def test_spliced_certificate_shifts():
    zero = Q.point(0)
    tail = KromPoint(Q, (Q.nbhd(zero, 0),), zero, lambda f, p: Q.nbhd(zero, p))
    h = (iv(-4, 4), iv(-2, 2))
    f = spliced(Q, h, tail)
    assert f.materialize(2) == h
    cert = k0_certify(f, 10)
    assert [j for _, j in cert.evidence] == [k + len(h) for k in range(10)]


def test_krom_space_arena():
    K = KromSpace(Q)
    U = K.element((iv(0, 1),))
    f = K.pick_point(U)
    assert K.member(f, U)
    V = K.refine(f, U, 2)
    assert K.contains(V, U) and K.member(f, V)
    K0 = K0Space(Q)
    g = K0.pick_point(K0.element((iv(0, 1),)))
    assert k0_certify(g, 8).recheck()


def _random_point(rng):
    elems = [iv(-8, 8)]
    for _ in range(7):
        lo, hi = elems[-1].descriptor
        if rng.random() < 0.5:
            elems.append(elems[-1])
        else:
            cut = (hi - lo) / 4
            elems.append(Q.interval(lo + cut * rng.randint(0, 1), hi - cut * rng.randint(0, 1)))
    return KromPoint(Q, elems, Q.pick_point(elems[-1]), constant_tail)


@given(st.integers(0, 10 ** 9))
@settings(max_examples=300, deadline=None)
def test_ultrametric_laws(seed):
    rng = random.Random(seed)
    f, g, h = (_random_point(rng) for _ in range(3))
    d = lambda a, b: ultradist(a, b, fuel=12)  # noqa: E731
    vals = [d(f, g), d(g, h), d(f, h)]
    if any(isinstance(v, DistanceBound) for v in vals):
        vals = [v.upper if isinstance(v, DistanceBound) else v for v in vals]
        assert vals[2] <= max(vals[0], vals[1])
        return
    assert d(f, g) == d(g, f)
    assert vals[2] <= max(vals[0], vals[1])
