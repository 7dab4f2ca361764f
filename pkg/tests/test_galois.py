from fractions import Fraction

import pytest

from isoradix.curve import RationalCurve
from isoradix.distinguish import EmptySample
from isoradix.galois import (
    GL2, NONSPLIT, SPLIT, CMCurveError, GroupModel, coupled_mismatch_fraction, eigen_one_fraction,
    elements, enumerate_model, gl2_eigen_one_closed_form, predict_vs_observe,
)

from oracles import det, gl2_elements, has_eigen_one, primes_between


def brute_fraction(elems, ell):
    return Fraction(sum(has_eigen_one(g, ell) for g in elems), len(elems))


def test_orders_small():
    assert len(list(enumerate_model(GroupModel(GL2, 3)))) == 48 == len(gl2_elements(3))
    assert len(elements(GroupModel(SPLIT, 5))) == 16
    assert len(elements(GroupModel(NONSPLIT, 5))) == 24


@pytest.mark.parametrize("ell", primes_between(2, 31))
def test_gl2_enumeration(ell):
    G = GroupModel(GL2, ell)
    g = elements(G)
    assert len(g) == G.order == (ell ** 2 - 1) * (ell ** 2 - ell)
    assert len({tuple(r) for r in g.tolist()}) == len(g)
    if ell <= 13:
        assert eigen_one_fraction(G) == gl2_eigen_one_closed_form(ell)
    if ell <= 5:
        assert sorted(map(tuple, g.tolist())) == sorted(gl2_elements(ell))


@pytest.mark.parametrize("ell", primes_between(3, 499))
def test_cartan_orders_and_structure(ell):
    S, C = GroupModel(SPLIT, ell), GroupModel(NONSPLIT, ell)
    s, c = elements(S), elements(C)
    assert len(s) == S.order == (ell - 1) ** 2
    assert len(c) == C.order == ell ** 2 - 1
    assert len({tuple(r) for r in c.tolist()}) == len(c)
    # every non-split element is invertible, and only the identity fixes a vector
    assert all(det(tuple(r), ell) for r in c.tolist())
    fixers = [tuple(r) for r in c.tolist() if has_eigen_one(tuple(r), ell)]
    assert fixers == [(1, 0, 0, 1)]
    assert eigen_one_fraction(S) == Fraction(2 * (ell - 1) - 1, (ell - 1) ** 2)


def test_nonsplit_is_closed_under_multiplication():
    ell = 7
    els = {tuple(r) for r in elements(GroupModel(NONSPLIT, ell)).tolist()}
    for a, b, c, d in list(els)[:12]:
        for e, f, g, h in els:
            prod = ((a * e + b * g) % ell, (a * f + b * h) % ell, (c * e + d * g) % ell, (c * f + d * h) % ell)
            assert prod in els


def test_exact_constants():
    assert eigen_one_fraction(GroupModel(GL2, 2)) == Fraction(2, 3)
    assert eigen_one_fraction(GroupModel(GL2, 3)) == Fraction(21, 48)
    assert eigen_one_fraction(GroupModel(SPLIT, 5)) == Fraction(7, 16)
    assert eigen_one_fraction(GroupModel(NONSPLIT, 5)) == Fraction(1, 24)
    assert brute_fraction(gl2_elements(2), 2) == Fraction(2, 3)
    assert brute_fraction(gl2_elements(3), 3) == Fraction(21, 48)


def test_model_validation():
    with pytest.raises(ValueError):
        GroupModel(GL2, 37)
    with pytest.raises(ValueError):
        GroupModel(SPLIT, 2)
    with pytest.raises(ValueError):
        GroupModel(NONSPLIT, 9)
    with pytest.raises(ValueError):
        GroupModel("borel", 5)


def brute_coupled(ell):
    g = gl2_elements(ell)
    total = mis = 0
    for x in g:
        for y in g:
            if det(x, ell) == det(y, ell):
                total += 1
                mis += has_eigen_one(x, ell) != has_eigen_one(y, ell)
    return Fraction(mis, total), Fraction(total - mis, total)


def test_coupled_fraction():
    G2, G3 = GroupModel(GL2, 2), GroupModel(GL2, 3)
    assert coupled_mismatch_fraction(G2, G2) == Fraction(4, 9) == brute_coupled(2)[0]
    assert coupled_mismatch_fraction(G3, G3) == Fraction(31, 64) == brute_coupled(3)[0]
    assert coupled_mismatch_fraction(G2, G2, coupling="diagonal") == 0
    mis, agree = brute_coupled(3)
    assert mis + agree == 1


def test_coupled_mixed_models_by_double_loop():
    ell = 5
    A = [tuple(r) for r in elements(GroupModel(SPLIT, ell)).tolist()]
    B = [tuple(r) for r in elements(GroupModel(NONSPLIT, ell)).tolist()]
    pairs = [(x, y) for x in A for y in B if det(x, ell) == det(y, ell)]
    mis = sum(has_eigen_one(x, ell) != has_eigen_one(y, ell) for x, y in pairs)
    assert coupled_mismatch_fraction(GroupModel(SPLIT, ell), GroupModel(NONSPLIT, ell)) == Fraction(mis, len(pairs))


def test_coupled_limits():
    with pytest.raises(ValueError):
        coupled_mismatch_fraction(GroupModel(GL2, 31), GroupModel(GL2, 31))
    with pytest.raises(ValueError):
        coupled_mismatch_fraction(GroupModel(GL2, 3), GroupModel(GL2, 5))
    with pytest.raises(ValueError):
        coupled_mismatch_fraction(GroupModel(GL2, 3), GroupModel(SPLIT, 3), coupling="diagonal")


def test_predict_refuses_cm_and_empty():
    cm = RationalCurve("cm_i", 1, 0)
    with pytest.raises(CMCurveError):
        predict_vs_observe(cm, GroupModel(GL2, 2), 1000)
    forced = predict_vs_observe(cm, GroupModel(NONSPLIT, 3), 5000, force=True)
    assert forced.primes > 0
    with pytest.raises(EmptySample):
        predict_vs_observe(RationalCurve("11a1", -13392, -1080432), GroupModel(GL2, 2), 4)


def test_cm_i_even_orders_at_inert_primes():
    # supersingular p = 3 mod 4 give N = p + 1, divisible by 4
    cm = RationalCurve("cm_i", 1, 0)
    pred = predict_vs_observe(cm, GroupModel(GL2, 2), 5000, force=True)
    assert pred.observed >= Fraction(1, 2)


def test_predict_small_sweep():
    E = RationalCurve("37a1", -1296, 11664)
    r = predict_vs_observe(E, GroupModel(GL2, 3), 20000)
    assert r.predicted == Fraction(21, 48)
    assert r.z_score < 4
