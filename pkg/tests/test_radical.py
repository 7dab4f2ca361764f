import numpy as np
import pytest
from hypothesis import given, strategies as st

from isoradix.batch import SweepConfig, good_primes
from isoradix.cache import TraceCache
from isoradix.curve import RationalCurve
from isoradix.radical import DEFAULT_ELLS, fingerprint, rho, valuation, valuations

from oracles import count_points


def test_rho_and_valuation():
    assert rho(20, 2) == 1 and valuation(20, 2) == 2
    assert rho(20, 3) == 0
    assert rho(12, 3) == 1 and valuation(12, 3) == 1
    with pytest.raises(ValueError):
        valuation(0, 2)


@given(st.integers(1, 10 ** 12), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_valuation_definition(N, ell):
    v = valuation(N, ell)
    assert N % ell ** v == 0 and N % ell ** (v + 1) != 0
    assert valuations(np.array([N]), ell)[0] == v


def test_default_ells():
    assert DEFAULT_ELLS == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def test_fingerprint_cm_i():
    E = RationalCurve("cm_i", 1, 0)
    fp = fingerprint(E, 13, [2, 3])
    assert fp.primes.tolist() == [5, 7, 11, 13]
    assert [count_points(1, 0, p) for p in (5, 7, 11, 13)] == [4, 8, 12, 20]
    assert fp.column(2).tolist() == [2, 3, 2, 2]
    assert fp.column(3).tolist() == [0, 0, 1, 0]
    assert fp.rho[:, 1].tolist() == [0, 0, 1, 0]


def test_fingerprint_cm_j():
    E = RationalCurve("cm_j", 0, 1)
    fp = fingerprint(E, 13, [5])
    assert [count_points(0, 1, p) for p in (5, 7, 11, 13)] == [6, 12, 12, 12]
    assert fp.column(5).tolist() == [0, 0, 0, 0]


def test_good_primes_exclude_discriminant():
    E = RationalCurve("11a1", -13392, -1080432)
    ps = good_primes(E, 100).tolist()
    assert 11 not in ps and 3 not in ps and ps[0] == 5
    assert all(E.disc % p for p in ps)


def test_rho_matches_lvalue(curves):
    for E in curves.values():
        fp = fingerprint(E, 3000, DEFAULT_ELLS)
        N = np.array([count_points(E.a % p, E.b % p, p) for p in fp.primes[:40].tolist()])
        for j, ell in enumerate(fp.ells):
            assert (fp.rho[:40, j] == (N % ell == 0)).all()


def test_extension_degree_fingerprint():
    E = RationalCurve("cm_i", 1, 0)
    fp = fingerprint(E, 13, [2], k=2)
    # #E(F_25) = 32, #E(F_49) = 64
    assert fp.column(2)[:2].tolist() == [5, 6]


def test_cold_and_warm_cache_agree(tmp_path):
    E = RationalCurve("37a1", -1296, 11664)
    cold = fingerprint(E, 20000, DEFAULT_ELLS)
    cache = TraceCache(tmp_path)
    first = fingerprint(E, 20000, DEFAULT_ELLS, cache=cache)
    computed = cache.computed
    warm = fingerprint(E, 20000, DEFAULT_ELLS, cache=cache)
    assert cache.computed == computed
    assert np.array_equal(cold.vals, first.vals) and np.array_equal(first.vals, warm.vals)
    assert np.array_equal(cold.primes, warm.primes)


def test_fingerprint_independent_of_workers_and_seed():
    E = RationalCurve("11a1", -13392, -1080432)
    a = fingerprint(E, 30000, (2, 3, 5), config=SweepConfig(seed=0, workers=1))
    b = fingerprint(E, 30000, (2, 3, 5), config=SweepConfig(seed=99, workers=2))
    assert np.array_equal(a.vals, b.vals)
