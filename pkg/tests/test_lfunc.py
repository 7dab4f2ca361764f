import math
import random

import pytest
from hypothesis import given, strategies as st

from isoradix.curve import InvariantViolation, ReducedCurve
from isoradix.lfunc import (
    HasseViolation, LocalLData, classify, count_extension, frobenius_field_disc, lpoly,
    lpoly_at_one, squarefree_part, trace,
)
from isoradix.modarith import PrimeField, legendre_symbol, prime_sieve

from oracles import count_points, count_points_fp2, primes_between


def curve(a, b, p):
    return ReducedCurve(PrimeField(p), a, b)


def test_trace_examples():
    assert trace(curve(1, 0, 5)) == 2
    assert trace(curve(1, 0, 7)) == 0
    assert count_points(1, 0, 13) == 20
    assert trace(curve(1, 0, 13)) == -6


def test_lpoly():
    assert lpoly(2, 5) == (1, -2, 5)
    assert lpoly_at_one(2, 5) == 4
    assert lpoly_at_one(0, 7) == 8
    with pytest.raises(HasseViolation):
        lpoly(6, 5)


def test_count_extension_examples():
    d = count_extension(2, 5, 2)
    assert (d.t_k, d.N_k) == (-6, 32) == (-6, count_points_fp2(1, 0, 5))
    d = count_extension(0, 7, 2)
    assert (d.t_k, d.N_k) == (-14, 64) == (-14, count_points_fp2(1, 0, 7))
    assert count_extension(3, 11, 1).N_k == 11 + 1 - 3


def test_count_extension_limits():
    with pytest.raises(ValueError):
        count_extension(0, 7, 11)
    with pytest.raises(OverflowError):
        count_extension(0, 1000003, 4)
    with pytest.raises(HasseViolation):
        count_extension(5, 5, 2)


@pytest.mark.parametrize("p", primes_between(5, 50))
def test_extension_against_fp2_enumeration(p):
    rng = random.Random(p)
    for _ in range(3):
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a ** 3 + 27 * b * b) % p == 0:
            continue
        ap = p + 1 - count_points(a, b, p)
        assert count_extension(ap, p, 2).N_k == count_points_fp2(a, b, p)


@pytest.mark.parametrize("p", primes_between(5, 200))
def test_extension_invariants(p):
    w = int((4 * p) ** 0.5)
    for a in range(-w, w + 1):
        if a * a > 4 * p:
            continue
        n1 = count_extension(a, p, 1).N_k
        ts = [2, a]
        for k in range(2, 6):
            d = count_extension(a, p, k)
            ts.append(d.t_k)
            assert ts[k] == a * ts[k - 1] - p * ts[k - 2]
            assert d.t_k ** 2 <= 4 * p ** k
            assert d.N_k > 0
            if k <= 3:
                assert d.N_k % n1 == 0


def test_classify_examples():
    assert classify(LocalLData(13, 1, -6, -6, 20)).ordinary
    c = classify(LocalLData(7, 1, 0, 0, 8))
    assert (c.kind, c.case) == ("supersingular", 3)
    c = classify(count_extension(0, 7, 2))
    assert (c.kind, c.case) == ("supersingular", 1)


def test_classify_case_two_and_trap():
    # t = +-sqrt(q) at q = p^2
    assert classify(LocalLData(7, 2, 0, 7, 49 + 1 - 7)).case == 2
    with pytest.raises(InvariantViolation):
        classify(LocalLData(7, 3, 0, 7, 7 ** 3 + 1 - 7))


@given(st.sampled_from(prime_sieve(400)[2:].tolist()), st.integers(-40, 40), st.integers(1, 4))
def test_ordinary_iff_coprime(p, a, k):
    if a * a > 4 * p:
        return
    d = count_extension(a, p, k)
    try:
        c = classify(d)
    except InvariantViolation:
        pytest.fail(f"unclassifiable {d}")
    assert c.ordinary == (math.gcd(p, d.t_k) == 1)


def test_frobenius_field_disc_examples():
    assert frobenius_field_disc(2, 5) == -4
    assert frobenius_field_disc(0, 7) == -7
    assert frobenius_field_disc(1, 5) == -19
    assert frobenius_field_disc(-14, 49) is None


def squarefree_slow(n):
    s = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while n > 1:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return s * out


@given(st.integers(1, 10 ** 7))
def test_squarefree_part(n):
    assert squarefree_part(n) == squarefree_slow(n)
    assert squarefree_part(-n) == -squarefree_slow(n)


def test_frobenius_disc_is_fundamental():
    for p in primes_between(5, 300):
        for a in range(-int((4 * p) ** 0.5), int((4 * p) ** 0.5) + 1):
            D = frobenius_field_disc(a, p)
            assert D < 0 and D % 4 in (0, 1)
            f2 = (a * a - 4 * p) // D
            assert f2 * D == a * a - 4 * p and int(f2 ** 0.5) ** 2 == f2


def test_cm_supersingularity_small():
    for p in primes_between(5, 2000):
        if p % 4 == 3:
            assert trace(curve(1, 0, p)) == 0
        if p % 3 == 2:
            assert trace(curve(0, 1, p)) == 0


@pytest.mark.parametrize("d", [-1, 2, -3, 5])
def test_quadratic_twist_trace(d):
    a, b = -13392, -1080432
    disc = -16 * (4 * a ** 3 + 27 * b * b)
    for p in primes_between(5, 1000):
        if (2 * d * disc) % p == 0:
            continue
        t = trace(curve(a, b, p))
        td = trace(curve(a * d * d, b * d ** 3, p))
        assert td == legendre_symbol(d, p) * t
