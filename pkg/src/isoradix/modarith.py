"""Prime-field arithmetic and quadratic residues.

Elements are plain Python ints kept in ``[0, p)``. The hot loops in
:mod:`isoradix.curve` work on raw ints and only use :class:`PrimeField`
at the boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_MODULUS = 1 << 62

# Deterministic for every n < 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NotInvertible(ZeroDivisionError):
    """Raised when inverting zero in a prime field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_sieve(n: int) -> np.ndarray:
    """All primes <= n, ascending, as int64."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, int(n ** 0.5) + 1, 2):
        if flags[q]:
            flags[q * q::2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) >> 1, p) == 1 else -1


@lru_cache(maxsize=4096)
def smallest_nonresidue(p: int) -> int:
    n = 2
    while legendre_symbol(n, p) != -1:
        n += 1
    return n


def tonelli_shanks(a: int, p: int) -> int | None:
    """Square root of ``a`` mod an odd prime ``p``; the even root of the pair, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) >> 2, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = smallest_nonresidue(p)
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) >> 1, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return r if r % 2 == 0 else p - r


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime 5 <= p < 2^62."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 5 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus must be an int in [5, 2^62), got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise NotInvertible(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def legendre(self, a: int) -> int:
        return legendre_symbol(a, self.p)

    def sqrt(self, a: int) -> int | None:
        """Even square root of ``a``, or None when ``a`` is a non-residue."""
        return tonelli_shanks(a, self.p)

    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p)


def legendre(a: int, F: PrimeField) -> int:
    return F.legendre(a)


def sqrt_mod(a: int, F: PrimeField) -> int | None:
    return F.sqrt(a)
