"""Short Weierstrass curves over Q and their reductions mod p.

Points are ``None`` (the point at infinity) or an ``(x, y)`` tuple of
canonical residues. Group orders come from a vectorised character sum for
small p and from baby-step/giant-step over the Hasse interval otherwise.
"""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .modarith import PrimeField, prime_sieve, smallest_nonresidue, tonelli_shanks

INFINITY = None

# Below this, counting by character sum beats BSGS.
NAIVE_THRESHOLD = 1 << 14
BSGS_POINTS = 8
TORSION_TRIALS = 40

# j-invariants of the rational CM curves (class number one orders).
CM_J_INVARIANTS = frozenset({
    0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000,
    16581375, -884736000, -147197952000, -262537412640768000,
})


class BadReduction(ValueError):
    """The model's discriminant vanishes mod p."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this is a bug, not bad input."""


@dataclass(frozen=True)
class RationalCurve:
    """The integral model y^2 = x^3 + a*x + b over Q."""

    label: str
    a: int
    b: int
    disc: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))
        disc = -16 * (4 * self.a ** 3 + 27 * self.b ** 2)
        if disc == 0:
            raise ValueError(f"curve {self.label!r} is singular (discriminant 0)")
        object.__setattr__(self, "disc", disc)

    @property
    def key(self) -> str:
        """128-bit content hash of (a, b); labels do not enter."""
        return hashlib.blake2b(f"{self.a},{self.b}".encode(), digest_size=16).hexdigest()

    @property
    def j_invariant(self) -> Fraction:
        num = 4 * self.a ** 3
        return Fraction(1728 * num, num + 27 * self.b ** 2)

    @property
    def has_cm(self) -> bool:
        j = self.j_invariant
        return j.denominator == 1 and j.numerator in CM_J_INVARIANTS

    def is_good(self, p: int) -> bool:
        return p >= 5 and self.disc % p != 0

    def twist(self, d: int, label: str | None = None) -> "RationalCurve":
        """Quadratic twist y^2 = x^3 + a d^2 x + b d^3."""
        return RationalCurve(label or f"{self.label}^({d})", self.a * d * d, self.b * d ** 3)

    @classmethod
    def from_ainvariants(cls, label, a1, a2, a3, a4, a6) -> "RationalCurve":
        """Short model y^2 = x^3 - 27 c4 x - 54 c6 of a long Weierstrass equation."""
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        return cls(label, -27 * c4, -54 * c6)

    def __str__(self):
        return f"{self.label}: y^2 = x^3 + {self.a}x + {self.b}"


@dataclass(frozen=True)
class ReducedCurve:
    F: PrimeField
    a: int
    b: int

    def __post_init__(self):
        p = self.F.p
        object.__setattr__(self, "a", self.a % p)
        object.__setattr__(self, "b", self.b % p)
        if (4 * self.a ** 3 + 27 * self.b ** 2) % p == 0:
            raise BadReduction(f"y^2 = x^3 + {self.a}x + {self.b} is singular mod {p}")

    @property
    def p(self) -> int:
        return self.F.p

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.F.p

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - self.rhs(x)) % self.F.p == 0

    def twist(self, d: int) -> "ReducedCurve":
        return ReducedCurve(self.F, self.a * d * d, self.b * d * d * d)

    def hasse_interval(self) -> tuple[int, int]:
        w = math.isqrt(4 * self.F.p)
        return self.F.p + 1 - w, self.F.p + 1 + w


def reduce(E: RationalCurve, p: int) -> ReducedCurve:
    if p < 5:
        raise ValueError(f"primes below 5 are excluded (got p={p})")
    if E.disc % p == 0:
        raise BadReduction(f"p={p} divides the discriminant of {E.label}")
    return ReducedCurve(PrimeField(p), E.a, E.b)


# --- group law on raw residues -------------------------------------------

def _add(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        m = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        m = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (m * m - x1 - x2) % p
    return x3, (m * (x1 - x3) - y1) % p


def _mul(n, P, a, p):
    if n < 0:
        n, P = -n, _neg(P, p)
    R = None
    while n:
        if n & 1:
            R = _add(R, P, a, p)
        n >>= 1
        if n:
            P = _add(P, P, a, p)
    return R


def _neg(P, p):
    return None if P is None else (P[0], -P[1] % p)


def point_add(P, Q, E: ReducedCurve):
    return _add(P, Q, E.a, E.p)


def point_neg(P, E: ReducedCurve):
    return _neg(P, E.p)


def scalar_mul(n: int, P, E: ReducedCurve):
    """n*P by double-and-add."""
    return _mul(n, P, E.a, E.p)


# --- counting -------------------------------------------------------------

def count_naive(E: ReducedCurve) -> int:
    """#E(F_p) = 1 + sum_x (1 + (x^3+ax+b / p)), vectorised over x."""
    p = E.p
    if p > 1 << 31:
        raise ValueError("naive counting is limited to p < 2^31")
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x + E.a * x + E.b) % p
    is_square = np.zeros(p, dtype=bool)
    is_square[x * x % p] = True
    nonzero = f != 0
    residues = np.count_nonzero(is_square[f] & nonzero)
    zeros = p - np.count_nonzero(nonzero)
    # 1 (infinity) + 2 per nonzero residue + 1 per root
    return 1 + 2 * residues + zeros


def random_point(E: ReducedCurve, rng: random.Random):
    p = E.p
    while True:
        x = rng.randrange(p)
        f = E.rhs(x)
        y = tonelli_shanks(f, p)
        if y is None:
            continue
        if y and rng.getrandbits(1):
            y = p - y
        return x, y


_small_primes: list[int] = []


def _factor(n: int) -> dict[int, int]:
    global _small_primes
    root = math.isqrt(n)
    if not _small_primes or _small_primes[-1] < root:
        _small_primes = prime_sieve(max(2 * root, 1 << 12)).tolist()
    out = {}
    for q in _small_primes:
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out[q] = e
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _order_from_multiple(P, M, a, p):
    """Exact order of P given any positive M with M*P = O."""
    order = M
    for q in _factor(M):
        while order % q == 0 and _mul(order // q, P, a, p) is None:
            order //= q
    return order


def _annihilator(P, lo, hi, a, p):
    """Some positive M with M*P = O, searched around [lo, hi] by BSGS."""
    width = hi - lo
    m = math.isqrt(width // 2) + 1
    table = {}
    R = None
    for j in range(1, m + 1):
        R = _add(R, P, a, p)
        if R is None:
            return j
        table.setdefault(R[0], j)
    step = 2 * m + 1
    S = _mul(step, P, a, p)
    c = lo + m
    R = _mul(c, P, a, p)
    i = 0
    while True:
        if R is None:
            return c + i * step
        j = table.get(R[0])
        if j is not None:
            Jp = _mul(j, P, a, p)
            # R = -jP  =>  (c + i*step + j) P = O ;  R = jP  =>  ... - j
            return c + i * step + (j if Jp[1] != R[1] else -j)
        i += 1
        if c + i * step - m > hi:
            raise InvariantViolation(f"no annihilator of {P} found in Hasse window mod {p}")
        R = _add(R, S, a, p)


def _candidate_orders(E: ReducedCurve, rng, n_points=BSGS_POINTS):
    lo, hi = E.hasse_interval()
    exponent = 1
    cands = list(range(lo, hi + 1))
    for _ in range(n_points):
        P = random_point(E, rng)
        M = _annihilator(P, lo, hi, E.a, E.p)
        order = _order_from_multiple(P, M, E.a, E.p)
        exponent = exponent * order // math.gcd(exponent, order)
        first = -(-lo // exponent) * exponent
        cands = list(range(first, hi + 1, exponent))
        if len(cands) == 1:
            break
    return cands


def count_bsgs(E: ReducedCurve, rng: random.Random | None = None) -> int:
    """Group order by BSGS on random points; ambiguity is settled on the twist."""
    if rng is None:
        rng = random.Random(f"bsgs:{E.p}:{E.a}:{E.b}")
    cands = _candidate_orders(E, rng)
    if len(cands) == 1:
        return cands[0]
    p = E.p
    twist = E.twist(smallest_nonresidue(p))
    twist_cands = set(_candidate_orders(twist, rng))
    cands = [n for n in cands if 2 * p + 2 - n in twist_cands]
    if len(cands) == 1:
        return cands[0]
    if not cands:
        raise InvariantViolation(f"no consistent group order for {E} (p={p})")
    # Only tiny p, where both E and its twist can have small exponent.
    if p < NAIVE_THRESHOLD:
        return count_naive(E)
    raise InvariantViolation(f"group order of {E} ambiguous among {cands}")


def group_order(E: ReducedCurve, rng: random.Random | None = None, threshold: int = NAIVE_THRESHOLD) -> int:
    if E.p < threshold:
        return count_naive(E)
    return count_bsgs(E, rng)


# --- torsion --------------------------------------------------------------

class TorsionRank(NamedTuple):
    rank: int
    witnesses: tuple


def _valuation(n, ell):
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def torsion_rank(E: ReducedCurve, ell: int, N: int, rng: random.Random, trials: int = TORSION_TRIALS) -> TorsionRank:
    """Rank (1 or 2) of E(F_p)[ell] by sampling the ell-Sylow subgroup.

    Rank 2 is certified by two witnesses; rank 1 is Monte Carlo.
    """
    if N % ell:
        raise ValueError(f"{ell} does not divide the group order {N}")
    p, a = E.p, E.a
    cofactor = N // ell ** _valuation(N, ell)
    first = None
    for _ in range(trials):
        P = _mul(cofactor, random_point(E, rng), a, p)
        if P is None:
            continue
        Q = _mul(ell, P, a, p)
        while Q is not None:
            P, Q = Q, _mul(ell, Q, a, p)
        if first is None:
            first = P
            if (p - 1) % ell:
                # Weil pairing: full ell-torsion forces ell | p - 1
                return TorsionRank(1, (first,))
            multiples = set()
            R = None
            for _ in range(ell):
                multiples.add(R)
                R = _add(R, first, a, p)
            continue
        if P not in multiples:
            return TorsionRank(2, (first, P))
    if first is None:
        raise InvariantViolation(f"no point of order {ell} found although {ell} | {N}")
    return TorsionRank(1, (first,))
