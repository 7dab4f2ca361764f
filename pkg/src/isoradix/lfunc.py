"""Local L-data: traces, L-polynomials, extension counts, reduction type.

The Frobenius eigenvalues are never formed as complex numbers; everything
goes through the integer recurrence t_k = a t_{k-1} - p t_{k-2}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import InvariantViolation, ReducedCurve, group_order

MAX_DEGREE = 10
WORD_LIMIT = 1 << 62


class HasseViolation(ValueError):
    pass


@dataclass(frozen=True)
class LocalLData:
    p: int
    k: int
    a: int
    t_k: int
    N_k: int


@dataclass(frozen=True)
class Classification:
    kind: str  # "ordinary" | "supersingular"
    case: int | None = None

    @property
    def ordinary(self) -> bool:
        return self.kind == "ordinary"


ORDINARY = Classification("ordinary")


def _check_hasse(a, q):
    if a * a > 4 * q:
        raise HasseViolation(f"trace {a} violates the Hasse bound at q={q}")


def trace(E: ReducedCurve, rng=None) -> int:
    return E.p + 1 - group_order(E, rng)


def lpoly(a: int, p: int) -> tuple[int, int, int]:
    """Coefficients (1, -a, p) of L(T) = 1 - aT + pT^2."""
    _check_hasse(a, p)
    return 1, -a, p


def lpoly_at_one(a: int, p: int) -> int:
    return sum(lpoly(a, p))


def count_extension(a: int, p: int, k: int) -> LocalLData:
    """#E(F_{p^k}) from the trace over F_p."""
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"degree must be in [1, {MAX_DEGREE}], got {k}")
    _check_hasse(a, p)
    q = p ** k
    if q >= WORD_LIMIT:
        raise OverflowError(f"p^k = {p}^{k} exceeds 2^62")
    t_prev, t = 2, a
    for _ in range(k - 1):
        t_prev, t = t, a * t - p * t_prev
    return LocalLData(p, k, a, t, q + 1 - t)


def classify(d: LocalLData) -> Classification:
    """Ordinary, or the supersingular shape of L(T) over F_{p^k}."""
    q = d.p ** d.k
    t = d.t_k
    if t % d.p:
        return ORDINARY
    if t == 0:
        return Classification("supersingular", 3)
    r = math.isqrt(q)
    if r * r == q:
        if abs(t) == 2 * r:
            return Classification("supersingular", 1)
        if abs(t) == r:
            return Classification("supersingular", 2)
    raise InvariantViolation(f"p | t_k but t_k={t} matches no supersingular shape at q={q}")


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    # strip primes up to the cube root; what remains is q, q^2, q*r or 1
    while d * d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e & 1:
            out *= d
        d += 1 if d == 2 else 2
    r = math.isqrt(n)
    if r * r != n:
        out *= n
    return sign * out


def frobenius_field_disc(a: int, q: int) -> int | None:
    """Fundamental discriminant of Q(alpha) for L(T) = 1 - aT + qT^2.

    Returns None when a^2 = 4q and the polynomial splits over Q.
    """
    _check_hasse(a, q)
    disc = a * a - 4 * q
    if disc == 0:
        return None
    s = squarefree_part(disc)
    return s if s % 4 == 1 else 4 * s
