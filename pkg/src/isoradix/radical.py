"""Valuation and radical fingerprints of local point counts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .batch import SweepConfig, traces
from .curve import RationalCurve
from .lfunc import count_extension
from .modarith import prime_sieve

DEFAULT_ELLS = tuple(int(q) for q in prime_sieve(47))  # first 15 primes


def valuation(N: int, ell: int) -> int:
    if N < 1:
        raise ValueError(f"valuation needs N >= 1, got {N}")
    v = 0
    while N % ell == 0:
        N //= ell
        v += 1
    return v


def rho(N: int, ell: int) -> int:
    """1 if ell divides N, else 0."""
    return min(1, valuation(N, ell))


def valuations(N: np.ndarray, ell: int) -> np.ndarray:
    """Vectorised v_ell over an array of positive group orders."""
    N = np.asarray(N, dtype=np.int64).copy()
    if np.any(N < 1):
        raise ValueError("group orders must be positive")
    v = np.zeros(N.shape, dtype=np.uint8)
    hit = N % ell == 0
    while hit.any():
        v[hit] += 1
        N[hit] //= ell
        hit = N % ell == 0
    return v


def orders(primes: np.ndarray, a: np.ndarray, k: int = 1) -> np.ndarray:
    """#E(F_{p^k}) for each (p, a_p)."""
    if k == 1:
        return primes + 1 - a
    return np.array([count_extension(int(ai), int(p), k).N_k for p, ai in zip(primes, a)],
                    dtype=np.int64)


@dataclass
class Fingerprint:
    curve_key: str
    k: int
    primes: np.ndarray
    ells: tuple[int, ...]
    vals: np.ndarray  # shape (len(primes), len(ells)), uint8

    @property
    def rho(self) -> np.ndarray:
        return np.minimum(self.vals, 1)

    def column(self, ell: int) -> np.ndarray:
        return self.vals[:, self.ells.index(ell)]


def fingerprint_from_traces(E: RationalCurve, primes, a, ells, k: int = 1) -> Fingerprint:
    ells = tuple(sorted(int(q) for q in ells))
    if not ells:
        raise ValueError("need at least one ell")
    N = orders(np.asarray(primes, dtype=np.int64), np.asarray(a, dtype=np.int64), k)
    vals = np.stack([valuations(N, ell) for ell in ells], axis=1) if N.size else \
        np.zeros((0, len(ells)), dtype=np.uint8)
    return Fingerprint(E.key, k, np.asarray(primes, dtype=np.int64), ells, vals)


def fingerprint(E: RationalCurve, B: int, ells=DEFAULT_ELLS, k: int = 1, *,
                cache=None, config: SweepConfig = SweepConfig()) -> Fingerprint:
    if B < 5:
        raise ValueError(f"bound must be >= 5, got {B}")
    ps, a = traces(E, B, cache=cache, config=config)
    return fingerprint_from_traces(E, ps, a, ells, k)
