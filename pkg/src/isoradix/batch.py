"""Trace sweeps over ranges of good primes, optionally across processes."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curve import NAIVE_THRESHOLD, RationalCurve, ReducedCurve, group_order
from .modarith import PrimeField, prime_sieve

CHUNK = 256


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 0
    workers: int = 1
    naive_threshold: int = NAIVE_THRESHOLD


def good_primes(E: RationalCurve, B: int, lo: int = 5) -> np.ndarray:
    """Primes p in [lo, B], p >= 5, not dividing the discriminant."""
    ps = prime_sieve(B)
    ps = ps[ps >= max(lo, 5)]
    if ps.size == 0:
        return ps
    disc = abs(E.disc)
    keep = np.fromiter((disc % int(p) != 0 for p in ps), dtype=bool, count=ps.size)
    return ps[keep]


def point_rng(seed: int, E_a: int, E_b: int, p: int) -> random.Random:
    """Per-prime generator so results do not depend on scheduling."""
    return random.Random(f"{seed}:{E_a}:{E_b}:{p}")


def _trace_chunk(a, b, primes, seed, threshold):
    out = []
    for p in primes:
        R = ReducedCurve(PrimeField(p), a, b)
        out.append(p + 1 - group_order(R, point_rng(seed, a, b, p), threshold))
    return out


def compute_traces(E: RationalCurve, primes, config: SweepConfig = SweepConfig()) -> np.ndarray:
    """a_p for each prime in ``primes`` (all assumed good), in input order."""
    primes = [int(p) for p in primes]
    if not primes:
        return np.zeros(0, dtype=np.int64)
    chunks = [primes[i:i + CHUNK] for i in range(0, len(primes), CHUNK)]
    args = (E.a, E.b)
    if config.workers <= 1 or len(chunks) == 1:
        parts = [_trace_chunk(*args, c, config.seed, config.naive_threshold) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_trace_chunk, *args, c, config.seed, config.naive_threshold)
                       for c in chunks]
            parts = [f.result() for f in futures]
    return np.array([t for part in parts for t in part], dtype=np.int64)


def traces(E: RationalCurve, B: int, *, cache=None, config: SweepConfig = SweepConfig()):
    """(primes, a_p) for every good p <= B, read through ``cache`` when given."""
    if cache is not None:
        entry = cache.sweep(E, B, config)
        mask = entry.primes <= B
        return entry.primes[mask], entry.traces[mask]
    ps = good_primes(E, B)
    return ps, compute_traces(E, ps, config)
