"""Pairwise comparison of curves by radical fingerprints.

A mismatch at (p, ell) means ell divides exactly one of #E(F_p), #E'(F_p).
Isogenous curves share every a_p and so never mismatch; the scan looks for
the converse evidence. A clean scan is reported as *consistent with*
isogeny, never as a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .batch import SweepConfig, good_primes, traces
from .curve import RationalCurve
from .radical import DEFAULT_ELLS, orders, valuations

M_CAP = 8
CAVEAT = "no mismatch <= B"


class EmptySample(ValueError):
    """No common good primes in the requested range."""


def common_good_primes(E: RationalCurve, E2: RationalCurve, B: int) -> np.ndarray:
    ps = good_primes(E, B)
    return ps[np.array([E2.disc % int(p) != 0 for p in ps], dtype=bool)] if ps.size else ps


def _common_traces(E, E2, B, cache, config):
    """(primes, a, a') restricted to primes good for both curves."""
    p1, a1 = traces(E, B, cache=cache, config=config)
    p2, a2 = traces(E2, B, cache=cache, config=config)
    common, i1, i2 = np.intersect1d(p1, p2, assume_unique=True, return_indices=True)
    return common, a1[i1], a2[i2]


@dataclass(frozen=True)
class Distinguished:
    p: int
    ell: int


@dataclass(frozen=True)
class ConsistentWithIsogeny:
    primes_tested: int
    caveat: str = CAVEAT


@dataclass
class MismatchReport:
    pair: tuple[str, str]
    B: int
    ells: tuple[int, ...]
    primes_tested: int
    mismatches: list[tuple[int, int, int, int]]
    per_ell_density: dict[int, float]
    verdict: Distinguished | ConsistentWithIsogeny | None = None

    def to_dict(self) -> dict:
        v = self.verdict
        if isinstance(v, Distinguished):
            verdict = {"kind": "distinguished", "p": v.p, "ell": v.ell}
        else:
            verdict = {"kind": "consistent_with_isogeny", "primes_tested": v.primes_tested,
                       "caveat": v.caveat}
        return {
            "pair": list(self.pair),
            "B": self.B,
            "ells": list(self.ells),
            "primes_tested": self.primes_tested,
            "mismatches": [list(m) for m in self.mismatches],
            "per_ell_density": {str(k): d for k, d in self.per_ell_density.items()},
            "verdict": verdict,
        }


def verdict(report: MismatchReport, min_primes: int = 1):
    """Smallest witness (p, ell), or a clean bill with the number of primes tested."""
    if report.primes_tested < max(min_primes, 1):
        raise EmptySample(f"only {report.primes_tested} common good primes <= {report.B}")
    if report.mismatches:
        p, ell = min((m[0], m[1]) for m in report.mismatches)
        return Distinguished(p, ell)
    return ConsistentWithIsogeny(report.primes_tested)


def mismatch_scan(E: RationalCurve, E2: RationalCurve, B: int, ells=DEFAULT_ELLS, *,
                  cache=None, config: SweepConfig = SweepConfig()) -> MismatchReport:
    ells = tuple(sorted(int(q) for q in ells))
    ps, a1, a2 = _common_traces(E, E2, B, cache, config)
    N1, N2 = orders(ps, a1), orders(ps, a2)
    found = []
    density = {}
    for ell in ells:
        v1, v2 = valuations(N1, ell), valuations(N2, ell)
        bad = np.flatnonzero(np.minimum(v1, 1) != np.minimum(v2, 1))
        found += [(int(ps[i]), ell, int(v1[i]), int(v2[i])) for i in bad]
        density[ell] = bad.size / ps.size if ps.size else 0.0
    found.sort()
    report = MismatchReport((E.key, E2.key), B, ells, int(ps.size), found, density)
    if ps.size:
        report.verdict = verdict(report)
    return report


@dataclass(frozen=True)
class ApEqual:
    primes_tested: int


@dataclass(frozen=True)
class FirstDivergence:
    p: int
    a: int
    a_other: int


def ap_equal_oracle(E: RationalCurve, E2: RationalCurve, B: int, *, cache=None,
                    config: SweepConfig = SweepConfig()):
    """Compare traces directly; equal traces at all good p characterise isogeny."""
    ps, a1, a2 = _common_traces(E, E2, B, cache, config)
    diff = np.flatnonzero(a1 != a2)
    if diff.size:
        i = diff[0]
        return FirstDivergence(int(ps[i]), int(a1[i]), int(a2[i]))
    return ApEqual(int(ps.size))


@dataclass
class ValuationGrid:
    ell: int
    B: int
    counts: np.ndarray = field(repr=False)  # (M_CAP + 1) x (M_CAP + 1)
    overflow: int
    total: int

    @property
    def densities(self) -> np.ndarray:
        return self.counts / self.total

    @property
    def overflow_density(self) -> float:
        return self.overflow / self.total

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "B": self.B,
            "primes": self.total,
            "m_cap": M_CAP,
            "counts": self.counts.tolist(),
            "overflow": self.overflow,
            "densities": self.densities.tolist(),
        }


def joint_valuation_density(E: RationalCurve, E2: RationalCurve, ell: int, B: int, *,
                            cache=None, config: SweepConfig = SweepConfig()) -> ValuationGrid:
    """Counts of (v_ell(#E(F_p)), v_ell(#E'(F_p))) over common good p <= B."""
    ps, a1, a2 = _common_traces(E, E2, B, cache, config)
    if not ps.size:
        raise EmptySample(f"no common good primes <= {B}")
    v1 = valuations(orders(ps, a1), ell).astype(np.int64)
    v2 = valuations(orders(ps, a2), ell).astype(np.int64)
    inside = (v1 <= M_CAP) & (v2 <= M_CAP)
    counts = np.zeros((M_CAP + 1, M_CAP + 1), dtype=np.int64)
    np.add.at(counts, (v1[inside], v2[inside]), 1)
    return ValuationGrid(ell, B, counts, int(np.count_nonzero(~inside)), int(ps.size))
