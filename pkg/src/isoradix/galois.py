"""Exact Chebotarev predictions from explicit mod-ell image models.

Matrices [[a, b], [c, d]] over F_ell are stored as rows (a, b, c, d) of an
int64 array. A prime p with Frobenius g in the image has ell | #E(F_p)
exactly when det(g - 1) = 0, so eigenvalue-one fractions are densities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .batch import SweepConfig, traces
from .curve import RationalCurve
from .distinguish import EmptySample
from .modarith import is_prime, smallest_nonresidue

GL2, SPLIT, NONSPLIT = "gl2", "split", "nonsplit"
KINDS = (GL2, SPLIT, NONSPLIT)
MAX_ELL = {GL2: 31, SPLIT: 499, NONSPLIT: 499}
FIBER_LIMIT = 10 ** 8


class CMCurveError(ValueError):
    """Refusing a full-image prediction for a curve with complex multiplication."""


@dataclass(frozen=True)
class GroupModel:
    kind: str
    ell: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model {self.kind!r}; choose from {KINDS}")
        if not is_prime(self.ell):
            raise ValueError(f"ell={self.ell} is not prime")
        if self.kind != GL2 and self.ell == 2:
            raise ValueError("Cartan models need odd ell")
        if self.ell > MAX_ELL[self.kind]:
            raise ValueError(f"ell={self.ell} too large to enumerate {self.kind} (max {MAX_ELL[self.kind]})")

    @property
    def order(self) -> int:
        ell = self.ell
        if self.kind == GL2:
            return (ell * ell - 1) * (ell * ell - ell)
        if self.kind == SPLIT:
            return (ell - 1) ** 2
        return ell * ell - 1


def elements(model: GroupModel) -> np.ndarray:
    """All elements as an (order, 4) array, each exactly once."""
    ell = model.ell
    r = np.arange(ell, dtype=np.int64)
    if model.kind == GL2:
        g = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
        det = (g[:, 0] * g[:, 3] - g[:, 1] * g[:, 2]) % ell
        return g[det != 0]
    if model.kind == SPLIT:
        u = r[1:]
        a, d = np.meshgrid(u, u, indexing="ij")
        a, d = a.ravel(), d.ravel()
        z = np.zeros_like(a)
        return np.stack([a, z, z, d], axis=1)
    # a + b*sqrt(delta) acting on the basis (1, sqrt(delta))
    delta = smallest_nonresidue(ell)
    a, b = np.meshgrid(r, r, indexing="ij")
    a, b = a.ravel(), b.ravel()
    keep = (a != 0) | (b != 0)
    a, b = a[keep], b[keep]
    return np.stack([a, b, b * delta % ell, a], axis=1)


def enumerate_model(model: GroupModel) -> Iterator[tuple[tuple[int, int], tuple[int, int]]]:
    for a, b, c, d in elements(model).tolist():
        yield (a, b), (c, d)


def _det(g, ell):
    return (g[:, 0] * g[:, 3] - g[:, 1] * g[:, 2]) % ell


def _eigen_one(g, ell):
    return (g[:, 0] - 1) * (g[:, 3] - 1) % ell == g[:, 1] * g[:, 2] % ell


def eigen_one_fraction(model: GroupModel) -> Fraction:
    g = elements(model)
    return Fraction(int(np.count_nonzero(_eigen_one(g, model.ell))), len(g))


def gl2_eigen_one_closed_form(ell: int) -> Fraction:
    """Identity, nontrivial unipotents, and the split classes with eigenvalues {1, x}."""
    count = 1 + (ell * ell - 1) + (ell - 2) * ell * (ell + 1)
    return Fraction(count, (ell * ell - 1) * (ell * ell - ell))


def _det_profile(model):
    """For each det value: (#elements, #elements with eigenvalue 1)."""
    g = elements(model)
    det = _det(g, model.ell)
    e1 = _eigen_one(g, model.ell)
    n = np.bincount(det, minlength=model.ell)
    z = np.bincount(det, weights=e1, minlength=model.ell).astype(np.int64)
    return n, z


def coupled_mismatch_fraction(model: GroupModel, other: GroupModel, coupling: str = "fiber") -> Fraction:
    """Fraction of coupled pairs where exactly one side has eigenvalue 1.

    ``fiber`` couples over {(g, h) : det g = det h}; ``diagonal`` couples each
    element with itself, the picture for isogenous curves.
    """
    if model.ell != other.ell:
        raise ValueError("models must share ell")
    if coupling == "diagonal":
        if model != other:
            raise ValueError("diagonal coupling needs identical models")
        return Fraction(0)
    if coupling != "fiber":
        raise ValueError(f"unknown coupling {coupling!r}")
    ell = model.ell
    if model.order * other.order > FIBER_LIMIT * max(ell - 1, 1):
        raise ValueError(f"fiber product of {model.kind} x {other.kind} at ell={ell} is too large")
    n1, z1 = _det_profile(model)
    n2, z2 = _det_profile(other)
    total = int(np.dot(n1, n2))
    mismatch = int(np.dot(z1, n2 - z2) + np.dot(n1 - z1, z2))
    return Fraction(mismatch, total)


@dataclass(frozen=True)
class Prediction:
    predicted: Fraction
    observed: Fraction
    sigma: float
    primes: int

    @property
    def z_score(self) -> float:
        return abs(float(self.observed - self.predicted)) / self.sigma if self.sigma else 0.0


def predict_vs_observe(E: RationalCurve, model: GroupModel, B: int, *, force: bool = False,
                       cache=None, config: SweepConfig = SweepConfig()) -> Prediction:
    """Compare the eigenvalue-one fraction with the density of {p <= B : ell | #E(F_p)}.

    The caller asserts that ``model`` is the mod-ell image of E. CM curves are
    refused unless ``force`` is set, since their image is not a full GL2.
    """
    if B < 5:
        raise EmptySample(f"no primes >= 5 below B={B}")
    if E.has_cm and not force:
        raise CMCurveError(f"{E.label} has CM (j = {E.j_invariant}); pass force=True to override")
    ps, a = traces(E, B, cache=cache, config=config)
    if not ps.size:
        raise EmptySample(f"no good primes <= {B} for {E.label}")
    hits = int(np.count_nonzero((ps + 1 - a) % model.ell == 0))
    pred = eigen_one_fraction(model)
    sigma = math.sqrt(float(pred * (1 - pred)) / ps.size)
    return Prediction(pred, Fraction(hits, int(ps.size)), sigma, int(ps.size))
