"""Radical fingerprints of elliptic curves over Q and isogeny-class detection."""
from .curve import RationalCurve, ReducedCurve, reduce
from .modarith import PrimeField

__all__ = ["PrimeField", "RationalCurve", "ReducedCurve", "reduce"]
