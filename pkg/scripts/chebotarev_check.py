"""Observed density of {p <= B : ell | #E(F_p)} against the GL2 prediction.

    python scripts/chebotarev_check.py --curve 11a1 --bound 100000 --ells 2,3,7

The prediction assumes a full GL2 image at each ell. 11a1 has a rational
5-torsion point, so at ell = 5 every p sees 5 | #E(F_p) and the GL2 number
does not apply.
"""
import argparse

from isoradix.batch import SweepConfig
from isoradix.cache import TraceCache
from isoradix.curvefile import ingest_curves
from isoradix.galois import GL2, GroupModel, predict_vs_observe


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curve", default="11a1")
    ap.add_argument("--curves", default=None, help="curve file (default: bundled)")
    ap.add_argument("--bound", type=int, default=10 ** 5)
    ap.add_argument("--ells", default="2,3,7")
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    E = {c.label: c for c in ingest_curves(args.curves)}[args.curve]
    cache = TraceCache(args.cache_dir) if args.cache_dir else None
    config = SweepConfig(workers=args.threads)
    print(f"{E}   B = {args.bound}")
    print(f"{'ell':>4} {'predicted':>10} {'observed':>10} {'sigma':>9} {'z':>6}")
    for ell in map(int, args.ells.split(",")):
        r = predict_vs_observe(E, GroupModel(GL2, ell), args.bound, cache=cache, config=config)
        print(f"{ell:>4} {float(r.predicted):>10.5f} {float(r.observed):>10.5f} {r.sigma:>9.5f} {r.z_score:>6.2f}")


if __name__ == "__main__":
    main()
