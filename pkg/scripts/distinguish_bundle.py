"""Run the radical test and the a_p oracle on every pair of bundled curves.

    python scripts/distinguish_bundle.py --bound 10000
"""
import argparse
from itertools import combinations

from isoradix.batch import SweepConfig
from isoradix.cache import TraceCache
from isoradix.curvefile import ingest_curves
from isoradix.distinguish import ApEqual, Distinguished, ap_equal_oracle, mismatch_scan
from isoradix.radical import DEFAULT_ELLS


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curves", default=None)
    ap.add_argument("--bound", type=int, default=10 ** 4)
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    curves = ingest_curves(args.curves)
    cache = TraceCache(args.cache_dir) if args.cache_dir else None
    config = SweepConfig(workers=args.threads)
    disagreements = 0
    print(f"{'pair':<24} {'a_p oracle':<22} {'radical verdict':<22} densities (ell <= 7)")
    for E, E2 in combinations(curves, 2):
        oracle = ap_equal_oracle(E, E2, args.bound, cache=cache, config=config)
        rep = mismatch_scan(E, E2, args.bound, DEFAULT_ELLS, cache=cache, config=config)
        v = rep.verdict
        o = "isogenous" if isinstance(oracle, ApEqual) else f"differ at p={oracle.p}"
        r = f"witness ({v.p}, {v.ell})" if isinstance(v, Distinguished) else "consistent"
        disagreements += isinstance(oracle, ApEqual) == isinstance(v, Distinguished)
        dens = " ".join(f"{ell}:{rep.per_ell_density[ell]:.3f}" for ell in (2, 3, 5, 7))
        print(f"{E.label + ' / ' + E2.label:<24} {o:<22} {r:<22} {dens}")
    print(f"\npairs where radicals and a_p disagree: {disagreements}")


if __name__ == "__main__":
    main()
