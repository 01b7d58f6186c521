"""Run the full check registry over a few generator families and print a verdict table.

    python3 scripts/run_suite.py [count] [seed]
"""
import sys
import time

from gnum.checks import GROUPS, REGISTRY, run_suite
from gnum.generators import GeneratorSpec

FAMILIES = ("lattice_polygon", "symmetric_polygon", "rational_polygon", "body3d")


def main(argv):
    count = int(argv[1]) if len(argv) > 1 else 20
    seed = int(argv[2]) if len(argv) > 2 else 0
    ids = ",".join(sorted(REGISTRY))
    t0 = time.perf_counter()
    res = run_suite(ids, [GeneratorSpec(f, seed=seed) for f in FAMILIES], count)
    summary = res.summary()
    print(f"{'check':22s} {'pass':>6s} {'fail':>6s} {'n/a':>6s} {'inconcl':>8s}")
    for cid in sorted(summary):
        row = summary[cid]
        print(f"{cid:22s} {row['pass']:6d} {row['fail']:6d} {row['inapplicable']:6d} "
              f"{row['interval-inconclusive']:8d}")
    print(f"{len(res.reports)} reports, {len(res.retries)} instances with retries, "
          f"{time.perf_counter() - t0:.1f}s; groups: {', '.join(sorted(GROUPS))}")
    return 2 if res.any_critical else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
