"""Contrast shortcut profiles: cycles keep long almost-isometric cycles, trees do not.

Prints one CSV row per (graph, K, cap) with the longest almost-isometric cycle found.
"""

import argparse
import csv
import sys
import time
from fractions import Fraction

from shortcut_lab import DistanceOracle, SearchConfig, shortcut_profile
from shortcut_lab.generators import generate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cycles", default="8:40", help="range lo:hi of cycle lengths")
    ap.add_argument("--tree-depth", type=int, default=5)
    ap.add_argument("--caps", default="4:12", help="range lo:hi of length caps for the tree")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    lo, hi = map(int, args.cycles.split(":"))
    cap_lo, cap_hi = map(int, args.caps.split(":"))
    cfg = SearchConfig(workers=args.threads)

    out = csv.writer(sys.stdout)
    out.writerow(["graph", "K", "cap", "best_length", "certified_exact", "seconds"])

    def emit(spec, K, cap):
        g = generate(spec)
        start = time.perf_counter()
        row = shortcut_profile(g, DistanceOracle(g), [K], cap, cfg).rows[0]
        out.writerow([spec, K, cap, row.best_length_found, row.certified_exact,
                      f"{time.perf_counter() - start:.3f}"])

    for n in range(lo, hi + 1):
        emit(f"cycle:{n}", Fraction(3, 2), n)
    for cap in range(cap_lo, cap_hi + 1):
        emit(f"tree:2:{args.tree_depth}", Fraction(21, 20), cap)


if __name__ == "__main__":
    main()
