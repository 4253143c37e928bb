"""Seeded sweep of the four rational inequalities behind the tightening constants.

Also tabulates K_greedy, K_disjoint and K_max on a small (N, L) grid.
"""

import argparse
import time
from fractions import Fraction

from shortcut_lab import admissible_constants
from shortcut_lab.constants import sweep_rational_inequalities


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seeds", type=int, default=5, help="run seeds 0..seeds-1")
    args = ap.parse_args()

    for seed in range(args.seeds):
        start = time.perf_counter()
        sweep = sweep_rational_inequalities(args.samples, seed)
        print(f"seed {seed}: {sweep.samples} pairs, {len(sweep.failures)} failures, "
              f"{time.perf_counter() - start:.3f}s")

    print("\nN,L,K_greedy,K_disjoint,K_max")
    for N in (Fraction(3, 2), Fraction(2), Fraction(4)):
        for L in (Fraction(11, 10), Fraction(2), Fraction(10)):
            c = admissible_constants(N, L)
            print(f"{N},{L},{c.K_greedy},{c.K_disjoint},{c.K_max}")


if __name__ == "__main__":
    main()
