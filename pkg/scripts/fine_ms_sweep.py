"""Orbit-map constants of each action preset as the generating radius t grows.

For every preset and R, prints K_certified next to the observed K_empirical.
"""

import argparse
from fractions import Fraction

from shortcut_lab import convergence_sweep, make_action
from shortcut_lab.milnor_schwarz import sweep_radius

# free and Heisenberg balls grow too fast for the radii a sweep needs
DEFAULT_PRESETS = "Z,Z2-std,Z2-diag,Z2-even-on-Z2"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", default="2,4,8,16")
    ap.add_argument("--R", default="0,1")
    ap.add_argument("--sample-radius", type=int, default=20)
    ap.add_argument("--presets", default=DEFAULT_PRESETS)
    args = ap.parse_args()
    ts = [Fraction(x) for x in args.t.split(",")]
    Rs = [Fraction(x) for x in args.R.split(",")]

    print("action,R,t,K_certified,K_empirical,additive_observed,ok")
    for name in args.presets.split(","):
        for R in Rs:
            usable = [t for t in ts if t > R]
            action = make_action(name, sweep_radius(R, usable, args.sample_radius))
            for row in convergence_sweep(action, R, usable, args.sample_radius):
                print(f"{name},{R},{row.t},{row.K_certified},{row.K_empirical},"
                      f"{row.additive_constant_observed},{row.ok}")


if __name__ == "__main__":
    main()
