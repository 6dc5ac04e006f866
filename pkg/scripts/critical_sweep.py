#!/usr/bin/env python3
"""Sweep the multistart solver over base values and seeds.

Prints, for each space, the number of critical points found and the
spread of critical values, so drifts in solver behaviour are easy to
spot across configurations.

Usage:
    python3 scripts/critical_sweep.py --starts 400 --seeds 0 1 2 --T0 0.5 0.6
"""

import argparse

import numpy as np

from gcfloer import gc_core, potential


def spaces():
    return {
        "Fl3": potential.build_potential(gc_core.fl3_shape(), gc_core.fl3_profile(1, 1)),
        "Gr24": potential.build_potential(gc_core.grassmannian_shape(2, 4), gc_core.gr24_profile(1)),
        "Gr25": potential.build_potential(gc_core.grassmannian_shape(2, 5), gc_core.gr25_profile(1)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--starts", type=int, default=400)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--T0", type=float, nargs="+", default=[0.5, 0.6])
    args = ap.parse_args()

    print(f"{'space':6} {'T0':>5} {'seed':>4} {'found':>5} {'max_resid':>10} {'|values|':>30}")
    for name, pot in spaces().items():
        for T0 in args.T0:
            for seed in args.seeds:
                cfg = potential.SolverConfig(T0=T0, seed=seed, starts=args.starts)
                pts = potential.find_critical_points(pot, cfg)
                vals = sorted(abs(potential.evaluate(pot, p.y, T0)) for p in pts)
                resid = max(p.residual for p in pts)
                vals_str = ",".join(f"{v:.4f}" for v in vals)
                print(f"{name:6} {T0:5.2f} {seed:4d} {len(pts):5d} {resid:10.2e} {vals_str:>30}")


if __name__ == "__main__":
    main()
