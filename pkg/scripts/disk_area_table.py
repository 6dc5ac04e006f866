#!/usr/bin/env python3
"""Tabulate numerically integrated disk areas against expected weights.

For the Gr(2,4) torus-invariant Lagrangians L_t, the two basic disk
classes should have symplectic areas lambda + t and lambda - t.  This
script integrates the Fubini-Study area of explicit disks over a grid
of t and prints the error, alongside the displacement-energy profile.

Usage:
    python3 scripts/disk_area_table.py --lam 1.0 --steps 9
"""

import argparse

import numpy as np

from gcfloer.floer import disk_area, displacement_energy_bound, fl3_disk, gr_disk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lam", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=9)
    ap.add_argument("--order", type=int, default=64, help="quadrature order per axis")
    args = ap.parse_args()

    lam = args.lam
    print("Fl(3), l1 = 1.3, l2 = 0.8:")
    for sign in (+1, -1):
        d = fl3_disk([-1.0, 0.0], sign, 1.3, 0.8)
        want = 1.3 if sign == +1 else 0.8
        got = disk_area(d, order=args.order)
        print(f"  {d.disk_class.label}: area {got:.6f}  expected {want:.6f}  err {abs(got - want):.2e}")

    print(f"\nGr(2,4), lam = {lam}:")
    print(f"{'t':>6} {'area(beta1)':>12} {'err':>9} {'area(beta2)':>12} {'err':>9} {'e(L_t)':>8}")
    for t in np.linspace(-0.8 * lam, 0.8 * lam, args.steps):
        d1 = gr_disk(2, [1.0, 0.0], np.exp(-0.7j), lam, t)
        d2 = gr_disk(2, [0.6, 0.8], np.exp(0.7j), lam, t)
        a1 = disk_area(d1, order=args.order)
        a2 = disk_area(d2, order=args.order)
        h = displacement_energy_bound(lam, t)
        print(
            f"{t:6.2f} {a1:12.6f} {abs(a1 - (lam + t)):9.2e}"
            f" {a2:12.6f} {abs(a2 - (lam - t)):9.2e} {h:8.4f}"
        )


if __name__ == "__main__":
    main()
