#!/usr/bin/env python3
"""Plot plate-conduction profiles at the two reference Knudsen numbers.

Usage: python scripts/plot_heat_profiles.py --out heat_n2.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from twotemp.coefficients import model4_coefficients, reduced_model_for_species
from twotemp.heat1d import HeatCase, solve_heat_case, solve_heat_fourier
from twotemp.species import resolve_species


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--species", default="n2")
    ap.add_argument("--kns", type=float, nargs="+", default=[0.071, 0.71])
    ap.add_argument("--wall-dev", type=float, default=0.0476)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    sp = resolve_species(args.species)
    dev = args.wall_dev
    fields = [("rho", "density"), ("theta_tr", "translational temperature"),
              ("theta_in", "internal temperature")]
    fig, axes = plt.subplots(len(args.kns), 3, figsize=(12, 3.4 * len(args.kns)))
    axes = axes.reshape(len(args.kns), 3)

    for row, kn in enumerate(args.kns):
        case = HeatCase(kn, 1.0, sp.delta, -dev, dev, model4_coefficients(sp, kn=kn))
        full = solve_heat_case(case)
        red_case = HeatCase(kn, 1.0, sp.delta, -dev, dev, reduced_model_for_species(sp, kn=kn))
        red = solve_heat_case(red_case)
        lam = sp.conductivity_ratio() * kn
        fourier = solve_heat_fourier(kn, 1.0, sp.delta, lam, -dev, dev)
        for col, (attr, label) in enumerate(fields):
            ax = axes[row][col]
            ax.plot(full.y_grid, getattr(full, attr), "k-", label="two-temperature")
            ax.plot(red.y_grid, getattr(red, attr), "k--", label="reduced")
            ax.plot(fourier.y_grid, getattr(fourier, attr), "c-.", lw=1, label="classical")
            ax.set_xlabel("y")
            ax.set_ylabel(label)
            if col == 0:
                ax.set_title(f"Kn = {kn}  (q_y = {full.q_y:.4f})")
            ax.legend(fontsize=7)
    fig.suptitle(f"Plate conduction, {sp.name}, walls at ±{dev}")
    fig.tight_layout()
    out = args.out or f"heat_{sp.name.lower()}.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
