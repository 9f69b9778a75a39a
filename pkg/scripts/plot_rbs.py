#!/usr/bin/env python3
"""Plot scattering spectra for CH4 at the three reference regime parameters.

Usage: python scripts/plot_rbs.py --out rbs_ch4.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from twotemp.coefficients import model1_coefficients, reduced_model_for_species
from twotemp.rbs import density_spectrum, knudsen_from_y, nsf_density_spectrum
from twotemp.species import resolve_species


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--species", default="ch4")
    ap.add_argument("--ys", type=float, nargs="+", default=[18.27, 4.46, 2.70])
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    sp = resolve_species(args.species)
    fig, axes = plt.subplots(1, len(args.ys), figsize=(4.2 * len(args.ys), 3.6))
    if len(args.ys) == 1:
        axes = [axes]
    for ax, y in zip(axes, args.ys):
        kn = knudsen_from_y(y)
        full = density_spectrum(model1_coefficients(sp, kn=kn), sp.delta, y)
        red = density_spectrum(reduced_model_for_species(sp, kn=kn), sp.delta, y)
        nsf = nsf_density_spectrum(kn, sp.conductivity_ratio() * kn, sp.delta, y)
        ax.plot(full.x_grid, full.s_values, "k-", label="two-temperature")
        ax.plot(red.x_grid, red.s_values, "k--", label="reduced")
        ax.plot(nsf.x_grid, nsf.s_values, "c-", lw=1, label="classical")
        ax.set_title(f"y = {y}")
        ax.set_xlabel("x")
        ax.set_ylabel("S(x)/S(0)")
        ax.legend(fontsize=8)
    fig.suptitle(f"Scattered-light spectra, {sp.name}")
    fig.tight_layout()
    out = args.out or f"rbs_{sp.name.lower()}.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
