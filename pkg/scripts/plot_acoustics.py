#!/usr/bin/env python3
"""Plot sound-propagation observables for one species across all closure models.

Usage: python scripts/plot_acoustics.py --species n2 --out acoustics_n2.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from twotemp.acoustics import acoustic_curve, nsf_baseline_curve
from twotemp.coefficients import MODEL_TAGS, model_coefficients
from twotemp.errors import MissingModelDataError
from twotemp.species import resolve_species


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--species", default="n2")
    ap.add_argument("--r-min", type=float, default=0.2)
    ap.add_argument("--r-max", type=float, default=200.0)
    ap.add_argument("--points", type=int, default=80)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    sp = resolve_species(args.species)
    r = np.geomspace(args.r_min, args.r_max, args.points)
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))

    curves = {}
    for tag in MODEL_TAGS:
        try:
            cs = model_coefficients(sp, tag, kn=1.0)
        except MissingModelDataError:
            continue
        curves[tag] = acoustic_curve(cs, sp.delta, r)
    curves["nsf"] = nsf_baseline_curve(sp, r)

    for tag, pts in curves.items():
        style = dict(ls="--", c="c") if tag == "nsf" else {}
        axes[0].loglog(r, [p.atten_factor for p in pts], label=tag, **style)
        axes[1].semilogx(r, [p.recip_speed for p in pts], label=tag, **style)
        axes[2].semilogx(r, [p.speed_dev for p in pts], label=tag, **style)

    axes[0].set_ylabel(r"$\alpha c_0/\omega$")
    axes[1].set_ylabel(r"$c_0/v_{ph}$")
    axes[2].set_ylabel(r"$(v_{ph}-c_0)/c_0$")
    for ax in axes:
        ax.set_xlabel(r"$p/(\mu\omega)$")
        ax.legend(fontsize=8)
    fig.suptitle(f"Sound propagation in {sp.name}")
    fig.tight_layout()
    out = args.out or f"acoustics_{sp.name.lower()}.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
