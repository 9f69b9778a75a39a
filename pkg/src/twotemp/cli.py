"""Command-line frontend: every analysis as a subcommand with file outputs.

All runs are batch, write CSV (with a ``#`` metadata header) or JSON, and
drop a ``<output>.manifest.json`` next to each primary output recording a
canonical argument vector; ``twotemp reproduce --manifest FILE`` replays it
bit-identically.  Exit codes: 0 success, 2 usage error, 3 numeric failure,
4 bad input data.
"""

from __future__ import annotations

import functools
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .acoustics import acoustic_curve, nsf_baseline_curve
from .checks import run_htheorem_suite
from .coefficients import MODEL_TAGS, model_coefficients
from .dispersion import DispersionSystem, spatial_modes, stability_report, temporal_mode_sweep
from .errors import DomainError, MissingModelDataError, SolverError, SpeciesConfigError
from .heat1d import HeatCase, residual_check, solve_heat_case
from .output import load_manifest, write_csv, write_json, write_manifest
from .rbs import default_x_grid, density_spectrum, knudsen_from_y, peak_report
from .species import bundled_species_names, resolve_species
from .wall import onsager_matrix, reduced_onsager_matrix

EXIT_NUMERIC = 3
EXIT_BAD_INPUT = 4


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (SpeciesConfigError, MissingModelDataError) as exc:
            click.echo(f"error: code={EXIT_BAD_INPUT} kind={type(exc).__name__} msg={exc}", err=True)
            sys.exit(EXIT_BAD_INPUT)
        except (SolverError, DomainError) as exc:
            click.echo(f"error: code={EXIT_NUMERIC} kind={type(exc).__name__} msg={exc}", err=True)
            sys.exit(EXIT_NUMERIC)

    return wrapper


@click.group()
@click.version_option(__version__)
def cli():
    """Two-temperature moment model analyses for rarefied polyatomic gases."""


def _species_option(f):
    return click.option(
        "--species", "species_name", required=True,
        help="Bundled species name or path to a species YAML file.",
    )(f)


def _model_option(f):
    return click.option(
        "--model", "model_tag", type=click.Choice(MODEL_TAGS), required=True,
        help="Closure model producing the coefficients.",
    )(f)


# ---------------------------------------------------------------------------

@cli.command()
@_species_option
@_model_option
@click.option("--kn", type=float, default=1.0, show_default=True, help="Knudsen number.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Optional output file.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@_handle_errors
def coeffs(species_name, model_tag, kn, out, fmt):
    """Dump the dimensionless coefficient set of a species/model pair."""
    sp = resolve_species(species_name)
    cs = model_coefficients(sp, model_tag, kn=kn)
    record = {
        "species": sp.name,
        "model": cs.model_tag,
        "kn": kn,
        "zeta11": cs.zeta11,
        "zeta12": cs.zeta12,
        "zeta22": cs.zeta22,
        "mu": cs.mu,
        "c_ex": cs.c_ex,
        "total_conductivity": cs.total_conductivity,
    }
    for key, value in record.items():
        click.echo(f"{key} = {value}")
    if out:
        if fmt == "json":
            write_json(out, record)
        else:
            write_csv(out, [(k, [v]) for k, v in record.items()])
        write_manifest(
            out, "coeffs",
            ["coeffs", "--species", species_name, "--model", model_tag,
             "--kn", str(kn), "--out", str(out), "--format", fmt],
            record, [out],
        )


@cli.command(name="check-h-theorem")
@click.option("--samples", type=int, default=2000, show_default=True,
              help="Random draws per entropy check and model.")
@click.option("--seed", type=int, default=2024, show_default=True)
@_handle_errors
def check_h_theorem(samples, seed):
    """Run the randomized nonnegativity suite and print one line per check."""
    results = run_htheorem_suite(samples=samples, seed=seed)
    for r in results:
        click.echo(r.line())
    if not all(r.passed for r in results):
        click.echo("error: code=3 kind=SolverError msg=entropy suite found violations", err=True)
        sys.exit(EXIT_NUMERIC)
    click.echo(f"all {len(results)} checks passed")


@cli.command()
@_species_option
@_model_option
@click.option("--kn", type=float, default=1.0, show_default=True)
@click.option("--k-max", type=float, default=100.0, show_default=True)
@click.option("--omega-max", type=float, default=100.0, show_default=True)
@click.option("--samples", type=int, default=200, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def stability(species_name, model_tag, kn, k_max, omega_max, samples, out):
    """Temporal and spatial root sweep with a stability verdict."""
    sp = resolve_species(species_name)
    cs = model_coefficients(sp, model_tag, kn=kn)
    system = DispersionSystem(cs, sp.delta)
    k_grid = np.linspace(0.0, k_max, samples)
    omega_grid = np.linspace(omega_max / samples, omega_max, samples)
    report = stability_report(cs, sp.delta, k_grid, omega_grid)

    kinds, params, res, ims, vphs, damps, labels = [], [], [], [], [], [], []
    for modes in temporal_mode_sweep(system, k_grid):
        for m in modes:
            kinds.append("temporal")
            params.append(float(m.k.real))
            res.append(m.omega.real)
            ims.append(m.omega.imag)
            vphs.append(m.phase_velocity if math.isfinite(m.phase_velocity) else 0.0)
            damps.append(m.damping)
            labels.append(m.classification or "")
    for w in omega_grid:
        for m in spatial_modes(system, float(w)):
            kinds.append("spatial")
            params.append(float(w))
            res.append(m.k.real)
            ims.append(m.k.imag)
            vphs.append(m.phase_velocity if math.isfinite(m.phase_velocity) else 0.0)
            damps.append(m.damping)
            labels.append("")
    meta = {
        "species": sp.name, "model": model_tag, "kn": kn,
        "temporal_ok": report.temporal_ok, "spatial_ok": report.spatial_ok,
        "temporal_margin": report.temporal_margin, "spatial_margin": report.spatial_margin,
    }
    write_csv(out, [
        ("kind", kinds), ("parameter", params), ("re", res), ("im", ims),
        ("phase_velocity", vphs), ("damping", damps), ("classification", labels),
    ], metadata=meta)
    write_manifest(
        out, "stability",
        ["stability", "--species", species_name, "--model", model_tag, "--kn", str(kn),
         "--k-max", str(k_max), "--omega-max", str(omega_max),
         "--samples", str(samples), "--out", str(out)],
        meta, [out],
    )
    verdict = "stable" if report.temporal_ok and report.spatial_ok else "UNSTABLE"
    click.echo(
        f"{sp.name}/{model_tag}: {verdict} "
        f"(temporal margin {report.temporal_margin:+.3e}, "
        f"spatial margin {report.spatial_margin:+.3e})"
    )


def _acoustics_rows(sp, model_tags, r_grid, kn, with_nsf):
    rows = {"r": [], "atten_factor": [], "recip_speed": [], "speed_dev": [], "model_tag": []}
    for tag in model_tags:
        cs = model_coefficients(sp, tag, kn=kn)
        for p in acoustic_curve(cs, sp.delta, r_grid):
            rows["r"].append(p.rarefaction)
            rows["atten_factor"].append(p.atten_factor)
            rows["recip_speed"].append(p.recip_speed)
            rows["speed_dev"].append(p.speed_dev)
            rows["model_tag"].append(tag)
    if with_nsf:
        for p in nsf_baseline_curve(sp, r_grid, kn=kn):
            rows["r"].append(p.rarefaction)
            rows["atten_factor"].append(p.atten_factor)
            rows["recip_speed"].append(p.recip_speed)
            rows["speed_dev"].append(p.speed_dev)
            rows["model_tag"].append("nsf")
    return rows


@cli.command()
@_species_option
@_model_option
@click.option("--kn", type=float, default=1.0, show_default=True)
@click.option("--r-min", type=float, default=0.1, show_default=True)
@click.option("--r-max", type=float, default=100.0, show_default=True)
@click.option("--points", type=int, default=60, show_default=True)
@click.option("--with-nsf/--no-nsf", default=True, show_default=True,
              help="Append the classical baseline curve.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def acoustics(species_name, model_tag, kn, r_min, r_max, points, with_nsf, out):
    """Sound attenuation and speed observables versus rarefaction p/(mu omega)."""
    sp = resolve_species(species_name)
    r_grid = np.geomspace(r_min, r_max, points)
    rows = _acoustics_rows(sp, [model_tag], r_grid, kn, with_nsf)
    meta = {"species": sp.name, "model": model_tag, "kn": kn}
    write_csv(out, list(rows.items()), metadata=meta)
    write_manifest(
        out, "acoustics",
        ["acoustics", "--species", species_name, "--model", model_tag, "--kn", str(kn),
         "--r-min", str(r_min), "--r-max", str(r_max), "--points", str(points),
         "--with-nsf" if with_nsf else "--no-nsf", "--out", str(out)],
        meta, [out],
    )
    click.echo(f"wrote {len(rows['r'])} rows to {out}")


@cli.command()
@_species_option
@_model_option
@click.option("--y", "y_param", type=float, required=True,
              help="Wavelength-to-mean-free-path regime parameter.")
@click.option("--x-max", type=float, default=3.0, show_default=True)
@click.option("--dx", type=float, default=0.005, show_default=True)
@click.option("--emit-peaks", type=click.Path(dir_okay=False), default=None,
              help="Also write a JSON peak report.")
@click.option("--paper-matrix-verbatim", "verbatim", is_flag=True, default=False,
              help="Use the printed source matrix including its two typos.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def rbs(species_name, model_tag, y_param, x_max, dx, emit_peaks, verbatim, out):
    """Spontaneous density-fluctuation spectrum S(x) at regime parameter y."""
    sp = resolve_species(species_name)
    kn = knudsen_from_y(y_param)
    cs = model_coefficients(sp, model_tag, kn=kn)
    grid = default_x_grid(x_max, dx)
    curve = density_spectrum(cs, sp.delta, y_param, grid, verbatim=verbatim)
    meta = {"species": sp.name, "model": model_tag, "y": y_param, "kn": kn,
            "verbatim": verbatim}
    write_csv(out, [("x", list(curve.x_grid)), ("S_normalized", list(curve.s_values))], metadata=meta)
    outputs = [out]
    if emit_peaks:
        pk = peak_report(curve)
        write_json(emit_peaks, {
            "rayleigh_height": pk.rayleigh_height,
            "brillouin_x": pk.brillouin_x,
            "brillouin_height": pk.brillouin_height,
        })
        outputs.append(emit_peaks)
    argv = ["rbs", "--species", species_name, "--model", model_tag, "--y", str(y_param),
            "--x-max", str(x_max), "--dx", str(dx)]
    if verbatim:
        argv.append("--paper-matrix-verbatim")
    if emit_peaks:
        argv += ["--emit-peaks", str(emit_peaks)]
    argv += ["--out", str(out)]
    write_manifest(out, "rbs", argv, meta, outputs)
    click.echo(f"wrote spectrum ({len(curve.x_grid)} points) to {out}")


@cli.command()
@_species_option
@_model_option
@click.option("--kn", type=float, required=True)
@click.option("--chi", type=float, default=1.0, show_default=True)
@click.option("--wall-dev", type=float, default=0.0476, show_default=True,
              help="Wall temperature deviation: +dev at the lower wall, -dev at the upper.")
@click.option("--points", type=int, default=201, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_handle_errors
def heat(species_name, model_tag, kn, chi, wall_dev, points, out):
    """Plate heat-conduction profiles and the constant total heat flux."""
    sp = resolve_species(species_name)
    cs = model_coefficients(sp, model_tag, kn=kn)
    case = HeatCase(kn, chi, sp.delta, -wall_dev, wall_dev, cs)
    profile = solve_heat_case(case, n_points=points)
    resid = residual_check(profile, case)
    meta = {
        "species": sp.name, "model": model_tag, "kn": kn, "chi": chi,
        "wall_dev": wall_dev, "q_y": profile.q_y, "max_residual": resid,
    }
    write_csv(out, [
        ("y", list(profile.y_grid)),
        ("rho", list(profile.rho)),
        ("theta_tr", list(profile.theta_tr)),
        ("theta_in", list(profile.theta_in)),
        ("theta", list(profile.theta)),
        ("vartheta", list(profile.vartheta)),
        ("Qy", list(profile.qdiff_y)),
    ], metadata=meta)
    write_manifest(
        out, "heat",
        ["heat", "--species", species_name, "--model", model_tag, "--kn", str(kn),
         "--chi", str(chi), "--wall-dev", str(wall_dev), "--points", str(points),
         "--out", str(out)],
        meta, [out],
    )
    click.echo(f"q_y = {profile.q_y:.6g} (max residual {resid:.3g}), wrote {out}")


@cli.command(name="bc-table")
@_species_option
@click.option("--chi", type=float, default=None,
              help="Accommodation; defaults to the species value.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_handle_errors
def bc_table(species_name, chi, out):
    """Print the wall resistivity coefficients for a species and accommodation."""
    sp = resolve_species(species_name)
    chi = sp.accommodation if chi is None else chi
    full = onsager_matrix(sp.delta, chi)
    red = reduced_onsager_matrix(sp.delta, chi)
    rows = [
        ("variant", ["full", "reduced"]),
        ("eta11", [full.eta11, red.eta11]),
        ("eta12", [full.eta12, red.eta12]),
        ("eta22", [full.eta22, red.eta22]),
        ("xi", [full.xi, red.xi]),
    ]
    click.echo(f"species {sp.name}, delta = {sp.delta}, chi = {chi}")
    for variant, eta in (("full", full), ("reduced", red)):
        click.echo(
            f"  {variant:8s} eta11={eta.eta11:.6g} eta12={eta.eta12:.6g} "
            f"eta22={eta.eta22:.6g} xi={eta.xi:.6g} det={eta.det:.6g}"
        )
    if out:
        meta = {"species": sp.name, "delta": sp.delta, "chi": chi}
        write_csv(out, rows, metadata=meta)
        write_manifest(
            out, "bc-table",
            ["bc-table", "--species", species_name, "--chi", str(chi), "--out", str(out)],
            meta, [out],
        )


# -- reproduce ---------------------------------------------------------------

def _target_stability(tag):
    def run(out_dir: Path) -> list[str]:
        out = str(out_dir / f"stability-ch4-{tag}.csv")
        cli.main(
            ["stability", "--species", "ch4", "--model", tag, "--out", out],
            standalone_mode=False,
        )
        return [out]

    return run


def _target_acoustics(species: str, observable: str):
    def run(out_dir: Path) -> list[str]:
        sp = resolve_species(species)
        r_grid = np.geomspace(0.1, 200.0, 80)
        tags = []
        for tag in MODEL_TAGS:
            try:
                model_coefficients(sp, tag, kn=1.0)
            except MissingModelDataError:
                continue
            tags.append(tag)
        rows = _acoustics_rows(sp, tags, r_grid, 1.0, with_nsf=True)
        out = str(out_dir / f"{observable}-{species}.csv")
        write_csv(out, list(rows.items()), metadata={"species": sp.name, "models": "+".join(tags + ["nsf"])})
        return [out]

    return run


def _target_rbs(y: float):
    def run(out_dir: Path) -> list[str]:
        out = str(out_dir / f"rbs-ch4-y{y:g}.csv")
        peaks = str(out_dir / f"rbs-ch4-y{y:g}-peaks.json")
        cli.main(
            ["rbs", "--species", "ch4", "--model", "model1", "--y", str(y),
             "--emit-peaks", peaks, "--out", out],
            standalone_mode=False,
        )
        return [out, peaks]

    return run


def _target_heat(kn: float):
    def run(out_dir: Path) -> list[str]:
        outputs = []
        for tag in ("model4", "reduced"):
            out = str(out_dir / f"heat-kn{kn:g}-{tag}.csv")
            cli.main(
                ["heat", "--species", "n2", "--model", tag, "--kn", str(kn), "--out", out],
                standalone_mode=False,
            )
            outputs.append(out)
        return outputs

    return run


REPRODUCE_TARGETS = {
    "fig-stability-ch4-model1": ("CH4 stability maps, rough-sphere closure", _target_stability("model1")),
    "fig-stability-ch4-model2": ("CH4 stability maps, ellipsoidal-relaxation closure", _target_stability("model2")),
    "fig-stability-ch4-model3": ("CH4 stability maps, kernel-rate closure", _target_stability("model3")),
    "fig-stability-ch4-model4": ("CH4 stability maps, conductivity-split closure", _target_stability("model4")),
    "fig-stability-ch4-reduced": ("CH4 stability maps, reduced closure", _target_stability("reduced")),
    "fig-attenuation-n2": ("N2 attenuation factor vs p/(mu omega), all closures + baseline", _target_acoustics("n2", "attenuation")),
    "fig-attenuation-o2": ("O2 attenuation factor vs p/(mu omega)", _target_acoustics("o2", "attenuation")),
    "fig-phase-velocity-n2": ("N2 reciprocal speed ratio vs p/(mu omega)", _target_acoustics("n2", "phase-velocity")),
    "fig-phase-velocity-o2": ("O2 reciprocal speed ratio vs p/(mu omega)", _target_acoustics("o2", "phase-velocity")),
    "fig-speed-of-sound-n2": ("N2 speed-of-sound deviation vs p/(mu omega)", _target_acoustics("n2", "speed-of-sound")),
    "fig-speed-of-sound-o2": ("O2 speed-of-sound deviation vs p/(mu omega)", _target_acoustics("o2", "speed-of-sound")),
    "fig-rbs-ch4-y18.27": ("CH4 scattering spectrum, hydrodynamic regime y=18.27", _target_rbs(18.27)),
    "fig-rbs-ch4-y4.46": ("CH4 scattering spectrum, transition regime y=4.46", _target_rbs(4.46)),
    "fig-rbs-ch4-y2.70": ("CH4 scattering spectrum, kinetic regime y=2.70", _target_rbs(2.70)),
    "fig-heat-kn0.071": ("plate conduction profiles at Kn=0.071 (slip regime)", _target_heat(0.071)),
    "fig-heat-kn0.71": ("plate conduction profiles at Kn=0.71 (transition regime)", _target_heat(0.71)),
}


@cli.command()
@click.argument("target", required=False)
@click.option("--list", "list_targets", is_flag=True, default=False, help="List targets.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--manifest", "manifest_file", type=click.Path(dir_okay=False), default=None,
              help="Replay a previously written run manifest instead of a target.")
@click.option("--y", "y_param", type=float, default=None,
              help="Regime parameter override for fig-rbs-ch4 targets.")
@_handle_errors
def reproduce(target, list_targets, out_dir, manifest_file, y_param):
    """Regenerate one reference-figure dataset, or replay a manifest."""
    if list_targets:
        for name, (desc, _) in REPRODUCE_TARGETS.items():
            click.echo(f"{name:28s} {desc}")
        return
    if manifest_file:
        manifest = load_manifest(manifest_file)
        cli.main(manifest["argv"], standalone_mode=False)
        click.echo(f"replayed {manifest['subcommand']} from {manifest_file}")
        return
    if target is None:
        raise click.UsageError("give a target name, --manifest FILE, or --list")
    if target == "fig-rbs-ch4":
        runner = _target_rbs(18.27 if y_param is None else y_param)
    elif target in REPRODUCE_TARGETS:
        runner = REPRODUCE_TARGETS[target][1]
    else:
        raise click.UsageError(
            f"unknown target '{target}'; run `twotemp reproduce --list`"
        )
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    outputs = runner(out_path)
    argv = ["reproduce", target, "--out-dir", str(out_dir)]
    if y_param is not None:
        argv += ["--y", str(y_param)]
    write_manifest(outputs[0], "reproduce", argv, {"target": target}, outputs)
    for o in outputs:
        click.echo(f"wrote {o}")


def main(argv=None):
    return cli.main(args=argv)


if __name__ == "__main__":
    main()
