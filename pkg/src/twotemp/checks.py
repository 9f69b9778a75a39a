"""Randomized nonnegativity suite: bulk and wall entropy production, matrix PSD.

Each check draws parameters across their declared ranges, builds the
corresponding closure or resistivity objects and verifies the sign
constraints that the second law imposes.  Failures are counted against a
relative roundoff floor of 1e-12, since rank-deficient (reduced) matrices
evaluate their quadratic forms with cancellation at machine precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coefficients import (
    CoefficientSet,
    model1_coefficients,
    model2_coefficients,
    model3_coefficients,
    model4_coefficients,
    reduced_coefficients,
)
from .species import GasSpecies
from .thermo import (
    FieldState,
    GradientState,
    entropy_production,
    exchange_production,
)
from .wall import apply_pbc_linear, onsager_matrix, wall_entropy_production

_ROUNDOFF = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    samples: int
    failures: int
    worst: float    # most negative normalized margin seen

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"[{verdict}] {self.name}: {self.samples} samples, "
            f"{self.failures} failures, worst margin {self.worst:+.3e}"
        )


def _random_species(rng: np.random.Generator) -> GasSpecies:
    nu = rng.uniform(-0.5, 0.95)
    return GasSpecies(
        name="random",
        delta=rng.uniform(0.5, 10.0),
        ref_temperature=1.0,
        ref_pressure=1.0,
        shear_viscosity=1.0,
        thermal_conductivity=rng.uniform(0.5, 10.0),
        kappa=rng.uniform(0.0, 2.0 / 3.0),
        diameter=1.0,
        nu=nu,
        theta1=rng.uniform(0.05, 1.0),
        collision_freq_coeff=1.0 / (2.0 * (1.0 - nu)),
        p_constants={
            "p0_q": rng.uniform(0.2, 2.0),
            "p1_q": rng.uniform(-0.05, 0.05),
            "p0_s": rng.uniform(0.2, 2.0),
            "p1_s": rng.uniform(-0.05, 0.05),
            "p0_pi": rng.uniform(0.05, 1.0),
            "p0_sigma": rng.uniform(0.2, 2.0),
        },
        z_int=rng.uniform(0.5, 300.0),
    )


def _random_coeffs(rng: np.random.Generator, tag: str) -> tuple[CoefficientSet, float]:
    sp = _random_species(rng)
    kn = float(np.exp(rng.uniform(math.log(0.01), math.log(10.0))))
    builders = {
        "model1": model1_coefficients,
        "model2": model2_coefficients,
        "model3": model3_coefficients,
        "model4": model4_coefficients,
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if tag == "reduced":
            cs = reduced_coefficients(model4_coefficients(sp, kn=kn), sp)
        else:
            cs = builders[tag](sp, kn=kn)
    return cs, sp.delta


def check_coefficient_psd(samples: int, rng: np.random.Generator) -> list[CheckResult]:
    """Every factory output across its parameter ranges satisfies the PSD invariants."""
    out = []
    for tag in ("model1", "model2", "model3", "model4", "reduced"):
        failures = 0
        worst = math.inf
        for _ in range(samples):
            cs, _delta = _random_coeffs(rng, tag)
            scale = max(cs.zeta11, cs.zeta22, 1e-300)
            margin = min(
                cs.zeta11 / scale,
                cs.zeta22 / scale,
                cs.det_zeta / scale ** 2,
                cs.mu,
                cs.c_ex,
            )
            worst = min(worst, margin)
            if margin < -_ROUNDOFF:
                failures += 1
        out.append(CheckResult(f"coefficients PSD ({tag})", failures == 0, samples, failures, worst))
    return out


def check_bulk_entropy(samples: int, rng: np.random.Generator) -> list[CheckResult]:
    """Sigma >= 0 for random states/gradients under every closure model."""
    out = []
    for tag in ("model1", "model2", "model3", "model4", "reduced"):
        failures = 0
        worst = math.inf
        for _ in range(samples):
            cs, delta = _random_coeffs(rng, tag)
            state = FieldState(
                rho=float(rng.uniform(0.1, 10.0)),
                velocity=rng.normal(size=3),
                theta_tr=float(rng.uniform(0.1, 10.0)),
                theta_in=float(rng.uniform(0.1, 10.0)),
                delta=delta,
            )
            grads = GradientState(
                dv=rng.normal(size=(3, 3)),
                dtheta_tr=rng.normal(size=3),
                dtheta_in=rng.normal(size=3),
            )
            tau = float(np.exp(rng.uniform(math.log(0.01), math.log(10.0))))
            sigma = entropy_production(state, grads, cs, exchange_production(state, tau))
            scale = (
                abs(sigma.viscous)
                + abs(sigma.heat_translational)
                + abs(sigma.heat_internal)
                + abs(sigma.exchange)
                + 1e-300
            )
            margin = sigma.total / scale
            worst = min(worst, margin)
            if margin < -_ROUNDOFF:
                failures += 1
        out.append(CheckResult(f"bulk entropy production ({tag})", failures == 0, samples, failures, worst))
    return out


def check_wall_entropy(samples: int, rng: np.random.Generator) -> CheckResult:
    """Sigma_w >= 0 when the fluxes come from the jump conditions."""
    failures = 0
    worst = math.inf
    for _ in range(samples):
        delta = float(rng.uniform(0.5, 10.0))
        chi = float(rng.uniform(0.05, 1.0))
        eta = onsager_matrix(delta, chi)
        jump = float(rng.normal())
        vt = float(rng.normal())
        slip = rng.normal(size=3)
        slip[0] = 0.0   # tangential to an x-normal
        fluxes = apply_pbc_linear(eta, delta, jump, vt, slip)
        sw = wall_entropy_production(fluxes, delta, jump, vt, slip)
        scale = abs(jump * fluxes.q_n) + abs(vt) * (abs(fluxes.q_n) + abs(fluxes.qdiff_n)) + abs(
            float(slip @ fluxes.sigma_bar)
        ) + 1e-300
        margin = sw / scale
        worst = min(worst, margin)
        if margin < -_ROUNDOFF:
            failures += 1
    return CheckResult("wall entropy production", failures == 0, samples, failures, worst)


def check_onsager_psd(rng: np.random.Generator, grid: int = 60) -> CheckResult:
    """Resistivity matrices are PSD over delta in (0, 20], chi in (0, 1]."""
    failures = 0
    worst = math.inf
    deltas = np.linspace(0.05, 20.0, grid)
    chis = np.linspace(0.02, 1.0, grid)
    n = 0
    for d in deltas:
        for chi in chis:
            eta = onsager_matrix(float(d), float(chi))
            scale = max(eta.eta11, eta.eta22)
            margin = min(eta.eta11, eta.eta22, eta.det / scale ** 2, eta.xi)
            worst = min(worst, margin)
            n += 1
            if margin < -_ROUNDOFF:
                failures += 1
    return CheckResult("wall resistivity PSD", failures == 0, n, failures, worst)


def run_htheorem_suite(samples: int = 10_000, seed: int = 2024) -> list[CheckResult]:
    """The full randomized suite; ``samples`` applies per model to the entropy checks."""
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    results += check_coefficient_psd(min(samples, 500), rng)
    results += check_bulk_entropy(samples, rng)
    results.append(check_wall_entropy(samples, rng))
    results.append(check_onsager_psd(rng))
    return results
