"""Sound-propagation observables versus the rarefaction parameter.

For a forced wave of real frequency the dispersion roots give the phase
velocity and attenuation of the forward-running sound mode.  Observables are
reported against the rarefaction parameter r = p/(mu*omega), the ratio of
collision rate to forcing frequency; in the dimensionless scaling
r = 1/(mu_hat * omega_hat), which makes every reported quantity independent
of the arbitrary length scale.  Large r is the hydrodynamic regime where the
phase speed approaches the equilibrium sound speed sqrt(gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientSet, effective_bulk_viscosity
from .dispersion import DispersionSystem, NsfDispersion
from .errors import SolverError
from .species import GasSpecies


@dataclass(frozen=True)
class AcousticPoint:
    """Observables of the forward sound mode at one rarefaction value."""

    rarefaction: float     # r = p/(mu omega) > 0
    atten_factor: float    # alpha * c0 / omega
    recip_speed: float     # c0 / v_ph
    speed_dev: float       # (v_ph - c0) / c0


def equilibrium_sound_speed(delta: float) -> float:
    """c0 = sqrt((5+delta)/(3+delta)) in units of sqrt(theta0)."""
    if delta <= 0:
        raise SolverError(f"delta must be positive, got {delta}")
    return math.sqrt((5.0 + delta) / (3.0 + delta))


def select_forward_acoustic_root(roots: np.ndarray) -> complex:
    """Among spatial roots with k_r > 0, the most propagative one (max k_r/|k_i|)."""
    forward = [k for k in np.asarray(roots, complex) if k.real > 0]
    if not forward:
        raise SolverError("no forward-running spatial root found")
    return max(forward, key=lambda k: k.real / (abs(k.imag) + 1e-300))


def _observables(k: complex, omega: float, c0: float, r: float) -> AcousticPoint:
    v_ph = omega / k.real
    alpha = -k.imag
    return AcousticPoint(
        rarefaction=r,
        atten_factor=alpha * c0 / omega,
        recip_speed=c0 / v_ph,
        speed_dev=(v_ph - c0) / c0,
    )


def acoustic_curve(coeffs: CoefficientSet, delta: float, r_grid) -> list[AcousticPoint]:
    """Forward sound-mode observables for each rarefaction value in the grid."""
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0):
        raise SolverError("rarefaction grid must be positive")
    system = DispersionSystem(coeffs, delta)
    c0 = equilibrium_sound_speed(delta)
    points = []
    for r in r_grid:
        omega = 1.0 / (coeffs.mu * r)
        try:
            k = select_forward_acoustic_root(system.spatial_roots(omega))
        except SolverError as exc:
            raise SolverError(f"acoustic root selection failed at r = {r}: {exc}") from exc
        points.append(_observables(k, omega, c0, float(r)))
    return points


def nsf_baseline_curve(
    species: GasSpecies,
    r_grid,
    *,
    kn: float = 1.0,
    bulk_viscosity: float = 0.0,
) -> list[AcousticPoint]:
    """Classical one-temperature baseline from the species viscosity and conductivity.

    Bulk viscosity is off by default; pass a dimensionless value (same scaling
    as Kn) to study its effect.
    """
    lam = species.conductivity_ratio() * kn
    return nsf_curve_from_transport(kn, lam, species.delta, r_grid, bulk_viscosity=bulk_viscosity)


def nsf_curve_from_coefficients(
    coeffs: CoefficientSet,
    delta: float,
    r_grid,
    *,
    bulk_viscosity: float | None = None,
) -> list[AcousticPoint]:
    """Baseline sharing the coefficient set's viscosity and total conductivity.

    ``bulk_viscosity=None`` means none; pass
    :func:`~twotemp.coefficients.effective_bulk_viscosity` output to build the
    baseline the two-temperature model relaxes to at low frequency.
    """
    bulk = 0.0 if bulk_viscosity is None else bulk_viscosity
    return nsf_curve_from_transport(
        coeffs.mu, coeffs.total_conductivity, delta, r_grid, bulk_viscosity=bulk
    )


def nsf_curve_from_transport(
    mu: float, lam: float, delta: float, r_grid, *, bulk_viscosity: float = 0.0
) -> list[AcousticPoint]:
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0):
        raise SolverError("rarefaction grid must be positive")
    system = NsfDispersion(mu, lam, delta, bulk_viscosity=bulk_viscosity)
    c0 = equilibrium_sound_speed(delta)
    points = []
    for r in r_grid:
        omega = 1.0 / (mu * r)
        k = select_forward_acoustic_root(system.spatial_roots(omega))
        points.append(_observables(k, omega, c0, float(r)))
    return points
