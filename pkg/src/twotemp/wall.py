"""Gas-surface interface machinery: decompositions, resistivities, jump conditions.

The interface entropy production pairs three thermodynamic forces with three
fluxes: temperature jump with normal heat flux, dynamic temperature with a
fixed combination of normal heat and heat-difference fluxes, slip velocity
with tangential stress.  Writing each flux as minus a resistivity matrix
acting on the forces makes the production the associated quadratic form, so
nonnegativity at the wall is exactly positive semidefiniteness of that
matrix.  The resistivities used here come from kinetic theory in the limit
of small dynamic temperature and are controlled by the accommodation
coefficient chi through the common factor chi/(2-chi).

Normal convention: the unit normal points from the wall into the gas, and
the temperature jump is gas minus wall.  With those signs a gas hotter than
the wall pushes heat toward it (q_n < 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SolverError
from .species import GasSpecies


@dataclass(frozen=True)
class WallDecomposition:
    """Normal/tangential components of the wall-adjacent fluxes."""

    q_n: float
    q_bar: np.ndarray
    qdiff_n: float
    qdiff_bar: np.ndarray
    sigma_nn: float
    sigma_bar: np.ndarray
    sigma_tilde: np.ndarray


@dataclass(frozen=True)
class WallState:
    """Wall temperature, tangential velocity and the into-gas unit normal."""

    wall_temperature: float
    wall_velocity: np.ndarray
    normal: np.ndarray

    def __post_init__(self) -> None:
        n = np.asarray(self.normal, dtype=float)
        v = np.asarray(self.wall_velocity, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise DomainError("normal must be a unit 3-vector")
        if self.wall_temperature <= 0:
            raise DomainError(f"wall temperature must be positive, got {self.wall_temperature}")
        if abs(float(v @ n)) > 1e-12 * (1.0 + np.linalg.norm(v)):
            raise DomainError("wall velocity must be tangential")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "wall_velocity", v)


def decompose_normal_tangential(q, qdiff, sigma, n) -> WallDecomposition:
    """Split heat fluxes and a symmetric traceless stress along a unit normal.

    The pieces satisfy q_bar.n = sigma_bar.n = 0 and sigma_tilde is traceless
    and orthogonal to n in both slots; reassembly per

        sigma = sigma_nn (3/2 n n - I/2) + sigma_bar n + n sigma_bar + sigma_tilde

    reproduces the inputs exactly.
    """
    q = np.asarray(q, dtype=float)
    qdiff = np.asarray(qdiff, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    n = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise DomainError(f"normal must have unit length, got |n| = {np.linalg.norm(n)}")
    scale = np.max(np.abs(sigma)) + 1e-300
    if np.max(np.abs(sigma - sigma.T)) > 1e-12 * scale or abs(np.trace(sigma)) > 1e-12 * scale:
        raise DomainError("sigma must be symmetric and traceless")
    q_n = float(q @ n)
    qdiff_n = float(qdiff @ n)
    sigma_nn = float(n @ sigma @ n)
    sigma_bar = sigma @ n - sigma_nn * n
    sigma_tilde = (
        sigma
        - sigma_nn * (1.5 * np.outer(n, n) - 0.5 * np.eye(3))
        - np.outer(sigma_bar, n)
        - np.outer(n, sigma_bar)
    )
    return WallDecomposition(
        q_n=q_n,
        q_bar=q - q_n * n,
        qdiff_n=qdiff_n,
        qdiff_bar=qdiff - qdiff_n * n,
        sigma_nn=sigma_nn,
        sigma_bar=sigma_bar,
        sigma_tilde=sigma_tilde,
    )


def recompose_stress(dec: WallDecomposition, n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    return (
        dec.sigma_nn * (1.5 * np.outer(n, n) - 0.5 * np.eye(3))
        + np.outer(dec.sigma_bar, n)
        + np.outer(n, dec.sigma_bar)
        + dec.sigma_tilde
    )


@dataclass(frozen=True)
class OnsagerMatrix:
    """Interface resistivities: 2x2 thermal block, shear resistivity, accommodation."""

    eta11: float
    eta12: float
    eta22: float
    xi: float
    chi: float
    degenerate: bool = False   # chi = 0: specular wall, jump conditions vacuous

    @property
    def det(self) -> float:
        return self.eta11 * self.eta22 - self.eta12 ** 2

    def validate(self) -> "OnsagerMatrix":
        scale = max(self.eta11, self.eta22, 1e-300)
        if self.eta11 < 0 or self.eta22 < 0 or self.det < -1e-12 * scale ** 2 or self.xi < 0:
            raise SolverError(
                f"resistivity matrix not PSD: eta=({self.eta11}, {self.eta12}, "
                f"{self.eta22}), xi={self.xi}"
            )
        return self


def onsager_matrix(
    species_or_delta, chi: float, p: float = 1.0, theta: float = 1.0
) -> OnsagerMatrix:
    """Kinetic-theory resistivities at accommodation chi, pressure p, temperature theta.

        eta11 = chi/(2-chi) * (4+delta)/2 * p sqrt(2/(pi theta))
        eta12 = chi/(2-chi) * 1/2 * p sqrt(2/(pi theta))
        eta22 = chi/(2-chi) * p sqrt(2/(pi theta))
                * [ (15+4 delta)/(2 delta) * (3+delta)/(5+delta) + 1/(3+delta) ]
        xi    = chi/(2-chi) * p sqrt(2/(pi theta))

    chi = 0 returns the zero matrix flagged as degenerate rather than failing:
    a specular wall is physical, it just leaves the jumps unconstrained.
    """
    delta = species_or_delta.delta if isinstance(species_or_delta, GasSpecies) else float(species_or_delta)
    if not 0.0 <= chi <= 1.0:
        raise DomainError(f"accommodation chi = {chi} outside [0, 1]")
    if p <= 0 or theta <= 0:
        raise DomainError(f"need p > 0 and theta > 0, got ({p}, {theta})")
    if chi == 0.0:
        return OnsagerMatrix(0.0, 0.0, 0.0, 0.0, 0.0, degenerate=True)
    base = chi / (2.0 - chi) * p * math.sqrt(2.0 / (math.pi * theta))
    eta11 = base * 0.5 * (4.0 + delta)
    eta12 = base * 0.5
    eta22 = base * (
        (15.0 + 4.0 * delta) / (2.0 * delta) * (3.0 + delta) / (5.0 + delta)
        + 1.0 / (3.0 + delta)
    )
    return OnsagerMatrix(eta11, eta12, eta22, base, chi).validate()


def reduced_onsager_matrix(
    species_or_delta, chi: float, p: float = 1.0, theta: float = 1.0
) -> OnsagerMatrix:
    """Resistivities constrained so the normal heat-difference flux vanishes.

    eta12 = 2 eta11/(5+delta) and eta22 = 4 eta11/(5+delta)^2 make the matrix
    rank one; eta11 and the shear resistivity keep their full-model values.
    """
    delta = species_or_delta.delta if isinstance(species_or_delta, GasSpecies) else float(species_or_delta)
    full = onsager_matrix(delta, chi, p, theta)
    if full.degenerate:
        return full
    eta12 = 2.0 * full.eta11 / (5.0 + delta)
    eta22 = 4.0 * full.eta11 / (5.0 + delta) ** 2
    return OnsagerMatrix(full.eta11, eta12, eta22, full.xi, chi).validate()


@dataclass(frozen=True)
class WallFluxes:
    """Linearized interface fluxes along the into-gas normal."""

    q_n: float
    qdiff_n: float
    sigma_bar: np.ndarray


def apply_pbc_linear(
    onsager: OnsagerMatrix, delta: float, temp_jump: float, dyn_temp: float, slip
) -> WallFluxes:
    """Linearized jump conditions solved for the fluxes.

        q_n = -eta11 T - eta12 vt
        Q_n = -(5+d)/(3+d) [ (eta12 - 2 eta11/(5+d)) T + (eta22 - 2 eta12/(5+d)) vt ]
        sigma_bar = -xi V

    For the kinetic-theory matrix these reduce to the closed dimensionless
    forms with the chi/(2-chi) sqrt(2/pi) prefactor.
    """
    slip = np.asarray(slip, dtype=float)
    f = (5.0 + delta) / (3.0 + delta)
    q_n = -onsager.eta11 * temp_jump - onsager.eta12 * dyn_temp
    qdiff_n = -f * (
        (onsager.eta12 - 2.0 * onsager.eta11 / (5.0 + delta)) * temp_jump
        + (onsager.eta22 - 2.0 * onsager.eta12 / (5.0 + delta)) * dyn_temp
    )
    return WallFluxes(q_n=q_n, qdiff_n=qdiff_n, sigma_bar=-onsager.xi * slip)


def apply_pbc_reduced(
    onsager: OnsagerMatrix, delta: float, temp_jump: float, dyn_temp: float, slip
) -> WallFluxes:
    """Reduced-model jump conditions; the heat-difference flux is zero by construction."""
    constrained = OnsagerMatrix(
        onsager.eta11,
        2.0 * onsager.eta11 / (5.0 + delta),
        4.0 * onsager.eta11 / (5.0 + delta) ** 2,
        onsager.xi,
        onsager.chi,
        onsager.degenerate,
    )
    fluxes = apply_pbc_linear(constrained, delta, temp_jump, dyn_temp, slip)
    return WallFluxes(q_n=fluxes.q_n, qdiff_n=0.0, sigma_bar=fluxes.sigma_bar)


def wall_entropy_production(
    fluxes: WallFluxes,
    delta: float,
    temp_jump: float,
    dyn_temp: float,
    slip,
    *,
    theta: float = 1.0,
    wall_temperature: float = 1.0,
    linearized: bool = True,
) -> float:
    """Interface entropy production for given fluxes and forces.

    The linearized (leading quadratic-order) form is

        Sigma_w = -T q_n - vt [ 2 q_n/(5+d) + (3+d) Q_n/(5+d) ] - V . sigma_bar,

    which equals the resistivity quadratic form whenever the fluxes came from
    the jump conditions.  ``linearized=False`` evaluates the full expression
    at finite theta and wall temperature.
    """
    slip = np.asarray(slip, dtype=float)
    d = float(delta)
    combo = 2.0 / (5.0 + d) * fluxes.q_n + (3.0 + d) / (5.0 + d) * fluxes.qdiff_n
    if linearized:
        return (
            -temp_jump * fluxes.q_n
            - dyn_temp * combo
            - float(slip @ fluxes.sigma_bar)
        )
    vt = dyn_temp
    tt = theta + vt
    if theta <= 0 or wall_temperature <= 0 or tt <= 0:
        raise DomainError("need positive theta, wall temperature and theta + vartheta")
    bracket = (
        fluxes.q_n
        - 2.0 / (5.0 + d) * vt / tt * fluxes.q_n
        - (3.0 + d) / (5.0 + d) * vt / tt * fluxes.qdiff_n
        + float(slip @ fluxes.sigma_bar)
    )
    return (
        -temp_jump / (theta * wall_temperature) * bracket
        - (vt * theta / tt) / (theta * wall_temperature) * combo
        - float(slip @ fluxes.sigma_bar) / theta
    )
