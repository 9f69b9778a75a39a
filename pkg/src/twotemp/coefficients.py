"""Dimensionless linearized closure coefficients for the two-temperature model.

Every solver in this package works in the dimensionless perturbation
variables: velocities scaled by sqrt(theta0), pressures by p0, temperatures
by theta0, lengths by a macroscopic scale L, fluxes by p0*sqrt(theta0).  In
that scaling the shear viscosity becomes the Knudsen number
Kn = mu0*sqrt(theta0)/(p0*L), the heat-flux closure reads

    q_tr = -zeta11 * d(theta_tr)/dx - zeta12 * d(theta_in)/dx
    q_in = -zeta12 * d(theta_tr)/dx - zeta22 * d(theta_in)/dx

with [[zeta11, zeta12], [zeta12, zeta22]] symmetric positive semidefinite,
and the linearized energy exchange is P^{0,1} = c_ex*(theta_tr - theta_in)
with c_ex >= 0.  Those sign constraints are exactly what makes the bulk
entropy production a nonnegative quadratic form, so each factory validates
them on the set it returns.

Four closure models map gas constants onto (zeta_ij, mu, c_ex); the reduced
variant constrains the zeta matrix to rank one so that the heat-flux
difference vanishes identically in the linear regime.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .errors import DomainError, SolverError
from .species import GasSpecies

MODEL_TAGS = ("model1", "model2", "model3", "model4", "reduced")

_PSD_TOL = 1e-12


@dataclass(frozen=True)
class CoefficientSet:
    """Dimensionless linearized closure: zeta matrix, viscosity, exchange rate."""

    zeta11: float
    zeta12: float
    zeta22: float
    mu: float       # dimensionless shear viscosity (= Kn under the scaling)
    c_ex: float     # linearized exchange rate, P^{0,1} = c_ex*(th_tr - th_in)
    model_tag: str

    @property
    def det_zeta(self) -> float:
        return self.zeta11 * self.zeta22 - self.zeta12 ** 2

    @property
    def total_conductivity(self) -> float:
        """Coefficient of -d(theta)/dx in the linearized total heat flux."""
        return self.zeta11 + 2.0 * self.zeta12 + self.zeta22

    @property
    def exchange_free(self) -> bool:
        return self.c_ex == 0.0

    def validate(self) -> "CoefficientSet":
        scale = max(self.zeta11, self.zeta22, 1e-300)
        if self.mu < 0:
            raise SolverError(f"negative viscosity mu = {self.mu}")
        if self.c_ex < 0:
            raise SolverError(f"negative exchange rate c_ex = {self.c_ex}")
        if self.zeta11 < 0 or self.zeta22 < 0 or self.det_zeta < -_PSD_TOL * scale ** 2:
            raise SolverError(
                "zeta matrix is not positive semidefinite: "
                f"zeta11={self.zeta11}, zeta12={self.zeta12}, zeta22={self.zeta22}"
            )
        if self.model_tag not in MODEL_TAGS:
            raise SolverError(f"unknown model tag {self.model_tag!r}")
        return self


def _resolve_kn(species: GasSpecies, length_scale: float | None, kn: float | None) -> float:
    if (length_scale is None) == (kn is None):
        raise ValueError("pass exactly one of length_scale or kn")
    if kn is None:
        kn = species.knudsen(length_scale)
    if kn <= 0:
        raise ValueError(f"Knudsen number must be positive, got {kn}")
    return kn


def model1_coefficients(
    species: GasSpecies, length_scale: float | None = None, *, kn: float | None = None
) -> CoefficientSet:
    """Rough-sphere closure parameterized by the dimensionless moment of inertia kappa.

    The molecular diameter and mass cancel once the rough-sphere viscosity is
    used to form the Knudsen number, leaving rational functions of kappa times
    Kn for the zeta entries and an exchange rate

        c_ex = 20*delta*kappa / ((3+delta)*(13*kappa+6)*Kn),

    the dynamic-pressure relaxation frequency in the same scaling.  kappa = 0
    (all mass at the center) switches the internal exchange off entirely;
    such a set is returned flagged via ``exchange_free``.
    """
    kn = _resolve_kn(species, length_scale, kn)
    kappa = species.require("kappa", "model1")
    species.require("diameter", "model1")
    d = species.delta
    denom = 24.0 + 150.0 * kappa + 202.0 * kappa ** 2 + 204.0 * kappa ** 3
    zeta11 = kn * 15.0 * (6.0 + 25.0 * kappa + 38.0 * kappa ** 2 + 26.0 * kappa ** 3) / denom
    zeta12 = kn * 15.0 * kappa * (6.0 + 13.0 * kappa) / denom
    zeta22 = kn * 9.0 * (24.0 + 154.0 * kappa + 221.0 * kappa ** 2) / (5.0 * denom)
    c_ex = 20.0 * d * kappa / ((3.0 + d) * (13.0 * kappa + 6.0) * kn)
    if c_ex == 0.0:
        warnings.warn(
            f"species '{species.name}' with kappa = 0 has no internal energy exchange",
            stacklevel=2,
        )
    return CoefficientSet(zeta11, zeta12, zeta22, kn, c_ex, "model1").validate()


def model2_coefficients(
    species: GasSpecies, length_scale: float | None = None, *, kn: float | None = None
) -> CoefficientSet:
    """Ellipsoidal-relaxation closure (Prandtl adjuster nu, bulk adjuster theta1).

    The collision-rate constant is stored as a multiple of the reference
    collision frequency p0/mu0, so the dimensionless rate is A_c/Kn.  With
    the bundled choice A_c = 1/(2*(1-nu)) the model viscosity equals Kn.
    """
    kn = _resolve_kn(species, length_scale, kn)
    nu = species.require("nu", "model2")
    theta1 = species.require("theta1", "model2")
    a_c = species.require("collision_freq_coeff", "model2") / kn
    if nu >= 1.0:
        raise SolverError(f"nu = {nu} makes the model-2 viscosity singular")
    d = species.delta
    mu = 1.0 / (2.0 * (1.0 - nu) * a_c)
    zeta11 = 2.5 * mu / a_c
    zeta22 = 0.5 * d * mu / a_c
    c_ex = 1.5 * d * theta1 * a_c / (3.0 + d)
    return CoefficientSet(zeta11, 0.0, zeta22, mu, c_ex, "model2").validate()


def model3_coefficients(
    species: GasSpecies, length_scale: float | None = None, *, kn: float | None = None
) -> CoefficientSet:
    """Kernel-rate closure driven by the six gas-specific production constants.

    The constants are stored as multiples of p0/mu0.  The source lists
    separate zeta12 and zeta21 expressions; a symmetric matrix is required
    for nonnegative entropy production, so the off-diagonal pair is averaged
    and any measurable asymmetry is reported as a warning.
    """
    kn = _resolve_kn(species, length_scale, kn)
    if species.p_constants is None:
        species.require("p_constants", "model3")
    pc = {k: v / kn for k, v in species.p_constants.items()}
    d = species.delta
    det_p = pc["p0_q"] * pc["p0_s"] - pc["p1_q"] * pc["p1_s"]
    scale = max(abs(pc["p0_q"] * pc["p0_s"]), abs(pc["p1_q"] * pc["p1_s"]), 1e-300)
    if abs(det_p) < 1e-14 * scale:
        raise SolverError("singular kernel-rate denominator p0_q*p0_s - p1_q*p1_s = 0")
    if pc["p0_sigma"] <= 0:
        raise SolverError(f"p0_sigma must be positive, got {species.p_constants['p0_sigma']}")
    mu = 1.0 / pc["p0_sigma"]
    zeta11 = 2.5 * mu * pc["p0_s"] / det_p
    zeta12 = -0.5 * d * mu * pc["p1_q"] / det_p
    zeta21 = -2.5 * mu * pc["p1_s"] / det_p
    zeta22 = 0.5 * d * mu * pc["p0_q"] / det_p
    sym = 0.5 * (zeta12 + zeta21)
    gap = abs(zeta12 - zeta21)
    if gap > 1e-12 * max(abs(zeta12), abs(zeta21), zeta11, zeta22):
        warnings.warn(
            f"asymmetric off-diagonal conductivities (zeta12={zeta12:.6g}, "
            f"zeta21={zeta21:.6g}); using their mean",
            stacklevel=2,
        )
    c_ex = 1.5 * d * pc["p0_pi"] / (3.0 + d)
    return CoefficientSet(zeta11, sym, zeta22, mu, c_ex, "model3").validate()


def model4_coefficients(
    species: GasSpecies, length_scale: float | None = None, *, kn: float | None = None
) -> CoefficientSet:
    """Conductivity-split closure: zeta11 = 5*lam/(5+delta), zeta22 = delta*lam/(5+delta).

    The split satisfies zeta11 + zeta22 = lam identically.  The source model
    supplies no production term, so the exchange rate comes from the species'
    internal-relaxation collision number: c_ex = delta/((3+delta)*z_int*Kn).
    """
    kn = _resolve_kn(species, length_scale, kn)
    lam = species.require("thermal_conductivity", "model4") / species.shear_viscosity * kn
    z_int = species.require("z_int", "model4")
    d = species.delta
    zeta11 = 5.0 * lam / (5.0 + d)
    zeta22 = d * lam / (5.0 + d)
    c_ex = d / ((3.0 + d) * z_int * kn)
    return CoefficientSet(zeta11, 0.0, zeta22, kn, c_ex, "model4").validate()


def reduced_coefficients(base: CoefficientSet, species: GasSpecies) -> CoefficientSet:
    """Rank-one zeta matrix with zeta12 = (delta/5)*zeta11, zeta22 = (delta/5)^2*zeta11.

    This is the linearized form of the constraint that kills the heat-flux
    difference; the matrix determinant is exactly zero and the total
    conductivity becomes ((5+delta)^2/25)*zeta11.  Idempotent: reducing a
    reduced set returns it unchanged.
    """
    if base.zeta11 < 0:
        raise SolverError(f"cannot reduce a set with zeta11 = {base.zeta11} < 0")
    r = species.delta / 5.0
    return CoefficientSet(
        base.zeta11, r * base.zeta11, r * r * base.zeta11, base.mu, base.c_ex, "reduced"
    ).validate()


def reduced_model_for_species(
    species: GasSpecies, length_scale: float | None = None, *, kn: float | None = None
) -> CoefficientSet:
    """Reduced closure calibrated so its total conductivity matches the species value.

    Solves ((5+delta)^2/25)*zeta11 = lam for zeta11 before applying the
    rank-one constraint; exchange rate as in the conductivity-split model.
    """
    kn = _resolve_kn(species, length_scale, kn)
    lam = species.require("thermal_conductivity", "reduced model") / species.shear_viscosity * kn
    z_int = species.require("z_int", "reduced model")
    d = species.delta
    zeta11 = 25.0 * lam / (5.0 + d) ** 2
    c_ex = d / ((3.0 + d) * z_int * kn)
    base = CoefficientSet(zeta11, 0.0, 0.0, kn, c_ex, "model4")
    return reduced_coefficients(base, species)


_BUILDERS = {
    "model1": model1_coefficients,
    "model2": model2_coefficients,
    "model3": model3_coefficients,
    "model4": model4_coefficients,
    "reduced": reduced_model_for_species,
}


def model_coefficients(
    species: GasSpecies,
    model_tag: str,
    length_scale: float | None = None,
    *,
    kn: float | None = None,
) -> CoefficientSet:
    """Dispatch to the coefficient builder named by ``model_tag``."""
    try:
        builder = _BUILDERS[model_tag]
    except KeyError:
        raise ValueError(f"unknown model {model_tag!r}; choose from {MODEL_TAGS}") from None
    return builder(species, length_scale, kn=kn)


def linear_flux_coefficients(coeffs: CoefficientSet, delta: float) -> tuple[float, float, float, float]:
    """Prefactors (lam_q, beta_q, lam_Q, beta_Q) of the linearized fluxes.

        q = -lam_q * d(theta)/dx - beta_q * d(vartheta)/dx
        Q = -lam_Q * d(theta)/dx - beta_Q * d(vartheta)/dx

    For a reduced set lam_Q = beta_Q = 0 identically.
    """
    z11, z12, z22 = coeffs.zeta11, coeffs.zeta12, coeffs.zeta22
    lam_q = z11 + 2.0 * z12 + z22
    beta_q = (z11 + z12) - 3.0 / delta * (z12 + z22)
    lam_qq = (z11 - 5.0 / delta * z12) + (z12 - 5.0 / delta * z22)
    beta_qq = (z11 - 5.0 / delta * z12) - 3.0 / delta * (z12 - 5.0 / delta * z22)
    return lam_q, beta_q, lam_qq, beta_qq


@dataclass(frozen=True)
class FluxCoefficients:
    """Bracketed prefactors of the nonlinear total-heat and heat-difference fluxes."""

    q_dtheta: float
    q_dvartheta: float
    qdiff_dtheta: float
    qdiff_dvartheta: float


def nonlinear_flux_coefficients(
    coeffs: CoefficientSet, theta: float, vartheta: float, species: GasSpecies
) -> FluxCoefficients:
    """Evaluate the nonlinear flux prefactors at a state (theta, vartheta).

    The fluxes read q = -A_q_theta*grad(theta) - A_q_vartheta*grad(vartheta)
    and likewise for the heat-flux difference.  The expressions have a pole
    where the internal temperature vanishes (vartheta = delta*theta/3), which
    is rejected as a domain error.  At vartheta = 0 they collapse to the
    linearized prefactors of :func:`linear_flux_coefficients`.
    """
    d = species.delta
    tt = theta + vartheta          # theta_tr
    dd = d * theta - 3.0 * vartheta  # delta * theta_in
    if theta <= 0 or tt <= 0:
        raise DomainError(f"need theta > 0 and theta + vartheta > 0, got ({theta}, {vartheta})")
    if abs(dd) < 1e-14 * d * theta:
        raise DomainError(
            f"vartheta = {vartheta} sits at the internal-temperature pole delta*theta/3"
        )
    z11, z12, z22 = coeffs.zeta11, coeffs.zeta12, coeffs.zeta22
    five3 = 5.0 * theta + 3.0 * vartheta
    q_dtheta = (z11 + z12) / tt ** 2 + (z12 + z22) * d ** 2 / dd ** 2
    q_dvartheta = (z11 + z12) / tt ** 2 - 3.0 * (z12 + z22) * d / dd ** 2
    qdiff_dtheta = (
        z11 / tt ** 2
        - z22 * five3 * d ** 2 / dd ** 3
        - z12 * (-d ** 2 * tt ** 2 + d * theta * five3 - 3.0 * vartheta * five3) / (tt ** 2 * dd ** 2)
    )
    qdiff_dvartheta = (
        z11 / tt ** 2
        + 3.0 * z22 * five3 * d / dd ** 3
        - z12
        * (8.0 * d * theta ** 2 + 3.0 * (3.0 * d - 5.0) * theta * vartheta + 3.0 * (d - 3.0) * vartheta ** 2)
        / (tt ** 2 * dd ** 2)
    )
    return FluxCoefficients(q_dtheta, q_dvartheta, qdiff_dtheta, qdiff_dvartheta)


def effective_bulk_viscosity(coeffs: CoefficientSet, delta: float) -> float:
    """Low-frequency bulk viscosity delta^2/((3+delta)^2 * c_ex) of the relaxing exchange.

    In the slow limit the dynamic-temperature balance is quasi-static and the
    dynamic pressure acts exactly like a bulk-viscous stress with this
    dimensionless coefficient.  Infinite for an exchange-free set.
    """
    if coeffs.c_ex == 0.0:
        return math.inf
    return delta ** 2 / ((3.0 + delta) ** 2 * coeffs.c_ex)
