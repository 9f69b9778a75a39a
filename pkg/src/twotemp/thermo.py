"""State types, the six-moment maximum-entropy distribution and entropy functionals.

The distribution over molecular velocity c and internal energy I factorizes
into a Maxwellian at the translational temperature and a Gamma density at the
internal temperature,

    f6 = (rho/m) (2 pi th_tr)^{-3/2} exp(-C^2 / 2 th_tr)
         * Gamma(delta/2)^{-1} I^{-1} (I/th_in)^{delta/2} exp(-I/th_in),

whose moments reproduce (rho, rho*v, 3/2 rho th_tr, delta/2 rho th_in).  The
entropy density, its flux and its production rate are the pieces of the
H-theorem: with a positive semidefinite conductivity matrix, nonnegative
viscosity and an exchange term proportional to the dynamic temperature, the
production is a nonnegative quadratic form in the gradients.

Entropy here is dimensionless (Boltzmann prefactor and additive constants
normalized away); only differences from the reference state are meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, roots_genlaguerre, roots_hermite

from .coefficients import CoefficientSet
from .errors import DomainError, SolverError


@dataclass(frozen=True)
class FieldState:
    """Local hydrodynamic state (rho, v, th_tr, th_in) plus the gas's delta."""

    rho: float
    velocity: np.ndarray
    theta_tr: float
    theta_in: float
    delta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if self.velocity.shape != (3,):
            raise DomainError(f"velocity must be a 3-vector, got shape {self.velocity.shape}")
        if self.rho <= 0 or self.theta_tr <= 0 or self.theta_in <= 0 or self.delta <= 0:
            raise DomainError(
                "rho, theta_tr, theta_in and delta must all be positive, got "
                f"({self.rho}, {self.theta_tr}, {self.theta_in}, {self.delta})"
            )

    @property
    def theta(self) -> float:
        """Thermodynamic temperature (3*th_tr + delta*th_in) / (3 + delta)."""
        return (3.0 * self.theta_tr + self.delta * self.theta_in) / (3.0 + self.delta)

    @property
    def vartheta(self) -> float:
        """Dynamic temperature th_tr - theta (rho*vartheta is the dynamic pressure)."""
        return self.theta_tr - self.theta


@dataclass(frozen=True)
class GradientState:
    """Velocity gradient tensor and the two temperature gradient vectors."""

    dv: np.ndarray
    dtheta_tr: np.ndarray
    dtheta_in: np.ndarray

    def __post_init__(self) -> None:
        dv = np.asarray(self.dv, dtype=float)
        gt = np.asarray(self.dtheta_tr, dtype=float)
        gi = np.asarray(self.dtheta_in, dtype=float)
        if dv.shape != (3, 3) or gt.shape != (3,) or gi.shape != (3,):
            raise DomainError("need dv (3,3), dtheta_tr (3,), dtheta_in (3,)")
        if not (np.isfinite(dv).all() and np.isfinite(gt).all() and np.isfinite(gi).all()):
            raise DomainError("gradient entries must be finite")
        object.__setattr__(self, "dv", dv)
        object.__setattr__(self, "dtheta_tr", gt)
        object.__setattr__(self, "dtheta_in", gi)


def mixture_temperature(state: FieldState) -> float:
    return state.theta


def eval_f6(state: FieldState, c, internal_energy, mass: float = 1.0):
    """Evaluate the maximum-entropy distribution at velocity c and internal energy I.

    Broadcasts: ``c`` has shape (..., 3) and ``internal_energy`` any shape
    broadcastable against the leading axes of c.
    """
    c = np.asarray(c, dtype=float)
    I = np.asarray(internal_energy, dtype=float)
    if np.any(I <= 0):
        raise DomainError("internal energy must be positive")
    half_d = 0.5 * state.delta
    C2 = np.sum((c - state.velocity) ** 2, axis=-1)
    log_maxwell = -C2 / (2.0 * state.theta_tr) - 1.5 * math.log(2.0 * math.pi * state.theta_tr)
    log_gamma = (
        -gammaln(half_d)
        + (half_d - 1.0) * np.log(I)
        - half_d * math.log(state.theta_in)
        - I / state.theta_in
    )
    return state.rho / mass * np.exp(log_maxwell + log_gamma)


def f6_moments(state: FieldState, mass: float = 1.0, rtol: float = 1e-8) -> dict[str, float]:
    """Quadrature moments of f6: density, momentum, translational and internal energy.

    Tensorized Gauss-Hermite nodes in the (centered, scaled) peculiar velocity
    times generalized Gauss-Laguerre nodes in the internal energy; the order
    is raised until two successive orders agree to ``rtol``.  The distribution
    is evaluated as a plain function at the nodes, so these integrals check
    its normalization constants, not just the weight bookkeeping.
    """
    alpha = 0.5 * state.delta - 1.0
    scale_c = math.sqrt(2.0 * state.theta_tr)
    previous: dict[str, float] | None = None
    for n in (6, 10, 14, 20, 28, 40):
        u, wu = roots_hermite(n)
        t, wt = roots_genlaguerre(n, alpha)
        # 3-D velocity grid, flattened to (n^3, 3)
        ux, uy, uz = np.meshgrid(u, u, u, indexing="ij")
        ugrid = np.stack([ux.ravel(), uy.ravel(), uz.ravel()], axis=-1)
        wgrid = (wu[:, None, None] * wu[None, :, None] * wu[None, None, :]).ravel()
        cgrid = state.velocity + scale_c * ugrid
        I = state.theta_in * t
        f = eval_f6(state, cgrid[:, None, :], I[None, :], mass=mass)  # (n^3, n)
        # undo the weight factors contained in f6 itself
        correction = np.exp(np.sum(ugrid ** 2, axis=-1))[:, None] * (
            np.exp(t) * t ** (-alpha)
        )[None, :]
        base = f * correction * wgrid[:, None] * wt[None, :]
        jac = scale_c ** 3 * state.theta_in
        C2_half = 0.5 * np.sum((cgrid - state.velocity) ** 2, axis=-1)
        moments = {
            "density": mass * jac * float(np.sum(base)),
            "momentum_x": mass * jac * float(np.sum(base * cgrid[:, 0:1])),
            "momentum_y": mass * jac * float(np.sum(base * cgrid[:, 1:2])),
            "momentum_z": mass * jac * float(np.sum(base * cgrid[:, 2:3])),
            "translational_energy": mass * jac * float(np.sum(base * C2_half[:, None])),
            "internal_energy": mass * jac * float(np.sum(base * I[None, :])),
        }
        if previous is not None:
            scale = max(abs(v) for v in moments.values())
            if all(abs(moments[k] - previous[k]) <= rtol * scale for k in moments):
                return moments
        previous = moments
    raise SolverError("f6 moment quadrature failed to converge")


def f6_moment_errors(state: FieldState, mass: float = 1.0) -> dict[str, float]:
    """Relative quadrature error of each f6 moment against its closed-form value."""
    m = f6_moments(state, mass=mass)
    mom_scale = state.rho * math.sqrt(state.theta_tr)
    expected = {
        "density": state.rho,
        "momentum_x": state.rho * state.velocity[0],
        "momentum_y": state.rho * state.velocity[1],
        "momentum_z": state.rho * state.velocity[2],
        "translational_energy": 1.5 * state.rho * state.theta_tr,
        "internal_energy": 0.5 * state.delta * state.rho * state.theta_in,
    }
    out = {}
    for k, ref in expected.items():
        denom = abs(ref) if abs(ref) > 0 else mom_scale
        out[k] = abs(m[k] - ref) / denom
    return out


# -- entropy functionals ----------------------------------------------------

def entropy_density(state: FieldState) -> float:
    """rho * (3/2 ln th_tr + delta/2 ln th_in - ln rho), additive constants dropped."""
    return state.rho * (
        1.5 * math.log(state.theta_tr)
        + 0.5 * state.delta * math.log(state.theta_in)
        - math.log(state.rho)
    )


def heat_flux_difference(state: FieldState, q_tr: np.ndarray, q_in: np.ndarray) -> np.ndarray:
    """Q = q_tr - (5 theta + 3 vartheta)/(delta theta - 3 vartheta) * q_in."""
    th, vt = state.theta, state.vartheta
    dd = state.delta * th - 3.0 * vt
    if dd <= 0:
        raise DomainError("heat-flux difference undefined for non-positive internal temperature")
    return np.asarray(q_tr, float) - (5.0 * th + 3.0 * vt) / dd * np.asarray(q_in, float)


def entropy_flux(state: FieldState, q_tr, q_in) -> np.ndarray:
    """Non-convective entropy flux q_tr/th_tr + q_in/th_in.

    The equivalent three-term decomposition in total-flux variables is checked
    against it; the two forms are algebraically identical, so disagreement
    beyond roundoff signals an internal error.
    """
    q_tr = np.asarray(q_tr, dtype=float)
    q_in = np.asarray(q_in, dtype=float)
    direct = q_tr / state.theta_tr + q_in / state.theta_in
    decomposed = sum(entropy_flux_decomposition(state, q_tr, q_in))
    scale = np.max(np.abs(direct)) + np.max(np.abs(q_tr)) + np.max(np.abs(q_in)) + 1e-300
    if np.max(np.abs(direct - decomposed)) > 1e-12 * scale:
        raise SolverError("entropy flux forms disagree beyond roundoff")
    return direct


def entropy_flux_decomposition(state: FieldState, q_tr, q_in) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The classical, coupled and higher-order contributions to the entropy flux.

    Terms of q/theta, of vartheta*q and of vartheta*Q; their sum equals
    q_tr/th_tr + q_in/th_in.
    """
    q = np.asarray(q_tr, float) + np.asarray(q_in, float)
    Q = heat_flux_difference(state, q_tr, q_in)
    th, vt, d = state.theta, state.vartheta, state.delta
    classical = q / th
    coupled = -2.0 / (5.0 + d) * vt / (th * (th + vt)) * q
    higher = -(3.0 + d) / (5.0 + d) * vt / (th * (th + vt)) * Q
    return classical, coupled, higher


@dataclass(frozen=True)
class EntropyProduction:
    """Four-term bulk entropy production rate."""

    viscous: float
    heat_translational: float
    heat_internal: float
    exchange: float

    @property
    def total(self) -> float:
        return self.viscous + self.heat_translational + self.heat_internal + self.exchange


def deviatoric(dv: np.ndarray) -> np.ndarray:
    """Symmetric traceless part of a velocity gradient tensor."""
    dv = np.asarray(dv, dtype=float)
    sym = 0.5 * (dv + dv.T)
    return sym - np.trace(sym) / 3.0 * np.eye(3)


def constitutive_fluxes(
    state: FieldState, grads: GradientState, coeffs: CoefficientSet
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stress and the two heat fluxes from the entropy-consistent closure.

        sigma = -2 mu dev(grad v)
        q_tr  = -z11 grad(th_tr)/th_tr^2 - z12 grad(th_in)/th_in^2
        q_in  = -z12 grad(th_tr)/th_tr^2 - z22 grad(th_in)/th_in^2
    """
    sigma = -2.0 * coeffs.mu * deviatoric(grads.dv)
    g_tr = grads.dtheta_tr / state.theta_tr ** 2
    g_in = grads.dtheta_in / state.theta_in ** 2
    q_tr = -coeffs.zeta11 * g_tr - coeffs.zeta12 * g_in
    q_in = -coeffs.zeta12 * g_tr - coeffs.zeta22 * g_in
    return sigma, q_tr, q_in


def exchange_production(state: FieldState, tau_int: float) -> float:
    """Internal-energy production rho*vartheta/tau for a relaxation time tau > 0."""
    if tau_int <= 0:
        raise DomainError(f"relaxation time must be positive, got {tau_int}")
    return state.rho * state.vartheta / tau_int


def entropy_production(
    state: FieldState,
    grads: GradientState,
    coeffs: CoefficientSet,
    exchange: float,
) -> EntropyProduction:
    """Bulk entropy production for the closure fluxes plus a given exchange term.

    With a PSD zeta matrix, mu >= 0 and exchange = rho*vartheta/tau (tau > 0)
    every term is nonnegative; the exchange contribution equals
    rho*delta*(th_tr - th_in)^2 / (tau*(3+delta)*th_tr*th_in).
    """
    sigma, q_tr, q_in = constitutive_fluxes(state, grads, coeffs)
    viscous = -float(np.sum(sigma * grads.dv)) / state.theta_tr
    heat_tr = -float(q_tr @ grads.dtheta_tr) / state.theta_tr ** 2
    heat_in = -float(q_in @ grads.dtheta_in) / state.theta_in ** 2
    exch = (1.0 / state.theta_in - 1.0 / state.theta_tr) * exchange
    return EntropyProduction(viscous, heat_tr, heat_in, exch)


def entropy_quadratic_form(state: FieldState, coeffs: CoefficientSet) -> np.ndarray:
    """The 15x15 matrix of the entropy production as a quadratic form.

    Variables ordered as (dv flattened row-major, dtheta_tr, dtheta_in); the
    production for zero exchange is x^T M x.  Its eigenvalues are the
    independent oracle for nonnegativity of the bilinear expression.
    """
    M = np.zeros((15, 15))
    # viscous block: 2 mu/th_tr * |dev(dv)|^2; build via the dev projector
    P = np.zeros((9, 9))
    eye = np.eye(3)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    P[3 * i + j, 3 * k + l] = (
                        0.5 * (eye[i, k] * eye[j, l] + eye[i, l] * eye[j, k])
                        - eye[i, j] * eye[k, l] / 3.0
                    )
    M[:9, :9] = 2.0 * coeffs.mu / state.theta_tr * P
    zeta = np.array([[coeffs.zeta11, coeffs.zeta12], [coeffs.zeta12, coeffs.zeta22]])
    scale = np.diag([1.0 / state.theta_tr ** 2, 1.0 / state.theta_in ** 2])
    block = scale @ zeta @ scale
    for axis in range(3):
        idx = [9 + axis, 12 + axis]
        M[np.ix_(idx, idx)] += block
    return M
