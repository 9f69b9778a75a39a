"""Steady conductive heat transfer between parallel plates, solved in closed form.

Walls sit at y = -1/2 and y = +1/2 with prescribed dimensionless temperature
deviations; the gas is stationary.  The steady linearized balances force a
constant total heat flux, a constant momentum sum rho + theta + vartheta and
a dynamic temperature obeying vartheta'' = m^2 vartheta with

    m^2 = c_ex (3+delta)(5+delta) / (delta^2 D),   D = beta_Q - lam_Q beta_q / lam_q,

built from the linearized flux prefactors.  The general solution carries
seven constants (two of them the trivial velocity pair for stationary
walls); they are fixed by the wall jump conditions, the slip conditions and
the zero-average-density normalization through a dense linear solve of the
affine residual system.  A rank-one (reduced) coefficient set kills the
hyperbolic layer entirely: vartheta vanishes identically and the problem
collapses to Fourier conduction with temperature jumps.

Wall normals point into the gas (-y at the top wall, +y at the bottom), and
temperature jumps are gas minus wall, matching the sign conventions of
:mod:`twotemp.wall`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson

from .coefficients import CoefficientSet, linear_flux_coefficients
from .errors import SolverError
from .wall import OnsagerMatrix, apply_pbc_linear, apply_pbc_reduced, onsager_matrix

_REDUCED_TOL = 1e-13


@dataclass(frozen=True)
class HeatCase:
    """One plate-conduction configuration."""

    kn: float
    chi: float
    delta: float
    wall_temp_upper: float   # dimensionless deviation at y = +1/2
    wall_temp_lower: float   # dimensionless deviation at y = -1/2
    coeffs: CoefficientSet
    chi_lower: float | None = None   # defaults to the upper-wall value

    def __post_init__(self) -> None:
        if self.kn <= 0:
            raise SolverError(f"kn must be positive, got {self.kn}")
        for chi in (self.chi, self.chi_lower):
            if chi is not None and not 0.0 < chi <= 1.0:
                raise SolverError(f"accommodation chi = {chi} outside (0, 1]")

    @property
    def model_tag(self) -> str:
        return self.coeffs.model_tag

    @property
    def chi_low(self) -> float:
        return self.chi if self.chi_lower is None else self.chi_lower


@dataclass(frozen=True)
class HeatSolution:
    """Closed-form solution pieces; all profiles derive from these constants."""

    lam_q: float
    beta_q: float
    lam_qq: float
    beta_qq: float
    m: float
    a_cosh: float
    b_sinh: float
    c_theta: float     # additive constant of theta
    c_momentum: float  # rho + theta + vartheta
    q0: float          # constant total heat flux
    v0: float = 0.0
    v1: float = 0.0
    reduced: bool = False

    def vartheta(self, y):
        y = np.asarray(y, dtype=float)
        if self.reduced:
            return np.zeros_like(y)
        return self.a_cosh * np.cosh(self.m * y) + self.b_sinh * np.sinh(self.m * y)

    def dvartheta(self, y):
        y = np.asarray(y, dtype=float)
        if self.reduced:
            return np.zeros_like(y)
        return self.m * (self.a_cosh * np.sinh(self.m * y) + self.b_sinh * np.cosh(self.m * y))

    def theta(self, y):
        y = np.asarray(y, dtype=float)
        return self.c_theta - self.q0 / self.lam_q * y - self.beta_q / self.lam_q * self.vartheta(y)

    def rho(self, y):
        return self.c_momentum - self.theta(y) - self.vartheta(y)

    def velocity(self, y):
        y = np.asarray(y, dtype=float)
        return self.v0 + self.v1 * y

    def qdiff(self, y):
        """Heat-difference flux (lam_Q/lam_q) q0 - D vartheta'(y)."""
        if self.reduced:
            return np.zeros_like(np.asarray(y, dtype=float))
        d_coeff = self.beta_qq - self.lam_qq * self.beta_q / self.lam_q
        return self.lam_qq / self.lam_q * self.q0 - d_coeff * self.dvartheta(y)

    def theta_tr(self, y):
        return self.theta(y) + self.vartheta(y)

    def theta_in(self, y, delta: float):
        return self.theta(y) - 3.0 / delta * self.vartheta(y)


@dataclass(frozen=True)
class HeatProfile:
    """Sampled profiles plus the constant fluxes of one solved case."""

    y_grid: np.ndarray
    rho: np.ndarray
    theta_tr: np.ndarray
    theta_in: np.ndarray
    theta: np.ndarray
    vartheta: np.ndarray
    qdiff_y: np.ndarray
    q_y: float
    sigma_xy: float
    solution: HeatSolution
    case: HeatCase


def _wall_residuals(case: HeatCase, sol: HeatSolution, full_system: bool) -> np.ndarray:
    """Residuals of the jump, slip and normalization conditions for a candidate solution."""
    d = case.delta
    res = []
    for y_wall, n_y, chi, t_wall in (
        (0.5, -1.0, case.chi, case.wall_temp_upper),
        (-0.5, 1.0, case.chi_low, case.wall_temp_lower),
    ):
        eta = onsager_matrix(d, chi)
        jump = float(sol.theta(y_wall)) - t_wall
        vt = float(sol.vartheta(y_wall))
        slip = np.array([n_y * float(sol.velocity(y_wall)), 0.0, 0.0])
        if sol.reduced:
            fluxes = apply_pbc_reduced(eta, d, jump, vt, slip)
        else:
            fluxes = apply_pbc_linear(eta, d, jump, vt, slip)
        res.append(n_y * sol.q0 - fluxes.q_n)
        if not sol.reduced:
            res.append(n_y * float(sol.qdiff(y_wall)) - fluxes.qdiff_n)
        if full_system:
            sigma_xy = -4.0 / 3.0 * case.kn * sol.v1
            res.append(n_y * sigma_xy - float(fluxes.sigma_bar[0]))
    # zero average density over [-1/2, 1/2]
    if sol.reduced:
        integral = sol.c_momentum - sol.c_theta
    else:
        integral = (
            sol.c_momentum
            - sol.c_theta
            + (sol.beta_q / sol.lam_q - 1.0) * 2.0 * sol.a_cosh / sol.m * math.sinh(0.5 * sol.m)
        )
    res.append(integral)
    return np.array(res, dtype=float)


def solve_heat_case(case: HeatCase, n_points: int = 201, full_system: bool = False) -> HeatProfile:
    """Determine the solution constants and sample the profiles.

    ``full_system`` also solves the velocity pair through the slip conditions
    (they vanish for stationary walls, which is the default analytic shortcut).
    """
    coeffs, d = case.coeffs, case.delta
    lam_q, beta_q, lam_qq, beta_qq = linear_flux_coefficients(coeffs, d)
    if lam_q <= 0:
        raise SolverError(f"total conductivity {lam_q} must be positive")
    reduced = case.model_tag == "reduced" or (
        abs(lam_qq) < _REDUCED_TOL * lam_q and abs(beta_qq) < _REDUCED_TOL * lam_q
    )
    if reduced:
        m = 0.0
    else:
        d_coeff = beta_qq - lam_qq * beta_q / lam_q
        if coeffs.c_ex <= 0 or d_coeff <= 0:
            raise SolverError(
                f"non-positive layer eigenvalue: c_ex = {coeffs.c_ex}, D = {d_coeff}"
            )
        m = math.sqrt(coeffs.c_ex * (3.0 + d) * (5.0 + d) / (d * d * d_coeff))

    base = HeatSolution(
        lam_q=lam_q, beta_q=beta_q, lam_qq=lam_qq, beta_qq=beta_qq, m=m,
        a_cosh=0.0, b_sinh=0.0, c_theta=0.0, c_momentum=0.0, q0=0.0,
        reduced=reduced,
    )
    if reduced:
        names = ["c_theta", "c_momentum", "q0"]
    else:
        names = ["a_cosh", "b_sinh", "c_theta", "c_momentum", "q0"]
    if full_system:
        names += ["v0", "v1"]

    r0 = _wall_residuals(case, base, full_system)
    n = len(names)
    if r0.size != n:
        raise SolverError(f"constant-determination system is {r0.size}x{n}, not square")
    M = np.empty((n, n))
    for j, name in enumerate(names):
        r1 = _wall_residuals(case, replace(base, **{name: 1.0}), full_system)
        M[:, j] = r1 - r0
    try:
        x = np.linalg.solve(M, -r0)
    except np.linalg.LinAlgError as exc:
        raise SolverError(
            f"singular constant-determination system (cond ~ {np.linalg.cond(M):.3g})"
        ) from exc
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e12:
        raise SolverError(f"ill-conditioned constant-determination system (cond = {cond:.3g})")
    sol = replace(base, **dict(zip(names, x)))

    y = np.linspace(-0.5, 0.5, n_points)
    return HeatProfile(
        y_grid=y,
        rho=sol.rho(y),
        theta_tr=sol.theta_tr(y),
        theta_in=sol.theta_in(y, d),
        theta=sol.theta(y),
        vartheta=sol.vartheta(y),
        qdiff_y=sol.qdiff(y) if not reduced else np.zeros_like(y),
        q_y=sol.q0,
        sigma_xy=-4.0 / 3.0 * case.kn * sol.v1,
        solution=sol,
        case=case,
    )


def solve_heat_fourier(
    kn: float,
    chi: float,
    delta: float,
    lam: float,
    wall_temp_upper: float,
    wall_temp_lower: float,
    chi_lower: float | None = None,
) -> HeatProfile:
    """Classical comparison run: Fourier conduction with temperature-jump walls.

    No dynamic temperature and no flux coupling; equivalent to a reduced-model
    solve with total conductivity ``lam``.
    """
    z11 = 25.0 * lam / (5.0 + delta) ** 2
    coeffs = CoefficientSet(
        z11, delta / 5.0 * z11, (delta / 5.0) ** 2 * z11, kn, 1.0, "reduced"
    )
    case = HeatCase(kn, chi, delta, wall_temp_upper, wall_temp_lower, coeffs, chi_lower)
    return solve_heat_case(case)


def _fd1(f, y: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central first derivative (solution closures are entire)."""
    return (-f(y + 2 * h) + 8 * f(y + h) - 8 * f(y - h) + f(y - 2 * h)) / (12.0 * h)


def _fd2(f, y: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central second derivative."""
    return (
        -f(y + 2 * h) + 16 * f(y + h) - 30 * f(y) + 16 * f(y - h) - f(y - 2 * h)
    ) / (12.0 * h * h)


def residual_check(profile: HeatProfile, case: HeatCase, n_points: int = 401) -> float:
    """Largest residual of the balance equations and boundary conditions.

    All derivatives are central finite differences of the analytic solution,
    independent of the algebra used to build it, so a miswired constant or a
    wrong sign shows up immediately.
    """
    sol, d = profile.solution, case.delta
    h = 1e-3 / max(1.0, sol.m / 5.0)
    y = np.linspace(-0.5, 0.5, n_points)

    def q_fd(pts):
        return -sol.lam_q * _fd1(sol.theta, pts, h) - sol.beta_q * _fd1(sol.vartheta, pts, h)

    def qdiff_fd(pts):
        return -sol.lam_qq * _fd1(sol.theta, pts, h) - sol.beta_qq * _fd1(sol.vartheta, pts, h)

    dq_dy = -sol.lam_q * _fd2(sol.theta, y, h) - sol.beta_q * _fd2(sol.vartheta, y, h)
    dqdiff_dy = -sol.lam_qq * _fd2(sol.theta, y, h) - sol.beta_qq * _fd2(sol.vartheta, y, h)
    momentum = lambda p: sol.rho(p) + sol.theta(p) + sol.vartheta(p)

    residuals = [
        np.max(np.abs(q_fd(y) - sol.q0)),                       # q_y equals its constant
        np.max(np.abs(dq_dy)),                                  # dq/dy = 0
        np.max(np.abs(_fd1(momentum, y, h))),                   # momentum balance
        np.max(np.abs(
            d / (5.0 + d) * dqdiff_dy
            + (3.0 + d) / d * case.coeffs.c_ex * sol.vartheta(y)
        )),                                                     # dynamic-temperature balance
        abs(float(simpson(sol.rho(y), x=y))),                   # zero average density
    ]
    for y_wall, n_y, chi, t_wall in (
        (0.5, -1.0, case.chi, case.wall_temp_upper),
        (-0.5, 1.0, case.chi_low, case.wall_temp_lower),
    ):
        eta = onsager_matrix(d, chi)
        jump = float(sol.theta(y_wall)) - t_wall
        vt = float(sol.vartheta(y_wall))
        if sol.reduced:
            fluxes = apply_pbc_reduced(eta, d, jump, vt, np.zeros(3))
        else:
            fluxes = apply_pbc_linear(eta, d, jump, vt, np.zeros(3))
        residuals.append(abs(n_y * float(q_fd(np.array([y_wall]))[0]) - fluxes.q_n))
        if not sol.reduced:
            residuals.append(abs(n_y * float(qdiff_fd(np.array([y_wall]))[0]) - fluxes.qdiff_n))
    return float(max(residuals))


def antisymmetry_check(profile: HeatProfile, case: HeatCase, tol: float = 1e-9) -> bool:
    """True iff theta, vartheta and rho are odd in y to the given tolerance.

    Meaningful for exactly opposite wall temperatures and equal accommodation
    on both walls; unequal walls break the symmetry.
    """
    sol = profile.solution
    y = np.linspace(0.0, 0.5, 101)
    worst = max(
        float(np.max(np.abs(sol.theta(y) + sol.theta(-y)))),
        float(np.max(np.abs(sol.vartheta(y) + sol.vartheta(-y)))),
        float(np.max(np.abs(sol.rho(y) + sol.rho(-y)))),
    )
    return worst <= tol
