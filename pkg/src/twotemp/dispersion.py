"""Plane-wave dispersion and linear stability of the linearized moment system.

The ansatz exp[i(omega*t - k*x)] over the variables (rho, v_x, th_tr, th_in)
turns the one-dimensional linearized equations into A(omega, k) Phi = 0 with

        | i w        -i k          0                  0               |
    A = | -i k   4/3 mu k^2 + i w  -i k               0               |
        | 0          -i k   c + z11 k^2 + 3/2 i w   -c + z12 k^2      |
        | 0           0       -c + z12 k^2     c + z22 k^2 + d/2 i w  |

where c is the linearized exchange rate.  det A is exactly a degree-4
polynomial in omega and an even degree-6 polynomial in k; both are extracted
by exact cofactor expansion with polynomial arithmetic, and roots come from
the companion-matrix eigensolve behind ``numpy.roots``.  Temporal stability
means every root of the omega problem has nonnegative imaginary part;
spatial stability means no complex wavenumber falls in the upper-right or
lower-left quadrant (k_r * k_i <= 0).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .coefficients import CoefficientSet
from .errors import SolverError

STABILITY_TOL = 1e-10


def _poly_det(entries: list[list[np.ndarray]]) -> np.ndarray:
    """Determinant of a matrix of polynomials (ascending coefficient arrays)."""
    n = len(entries)
    out = np.zeros(1, dtype=complex)
    for perm in itertools.permutations(range(n)):
        sign = 1.0
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.array([sign], dtype=complex)
        for row, col in enumerate(perm):
            term = np.convolve(term, entries[row][col])
        if term.size > out.size:
            out = np.pad(out, (0, term.size - out.size))
        out[: term.size] += term
    return out


def _trim_leading(coeffs: np.ndarray, rel_tol: float = 1e-12) -> np.ndarray:
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        raise SolverError("identically zero dispersion polynomial")
    c = coeffs.copy()
    while c.size > 1 and abs(c[-1]) <= rel_tol * scale:
        c = c[:-1]
    return c


def _poly_roots(coeffs_ascending: np.ndarray) -> np.ndarray:
    """Roots via the companion-matrix eigensolve, leading near-zeros trimmed."""
    c = _trim_leading(np.asarray(coeffs_ascending, dtype=complex))
    if c.size == 1:
        return np.array([], dtype=complex)
    return np.roots(c[::-1])


@dataclass(frozen=True)
class ModeRoot:
    """One dispersion root with its §-convention observables."""

    omega: complex
    k: complex
    kind: str                       # "temporal" | "spatial"
    classification: str | None = None  # "acoustic" | "thermal" | "relaxational"

    @property
    def phase_velocity(self) -> float:
        if self.kind == "temporal":
            return self.omega.real / self.k.real if self.k.real != 0 else math.nan
        return self.omega.real / self.k.real if self.k.real != 0 else math.nan

    @property
    def damping(self) -> float:
        """Temporal: omega_i (>= 0 is stable).  Spatial: -k_i."""
        if self.kind == "temporal":
            return self.omega.imag
        return -self.k.imag


class DispersionSystem:
    """The 4x4 plane-wave system for one coefficient set."""

    def __init__(self, coeffs: CoefficientSet, delta: float):
        self.coeffs = coeffs
        self.delta = float(delta)

    # -- matrix assembly ----------------------------------------------------

    def matrix(self, omega: complex, k: complex) -> np.ndarray:
        z11, z12, z22 = self.coeffs.zeta11, self.coeffs.zeta12, self.coeffs.zeta22
        mu, c, d = self.coeffs.mu, self.coeffs.c_ex, self.delta
        iw, ik = 1j * omega, 1j * k
        return np.array(
            [
                [iw, -ik, 0.0, 0.0],
                [-ik, 4.0 / 3.0 * mu * k * k + iw, -ik, 0.0],
                [0.0, -ik, c + z11 * k * k + 1.5 * iw, -c + z12 * k * k],
                [0.0, 0.0, -c + z12 * k * k, c + z22 * k * k + 0.5 * d * iw],
            ],
            dtype=complex,
        )

    def _omega_entries(self, k: complex) -> list[list[np.ndarray]]:
        """Entries as polynomials in omega for fixed k."""
        A0 = self.matrix(0.0, k)
        W = np.diag([1j, 1j, 1.5j, 0.5j * self.delta])
        return [[np.array([A0[i, j], W[i, j]]) for j in range(4)] for i in range(4)]

    def _k_entries(self, omega: complex) -> list[list[np.ndarray]]:
        """Entries as polynomials in k for fixed omega."""
        z11, z12, z22 = self.coeffs.zeta11, self.coeffs.zeta12, self.coeffs.zeta22
        mu, c, d = self.coeffs.mu, self.coeffs.c_ex, self.delta
        iw = 1j * omega
        z = np.zeros(1, dtype=complex)

        def p(*cs):
            return np.array(cs, dtype=complex)

        return [
            [p(iw), p(0, -1j), z, z],
            [p(0, -1j), p(iw, 0, 4.0 / 3.0 * mu), p(0, -1j), z],
            [z, p(0, -1j), p(c + 1.5 * iw, 0, z11), p(-c, 0, z12)],
            [z, z, p(-c, 0, z12), p(c + 0.5 * d * iw, 0, z22)],
        ]

    # -- dispersion polynomials ----------------------------------------------

    def omega_polynomial(self, k: float) -> np.ndarray:
        """Ascending coefficients of det A in omega (degree 4, leading 3*delta/4)."""
        poly = _poly_det(self._omega_entries(k))
        return poly[:5] if poly.size >= 5 else np.pad(poly, (0, 5 - poly.size))

    def k_polynomial(self, omega: complex) -> np.ndarray:
        """Ascending coefficients of det A in k; only even powers survive."""
        poly = _poly_det(self._k_entries(omega))
        poly = poly[:7] if poly.size >= 7 else np.pad(poly, (0, 7 - poly.size))
        scale = np.max(np.abs(poly))
        odd = np.max(np.abs(poly[1::2]))
        if odd > 1e-10 * scale:
            raise SolverError(f"dispersion polynomial lost even parity (odd/scale = {odd/scale:g})")
        return poly

    # -- roots ---------------------------------------------------------------

    def temporal_roots(self, k: float) -> np.ndarray:
        """All four complex omega roots for a real wavenumber k >= 0."""
        if k < 0:
            raise SolverError(f"temporal problem expects k >= 0, got {k}")
        return _poly_roots(self.omega_polynomial(k))

    def spatial_roots(self, omega: float) -> np.ndarray:
        """Complex wavenumbers for a real omega > 0, in exact +/- pairs.

        The even polynomial is solved as a cubic in s = k^2; a rank-one zeta
        matrix drops the leading coefficient and leaves two s-roots.
        """
        if omega <= 0:
            raise SolverError(f"spatial problem degenerates at omega = {omega} <= 0")
        poly = self.k_polynomial(omega)
        s_poly = poly[0::2]
        s_roots = _poly_roots(s_poly)
        ks = np.sqrt(s_roots.astype(complex))
        return np.concatenate([ks, -ks])

    def residual_scale(self, omega: complex, k: complex) -> float:
        """Normalization for |det A| residual checks: product of row maxima."""
        A = self.matrix(omega, k)
        return float(np.prod(np.max(np.abs(A), axis=1)))


def relaxation_root(coeffs: CoefficientSet, delta: float) -> complex:
    """The single nonzero omega root at k = 0: i * 2 c_ex (3+delta) / (3 delta)."""
    return 1j * 2.0 * coeffs.c_ex * (3.0 + delta) / (3.0 * delta)


# -- temporal mode classification --------------------------------------------

def classify_temporal_modes(
    system: DispersionSystem, k: float, steps: int = 48, max_steps: int = 1024
) -> list[ModeRoot]:
    """Temporal roots at k, labeled by continuation from the k = 0 factorization.

    At k = 0 the spectrum is three zeros plus the relaxational root
    i*2c(3+delta)/(3delta).  Tracks follow the roots along a refined k-ramp by
    nearest-neighbor assignment; the acoustic pair is the one leaving zero
    with the largest |Re omega|, the remaining zero track is thermal.  If an
    assignment jump exceeds half the smallest root gap the ramp is refined.
    For an exchange-free set the relaxational label falls back to the more
    damped of the two non-acoustic tracks.
    """
    if k < 0:
        raise SolverError(f"expected k >= 0, got {k}")
    start = np.array([0.0, 0.0, 0.0, relaxation_root(system.coeffs, system.delta)], dtype=complex)
    if k == 0:
        labels = ["thermal", "acoustic", "acoustic", "relaxational"]
        return [ModeRoot(w, 0.0, "temporal", lab) for w, lab in zip(start, labels)]

    n = steps
    while True:
        tracks = start.copy()
        ok = True
        for kk in np.linspace(0.0, k, n + 1)[1:]:
            roots = system.temporal_roots(kk)
            dist = np.abs(tracks[:, None] - roots[None, :])
            rows, cols = linear_sum_assignment(dist)
            new = roots[cols[np.argsort(rows)]]
            gaps = np.abs(new[:, None] - new[None, :])[np.triu_indices(4, 1)]
            min_gap = gaps.min() if gaps.size else np.inf
            jump = np.abs(new - tracks).max()
            tracks = new
            if min_gap > 0 and jump > 0.5 * min_gap and n < max_steps:
                ok = False
                break
        if ok or n >= max_steps:
            break
        n *= 2

    # resolve the three ambiguous zero tracks at the far end of the ramp
    labels: list[str | None] = [None, None, None, "relaxational"]
    zero_idx = [0, 1, 2]
    by_re = sorted(zero_idx, key=lambda i: abs(tracks[i].real), reverse=True)
    labels[by_re[0]] = "acoustic"
    labels[by_re[1]] = "acoustic"
    labels[by_re[2]] = "thermal"
    if system.coeffs.c_ex == 0.0:
        others = sorted((by_re[2], 3), key=lambda i: tracks[i].imag)
        labels[others[0]] = "thermal"
        labels[others[1]] = "relaxational"
    return [ModeRoot(w, k, "temporal", lab) for w, lab in zip(tracks, labels)]


def spatial_modes(system: DispersionSystem, omega: float) -> list[ModeRoot]:
    return [ModeRoot(omega, kk, "spatial") for kk in system.spatial_roots(omega)]


def temporal_mode_sweep(system: DispersionSystem, k_grid) -> list[list[ModeRoot]]:
    """Labeled temporal roots along an increasing k grid, tracked by continuation.

    The grid is implicitly anchored at k = 0 where the labels originate; see
    :func:`classify_temporal_modes` for the labeling rules.
    """
    k_grid = np.asarray(k_grid, dtype=float)
    if np.any(np.diff(k_grid) <= 0) or np.any(k_grid < 0):
        raise SolverError("k grid must be strictly increasing and nonnegative")
    tracks = np.array(
        [0.0, 0.0, 0.0, relaxation_root(system.coeffs, system.delta)], dtype=complex
    )
    ks = k_grid if k_grid[0] > 0 else k_grid[1:]
    history = []
    for kk in ks:
        roots = system.temporal_roots(float(kk))
        dist = np.abs(tracks[:, None] - roots[None, :])
        rows, cols = linear_sum_assignment(dist)
        tracks = roots[cols[np.argsort(rows)]]
        history.append(tracks.copy())
    if not history:
        raise SolverError("k grid contained no positive wavenumber")
    labels: list[str] = ["", "", "", "relaxational"]
    by_re = sorted([0, 1, 2], key=lambda i: abs(history[0][i].real), reverse=True)
    labels[by_re[0]] = "acoustic"
    labels[by_re[1]] = "acoustic"
    labels[by_re[2]] = "thermal"
    out = []
    if k_grid[0] == 0.0:
        start = np.array([0, 0, 0, relaxation_root(system.coeffs, system.delta)], dtype=complex)
        out.append([ModeRoot(w, 0.0, "temporal", lab) for w, lab in zip(start, labels)])
    for kk, roots in zip(ks, history):
        out.append([ModeRoot(w, float(kk), "temporal", lab) for w, lab in zip(roots, labels)])
    return out


# -- stability sweep ---------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    """Grid-sweep verdicts with the margins that produced them."""

    temporal_ok: bool
    spatial_ok: bool
    temporal_margin: float   # min over the k grid of min omega_i (stable if >= -tol)
    spatial_margin: float    # max over the omega grid of k_r*k_i (stable if <= tol)
    tolerance: float = STABILITY_TOL

    @property
    def worst_margin(self) -> float:
        return min(self.temporal_margin, -self.spatial_margin)


def stability_report(
    coeffs: CoefficientSet,
    delta: float,
    k_grid,
    omega_grid,
    tol: float = STABILITY_TOL,
) -> StabilityReport:
    k_grid = np.asarray(k_grid, dtype=float)
    omega_grid = np.asarray(omega_grid, dtype=float)
    if k_grid.size == 0 or omega_grid.size == 0:
        raise SolverError("stability sweep needs non-empty k and omega grids")
    system = DispersionSystem(coeffs, delta)
    temporal_margin = math.inf
    for k in k_grid:
        roots = system.temporal_roots(float(k))
        temporal_margin = min(temporal_margin, float(np.min(roots.imag)))
    spatial_margin = -math.inf
    for w in omega_grid:
        if w <= 0:
            continue
        roots = system.spatial_roots(float(w))
        spatial_margin = max(spatial_margin, float(np.max(roots.real * roots.imag)))
    return StabilityReport(
        temporal_ok=temporal_margin >= -tol,
        spatial_ok=spatial_margin <= tol,
        temporal_margin=temporal_margin,
        spatial_margin=spatial_margin,
        tolerance=tol,
    )


# -- companion systems for cross-checks ---------------------------------------

class NsfDispersion:
    """Classical one-temperature baseline: mass, momentum, energy (3x3 system).

    Shear viscosity enters as 4/3*mu (plus an optional bulk term), conduction
    as the total conductivity lam, and the heat-capacity ratio is
    (5+delta)/(3+delta).  No dynamic temperature, no exchange.
    """

    def __init__(self, mu: float, lam: float, delta: float, bulk_viscosity: float = 0.0):
        self.mu = float(mu)
        self.lam = float(lam)
        self.delta = float(delta)
        self.bulk_viscosity = float(bulk_viscosity)

    def matrix(self, omega: complex, k: complex) -> np.ndarray:
        iw, ik = 1j * omega, 1j * k
        visc = 4.0 / 3.0 * self.mu + self.bulk_viscosity
        cv = 0.5 * (3.0 + self.delta)
        return np.array(
            [
                [iw, -ik, 0.0],
                [-ik, visc * k * k + iw, -ik],
                [0.0, -ik, cv * iw + self.lam * k * k],
            ],
            dtype=complex,
        )

    def _k_entries(self, omega: complex) -> list[list[np.ndarray]]:
        iw = 1j * omega
        visc = 4.0 / 3.0 * self.mu + self.bulk_viscosity
        cv = 0.5 * (3.0 + self.delta)
        z = np.zeros(1, dtype=complex)

        def p(*cs):
            return np.array(cs, dtype=complex)

        return [
            [p(iw), p(0, -1j), z],
            [p(0, -1j), p(iw, 0, visc), p(0, -1j)],
            [z, p(0, -1j), p(cv * iw, 0, self.lam)],
        ]

    def omega_polynomial(self, k: float) -> np.ndarray:
        A0 = self.matrix(0.0, k)
        W = np.diag([1j, 1j, 0.5j * (3.0 + self.delta)])
        entries = [[np.array([A0[i, j], W[i, j]]) for j in range(3)] for i in range(3)]
        poly = _poly_det(entries)
        return poly[:4] if poly.size >= 4 else np.pad(poly, (0, 4 - poly.size))

    def k_polynomial(self, omega: complex) -> np.ndarray:
        poly = _poly_det(self._k_entries(omega))
        poly = poly[:5] if poly.size >= 5 else np.pad(poly, (0, 5 - poly.size))
        scale = np.max(np.abs(poly))
        if np.max(np.abs(poly[1::2])) > 1e-10 * scale:
            raise SolverError("baseline dispersion polynomial lost even parity")
        return poly

    def temporal_roots(self, k: float) -> np.ndarray:
        return _poly_roots(self.omega_polynomial(k))

    def spatial_roots(self, omega: float) -> np.ndarray:
        if omega <= 0:
            raise SolverError(f"spatial problem degenerates at omega = {omega} <= 0")
        s_roots = _poly_roots(self.k_polynomial(omega)[0::2])
        ks = np.sqrt(s_roots.astype(complex))
        return np.concatenate([ks, -ks])


def reduced_variable_matrix(
    coeffs: CoefficientSet, delta: float, omega: complex, k: complex
) -> np.ndarray:
    """Plane-wave matrix of the reduced model written in (rho, v, theta, vartheta).

    An exact change of variables from (rho, v, th_tr, th_in) for a rank-one
    zeta matrix, so its dispersion roots must coincide with the 4x4 system's.
    """
    d = float(delta)
    lam = coeffs.total_conductivity
    mu, c = coeffs.mu, coeffs.c_ex
    iw, ik = 1j * omega, 1j * k
    return np.array(
        [
            [iw, -ik, 0.0, 0.0],
            [-ik, iw + 4.0 / 3.0 * mu * k * k, -ik, -ik],
            [0.0, -ik, 0.5 * (3.0 + d) * iw + lam * k * k, 2.0 * lam / (5.0 + d) * k * k],
            [
                0.0,
                -d / (3.0 + d) * ik,
                2.0 * d * lam / ((3.0 + d) * (5.0 + d)) * k * k,
                1.5 * iw + 4.0 * d * lam / ((3.0 + d) * (5.0 + d) ** 2) * k * k + (3.0 + d) / d * c,
            ],
        ],
        dtype=complex,
    )
