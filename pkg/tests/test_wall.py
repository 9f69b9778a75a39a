import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twotemp.errors import DomainError, SolverError
from twotemp.wall import (
    OnsagerMatrix,
    WallFluxes,
    WallState,
    apply_pbc_linear,
    apply_pbc_reduced,
    decompose_normal_tangential,
    onsager_matrix,
    recompose_stress,
    reduced_onsager_matrix,
    wall_entropy_production,
)

RNG = np.random.default_rng(11)
SQRT_2_PI = math.sqrt(2.0 / math.pi)


def random_traceless_symmetric(rng):
    a = rng.normal(size=(3, 3))
    s = 0.5 * (a + a.T)
    return s - np.trace(s) / 3.0 * np.eye(3)


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


class TestDecomposition:
    def test_aligned_heat_flux(self):
        n = np.array([0.0, 0.0, 1.0])
        q = 2.5 * n
        dec = decompose_normal_tangential(q, np.zeros(3), np.zeros((3, 3)), n)
        assert dec.q_n == pytest.approx(2.5)
        assert np.allclose(dec.q_bar, 0.0)

    def test_axisymmetric_stress(self):
        s = 0.7
        sigma = np.diag([2.0, -1.0, -1.0]) * s
        n = np.array([1.0, 0.0, 0.0])
        dec = decompose_normal_tangential(np.zeros(3), np.zeros(3), sigma, n)
        assert dec.sigma_nn == pytest.approx(2.0 * s)
        assert np.allclose(dec.sigma_bar, 0.0, atol=1e-15)
        assert np.allclose(dec.sigma_tilde, 0.0, atol=1e-15)

    @given(st.integers(min_value=0, max_value=10_000))
    def test_recomposition_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        sigma = random_traceless_symmetric(rng)
        n = random_unit(rng)
        q, qd = rng.normal(size=3), rng.normal(size=3)
        dec = decompose_normal_tangential(q, qd, sigma, n)
        assert np.max(np.abs(recompose_stress(dec, n) - sigma)) < 1e-12
        assert np.max(np.abs(dec.q_n * n + dec.q_bar - q)) < 1e-12
        assert np.max(np.abs(dec.qdiff_n * n + dec.qdiff_bar - qd)) < 1e-12

    @given(st.integers(min_value=0, max_value=10_000))
    def test_orthogonality_and_trace_conditions(self, seed):
        rng = np.random.default_rng(seed)
        sigma = random_traceless_symmetric(rng)
        n = random_unit(rng)
        dec = decompose_normal_tangential(rng.normal(size=3), rng.normal(size=3), sigma, n)
        assert abs(dec.q_bar @ n) < 1e-12
        assert abs(dec.sigma_bar @ n) < 1e-12
        assert abs(np.trace(dec.sigma_tilde)) < 1e-12
        assert np.max(np.abs(dec.sigma_tilde @ n)) < 1e-12
        assert np.max(np.abs(n @ dec.sigma_tilde)) < 1e-12

    def test_non_unit_normal_rejected(self):
        with pytest.raises(DomainError, match="unit"):
            decompose_normal_tangential(
                np.zeros(3), np.zeros(3), np.zeros((3, 3)), np.array([1.0, 1.0, 0.0])
            )

    def test_asymmetric_stress_rejected(self):
        bad = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        with pytest.raises(DomainError, match="symmetric"):
            decompose_normal_tangential(np.zeros(3), np.zeros(3), bad, np.array([1.0, 0, 0]))


class TestOnsagerMatrix:
    def test_hand_values_delta2_full_accommodation(self):
        """Exact arithmetic on the resistivity formulas at delta=2, chi=1, p=theta=1."""
        eta = onsager_matrix(2.0, 1.0)
        assert eta.eta11 == pytest.approx(3.0 * SQRT_2_PI, rel=1e-14)          # ~2.394
        assert eta.eta12 == pytest.approx(0.5 * SQRT_2_PI, rel=1e-14)          # ~0.399
        bracket = Fraction(23, 4) * Fraction(5, 7) + Fraction(1, 5)
        assert eta.eta22 == pytest.approx(float(bracket) * SQRT_2_PI, rel=1e-14)  # ~3.437
        assert eta.xi == pytest.approx(SQRT_2_PI, rel=1e-14)
        assert eta.det > 0.0

    def test_accommodation_prefactor(self):
        full = onsager_matrix(2.0, 1.0)
        half = onsager_matrix(2.0, 0.5)
        # chi/(2-chi): 1 at chi=1, 1/3 at chi=0.5
        assert half.eta11 == pytest.approx(full.eta11 / 3.0, rel=1e-14)

    def test_pressure_temperature_scaling(self):
        eta = onsager_matrix(2.0, 1.0, p=4.0, theta=4.0)
        base = onsager_matrix(2.0, 1.0)
        assert eta.eta11 == pytest.approx(base.eta11 * 4.0 / 2.0, rel=1e-14)

    def test_psd_exact_arithmetic_over_ranges(self):
        """det(eta) > 0 by exact rationals (the sqrt prefactor scales out)."""
        for delta in (Fraction(1, 10), Fraction(1), Fraction(2), Fraction(7), Fraction(20)):
            bracket = (
                Fraction(15 + 4 * delta, 2 * delta) * Fraction(3 + delta, 5 + delta)
                + Fraction(1, 3 + delta)
            )
            det = Fraction(4 + delta, 2) * bracket - Fraction(1, 4)
            assert det > 0

    def test_psd_dense_grid(self):
        for delta in np.linspace(0.05, 20.0, 40):
            for chi in np.linspace(0.02, 1.0, 40):
                eta = onsager_matrix(float(delta), float(chi))
                assert eta.eta11 >= 0 and eta.eta22 >= 0 and eta.xi >= 0
                assert eta.det >= 0

    def test_specular_wall_degenerate_flag(self):
        eta = onsager_matrix(2.0, 0.0)
        assert eta.degenerate
        assert eta.eta11 == eta.eta12 == eta.eta22 == eta.xi == 0.0

    def test_chi_out_of_range(self):
        with pytest.raises(DomainError):
            onsager_matrix(2.0, 1.2)

    def test_species_accepted(self, n2):
        assert onsager_matrix(n2, 1.0).eta11 == onsager_matrix(2.0, 1.0).eta11


class TestJumpConditions:
    def test_equilibrium_wall_zero_fluxes(self):
        eta = onsager_matrix(2.0, 1.0)
        fl = apply_pbc_linear(eta, 2.0, 0.0, 0.0, np.zeros(3))
        assert fl.q_n == 0.0 and fl.qdiff_n == 0.0
        assert np.all(fl.sigma_bar == 0.0)

    def test_unit_temperature_jump_value(self):
        eta = onsager_matrix(2.0, 1.0)
        fl = apply_pbc_linear(eta, 2.0, 1.0, 0.0, np.zeros(3))
        assert fl.q_n == pytest.approx(-3.0 * SQRT_2_PI, rel=1e-14)  # ~ -2.394

    def test_hotter_gas_pushes_heat_to_wall(self):
        eta = onsager_matrix(3.0, 0.8)
        fl = apply_pbc_linear(eta, 3.0, 0.5, 0.0, np.zeros(3))
        assert fl.q_n < 0.0

    def test_closed_dimensionless_forms(self):
        """The eta-based solve reproduces the closed jump-condition display."""
        for delta in (1.0, 2.0, 3.0, 6.0):
            for chi in (0.3, 0.7, 1.0):
                pref = chi / (2 - chi) * SQRT_2_PI
                eta = onsager_matrix(delta, chi)
                t_j, vt = 0.37, -0.21
                fl = apply_pbc_linear(eta, delta, t_j, vt, np.zeros(3))
                q_expect = -pref * (4 + delta) / 2 * t_j - pref * 0.5 * vt
                qd_expect = 0.5 * pref * t_j - pref * (
                    (15 + 4 * delta) / (2 * delta) + 2 / (3 + delta) ** 2
                ) * vt
                assert fl.q_n == pytest.approx(q_expect, rel=1e-13)
                assert fl.qdiff_n == pytest.approx(qd_expect, rel=1e-13)

    def test_slip_law(self):
        eta = onsager_matrix(2.0, 1.0)
        slip = np.array([0.0, 0.3, -0.4])
        fl = apply_pbc_linear(eta, 2.0, 0.0, 0.0, slip)
        assert np.allclose(fl.sigma_bar, -SQRT_2_PI * slip, rtol=1e-14)

    def test_reduced_consistency_with_constrained_matrix(self):
        """Substituting the rank-one resistivities into the full solve kills Q_n
        and reproduces the reduced heat law."""
        for delta in (1.0, 2.0, 4.0):
            chi = 0.9
            red = reduced_onsager_matrix(delta, chi)
            fl_full = apply_pbc_linear(red, delta, 0.4, 0.7, np.zeros(3))
            assert fl_full.qdiff_n == pytest.approx(0.0, abs=1e-14)
            fl_red = apply_pbc_reduced(onsager_matrix(delta, chi), delta, 0.4, 0.7, np.zeros(3))
            assert fl_full.q_n == pytest.approx(fl_red.q_n, rel=1e-13)

    def test_reduced_hand_value(self):
        fl = apply_pbc_reduced(onsager_matrix(2.0, 1.0), 2.0, 0.0, 1.0, np.zeros(3))
        assert fl.q_n == pytest.approx(-(6.0 / 7.0) * SQRT_2_PI, rel=1e-13)  # ~ -0.684

    def test_specular_limit_kills_fluxes(self):
        chi = 1e-12
        fl = apply_pbc_linear(onsager_matrix(2.0, chi), 2.0, 1.0, 1.0, np.ones(3))
        assert abs(fl.q_n) < 1e-11 and abs(fl.qdiff_n) < 1e-11


class TestWallEntropyProduction:
    def test_zero_forces(self):
        fl = WallFluxes(0.0, 0.0, np.zeros(3))
        assert wall_entropy_production(fl, 2.0, 0.0, 0.0, np.zeros(3)) == 0.0

    def test_equals_resistivity_quadratic_form(self):
        for _ in range(50):
            delta = float(RNG.uniform(0.5, 8.0))
            chi = float(RNG.uniform(0.1, 1.0))
            eta = onsager_matrix(delta, chi)
            t_j, vt = RNG.normal(), RNG.normal()
            slip = RNG.normal(size=3)
            fl = apply_pbc_linear(eta, delta, t_j, vt, slip)
            sw = wall_entropy_production(fl, delta, t_j, vt, slip)
            H = np.array([[eta.eta11, eta.eta12], [eta.eta12, eta.eta22]])
            f = np.array([t_j, vt])
            expected = float(f @ H @ f) + eta.xi * float(slip @ slip)
            assert sw == pytest.approx(expected, rel=1e-12, abs=1e-13)
            assert sw >= 0.0

    def test_random_sample_nonnegative(self):
        for _ in range(2000):
            delta = float(RNG.uniform(0.5, 8.0))
            eta = onsager_matrix(delta, float(RNG.uniform(0.05, 1.0)))
            t_j, vt = RNG.normal(), RNG.normal()
            slip = RNG.normal(size=3)
            fl = apply_pbc_linear(eta, delta, t_j, vt, slip)
            sw = wall_entropy_production(fl, delta, t_j, vt, slip)
            assert sw >= -1e-13 * (abs(t_j) + abs(vt) + 1.0)

    def test_broken_symmetry_produces_negative_entropy(self):
        """eta12 beyond sqrt(eta11*eta22) admits a force vector with Sigma_w < 0."""
        base = onsager_matrix(2.0, 1.0)
        bad = OnsagerMatrix(
            base.eta11, 2.0 * math.sqrt(base.eta11 * base.eta22), base.eta22, base.xi, 1.0
        )
        H = np.array([[bad.eta11, bad.eta12], [bad.eta12, bad.eta22]])
        eigval, eigvec = np.linalg.eigh(H)
        assert eigval[0] < 0.0
        t_j, vt = eigvec[:, 0]
        fl = apply_pbc_linear(bad, 2.0, t_j, vt, np.zeros(3))
        sw = wall_entropy_production(fl, 2.0, t_j, vt, np.zeros(3))
        assert sw < 0.0

    def test_full_form_matches_linearized_for_small_inputs(self):
        delta, eps = 2.0, 1e-5
        eta = onsager_matrix(delta, 1.0)
        fl = apply_pbc_linear(eta, delta, eps, -eps, np.array([0.0, eps, 0.0]))
        lin = wall_entropy_production(fl, delta, eps, -eps, np.array([0.0, eps, 0.0]))
        full = wall_entropy_production(
            fl, delta, eps, -eps, np.array([0.0, eps, 0.0]),
            theta=1.0, wall_temperature=1.0, linearized=False,
        )
        assert full == pytest.approx(lin, rel=1e-4)


class TestWallState:
    def test_validation(self):
        WallState(1.0, np.zeros(3), np.array([0.0, 0.0, 1.0]))
        with pytest.raises(DomainError):
            WallState(1.0, np.zeros(3), np.array([0.0, 0.0, 2.0]))
        with pytest.raises(DomainError):
            WallState(-1.0, np.zeros(3), np.array([0.0, 0.0, 1.0]))
        with pytest.raises(DomainError):
            WallState(1.0, np.array([0.0, 0.0, 0.5]), np.array([0.0, 0.0, 1.0]))
