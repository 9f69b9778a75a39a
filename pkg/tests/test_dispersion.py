import math

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from twotemp.coefficients import (
    CoefficientSet,
    model1_coefficients,
    model2_coefficients,
    model3_coefficients,
    model4_coefficients,
    reduced_model_for_species,
)
from twotemp.dispersion import (
    DispersionSystem,
    NsfDispersion,
    ModeRoot,
    classify_temporal_modes,
    reduced_variable_matrix,
    relaxation_root,
    spatial_modes,
    stability_report,
    temporal_mode_sweep,
)
from twotemp.errors import SolverError

RNG = np.random.default_rng(7)


def generic_coeffs(c_ex=0.3):
    return CoefficientSet(1.0, 0.2, 0.5, 1.0, c_ex, "model1")


def match_sets(a, b):
    """Max pairwise distance under the optimal matching of two root multisets."""
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    D = np.abs(a[:, None] - b[None, :])
    ri, ci = linear_sum_assignment(D)
    return float(D[ri, ci].max())


class TestPolynomials:
    def test_polynomial_matches_determinant_at_random_points(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        for _ in range(20):
            w = complex(RNG.normal(), RNG.normal())
            k = complex(RNG.normal(), RNG.normal())
            det = np.linalg.det(system.matrix(w, k))
            via_w = np.polyval(system.omega_polynomial(k)[::-1], w)
            via_k = np.polyval(system.k_polynomial(w)[::-1], k)
            scale = max(abs(det), 1e-30)
            assert abs(via_w - det) / scale < 1e-10
            assert abs(via_k - det) / scale < 1e-10

    def test_leading_omega_coefficient(self):
        for delta in (1.0, 2.0, 3.0, 7.0):
            system = DispersionSystem(generic_coeffs(), delta)
            poly = system.omega_polynomial(1.7)
            assert poly[4] == pytest.approx(0.75 * delta, rel=1e-13)

    def test_k_polynomial_has_even_parity(self):
        system = DispersionSystem(generic_coeffs(), 2.0)
        poly = system.k_polynomial(0.9)
        assert np.max(np.abs(poly[1::2])) <= 1e-10 * np.max(np.abs(poly))

    def test_matrix_rows_at_zero(self):
        system = DispersionSystem(generic_coeffs(c_ex=0.4), 2.0)
        A = system.matrix(0.0, 0.0)
        assert np.allclose(A[0], 0.0)
        assert np.allclose(A[1], 0.0)
        assert np.allclose(A[2], [0, 0, 0.4, -0.4])
        assert np.allclose(A[3], [0, 0, -0.4, 0.4])
        assert np.linalg.matrix_rank(A) == 1

    def test_first_row_entries(self):
        system = DispersionSystem(generic_coeffs(), 2.0)
        A = system.matrix(0.7, 1.3)
        assert A[0, 0] == pytest.approx(1j * 0.7)
        assert A[0, 1] == pytest.approx(-1j * 1.3)
        assert A[0, 2] == 0.0 and A[0, 3] == 0.0


class TestTemporalRoots:
    def test_zero_wavenumber_factorization(self):
        """Three zero roots plus i*2c(3+d)/(3d), the closed-form relaxation root."""
        for delta, c_ex in ((2.0, 0.3), (3.0, 1.1), (5.0, 0.01)):
            cs = generic_coeffs(c_ex)
            roots = DispersionSystem(cs, delta).temporal_roots(0.0)
            expected = [0.0, 0.0, 0.0, 1j * 2 * c_ex * (3 + delta) / (3 * delta)]
            assert match_sets(roots, expected) < 1e-12

    def test_relaxation_root_equals_kernel_rate(self):
        """With c_ex = 3 d P_pi/(2(3+d)) the k=0 root sits at i*P_pi exactly."""
        delta, p_pi = 3.0, 0.42
        cs = CoefficientSet(1.0, 0.1, 0.5, 1.0, 1.5 * delta * p_pi / (3 + delta), "model3")
        assert relaxation_root(cs, delta) == pytest.approx(1j * p_pi, rel=1e-14)

    def test_root_residuals(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        for k in (0.1, 1.0, 10.0, 80.0):
            for w in system.temporal_roots(k):
                res = abs(np.linalg.det(system.matrix(w, k)))
                assert res <= 1e-8 * system.residual_scale(w, k)

    def test_conjugate_pair_symmetry(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        for k in (0.5, 2.0, 25.0):
            roots = system.temporal_roots(k)
            assert match_sets(roots, -np.conj(roots)) < 1e-9

    def test_small_k_acoustic_speed(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        modes = classify_temporal_modes(system, 1e-3)
        acoustic = sorted(m.phase_velocity for m in modes if m.classification == "acoustic")
        c0 = math.sqrt(4.0 / 3.0)
        assert acoustic[0] == pytest.approx(-c0, rel=1e-3)
        assert acoustic[1] == pytest.approx(c0, rel=1e-3)

    def test_classification_labels(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        modes = classify_temporal_modes(system, 2.0)
        labels = sorted(m.classification for m in modes)
        assert labels == ["acoustic", "acoustic", "relaxational", "thermal"]

    def test_sweep_matches_single_classification(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        grid = np.linspace(0.0, 3.0, 60)
        sweep = temporal_mode_sweep(system, grid)
        end = {m.classification: m.omega for m in sweep[-1]}
        single = {m.classification: m.omega for m in classify_temporal_modes(system, 3.0)}
        for lab in ("thermal", "relaxational"):
            assert end[lab] == pytest.approx(single[lab], rel=1e-9, abs=1e-12)

    def test_negative_k_rejected(self):
        with pytest.raises(SolverError):
            DispersionSystem(generic_coeffs(), 2.0).temporal_roots(-1.0)


class TestSpatialRoots:
    def test_plus_minus_pairs_exact(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        roots = system.spatial_roots(1.7)
        assert match_sets(roots, -roots) == 0.0

    def test_root_residuals(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        for w in (0.2, 1.0, 30.0):
            for k in system.spatial_roots(w):
                res = abs(np.linalg.det(system.matrix(w, k)))
                assert res <= 1e-8 * system.residual_scale(w, k)

    def test_low_frequency_acoustic_limit(self):
        system = DispersionSystem(generic_coeffs(), 3.0)
        w = 1e-4
        forward = [k for k in system.spatial_roots(w) if k.real > 0]
        best = max(forward, key=lambda k: k.real / (abs(k.imag) + 1e-300))
        assert w / best.real == pytest.approx(math.sqrt(4.0 / 3.0), rel=1e-4)

    def test_zero_frequency_rejected(self):
        with pytest.raises(SolverError, match="degenerates"):
            DispersionSystem(generic_coeffs(), 2.0).spatial_roots(0.0)

    def test_reduced_set_drops_to_four_roots(self, n2):
        cs = reduced_model_for_species(n2, kn=1.0)
        roots = DispersionSystem(cs, n2.delta).spatial_roots(1.0)
        assert len(roots) == 4


class TestStability:
    def grids(self, n=40):
        return np.linspace(0.0, 100.0, n), np.linspace(2.5, 100.0, n)

    @pytest.mark.parametrize("tag", ["model1", "model2", "model3", "model4", "reduced"])
    def test_ch4_fixture_stable_all_models(self, ch4, tag):
        builders = {
            "model1": model1_coefficients,
            "model2": model2_coefficients,
            "model3": model3_coefficients,
            "model4": model4_coefficients,
            "reduced": reduced_model_for_species,
        }
        cs = builders[tag](ch4, kn=1.0)
        k_grid, w_grid = self.grids()
        rep = stability_report(cs, ch4.delta, k_grid, w_grid)
        assert rep.temporal_ok, rep
        assert rep.spatial_ok, rep

    def test_fast_exchange_remains_stable(self):
        cs = CoefficientSet(1.0, 0.0, 0.4, 1.0, 1e6, "model4")
        k_grid, w_grid = self.grids(25)
        rep = stability_report(cs, 2.0, k_grid, w_grid)
        assert rep.temporal_ok and rep.spatial_ok

    def test_indefinite_zeta_counterexample_flagged(self):
        """zeta12^2 > zeta11*zeta22 breaks the entropy structure and the sweep sees it."""
        cs = CoefficientSet(0.2, 1.0, 0.2, 0.5, 0.5, "model4")
        rep = stability_report(cs, 2.0, np.linspace(0, 10, 25), np.linspace(0.4, 10, 25))
        assert not rep.temporal_ok
        assert not rep.spatial_ok
        assert rep.worst_margin < -1.0

    def test_empty_grid_rejected(self):
        with pytest.raises(SolverError):
            stability_report(generic_coeffs(), 2.0, [], [1.0])


class TestReducedEquivalence:
    def test_reduced_variable_system_same_roots(self, ch4):
        """The (rho, v, theta, vartheta) formulation is an exact change of variables."""
        cs = reduced_model_for_species(ch4, kn=0.8)
        system = DispersionSystem(cs, ch4.delta)
        for k in (0.3, 1.0, 5.0):
            full = system.temporal_roots(k)
            # independent oracle: interpolate det B on 5 points, take companion roots
            ws = 3.0 * np.exp(2j * np.pi * np.arange(5) / 5)
            vals = [np.linalg.det(reduced_variable_matrix(cs, ch4.delta, w, k)) for w in ws]
            coef = np.linalg.solve(np.vander(ws, 5, increasing=True), vals)
            other = np.roots(coef[::-1])
            assert match_sets(full, other) < 1e-8


class TestNsfBaseline:
    def test_cubic_in_omega(self):
        nsf = NsfDispersion(1.0, 2.0, 2.0)
        roots = nsf.temporal_roots(1.0)
        assert len(roots) == 3

    def test_ideal_sound_speed(self):
        nsf = NsfDispersion(1e-9, 1e-9, 2.0)
        roots = nsf.temporal_roots(1.0)
        speeds = sorted(r.real for r in roots)
        c0 = math.sqrt(1.4)
        assert speeds[0] == pytest.approx(-c0, rel=1e-6)
        assert speeds[2] == pytest.approx(c0, rel=1e-6)

    def test_spatial_pairs(self):
        nsf = NsfDispersion(0.5, 1.0, 2.0)
        roots = nsf.spatial_roots(2.0)
        assert len(roots) == 4
        assert match_sets(roots, -roots) == 0.0

    def test_bulk_viscosity_adds_damping(self):
        w = 0.5
        plain = NsfDispersion(0.5, 1.0, 2.0).spatial_roots(w)
        bulk = NsfDispersion(0.5, 1.0, 2.0, bulk_viscosity=1.0).spatial_roots(w)
        damp = lambda roots: min(-k.imag for k in roots if k.real > 0)
        assert damp(bulk) > damp(plain)


class TestModeRoot:
    def test_temporal_conventions(self):
        m = ModeRoot(omega=1.0 + 0.25j, k=2.0, kind="temporal")
        assert m.phase_velocity == pytest.approx(0.5)
        assert m.damping == pytest.approx(0.25)

    def test_spatial_conventions(self):
        m = ModeRoot(omega=1.0, k=0.8 - 0.1j, kind="spatial")
        assert m.phase_velocity == pytest.approx(1.25)
        assert m.damping == pytest.approx(0.1)
