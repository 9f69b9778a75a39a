import math
from dataclasses import replace

import numpy as np
import pytest

from twotemp.coefficients import (
    CoefficientSet,
    model1_coefficients,
    model4_coefficients,
    reduced_model_for_species,
)
from twotemp.errors import SolverError
from twotemp.heat1d import (
    HeatCase,
    antisymmetry_check,
    residual_check,
    solve_heat_case,
    solve_heat_fourier,
)

DEV = 0.0476


def n2_case(n2, kn, chi=1.0, model="model4", dev=DEV, chi_lower=None):
    builder = model4_coefficients if model == "model4" else reduced_model_for_species
    cs = builder(n2, kn=kn)
    return HeatCase(kn, chi, n2.delta, -dev, dev, cs, chi_lower=chi_lower)


class TestSolvedProfiles:
    def test_equal_wall_deviations_zero_solution(self, n2):
        cs = model4_coefficients(n2, kn=0.1)
        case = HeatCase(0.1, 1.0, 2.0, 0.0, 0.0, cs)
        prof = solve_heat_case(case)
        assert abs(prof.q_y) < 1e-14
        assert np.max(np.abs(prof.theta)) < 1e-14
        assert np.max(np.abs(prof.rho)) < 1e-14
        assert np.max(np.abs(prof.vartheta)) < 1e-14

    def test_reference_heat_flux_slip_regime(self, n2):
        prof = solve_heat_case(n2_case(n2, 0.071))
        assert prof.q_y == pytest.approx(0.025, rel=0.10)

    def test_reference_heat_flux_transition_regime(self, n2):
        prof = solve_heat_case(n2_case(n2, 0.71))
        assert prof.q_y == pytest.approx(0.084, rel=0.10)

    def test_constant_heat_flux_and_momentum(self, n2):
        case = n2_case(n2, 0.2)
        prof = solve_heat_case(case)
        # q is constant by construction; momentum sum constant pointwise
        total = prof.rho + prof.theta + prof.vartheta
        assert np.ptp(total) < 1e-10
        assert abs(np.trapezoid(prof.rho, prof.y_grid)) < 1e-10

    def test_temperatures_recombine(self, n2):
        prof = solve_heat_case(n2_case(n2, 0.3))
        theta = (3 * prof.theta_tr + 2 * prof.theta_in) / 5.0
        assert np.allclose(theta, prof.theta, atol=1e-14)
        assert np.allclose(prof.theta_tr - prof.theta, prof.vartheta, atol=1e-14)

    def test_heat_flows_from_hot_to_cold(self, n2):
        # hot lower wall (+dev) drives an upward (positive) heat flux
        prof = solve_heat_case(n2_case(n2, 0.071))
        assert prof.q_y > 0.0
        flipped = HeatCase(0.071, 1.0, 2.0, DEV, -DEV, model4_coefficients(n2, kn=0.071))
        assert solve_heat_case(flipped).q_y == pytest.approx(-prof.q_y, rel=1e-12)

    def test_temperature_jump_grows_with_kn(self, n2):
        jumps = []
        for kn in (0.05, 0.1, 0.3, 0.7):
            prof = solve_heat_case(n2_case(n2, kn))
            jumps.append(abs(prof.theta[-1] - case_wall_upper(prof)))
        assert all(a < b for a, b in zip(jumps, jumps[1:]))

    def test_stationary_walls_have_no_flow(self, n2):
        prof = solve_heat_case(n2_case(n2, 0.2), full_system=True)
        assert prof.solution.v0 == pytest.approx(0.0, abs=1e-14)
        assert prof.solution.v1 == pytest.approx(0.0, abs=1e-14)
        assert prof.sigma_xy == pytest.approx(0.0, abs=1e-14)

    def test_full_system_matches_default_path(self, n2):
        case = n2_case(n2, 0.15)
        a = solve_heat_case(case)
        b = solve_heat_case(case, full_system=True)
        assert a.q_y == pytest.approx(b.q_y, rel=1e-12)
        assert np.allclose(a.theta, b.theta, atol=1e-13)


def case_wall_upper(prof):
    return prof.case.wall_temp_upper


class TestResiduals:
    @pytest.mark.parametrize("kn", [0.05, 0.071, 0.3, 0.71])
    @pytest.mark.parametrize("model", ["model4", "reduced"])
    def test_below_tolerance(self, n2, kn, model):
        case = n2_case(n2, kn, model=model)
        prof = solve_heat_case(case)
        assert residual_check(prof, case) <= 1e-8

    def test_model1_case(self, ch4):
        cs = model1_coefficients(ch4, kn=0.1)
        case = HeatCase(0.1, 1.0, 3.0, -0.05, 0.05, cs)
        prof = solve_heat_case(case)
        assert residual_check(prof, case) <= 1e-8

    def test_sensitive_to_perturbed_constants(self, n2):
        case = n2_case(n2, 0.071)
        prof = solve_heat_case(case)
        broken = replace(prof, solution=replace(prof.solution, q0=prof.solution.q0 + 1e-3))
        assert residual_check(broken, case) > 1e-4

    def test_zero_case_zero_residual(self, n2):
        cs = model4_coefficients(n2, kn=0.1)
        case = HeatCase(0.1, 1.0, 2.0, 0.0, 0.0, cs)
        prof = solve_heat_case(case)
        assert residual_check(prof, case) < 1e-14


class TestAntisymmetry:
    def test_opposite_walls_odd_profiles(self, n2):
        case = n2_case(n2, 0.2)
        assert antisymmetry_check(solve_heat_case(case), case)

    def test_unequal_accommodation_breaks_it(self, n2):
        case = n2_case(n2, 0.2, chi_lower=0.5)
        assert not antisymmetry_check(solve_heat_case(case), case)

    def test_zero_walls_trivially_odd(self, n2):
        cs = model4_coefficients(n2, kn=0.2)
        case = HeatCase(0.2, 1.0, 2.0, 0.0, 0.0, cs)
        assert antisymmetry_check(solve_heat_case(case), case)


class TestReducedModel:
    def test_difference_flux_identically_zero(self, n2):
        for kn in (0.071, 0.71):
            case = n2_case(n2, kn, model="reduced")
            prof = solve_heat_case(case)
            assert np.max(np.abs(prof.qdiff_y)) <= 1e-10
            assert np.max(np.abs(prof.vartheta)) <= 1e-12

    def test_reduced_close_to_full_at_small_kn(self, n2):
        full = solve_heat_case(n2_case(n2, 0.071))
        red = solve_heat_case(n2_case(n2, 0.071, model="reduced"))
        assert red.q_y == pytest.approx(full.q_y, rel=0.02)


class TestFourierComparison:
    def test_divergence_grows_with_kn(self, n2):
        """The classical run drifts away from the two-temperature one as Kn grows."""
        gaps = []
        for kn in (0.071, 0.71):
            two_t = solve_heat_case(n2_case(n2, kn))
            lam = n2.conductivity_ratio() * kn
            fourier = solve_heat_fourier(kn, 1.0, 2.0, lam, -DEV, DEV)
            gaps.append(
                np.max(np.abs(two_t.theta - fourier.theta)) / np.max(np.abs(two_t.theta))
            )
        assert gaps[1] > gaps[0]

    def test_fourier_profile_is_linear(self, n2):
        lam = n2.conductivity_ratio() * 0.2
        prof = solve_heat_fourier(0.2, 1.0, 2.0, lam, -DEV, DEV)
        slope = np.diff(prof.theta) / np.diff(prof.y_grid)
        assert np.ptp(slope) < 1e-12


class TestValidation:
    def test_bad_kn(self, n2):
        cs = model4_coefficients(n2, kn=0.1)
        with pytest.raises(SolverError):
            HeatCase(-0.1, 1.0, 2.0, 0.0, 0.0, cs)

    def test_bad_chi(self, n2):
        cs = model4_coefficients(n2, kn=0.1)
        with pytest.raises(SolverError):
            HeatCase(0.1, 0.0, 2.0, 0.0, 0.0, cs)

    def test_exchange_free_coefficients_rejected(self, n2):
        cs = CoefficientSet(1.0, 0.0, 0.4, 0.1, 0.0, "model4")
        case = HeatCase(0.1, 1.0, 2.0, -DEV, DEV, cs)
        with pytest.raises(SolverError, match="layer eigenvalue"):
            solve_heat_case(case)
