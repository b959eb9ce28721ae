# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

Unit tests for Moser bumps, the 4 pi threshold, the Hardy-Sobolev
constant, the 8 pi e limit and the mode-wise domination gap.
"""

import math

import numpy as np
import pytest

from magtm.core import InvariantViolation, ParameterError, RegimeError, ZeroFieldError
from magtm.cylinder import CylinderGrid, SampledField, tm_functional
from magtm.performance import perf_monitor
from magtm.sharpness import (
    EIGHT_PI_E,
    FOUR_PI,
    AdmissibleShift,
    HardySobolevParams,
    MoserBump,
    asymptotic_8pie,
    ball_sharpness_threshold,
    bump_tm_value,
    extremal_derivative,
    extremal_field,
    extremal_profile,
    extremal_rayleigh_quotient,
    hardy_sobolev_quotient,
    limit_scan,
    mode_domination,
    mode_domination_scan,
    moser_energy_ball,
    moser_energy_closed,
    moser_energy_quadrature,
    moser_mu_upper,
    mu_p_closed,
    radial_rayleigh_quotient,
    sharpness_threshold,
    threshold_scan,
    tm_blowup_scan,
    tm_disk_lower_bound,
)

LOG_1E150 = 150.0 * math.log(1e-1)


@pytest.fixture
def hs_params():
    return HardySobolevParams(p=3.0, a=0.25, lam=0.4)


class TestMoserBump:
    """Test the truncated-logarithm bump"""

    def test_values(self):
        bump = MoserBump(0.01, center_w=2.0)
        assert bump.values(2.0, 0.0) == pytest.approx(-math.log(0.01))
        assert bump.values(2.5, 0.0) == pytest.approx(-math.log(0.5))
        assert bump.values(3.5, 0.0) == 0.0
        assert bump.values(2.0, 2.0 * math.pi + 0.5) == pytest.approx(-math.log(0.5))

    def test_closed_energy_matches_quadrature(self):
        assert moser_energy_closed(0.1, 2.0) == pytest.approx(moser_energy_quadrature(0.1, 2.0), rel=1e-5)

    def test_normalized_bump_has_unit_energy(self):
        bump = MoserBump(0.05, lambda_norm=1.0)
        assert bump.normalized(0.0, 0.0) == pytest.approx(-math.log(0.05) / math.sqrt(bump.energy))

    def test_sample_shape(self, small_grid):
        field = MoserBump(0.1).sample(small_grid)
        assert field.values.shape == (small_grid.n_w, small_grid.n_theta)

    @pytest.mark.parametrize("delta", [0.0, 1.0, -0.5])
    def test_invalid_delta(self, delta):
        with pytest.raises(ParameterError):
            MoserBump(delta)

    def test_ball_energy_below_flat(self):
        flat = moser_energy_closed(1e-3, 1.0)
        assert moser_energy_ball(1e-3, 1.0, 3.0) < flat
        assert moser_energy_ball(1e-3, 1.0, 3.0, a=0.5) > moser_energy_ball(1e-3, 1.0, 3.0)

    def test_ball_needs_interior_centre(self):
        with pytest.raises(ParameterError):
            moser_energy_ball(1e-3, 1.0, 1.0)


class TestThreshold:
    """Test the bump threshold tending to 4 pi"""

    def test_threshold_near_4pi_at_tiny_scale(self):
        beta = sharpness_threshold(None, 1.0, 1.0, log_delta=LOG_1E150)
        assert abs(beta - FOUR_PI) / FOUR_PI < 1e-3

    def test_gap_halves_when_scale_is_squared(self):
        """The relative gap decays like 1/|ln delta|"""
        gap_1 = sharpness_threshold(None, 1.0, 1.0, log_delta=-100.0) / FOUR_PI - 1.0
        gap_2 = sharpness_threshold(None, 1.0, 1.0, log_delta=-200.0) / FOUR_PI - 1.0
        assert gap_2 / gap_1 == pytest.approx(0.5, abs=0.02)

    def test_scan_gap_non_increasing(self):
        rows = threshold_scan(1.0, 1.0)
        gaps = [abs(r["gap_to_4pi"]) for r in rows]
        assert all(b <= a for a, b in zip(gaps, gaps[1:]))
        assert set(rows[0]) == {"delta", "log_delta", "beta_bound", "gap_to_4pi"}

    def test_delta_and_log_delta_agree(self):
        assert sharpness_threshold(1e-6, 1.0, 1.0) == pytest.approx(
            sharpness_threshold(None, 1.0, 1.0, log_delta=math.log(1e-6)), rel=1e-13
        )

    def test_ball_threshold_near_4pi(self):
        beta = ball_sharpness_threshold(None, 1.0, 1.0, 3.0, 0.25, log_delta=LOG_1E150)
        assert abs(beta - FOUR_PI) / FOUR_PI < 2e-3

    def test_invalid_inputs(self):
        with pytest.raises(ParameterError):
            sharpness_threshold(1e-3, 1.0, 0.0)
        with pytest.raises(ParameterError):
            sharpness_threshold(None, 1.0, 1.0, log_delta=0.5)


class TestTMBlowUp:
    """Test the TM functional of normalized bumps"""

    def test_supercritical_values_grow(self):
        # Arrange / Act
        results = tm_blowup_scan(4.1 * math.pi, 1.0, log_deltas=[-5.0, -50.0, -500.0])
        values = [r.value for r in results]

        # Assert
        assert not any(r.overflowed for r in results)
        assert values[0] < values[1] < values[2]
        assert values[2] >= 10.0 * values[1]
        assert values[2] > 1e9

    def test_subcritical_values_stay_bounded(self):
        results = tm_blowup_scan(2.0 * math.pi, 1.0, log_deltas=[-5.0, -50.0, -500.0])
        assert all(r.value < 5.0 for r in results)

    def test_value_dominates_disk_term(self):
        value = bump_tm_value(None, 4.1 * math.pi, 1.0, log_delta=-50.0).value
        assert value >= tm_disk_lower_bound(None, 4.1 * math.pi, 1.0, log_delta=-50.0)

    @pytest.mark.parametrize("beta", [2.0 * math.pi, 4.1 * math.pi, 6.0 * math.pi])
    def test_radial_reduction_matches_grid(self, beta):
        """The exact radial reduction agrees with the sampled TM functional"""
        grid = CylinderGrid(-2.0, 2.0, 801, 512)
        field = MoserBump(0.3, lambda_norm=1.0).sample(grid, normalized=True)

        sampled = tm_functional(field, beta)
        exact = bump_tm_value(0.3, beta, 1.0)

        assert not sampled.overflowed and not exact.overflowed
        assert sampled.value == pytest.approx(exact.value, rel=1e-2)

    def test_deep_scale_is_finite(self):
        """Large intermediate exponents do not flag overflow when the total fits"""
        result = bump_tm_value(None, 4.1 * math.pi, 1.0, log_delta=-500.0)

        assert not result.overflowed
        # the disk term alone is about pi e^{24.5}
        assert result.value >= tm_disk_lower_bound(None, 4.1 * math.pi, 1.0, log_delta=-500.0)
        assert math.isfinite(result.value)

    def test_overflow_is_reported(self):
        result = bump_tm_value(None, 4.1 * math.pi, 1.0, log_delta=-1e5)
        assert result.overflowed
        assert math.isinf(result.value)

    def test_scan_needs_scales(self):
        with pytest.raises(ParameterError):
            tm_blowup_scan(4.1 * math.pi, 1.0)

    def test_scans_are_timed(self):
        tm_blowup_scan(2.0 * math.pi, 1.0, log_deltas=[-5.0])
        threshold_scan(1.0, 1.0, deltas=[1e-3])

        names = [run["name"] for run in perf_monitor.metrics["runs"]]
        assert names == ["tm_blowup_scan", "threshold_scan"]


class TestHardySobolev:
    """Test the closed-form constant against the extremal"""

    def test_closed_form_matches_extremal_quadrature(self, hs_params):
        assert extremal_rayleigh_quotient(hs_params) == pytest.approx(mu_p_closed(hs_params), rel=1e-8)

    def test_closed_form_matches_grid_quotient(self, hs_params):
        field = extremal_field(hs_params)
        assert hardy_sobolev_quotient(field, hs_params) == pytest.approx(mu_p_closed(hs_params), rel=1e-5)

    def test_extremal_is_stationary(self, hs_params):
        """Radial perturbations raise the quotient only to second order"""
        base = extremal_rayleigh_quotient(hs_params)

        def perturbed(t):
            u = lambda w: extremal_profile(hs_params, w) * (1.0 + t * math.exp(-w * w))
            du = lambda w: (
                extremal_derivative(hs_params, w) * (1.0 + t * math.exp(-w * w))
                - 2.0 * t * w * math.exp(-w * w) * extremal_profile(hs_params, w)
            )
            return radial_rayleigh_quotient(u, du, hs_params)

        for t in (-0.1, 0.1):
            assert perturbed(t) >= base * (1.0 - 1e-10)
        assert abs(perturbed(1e-3) - base) < 1e-5 * base

    def test_random_fields_stay_above_constant(self, small_grid, rng, hs_params):
        """50 seeded fields, far below the support tolerance on the grid boundary"""
        mu = mu_p_closed(hs_params)
        w, theta = small_grid.mesh()
        for _ in range(50):
            values = np.zeros_like(w, dtype=complex)
            for n in range(-2, 3):
                c = complex(rng.normal(), rng.normal())
                centre = rng.uniform(-1.5, 1.5)
                width = rng.uniform(0.5, 1.0)
                values += c * np.exp(-((w - centre) / width) ** 2) * np.exp(1j * n * theta)
            field = SampledField(small_grid, values)
            assert hardy_sobolev_quotient(field, hs_params) >= mu - 1e-6

    def test_lambda_star(self, hs_params):
        assert hs_params.lambda_star == pytest.approx(0.5375)
        assert hs_params.in_regime

    @pytest.mark.parametrize(
        "kwargs",
        [dict(p=3.0, a=0.25, lam=0.6), dict(p=3.0, a=0.0, lam=0.4), dict(p=3.0, a=0.5, lam=0.4)],
    )
    def test_outside_regime_raises(self, kwargs):
        with pytest.raises(RegimeError):
            mu_p_closed(HardySobolevParams(**kwargs))

    def test_invalid_params(self):
        with pytest.raises(ParameterError):
            HardySobolevParams(p=2.0, a=0.25, lam=0.4)
        with pytest.raises(ParameterError):
            HardySobolevParams(p=3.0, a=0.75, lam=0.4)

    def test_zero_field_raises(self, hs_params):
        grid = CylinderGrid(-4.0, 4.0, 81, 4)
        with pytest.raises(ZeroFieldError):
            hardy_sobolev_quotient(SampledField.zeros(grid), hs_params)

    def test_bump_bounds_constant_from_above(self, hs_params):
        assert moser_mu_upper(3.0, 0.4, 0.25) >= mu_p_closed(hs_params)


class TestEightPiE:
    """Test p mu_p bounds approaching 8 pi e"""

    def test_close_at_large_p(self):
        assert asymptotic_8pie(1e4, 1.0, 0.25) == pytest.approx(EIGHT_PI_E, rel=1e-2)

    def test_scan_gap_shrinks(self):
        gaps = [abs(r["gap_to_8pie"]) for r in limit_scan(1.0, 0.25)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_flux_raises_bound(self):
        assert asymptotic_8pie(100.0, 1.0, 0.5) > asymptotic_8pie(100.0, 1.0, 0.0)

    def test_invalid_p(self):
        with pytest.raises(ParameterError):
            asymptotic_8pie(2.0, 1.0, 0.25)


class TestModeDomination:
    """Test the mode-wise gap for admissible shifts"""

    def test_random_admissible_shifts_are_dominated(self, rng):
        for _ in range(100):
            # Arrange
            a = rng.uniform(0.0, 0.5)
            lam = rng.uniform(0.1, 2.0)
            eps_max = (lam + a * a) / a if a > 0 else 10.0
            eps = rng.uniform(0.01, 0.99) * min(eps_max, 10.0)
            lam_max = lam + a * a - a * eps
            shift = AdmissibleShift(a, lam, eps, rng.uniform(0.01, 0.99) * lam_max)

            # Act
            gap = mode_domination(shift, n_max=10 ** 4)

            # Assert
            assert gap > 0
            assert gap >= shift.lambda_prime_max - shift.lam_prime - 1e-12

    def test_scan_reports_tail(self):
        shift = AdmissibleShift(0.25, 1.0, 0.5, 0.5)
        scan = mode_domination_scan(shift, n_max=1000)
        assert scan.tail_bound == pytest.approx(0.0625 + 0.5 - 0.25 * 0.5 / 1000)
        assert scan.min_gap <= scan.tail_bound
        assert scan.argmin >= 0

    @pytest.mark.parametrize(
        "args",
        [(0.7, 1.0, 0.5, 0.5), (0.25, 1.0, 0.0, 0.5), (0.25, 1.0, 5.0, 0.5), (0.25, 1.0, 0.5, 2.0)],
    )
    def test_inadmissible_shift_raises(self, args):
        with pytest.raises(InvariantViolation):
            AdmissibleShift(*args)
