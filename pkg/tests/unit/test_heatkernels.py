# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

Unit tests for heat kernels on the circle, the line and the half line.
"""

import math
from unittest.mock import patch

import numpy as np
import pytest
from scipy import integrate

from magtm.core import CertificationError, ConvergenceError, DomainError, ParameterError
from magtm.heatkernels import (
    KernelTruncation,
    TaParams,
    default_eps,
    dirichlet_form,
    fit_comparison_constant,
    fit_fourier_constant,
    heat_halfline_hardy,
    heat_line,
    heat_s1,
    heat_s1_poisson,
    heat_s1_spectral,
    heat_ta,
    ta_comparison,
    ta_difference,
    ta_fourier_bounds,
    ta_quadratic_form,
    verify_comparison,
)
from magtm.performance import perf_monitor

ANGLES = np.linspace(-math.pi, math.pi, 64, endpoint=False)


class TestCircleHeatKernel:
    """Test the two representations of the circle heat kernel."""

    @pytest.mark.parametrize("t", [0.01, 0.1, 1.0, 10.0])
    def test_spectral_equals_poisson(self, t):
        diff = np.abs(heat_s1_spectral(t, ANGLES) - heat_s1_poisson(t, ANGLES))
        assert diff.max() <= 1e-12

    @pytest.mark.parametrize("t", [0.05, 1.0, 4.0])
    def test_unit_mass(self, t):
        mass = heat_s1(t, ANGLES).mean() * 2.0 * math.pi
        assert mass == pytest.approx(1.0, rel=1e-12)

    def test_positive_and_periodic(self):
        values = heat_s1(0.3, ANGLES)
        assert (values > 0).all()
        assert heat_s1(0.3, 0.4) == pytest.approx(heat_s1(0.3, 0.4 + 2.0 * math.pi), rel=1e-13)

    def test_scalar_in_scalar_out(self):
        assert isinstance(heat_s1_spectral(1.0, 0.5), float)
        assert isinstance(heat_s1_poisson(1.0, 0.5), float)

    @pytest.mark.parametrize("t", [0.0, -1.0])
    def test_nonpositive_time_rejected(self, t):
        with pytest.raises(DomainError):
            heat_s1_spectral(t, 0.0)
        with pytest.raises(DomainError):
            heat_line(t, 0.0)

    def test_image_budget_exhausted(self):
        with pytest.raises(ConvergenceError):
            heat_s1_poisson(100.0, 0.0, KernelTruncation(image_max=1))

    def test_truncation_validation(self):
        with pytest.raises(ParameterError):
            KernelTruncation(n_max=0)


class TestLineKernel:
    """Test the free heat kernel on the line."""

    def test_unit_mass(self):
        mass, _ = integrate.quad(lambda x: heat_line(0.7, x), -np.inf, np.inf)
        assert mass == pytest.approx(1.0, rel=1e-10)

    def test_vectorised(self):
        values = heat_line(1.0, np.array([0.0, 1.0]))
        assert values[0] == pytest.approx(1.0 / math.sqrt(4.0 * math.pi))
        assert values[1] == pytest.approx(math.exp(-0.25) / math.sqrt(4.0 * math.pi))


class TestTaParams:
    """Test the perturbed angular operator parameters."""

    def test_validation(self):
        with pytest.raises(ParameterError):
            TaParams(0.6, 0.5)
        with pytest.raises(ParameterError):
            TaParams(0.25, 0.0)

    def test_symbol_nonnegative(self):
        ns = np.arange(-50, 51)
        for a in (0.0, 0.25, 0.5):
            assert (TaParams(a, 0.1).symbol(ns) >= 0).all()

    def test_default_eps(self):
        assert default_eps(0.0, 1.0) == 0.5
        assert default_eps(0.5, 0.01) == pytest.approx(0.26)

    def test_quadratic_form_dominates_scaled_dirichlet(self, rng):
        p = TaParams(0.5, 0.3)
        ns = np.arange(-20, 21)
        ns = ns[ns != 0]
        for _ in range(20):
            coeffs = rng.normal(size=ns.size) + 1j * rng.normal(size=ns.size)
            assert ta_quadratic_form(coeffs, ns, p) >= p.eps1 * dirichlet_form(coeffs, ns) - 1e-12


class TestTaHeatKernel:
    """Test e^{tT_a} and its comparison with the circle heat kernel."""

    def test_zero_flux_is_circle_kernel(self):
        p = TaParams(0.0, 0.5)
        for t in (0.1, 1.0):
            assert np.abs(heat_ta(t, ANGLES, p) - heat_s1_spectral(t, ANGLES)).max() <= 1e-13

    def test_difference_matches_direct_subtraction(self):
        p = TaParams(0.25, default_eps(0.25, 1.0))
        for t in (0.05, 0.5, 3.0):
            direct = heat_ta(t, ANGLES, p) - heat_s1_spectral(t, ANGLES)
            assert np.abs(ta_difference(t, ANGLES, p) - direct).max() <= 1e-12

    def test_comparison_holds_on_held_out_grid(self):
        p = TaParams(0.25, default_eps(0.25, 1.0))
        constant = fit_comparison_constant(p)
        holds, ratio = verify_comparison(p, constant)
        assert holds
        assert ratio <= constant

    def test_comparison_rejects_wide_angle(self):
        with pytest.raises(DomainError):
            ta_comparison(1.0, 4.0, TaParams(0.25, 0.5))

    def test_comparison_fields(self):
        result = ta_comparison(1.0, 0.5, TaParams(0.25, 0.5))
        assert result.diff >= 0
        assert result.envelope == pytest.approx(2.0 * math.exp(-TaParams(0.25, 0.5).eps1))


class TestFourierBounds:
    """Test the oscillatory Fourier integral and its bounds."""

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("theta", [0.0, 0.5, 1.0, 2.0])
    def test_zero_flux_gaussian(self, t, theta):
        result = ta_fourier_bounds(t, theta, TaParams(0.0, 0.5))
        exact = math.sqrt(math.pi / t) * math.exp(-theta * theta / (4.0 * t))
        assert result.integral == pytest.approx(exact, rel=1e-8)

    def test_first_bound_holds(self):
        p = TaParams(0.25, default_eps(0.25, 1.0))
        for t in (0.1, 1.0, 5.0):
            for theta in (0.0, 0.3, 3.0):
                result = ta_fourier_bounds(t, theta, p)
                assert abs(result.integral) <= result.bound1

    def test_fitted_second_bound_is_checked(self):
        p = TaParams(0.25, 0.5)
        constant = fit_fourier_constant(p, ts=[1.0], thetas=[10.0])

        result = ta_fourier_bounds(1.0, 10.0, p, constant=constant)

        assert abs(result.integral) <= constant * result.bound2

    def test_violated_second_bound_raises(self):
        with pytest.raises(CertificationError):
            ta_fourier_bounds(1.0, 1.0, TaParams(0.25, 0.5), constant=1e-12)

    def test_first_bound_violation_raises(self):
        # a sign flip in the exponent makes the integrand grow past the bound
        with patch("magtm.heatkernels._sigma", lambda xi, p: -xi * xi):
            with pytest.raises(CertificationError):
                ta_fourier_bounds(1.0, 0.0, TaParams(0.25, 0.5))

    def test_second_bound_infinite_at_zero_angle(self):
        assert ta_fourier_bounds(1.0, 0.0, TaParams(0.25, 0.5)).bound2 == math.inf

    def test_fitted_constant_is_cached(self):
        p = TaParams(0.25, 0.5)
        first = fit_fourier_constant(p, ts=[0.5, 1.0], thetas=[1.0, 2.0])
        hits = perf_monitor.metrics["cache_hits"]
        second = fit_fourier_constant(p, ts=[0.5, 1.0], thetas=[1.0, 2.0])
        assert first == second
        assert math.isfinite(first) and first > 0
        assert perf_monitor.metrics["cache_hits"] == hits + 1


class TestHalfLineHardyKernel:
    """Test the closed form of the half-line Hardy heat kernel."""

    @pytest.mark.parametrize("t,w,wp", [(0.5, 1.0, 1.5), (2.0, 0.3, 4.0), (0.1, 3.0, 3.2)])
    def test_matches_angular_integral(self, t, w, wp):
        def integrand(v):
            return math.exp(-(w * w + wp * wp - 2.0 * w * wp * math.cos(v)) / (4.0 * t))

        angular, _ = integrate.quad(integrand, 0.0, 2.0 * math.pi, epsabs=1e-14, epsrel=1e-12)
        expected = math.sqrt(w * wp) / (4.0 * math.pi * t) * angular
        assert heat_halfline_hardy(t, w, wp) == pytest.approx(expected, rel=1e-10)

    def test_symmetric(self):
        assert heat_halfline_hardy(0.7, 1.0, 2.0) == pytest.approx(heat_halfline_hardy(0.7, 2.0, 1.0))

    def test_requires_positive_points(self):
        with pytest.raises(DomainError):
            heat_halfline_hardy(1.0, 0.0, 1.0)
