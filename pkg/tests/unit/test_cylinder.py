# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

Unit tests for cylinder grids, fields and quadratic forms.
"""

import math

import numpy as np
import pytest

from magtm.core import BoundarySupportError, DomainError, GridError, ParameterError, ZeroFieldError
from magtm.cylinder import (
    CylinderGrid,
    CylinderPoint,
    MagneticParams,
    SampledField,
    ball_hardy_energy,
    decompose,
    energy_form,
    gauge_shift,
    hardy_quotient,
    l2_norm_squared,
    lp_integral,
    magnetic_energy,
    modewise_energy,
    plane_to_sphere_height,
    reconstruct,
    reduce_angle,
    sphere_jacobian,
    sphere_to_plane_radius,
    superlevel_measure,
    tm_functional,
)


def random_band_limited(grid, rng, max_mode=3):
    """Sum of Gaussian profiles times e^{in theta}, |n| <= max_mode, centred in [-2, 2]."""
    w, theta = grid.mesh()
    values = np.zeros_like(w, dtype=complex)
    for n in range(-max_mode, max_mode + 1):
        c = complex(rng.normal(), rng.normal())
        centre = rng.uniform(-2.0, 2.0)
        values += c * np.exp(-(w - centre) ** 2) * np.exp(1j * n * theta)
    return SampledField(grid, values)


class TestGrid:
    """Test grid construction and quadrature weights."""

    def test_weights_integrate_constants(self, small_grid):
        assert small_grid.weights.sum() == pytest.approx(16.0 * 2.0 * math.pi, rel=1e-14)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(w_min=1.0, w_max=1.0, n_w=10, n_theta=8),
            dict(w_min=0.0, w_max=1.0, n_w=1, n_theta=8),
            dict(w_min=0.0, w_max=1.0, n_w=10, n_theta=7),
            dict(w_min=-1.0, w_max=1.0, n_w=10, n_theta=8, half_line=True),
        ],
    )
    def test_invalid_grids(self, kwargs):
        with pytest.raises(GridError):
            CylinderGrid(**kwargs)

    def test_theta_nodes_start_at_minus_pi(self):
        grid = CylinderGrid(0.0, 1.0, 3, 4)
        np.testing.assert_allclose(grid.theta_nodes, [-math.pi, -math.pi / 2, 0.0, math.pi / 2])

    def test_reduce_angle(self):
        assert reduce_angle(math.pi) == pytest.approx(-math.pi)
        assert reduce_angle(3.0 * math.pi / 2) == pytest.approx(-math.pi / 2)
        assert CylinderPoint(0.0, 2.0 * math.pi + 0.1).theta == pytest.approx(0.1)


class TestSampledField:
    """Test field containers."""

    def test_shape_mismatch(self, small_grid):
        with pytest.raises(GridError):
            SampledField(small_grid, np.zeros((3, 3)))

    def test_values_are_copied_and_frozen(self):
        grid = CylinderGrid(0.0, 1.0, 3, 2)
        source = np.zeros((3, 2))
        field = SampledField(grid, source)
        source[0, 0] = 5.0
        assert field.values[0, 0] == 0.0
        with pytest.raises(ValueError):
            field.values[0, 0] = 1.0


class TestModes:
    """Test the angular Fourier decomposition."""

    def test_single_mode(self, small_grid):
        field = SampledField.from_function(
            small_grid, lambda w, th: np.exp(-w * w) * np.exp(2j * th)
        )
        modes = decompose(field)
        assert modes.nonzero_modes() == [2]
        np.testing.assert_allclose(
            modes.mode(2), 2.0 * math.pi * np.exp(-small_grid.w_nodes ** 2), atol=1e-12
        )

    def test_reconstruct_inverts_decompose(self, small_grid, rng):
        field = random_band_limited(small_grid, rng)
        back = reconstruct(decompose(field))
        np.testing.assert_allclose(back.values, field.values, atol=1e-12)

    def test_unresolved_mode(self, small_grid):
        modes = decompose(SampledField.zeros(small_grid))
        with pytest.raises(GridError):
            modes.mode(100)


class TestEnergy:
    """Test the magnetic quadratic form."""

    def test_gaussian_closed_form(self):
        grid = CylinderGrid(-10.0, 10.0, 1001, 4)
        field = SampledField.from_function(grid, lambda w, th: np.exp(-w * w) + 0 * th)
        a, lam = 0.25, 1.5
        expected = 2.0 * math.pi * math.sqrt(math.pi / 2.0) * (1.0 + a * a + lam)
        assert energy_form(field, a, lam) == pytest.approx(expected, rel=1e-5)

    def test_modewise_matches_pointwise(self, small_grid, rng):
        p = MagneticParams(0.3, 0.7)
        for _ in range(5):
            field = random_band_limited(small_grid, rng)
            assert modewise_energy(decompose(field), p) == pytest.approx(
                magnetic_energy(field, p), rel=1e-12
            )

    @pytest.mark.parametrize("a", [0.0, 0.1, 0.25, 0.5])
    def test_hardy_quotient_lower_bound(self, small_grid, rng, a):
        for _ in range(50):
            field = random_band_limited(small_grid, rng, max_mode=4)
            assert hardy_quotient(field, a) >= a * a - 1e-6

    def test_zero_field_quotient(self, small_grid):
        with pytest.raises(ZeroFieldError):
            hardy_quotient(SampledField.zeros(small_grid), 0.25)

    def test_boundary_support_enforced(self, small_grid):
        ones = SampledField.from_function(small_grid, lambda w, th: np.ones_like(w))
        with pytest.raises(BoundarySupportError):
            energy_form(ones, 0.0, 1.0)

    def test_gauge_shift_moves_flux(self, small_grid, rng):
        field = random_band_limited(small_grid, rng)
        shifted = gauge_shift(field)
        assert energy_form(shifted, 1.25, 0.5) == pytest.approx(energy_form(field, 0.25, 0.5), rel=1e-12)

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            MagneticParams(0.7, 1.0)
        with pytest.raises(ParameterError):
            MagneticParams(0.0, -1.0)
        with pytest.raises(ParameterError):
            MagneticParams(0.2, 1.0, beta=0.0)


class TestIntegrals:
    """Test L^p integrals, the exponential functional and level sets."""

    def test_norms(self):
        grid = CylinderGrid(-10.0, 10.0, 2001, 4)
        field = SampledField.from_function(grid, lambda w, th: np.exp(-w * w) + 0 * th)
        assert l2_norm_squared(field) == pytest.approx(2.0 * math.pi * math.sqrt(math.pi / 2.0), rel=1e-10)
        assert lp_integral(field, 4.0) == pytest.approx(2.0 * math.pi * math.sqrt(math.pi / 4.0), rel=1e-10)

    def test_tm_of_zero_field(self, small_grid):
        assert tm_functional(SampledField.zeros(small_grid), 4.0 * math.pi) == (0.0, False)

    def test_tm_overflow_reported(self, small_grid):
        big = SampledField.from_function(small_grid, lambda w, th: 30.0 * np.exp(-w * w) + 0 * th)
        result = tm_functional(big, 4.0 * math.pi)
        assert result.overflowed
        assert result.value == math.inf

    def test_level_set_bound(self, small_grid, rng):
        p = MagneticParams(0.25, 2.0)
        for _ in range(10):
            field = random_band_limited(small_grid, rng)
            unit = field.scaled(1.0 / math.sqrt(magnetic_energy(field, p)))
            assert superlevel_measure(unit, 1.0) <= 1.0 / p.lam


class TestBallForm:
    """Test the Hardy-weighted half-line form."""

    def test_below_plain_energy_and_nonnegative(self):
        grid = CylinderGrid(0.0, 10.0, 1001, 8, half_line=True)
        field = SampledField.from_function(
            grid, lambda w, th: np.exp(-2.0 * (w - 4.0) ** 2) * (1 + 0.5 * np.cos(th))
        )
        p = MagneticParams(0.25, 0.5)
        ball = ball_hardy_energy(field, p)
        assert 0.0 <= ball < magnetic_energy(field, p)

    def test_needs_half_line_grid(self, small_grid):
        with pytest.raises(GridError):
            ball_hardy_energy(SampledField.zeros(small_grid), MagneticParams(0.0, 1.0))


class TestSphereMap:
    """Test the sphere-to-plane change of variables."""

    def test_round_trip(self):
        t = np.linspace(-0.9, 0.9, 7)
        np.testing.assert_allclose(plane_to_sphere_height(sphere_to_plane_radius(t)), t, atol=1e-14)

    def test_jacobian_matches_difference_quotient(self):
        t, h = 0.3, 1e-6
        numeric = (sphere_to_plane_radius(t + h) - sphere_to_plane_radius(t - h)) / (2 * h)
        assert sphere_jacobian(t) == pytest.approx(numeric, rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            sphere_to_plane_radius(1.0)
        with pytest.raises(DomainError):
            plane_to_sphere_height(0.0)
