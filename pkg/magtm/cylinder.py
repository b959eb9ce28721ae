# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

cylinder.py - Grids, Fields and Quadratic Forms on the Cylinder
Purpose: Sample complex fields on R x S^1 (or (0, inf) x S^1), split them into
angular Fourier modes and evaluate the magnetic energy, Hardy quotients and the
exponential (Trudinger-Moser) functional.

Conventions:
    theta_j = -pi + 2 pi j / n_theta
    u(w, theta) = (1/2pi) sum_n u_n(w) e^{in theta}
    u_n(w) = int u(w, theta) e^{-in theta} d theta
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from magtm.core import (
    BoundarySupportError,
    DomainError,
    GridError,
    ParameterError,
    ZeroFieldError,
    log,
)

_TWO_PI = 2.0 * math.pi

# Fields are "compactly supported" when boundary rows stay below this
SUPPORT_TOL = 1e-12

CONVENTION_VERSION = 1


def reduce_angle(x):
    """Reduce angles into [-pi, pi)."""
    reduced = np.mod(np.asarray(x, dtype=float) + math.pi, _TWO_PI) - math.pi
    if np.ndim(reduced) == 0:
        return float(reduced)
    return reduced


@dataclass(frozen=True)
class CylinderPoint:
    w: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", reduce_angle(self.theta))


@dataclass(frozen=True)
class CylinderGrid:
    """Tensor grid: uniform w nodes including both ends, uniform periodic theta nodes."""

    w_min: float
    w_max: float
    n_w: int
    n_theta: int
    half_line: bool = False

    def __post_init__(self):
        if not self.w_min < self.w_max:
            raise GridError(f"need w_min < w_max, got [{self.w_min}, {self.w_max}]")
        if self.n_w < 2:
            raise GridError(f"n_w must be >= 2, got {self.n_w}")
        if self.n_theta < 2 or self.n_theta % 2:
            raise GridError(f"n_theta must be even and >= 2, got {self.n_theta}")
        if self.half_line and self.w_min < 0:
            raise GridError(f"half-line grid needs w_min >= 0, got {self.w_min}")

    @property
    def h(self) -> float:
        return (self.w_max - self.w_min) / (self.n_w - 1)

    @property
    def w_nodes(self) -> np.ndarray:
        return np.linspace(self.w_min, self.w_max, self.n_w)

    @property
    def theta_nodes(self) -> np.ndarray:
        return -math.pi + _TWO_PI * np.arange(self.n_theta) / self.n_theta

    @property
    def w_weights(self) -> np.ndarray:
        wts = np.full(self.n_w, self.h)
        wts[0] = wts[-1] = 0.5 * self.h
        return wts

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid in w times the uniform periodic rule in theta."""
        return np.outer(self.w_weights, np.full(self.n_theta, _TWO_PI / self.n_theta))

    @property
    def mode_numbers(self) -> np.ndarray:
        return np.rint(np.fft.fftfreq(self.n_theta, d=1.0 / self.n_theta)).astype(int)

    def mesh(self):
        """(W, THETA) arrays of shape (n_w, n_theta)."""
        return np.meshgrid(self.w_nodes, self.theta_nodes, indexing="ij")

    def to_dict(self) -> dict:
        return {
            "w_min": self.w_min,
            "w_max": self.w_max,
            "n_w": self.n_w,
            "n_theta": self.n_theta,
            "half_line": self.half_line,
        }


@dataclass(frozen=True, eq=False)
class SampledField:
    grid: CylinderGrid
    values: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        expected = (self.grid.n_w, self.grid.n_theta)
        if values.shape != expected:
            raise GridError(f"field shape {values.shape} does not match grid {expected}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: CylinderGrid, func) -> "SampledField":
        """Sample func(W, THETA), evaluated on the full mesh at once."""
        w, theta = grid.mesh()
        return cls(grid, func(w, theta))

    @classmethod
    def zeros(cls, grid: CylinderGrid) -> "SampledField":
        return cls(grid, np.zeros((grid.n_w, grid.n_theta), dtype=complex))

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def scaled(self, factor) -> "SampledField":
        return SampledField(self.grid, self.values * factor)


@dataclass(frozen=True, eq=False)
class ModeCoefficients:
    """Radial profiles u_n(w); column k of `profiles` belongs to mode `ns[k]`."""

    grid: CylinderGrid
    ns: np.ndarray
    profiles: np.ndarray = dc_field(repr=False)

    def mode(self, n: int) -> np.ndarray:
        hits = np.flatnonzero(self.ns == n)
        if hits.size == 0:
            raise GridError(f"mode {n} is not resolved by n_theta={self.grid.n_theta}")
        return self.profiles[:, hits[0]]

    def nonzero_modes(self, tol: float = 1e-10):
        peak = np.abs(self.profiles).max(axis=0)
        return sorted(int(n) for n in self.ns[peak > tol])


@dataclass(frozen=True)
class MagneticParams:
    a: float
    lam: float
    beta: float = 4.0 * math.pi

    def __post_init__(self):
        if not 0.0 <= self.a <= 0.5:
            raise ParameterError(f"a must lie in [0, 1/2], got {self.a}")
        if not self.lam + self.a * self.a > 0:
            raise ParameterError(f"need lambda + a^2 > 0, got lambda={self.lam}, a={self.a}")
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")


class TMResult(NamedTuple):
    value: float
    overflowed: bool


# ============================================================================
# Modes
# ============================================================================


def decompose(field: SampledField) -> ModeCoefficients:
    """Angular Fourier coefficients u_n(w) by FFT along theta."""
    grid = field.grid
    ns = grid.mode_numbers
    sign = np.where(ns % 2 == 0, 1.0, -1.0)
    profiles = (_TWO_PI / grid.n_theta) * sign * np.fft.fft(field.values, axis=1)
    return ModeCoefficients(grid=grid, ns=ns, profiles=profiles)


def reconstruct(modes: ModeCoefficients) -> SampledField:
    """Inverse of decompose: u = (1/2pi) sum_n u_n e^{in theta} at the grid nodes."""
    grid = modes.grid
    sign = np.where(modes.ns % 2 == 0, 1.0, -1.0)
    values = grid.n_theta * np.fft.ifft(sign * modes.profiles, axis=1) / _TWO_PI
    return SampledField(grid, values)


# ============================================================================
# Quadratic forms
# ============================================================================


def _d_dw(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order centered difference along axis 0, zero outside the grid."""
    padded = np.zeros((values.shape[0] + 4,) + values.shape[1:], dtype=values.dtype)
    padded[2:-2] = values
    return (-padded[4:] + 8.0 * padded[3:-1] - 8.0 * padded[1:-3] + padded[:-4]) / (12.0 * h)


def _require_support(field: SampledField, leading_rows: int = 1):
    vals = np.abs(field.values)
    edge = max(vals[:leading_rows].max(), vals[-1].max())
    if edge > SUPPORT_TOL:
        raise BoundarySupportError(
            f"field is not compactly supported in the grid (boundary magnitude {edge:.3e})"
        )


def _energy_parts(field: SampledField, a: float):
    """(radial, angular, mass) integrals of the magnetic form."""
    grid = field.grid
    du = _d_dw(field.values, grid.h)
    radial = float(np.sum(grid.weights * np.abs(du) ** 2))

    modes = decompose(field)
    shift = (modes.ns - a) ** 2
    per_mode = grid.w_weights @ (np.abs(modes.profiles) ** 2)
    angular = float(np.sum(shift * per_mode)) / _TWO_PI

    mass = float(np.sum(grid.weights * np.abs(field.values) ** 2))
    return radial, angular, mass


def energy_form(field: SampledField, a: float, lam: float) -> float:
    """
    int |d_w u|^2 + |(d_theta - ia)u|^2 + lam |u|^2 for any real flux a.

    magnetic_energy is the same form restricted to admissible parameters.
    """
    _require_support(field)
    radial, angular, mass = _energy_parts(field, a)
    return radial + angular + lam * mass


def magnetic_energy(field: SampledField, p: MagneticParams) -> float:
    return energy_form(field, p.a, p.lam)


def modewise_energy(modes: ModeCoefficients, p: MagneticParams) -> float:
    """sum_n int (|u_n'|^2 + ((n-a)^2 + lam)|u_n|^2) dw / 2pi."""
    grid = modes.grid
    du = _d_dw(modes.profiles, grid.h)
    derivative = grid.w_weights @ (np.abs(du) ** 2)
    mass = grid.w_weights @ (np.abs(modes.profiles) ** 2)
    total = derivative + ((modes.ns - p.a) ** 2 + p.lam) * mass
    return float(np.sum(total)) / _TWO_PI


def l2_norm_squared(field: SampledField) -> float:
    return float(np.sum(field.weights * np.abs(field.values) ** 2))


def lp_integral(field: SampledField, p: float) -> float:
    """int |u|^p dw dtheta."""
    return float(np.sum(field.weights * np.abs(field.values) ** p))


def hardy_quotient(field: SampledField, a: float) -> float:
    """Magnetic energy at lam = 0 over int |u|^2; bounded below by min_n (n-a)^2."""
    _require_support(field)
    radial, angular, mass = _energy_parts(field, a)
    if mass == 0.0:
        raise ZeroFieldError("Hardy quotient of the zero field")
    return (radial + angular) / mass


def tm_functional(field: SampledField, beta: float) -> TMResult:
    """int (e^{beta |u|^2} - 1) dw dtheta; overflow gives (inf, True)."""
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    with np.errstate(over="ignore"):
        integrand = np.expm1(beta * np.abs(field.values) ** 2)
        value = float(np.sum(field.weights * integrand))
    if not math.isfinite(value):
        log.warning(f"TM functional overflowed at beta={beta}")
        return TMResult(math.inf, True)
    return TMResult(value, False)


def superlevel_measure(field: SampledField, level: float) -> float:
    """Quadrature measure of {|u| >= level}."""
    mask = np.abs(field.values) >= level
    return float(np.sum(field.weights[mask]))


def gauge_shift(field: SampledField, k: int = 1) -> SampledField:
    """
    Multiply by e^{ik theta}. The energy with flux a + k of the result equals
    the energy with flux a of the input (mode n moves to n + k).
    """
    phase = np.exp(1j * k * field.grid.theta_nodes)
    return SampledField(field.grid, field.values * phase[None, :])


def ball_hardy_energy(field: SampledField, p: MagneticParams) -> float:
    """
    Hardy-weighted form on (0, inf) x S^1:
    int |d_w u|^2 - |u|^2/(4w^2) + |(d_theta - ia)u|^2 + lam |u|^2.
    """
    grid = field.grid
    if not grid.half_line:
        raise GridError("ball_hardy_energy needs a half-line grid")
    _require_support(field, leading_rows=2)
    radial, angular, mass = _energy_parts(field, p.a)

    w = grid.w_nodes
    inv_w2 = np.zeros_like(w)
    positive = w > 0
    inv_w2[positive] = 1.0 / (w[positive] ** 2)
    hardy = float(np.sum(grid.weights * (inv_w2[:, None] * np.abs(field.values) ** 2)))
    return radial + angular + p.lam * mass - 0.25 * hardy


# ============================================================================
# Sphere change of variables
# ============================================================================


def sphere_to_plane_radius(t):
    """r = sqrt((1+t)/(1-t)) for heights t in (-1, 1)."""
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= 1.0):
        raise DomainError("sphere height must lie in (-1, 1)")
    r = np.sqrt((1.0 + t) / (1.0 - t))
    return float(r) if r.ndim == 0 else r


def plane_to_sphere_height(r):
    """Inverse map t = (r^2 - 1)/(r^2 + 1) for r > 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("plane radius must be positive")
    t = (r * r - 1.0) / (r * r + 1.0)
    return float(t) if t.ndim == 0 else t


def sphere_jacobian(t):
    """dr/dt = 1/(r (1-t)^2)."""
    r = sphere_to_plane_radius(t)
    return 1.0 / (r * (1.0 - np.asarray(t, dtype=float)) ** 2)


__all__ = [
    "SUPPORT_TOL",
    "CONVENTION_VERSION",
    "reduce_angle",
    "CylinderPoint",
    "CylinderGrid",
    "SampledField",
    "ModeCoefficients",
    "MagneticParams",
    "TMResult",
    "decompose",
    "reconstruct",
    "energy_form",
    "magnetic_energy",
    "modewise_energy",
    "l2_norm_squared",
    "lp_integral",
    "hardy_quotient",
    "tm_functional",
    "superlevel_measure",
    "gauge_shift",
    "ball_hardy_energy",
    "sphere_to_plane_radius",
    "plane_to_sphere_height",
    "sphere_jacobian",
]
