# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

sharpness.py - Sharp Constant Drivers
Purpose: Reproduce the sharp constants numerically: the 4 pi threshold through
Moser bumps, the closed-form Hardy-Sobolev constant mu_p and its extremal, the
8 pi e limit of p mu_p and the mode-wise domination gap.

Scales delta are accepted in log-space (log_delta = ln delta) wherever the
asymptotics only show at ln(1/delta) of several hundred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from magtm.core import (
    ContextLogger,
    InvariantViolation,
    ParameterError,
    RegimeError,
    ZeroFieldError,
)
from magtm.cylinder import (
    CylinderGrid,
    SampledField,
    TMResult,
    energy_form,
    lp_integral,
    reduce_angle,
)
from magtm.performance import timeit
from magtm.quadrature import integrate_1d
from magtm.specfun import gamma

FOUR_PI = 4.0 * math.pi
EIGHT_PI_E = 8.0 * math.pi * math.e

DEFAULT_DELTAS = (1e-3, 1e-6, 1e-12, 1e-24, 1e-48, 1e-96, 1e-192)
DEFAULT_PS = (1e2, 1e3, 1e4)
TM_LOG_DELTAS = (-5.0, -50.0, -500.0)
_MAX_LOG_FLOAT = math.log(np.finfo(float).max)

context_log = ContextLogger("magtm.sharpness")


def _log_delta(delta: Optional[float], log_delta: Optional[float]) -> float:
    if log_delta is not None:
        if not log_delta < 0:
            raise ParameterError(f"log_delta must be negative, got {log_delta}")
        return float(log_delta)
    if delta is None or not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    return math.log(delta)


# ============================================================================
# Moser bumps
# ============================================================================


@dataclass(frozen=True)
class MoserBump:
    """
    Truncated logarithm centred at (center_w, 0):
    -ln delta for r <= delta, -ln r for delta < r < 1, 0 for r >= 1.
    """

    delta: float
    center_w: float = 0.0
    lambda_norm: float = 0.0

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta}")

    def values(self, w, theta):
        r = np.hypot(np.asarray(w, dtype=float) - self.center_w, reduce_angle(theta))
        inner = -math.log(self.delta)
        with np.errstate(divide="ignore"):
            ring = -np.log(np.maximum(r, self.delta))
        return np.where(r < 1.0, np.minimum(ring, inner), 0.0)

    @property
    def energy(self) -> float:
        return moser_energy_closed(self.delta, self.lambda_norm)

    def normalized(self, w, theta):
        return self.values(w, theta) / math.sqrt(self.energy)

    def sample(self, grid: CylinderGrid, normalized: bool = False) -> SampledField:
        func = self.normalized if normalized else self.values
        return SampledField.from_function(grid, func)


def moser_energy_log(log_delta: float, lam: float) -> float:
    """Closed-form bump energy with ln delta given directly."""
    d2 = math.exp(2.0 * log_delta)
    return -2.0 * math.pi * log_delta + lam * math.pi * (0.5 - 0.5 * d2 + d2 * log_delta)


def moser_energy_closed(delta: float, lam: float) -> float:
    """-2 pi ln delta + lam pi (1/2 - delta^2/2 + delta^2 ln delta)."""
    return moser_energy_log(_log_delta(delta, None), lam)


def moser_energy_quadrature(delta: float, lam: float) -> float:
    """The bump energy by 2-D quadrature in polar coordinates around the centre."""
    log_d = _log_delta(delta, None)
    two_pi = 2.0 * math.pi

    disk, _ = integrate.dblquad(
        lambda r, phi: lam * log_d * log_d * r,
        0.0, two_pi, 0.0, delta, epsabs=1e-13, epsrel=1e-11,
    )
    ring, _ = integrate.dblquad(
        lambda r, phi: (1.0 / (r * r) + lam * math.log(r) ** 2) * r,
        0.0, two_pi, delta, 1.0, epsabs=1e-13, epsrel=1e-11,
    )
    return disk + ring


def moser_energy_ball(delta: Optional[float], lam: float, center_w: float, a: float = 0.0,
                      *, log_delta: Optional[float] = None) -> float:
    """
    Hardy-weighted energy of a bump centred at w = center_w > 1 on the half
    line: the bump energy at lam + a^2 minus (1/4) int u^2/w^2.
    """
    if not center_w > 1:
        raise ParameterError(f"bump must sit inside w > 0, need center_w > 1, got {center_w}")
    log_d = _log_delta(delta, log_delta)
    c = center_w
    c2 = c * c

    # int_0^{2pi} dphi/(c + r cos phi)^2 = 2 pi c/(c^2 - r^2)^{3/2}
    d2 = math.exp(2.0 * log_d)
    root = math.sqrt(c2 - d2)
    disk = log_d * log_d * 2.0 * math.pi * c * d2 / (c * root * (c + root))

    def ring_integrand(s):
        r2 = math.exp(-2.0 * s)
        return s * s * 2.0 * math.pi * c * r2 / (c2 - r2) ** 1.5

    ring, _ = integrate_1d(ring_integrand, 0.0, -log_d, epsabs=1e-14, epsrel=1e-11,
                           label="ball Hardy term")
    return moser_energy_log(log_d, lam + a * a) - 0.25 * (disk + ring)


# ============================================================================
# 4 pi threshold
# ============================================================================


def _threshold(log_d: float, energy: float, cap: float) -> float:
    # ln(C/(pi delta^2) + 1)
    log_term = math.log(cap / math.pi) - 2.0 * log_d + math.log1p(math.pi * math.exp(2.0 * log_d) / cap)
    return log_term * energy / (log_d * log_d)


def sharpness_threshold(delta: Optional[float], lam: float, cap: float, *,
                        log_delta: Optional[float] = None) -> float:
    """ln(C/(pi delta^2) + 1) E(delta)/ln^2 delta, which tends to 4 pi as delta -> 0+."""
    if not cap > 0:
        raise ParameterError(f"cap must be positive, got {cap}")
    log_d = _log_delta(delta, log_delta)
    return _threshold(log_d, moser_energy_log(log_d, lam), cap)


def ball_sharpness_threshold(delta: Optional[float], lam: float, cap: float, center_w: float,
                             a: float = 0.0, *, log_delta: Optional[float] = None) -> float:
    if not cap > 0:
        raise ParameterError(f"cap must be positive, got {cap}")
    log_d = _log_delta(delta, log_delta)
    return _threshold(log_d, moser_energy_ball(None, lam, center_w, a, log_delta=log_d), cap)


@timeit
def threshold_scan(lam: float, cap: float, deltas=DEFAULT_DELTAS, log_deltas=None) -> list:
    """Rows (delta, log_delta, beta_bound, gap_to_4pi) with the relative gap."""
    logs = list(log_deltas) if log_deltas is not None else [_log_delta(d, None) for d in deltas]
    rows = []
    for log_d in logs:
        beta = sharpness_threshold(None, lam, cap, log_delta=log_d)
        rows.append({
            "delta": math.exp(log_d),
            "log_delta": log_d,
            "beta_bound": beta,
            "gap_to_4pi": (beta - FOUR_PI) / FOUR_PI,
        })
    return rows


# ============================================================================
# Trudinger-Moser blow-up
# ============================================================================


def bump_tm_value(delta: Optional[float], beta: float, lam: float, *,
                  log_delta: Optional[float] = None) -> TMResult:
    """
    int (e^{beta u^2} - 1) for the energy-normalized bump, reduced to one radial
    integral in s = -ln r.

    Both pieces are evaluated with the largest exponent factored out; overflow
    is reported only when the total itself does not fit in a float.
    """
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    log_d = _log_delta(delta, log_delta)
    depth = -log_d
    energy = moser_energy_log(log_d, lam)
    slope = beta / energy
    # slope s^2 - 2s is convex: its maximum on [0, depth] sits at an end
    shift = max(slope * depth * depth - 2.0 * depth, 0.0)
    if shift >= _MAX_LOG_FLOAT:
        context_log.warning("TM value overflowed", beta=beta, log_delta=log_d)
        return TMResult(math.inf, True)

    # (e^{beta ln^2 delta/E} - 1) pi delta^2, times e^{-shift}
    disk = math.pi * (
        math.exp(slope * depth * depth - 2.0 * depth - shift) - math.exp(-2.0 * depth - shift)
    )

    def ring_integrand(s):
        quad_part = slope * s * s
        if quad_part < 1.0:
            return 2.0 * math.pi * math.exp(-2.0 * s - shift) * math.expm1(quad_part)
        return 2.0 * math.pi * (math.exp(quad_part - 2.0 * s - shift) - math.exp(-2.0 * s - shift))

    points = [min(depth, 1.0 / slope)]
    edge_rate = 2.0 * slope * depth - 2.0
    if edge_rate > 0:
        points.append(depth - 40.0 / edge_rate)
    ring, _ = integrate_1d(ring_integrand, 0.0, depth, epsabs=1e-14 * math.exp(-shift), epsrel=1e-10,
                           points=points, label="TM radial integral")

    scaled = disk + ring
    if scaled > 0 and math.log(scaled) + shift >= _MAX_LOG_FLOAT:
        context_log.warning("TM value overflowed", beta=beta, log_delta=log_d)
        return TMResult(math.inf, True)
    return TMResult(scaled * math.exp(shift), False)


def tm_disk_lower_bound(delta: Optional[float], beta: float, lam: float, *,
                        log_delta: Optional[float] = None) -> float:
    """(e^{beta ln^2 delta / E(delta)} - 1) pi delta^2."""
    log_d = _log_delta(delta, log_delta)
    energy = moser_energy_log(log_d, lam)
    return math.pi * (math.exp(beta * log_d * log_d / energy + 2.0 * log_d) - math.exp(2.0 * log_d))


@timeit
def tm_blowup_scan(beta: float, lam: float, deltas=None, *, log_deltas=None) -> list:
    """TM functional of the normalized bump along a scale sequence."""
    if log_deltas is None:
        if deltas is None:
            raise ParameterError("tm_blowup_scan needs deltas or log_deltas")
        log_deltas = [_log_delta(d, None) for d in deltas]
    return [bump_tm_value(None, beta, lam, log_delta=ld) for ld in log_deltas]


# ============================================================================
# Hardy-Sobolev constant
# ============================================================================


@dataclass(frozen=True)
class HardySobolevParams:
    p: float
    a: float
    lam: float

    def __post_init__(self):
        if not self.p > 2:
            raise ParameterError(f"p must exceed 2, got {self.p}")
        if not 0 <= self.a <= 0.5:
            raise ParameterError(f"a must lie in [0, 1/2], got {self.a}")
        if not self.lam + self.a * self.a > 0:
            raise ParameterError("need lambda + a^2 > 0")

    @property
    def k(self) -> float:
        return math.sqrt(self.lam + self.a * self.a)

    @property
    def alpha(self) -> float:
        return 0.5 * (self.p - 2.0) * self.k

    @property
    def lambda_star(self) -> float:
        return 4.0 * (1.0 - 4.0 * self.a * self.a) / (self.p * self.p - 4.0) - self.a * self.a

    @property
    def in_regime(self) -> bool:
        return self.lam <= self.lambda_star


def mu_p_closed(hp: HardySobolevParams) -> float:
    """
    mu_p = (p/2)(2pi)^{1-2/p} (lam + a^2)^{(p+2)/(2p)}
           (2 sqrt(pi) Gamma(q)/((p-2) Gamma(q + 1/2)))^{1-2/p},  q = p/(p-2).
    """
    if not 0 < hp.a < 0.5:
        raise RegimeError(f"closed form needs 0 < a < 1/2, got a={hp.a}")
    if not hp.in_regime:
        raise RegimeError(f"lambda={hp.lam} exceeds lambda_star={hp.lambda_star}")
    p = hp.p
    q = p / (p - 2.0)
    power = 1.0 - 2.0 / p
    shape = 2.0 * math.sqrt(math.pi) * gamma(q) / ((p - 2.0) * gamma(q + 0.5))
    return (
        0.5 * p
        * (2.0 * math.pi) ** power
        * (hp.lam + hp.a * hp.a) ** ((p + 2.0) / (2.0 * p))
        * shape ** power
    )


def _log2cosh(x):
    x = np.abs(x)
    return x + np.log1p(np.exp(-2.0 * x))


def extremal_profile(hp: HardySobolevParams, w):
    """u(w) = (2 cosh(alpha w))^{-2/(p-2)}, i.e. (|x|^alpha + |x|^{-alpha})^{-2/(p-2)}."""
    return np.exp(-2.0 / (hp.p - 2.0) * _log2cosh(hp.alpha * np.asarray(w, dtype=float)))


def extremal_derivative(hp: HardySobolevParams, w):
    w = np.asarray(w, dtype=float)
    return -2.0 / (hp.p - 2.0) * hp.alpha * np.tanh(hp.alpha * w) * extremal_profile(hp, w)


def radial_rayleigh_quotient(u, du, hp: HardySobolevParams) -> float:
    """
    (2pi)^{1-2/p} int (u'^2 + (lam + a^2) u^2) dw / (int |u|^p dw)^{2/p} for a
    radial profile u(w) given with its derivative.
    """
    k2 = hp.lam + hp.a * hp.a

    def whole_line(func):
        left, _ = integrate_1d(func, -np.inf, 0.0, epsabs=1e-15, epsrel=1e-12, label="radial quotient")
        right, _ = integrate_1d(func, 0.0, np.inf, epsabs=1e-15, epsrel=1e-12, label="radial quotient")
        return left + right

    energy = whole_line(lambda w: float(du(w)) ** 2 + k2 * float(u(w)) ** 2)
    norm = whole_line(lambda w: abs(float(u(w))) ** hp.p)
    if norm == 0.0:
        raise ZeroFieldError("radial quotient of the zero profile")
    return (2.0 * math.pi) ** (1.0 - 2.0 / hp.p) * energy / norm ** (2.0 / hp.p)


def extremal_rayleigh_quotient(hp: HardySobolevParams) -> float:
    return radial_rayleigh_quotient(
        lambda w: extremal_profile(hp, w), lambda w: extremal_derivative(hp, w), hp
    )


def extremal_field(hp: HardySobolevParams, half_width: float = 45.0, h: float = 0.01,
                   n_theta: int = 2) -> SampledField:
    """The extremal sampled on [-half_width, half_width] x S^1 (radial, mode 0 only)."""
    n_w = int(round(2.0 * half_width / h)) + 1
    grid = CylinderGrid(-half_width, half_width, n_w, n_theta)
    return SampledField.from_function(grid, lambda w, theta: extremal_profile(hp, w))


def hardy_sobolev_quotient(field: SampledField, hp: HardySobolevParams) -> float:
    """Magnetic energy over (int |u|^p dw dtheta)^{2/p}."""
    norm = lp_integral(field, hp.p)
    if norm == 0.0:
        raise ZeroFieldError("Hardy-Sobolev quotient of the zero field")
    return energy_form(field, hp.a, hp.lam) / norm ** (2.0 / hp.p)


# ============================================================================
# 8 pi e limit
# ============================================================================


def asymptotic_8pie(p: float, lam: float, a: float) -> float:
    """
    p times the mu_p upper bound from the bump with delta = e^{-p/4}:
    16 E e pi^{-2/p} / p, E = pi p/2 + (lam + a^2) pi (1/2 - e^{-p/2}/2 - (p/4) e^{-p/2}).
    """
    if not p > 2:
        raise ParameterError(f"p must exceed 2, got {p}")
    energy = moser_energy_log(-0.25 * p, lam + a * a)
    return 16.0 * energy * math.e * math.pi ** (-2.0 / p) / p


def moser_mu_upper(p: float, lam: float, a: float) -> float:
    """Upper bound for mu_p given by the bump with delta = e^{-p/4}."""
    return asymptotic_8pie(p, lam, a) / p


@timeit
def limit_scan(lam: float, a: float, ps=DEFAULT_PS) -> list:
    """Rows (p, p_ratio, gap_to_8pie) with the relative gap."""
    rows = []
    for p in ps:
        value = asymptotic_8pie(float(p), lam, a)
        rows.append({"p": float(p), "p_ratio": value, "gap_to_8pie": (value - EIGHT_PI_E) / EIGHT_PI_E})
    return rows


# ============================================================================
# Mode-wise domination
# ============================================================================


@dataclass(frozen=True)
class AdmissibleShift:
    a: float
    lam: float
    eps: float
    lam_prime: float

    def __post_init__(self):
        if not 0 <= self.a <= 0.5:
            raise InvariantViolation(f"a must lie in [0, 1/2], got {self.a}")
        if not self.eps > 0:
            raise InvariantViolation(f"eps must be positive, got {self.eps}")
        if self.a > 0 and not self.eps < (self.lam + self.a * self.a) / self.a:
            raise InvariantViolation("need eps < (lambda + a^2)/a")
        if not 0 < self.lam_prime < self.lambda_prime_max:
            raise InvariantViolation(
                f"lambda' must lie in (0, {self.lambda_prime_max}), got {self.lam_prime}"
            )

    @property
    def lambda_prime_max(self) -> float:
        return self.lam + self.a * self.a - self.a * self.eps


class DominationGap(NamedTuple):
    min_gap: float
    argmin: int
    tail_bound: float


def _gap(shift: AdmissibleShift, n: np.ndarray) -> np.ndarray:
    # n^2/sqrt(n^2+eps) - n, written without cancellation for large n
    root = np.sqrt(n * n + shift.eps)
    pos = -n * shift.eps / (root * (n + root))
    neg = n * n / root - n
    excess = np.where(n > 0, pos, neg)
    return shift.a ** 2 + 2.0 * shift.a * excess + shift.lam - shift.lam_prime


@timeit
def mode_domination_scan(shift: AdmissibleShift, n_max: int = 10 ** 6) -> DominationGap:
    n = np.arange(-n_max, n_max + 1, dtype=float)
    gaps = _gap(shift, n)
    k = int(np.argmin(gaps))
    # n > n_max: g(n) >= a^2 + lam - lam' - a eps / n_max
    tail = shift.a ** 2 + shift.lam - shift.lam_prime - shift.a * shift.eps / n_max
    return DominationGap(min_gap=float(min(gaps[k], tail)), argmin=int(n[k]), tail_bound=tail)


def mode_domination(shift: AdmissibleShift, n_max: int = 10 ** 6) -> float:
    """min over n of a^2 + 2a(n^2/sqrt(n^2+eps) - n) + lam - lam'."""
    return mode_domination_scan(shift, n_max).min_gap


__all__ = [
    "FOUR_PI",
    "EIGHT_PI_E",
    "DEFAULT_DELTAS",
    "DEFAULT_PS",
    "TM_LOG_DELTAS",
    "MoserBump",
    "moser_energy_closed",
    "moser_energy_log",
    "moser_energy_quadrature",
    "moser_energy_ball",
    "sharpness_threshold",
    "ball_sharpness_threshold",
    "threshold_scan",
    "bump_tm_value",
    "tm_disk_lower_bound",
    "tm_blowup_scan",
    "HardySobolevParams",
    "mu_p_closed",
    "extremal_profile",
    "extremal_derivative",
    "radial_rayleigh_quotient",
    "extremal_rayleigh_quotient",
    "extremal_field",
    "hardy_sobolev_quotient",
    "asymptotic_8pie",
    "moser_mu_upper",
    "limit_scan",
    "AdmissibleShift",
    "DominationGap",
    "mode_domination_scan",
    "mode_domination",
]
