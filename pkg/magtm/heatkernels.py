# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

heatkernels.py - Heat Kernels on S^1, for T_a and for the Half-Line Hardy Operator
Purpose: Evaluate the circle heat kernel in its spectral and Poisson-image forms,
the kernel of the perturbed angular operator T_a, and the half-line Hardy heat
kernel; fit and verify the comparison constants between them.

Every truncated sum chooses its length from an analytic tail majorant and
raises ConvergenceError when that length exceeds the configured cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import i0e

from magtm.config import Config
from magtm.core import CertificationError, ContextLogger, ConvergenceError, DomainError, ParameterError
from magtm.cylinder import reduce_angle
from magtm.performance import cached
from magtm.quadrature import integrate_1d

_TWO_PI = 2.0 * math.pi

# Gaussian cutoff exponent for the Fourier integrals
_FOURIER_CUTOFF = 40.0
_BOUND_RTOL = 1e-10

context_log = ContextLogger("magtm.heatkernels")


@dataclass(frozen=True)
class TaParams:
    """Flux a and regularization eps of T_a = -sum (n^2 - 2a n^2/sqrt(n^2+eps)) P_n."""

    a: float
    eps: float

    def __post_init__(self):
        if not 0.0 <= self.a <= 0.5:
            raise ParameterError(f"a must lie in [0, 1/2], got {self.a}")
        if not self.eps > 0:
            raise ParameterError(f"eps must be positive, got {self.eps}")

    @property
    def eps1(self) -> float:
        return 1.0 - 2.0 * self.a / math.sqrt(1.0 + self.eps)

    def symbol(self, n):
        """s(n) = n^2 - 2a n^2/sqrt(n^2 + eps), nonnegative for a <= 1/2."""
        n = np.asarray(n, dtype=float)
        n2 = n * n
        return n2 - 2.0 * self.a * n2 / np.sqrt(n2 + self.eps)


@dataclass(frozen=True)
class KernelTruncation:
    n_max: int = 50000
    image_max: int = 10000
    tail_tol: float = Config.TAIL_TOL

    def __post_init__(self):
        if self.n_max < 1 or self.image_max < 1 or not self.tail_tol > 0:
            raise ParameterError("truncation limits and tail_tol must be positive")


DEFAULT_TRUNCATION = KernelTruncation()


class FourierBounds(NamedTuple):
    bound1: float
    bound2: float
    integral: float


class Comparison(NamedTuple):
    diff: float
    envelope: float


def default_eps(a: float, lam: float) -> float:
    """eps = min(1/2, (lam + a^2)/(2a)); 1/2 when a = 0."""
    if a == 0:
        return 0.5
    return min(0.5, (lam + a * a) / (2.0 * a))


def _check_time(t):
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"heat kernels need t > 0, got t={t}")


def _shape_output(values, like):
    if np.ndim(like) == 0:
        return float(values)
    return values


# ============================================================================
# Term counts from tail majorants
# ============================================================================


def _spectral_terms(t: float, shift: float, trunc: KernelTruncation) -> int:
    """
    Smallest N with sum_{|n|>N} e^{-(n^2 - shift|n|)t}/(2pi) <= tail_tol.

    The exponent grows by at least 2N+2 between consecutive n beyond N when
    shift <= 1, so the tail is dominated by a geometric series.
    """

    def tail(n):
        m = n + 1
        lead = (m * m - shift * m) * t
        return 2.0 * math.exp(-lead) / (-math.expm1(-(2 * n + 2) * t) * _TWO_PI)

    if tail(0) <= trunc.tail_tol:
        return 0
    # tail(n) is decreasing: double, then bisect
    hi = 1
    while tail(hi) > trunc.tail_tol:
        if hi > trunc.n_max:
            raise ConvergenceError(f"spectral sum at t={t} needs more than {trunc.n_max} terms")
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) <= trunc.tail_tol:
            hi = mid
        else:
            lo = mid
    if hi > trunc.n_max:
        raise ConvergenceError(f"spectral sum at t={t} needs more than {trunc.n_max} terms")
    return hi


def _image_terms(t: float, trunc: KernelTruncation) -> int:
    """Smallest M such that images beyond |n| = M add at most tail_tol."""
    norm = 1.0 / math.sqrt(4.0 * math.pi * t)
    gap = -math.expm1(-2.0 * math.pi * math.pi / t)
    for m in range(trunc.image_max + 1):
        nearest = (2 * m + 1) * math.pi
        tail = 2.0 * norm * math.exp(-nearest * nearest / (4.0 * t)) / gap
        if tail <= trunc.tail_tol:
            return m
    raise ConvergenceError(f"image sum at t={t} needs more than {trunc.image_max} images")


def _cosine_sum(coeffs, dtheta):
    """(1/2pi)(1 + 2 sum_{n>=1} coeffs[n-1] cos(n dtheta))."""
    dtheta = np.asarray(dtheta, dtype=float)
    if len(coeffs) == 0:
        return np.full(dtheta.shape, 1.0 / _TWO_PI)
    n = np.arange(1, len(coeffs) + 1, dtype=float)
    series = np.cos(np.multiply.outer(dtheta, n)) @ coeffs
    return (1.0 + 2.0 * series) / _TWO_PI


# ============================================================================
# Circle heat kernel
# ============================================================================


def heat_s1_spectral(t, dtheta, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """(1/2pi) sum_n e^{-n^2 t} e^{in dtheta}, summed as a cosine series."""
    _check_time(t)
    n_terms = _spectral_terms(t, 0.0, trunc)
    n = np.arange(1, n_terms + 1, dtype=float)
    values = _cosine_sum(np.exp(-n * n * t), reduce_angle(dtheta))
    return _shape_output(values, dtheta)


def heat_s1_poisson(t, dtheta, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """(1/sqrt(4 pi t)) sum_n e^{-(dtheta - 2 pi n)^2/4t}."""
    _check_time(t)
    m = _image_terms(t, trunc)
    shifts = _TWO_PI * np.arange(-m, m + 1, dtype=float)
    d = np.subtract.outer(reduce_angle(dtheta), shifts)
    values = np.exp(-d * d / (4.0 * t)).sum(axis=-1) / math.sqrt(4.0 * math.pi * t)
    return _shape_output(values, dtheta)


def heat_s1(t, dtheta, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """Circle heat kernel: Poisson images for t < 1, spectral sum otherwise."""
    if t < 1.0:
        return heat_s1_poisson(t, dtheta, trunc)
    return heat_s1_spectral(t, dtheta, trunc)


def heat_line(t, dw):
    """Free heat kernel on the line, e^{-dw^2/4t}/sqrt(4 pi t)."""
    _check_time(t)
    dw = np.asarray(dw, dtype=float)
    values = np.exp(-dw * dw / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
    return _shape_output(values, dw)


# ============================================================================
# Perturbed angular operator T_a
# ============================================================================


def heat_ta(t, dtheta, p: TaParams, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """(1/2pi) sum_n e^{-s(n) t} e^{in dtheta}; tail bounded through s(n) >= n^2 - 2a|n|."""
    _check_time(t)
    n_terms = _spectral_terms(t, 2.0 * p.a, trunc)
    n = np.arange(1, n_terms + 1, dtype=float)
    values = _cosine_sum(np.exp(-p.symbol(n) * t), reduce_angle(dtheta))
    return _shape_output(values, dtheta)


def ta_difference(t, dtheta, p: TaParams, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """heat_ta - heat_s1 as one spectral sum (1/pi) sum_{n>=1}(e^{-s(n)t} - e^{-n^2 t}) cos(n dtheta)."""
    _check_time(t)
    n_terms = _spectral_terms(t, 2.0 * p.a, trunc)
    n = np.arange(1, n_terms + 1, dtype=float)
    coeffs = np.exp(-p.symbol(n) * t) - np.exp(-n * n * t)
    phase = np.multiply.outer(reduce_angle(dtheta), n)
    values = (np.cos(phase) @ coeffs) / math.pi
    return _shape_output(values, dtheta)


def dirichlet_form(coeffs, ns) -> float:
    """sum n^2 |c_n|^2, the angular Dirichlet energy of sum c_n e^{in theta} up to 2pi."""
    ns = np.asarray(ns, dtype=float)
    return float(np.sum(ns * ns * np.abs(coeffs) ** 2))


def ta_quadratic_form(coeffs, ns, p: TaParams) -> float:
    """-<T_a f, f> for f = sum c_n e^{in theta}, same normalization as dirichlet_form."""
    return float(np.sum(p.symbol(ns) * np.abs(coeffs) ** 2))


def _sigma(xi: float, p: TaParams) -> float:
    xi2 = xi * xi
    return xi2 - 2.0 * p.a * xi2 / math.sqrt(xi2 + p.eps)


def ta_fourier_bounds(t: float, theta: float, p: TaParams,
                      constant: Optional[float] = None) -> FourierBounds:
    """
    The oscillatory integral int e^{i theta xi} e^{-sigma(xi) t} d xi together with
    the two bounds 2 sqrt(pi) e^{a^2 t}/sqrt(t) and sqrt(t)(1+t) e^{a^2 t}/theta^2.

    |integral| <= bound1 is always checked. The second bound holds only up to a
    constant (fit_fourier_constant supplies one); it is checked when `constant`
    is given and theta != 0. A violation raises CertificationError.
    """
    _check_time(t)
    cutoff = math.sqrt((_FOURIER_CUTOFF + 4.0 * p.a * p.a * t) / t)

    def integrand(xi):
        return math.exp(-_sigma(xi, p) * t)

    if theta == 0:
        half, _ = integrate_1d(integrand, 0.0, cutoff, epsabs=1e-14, epsrel=1e-11,
                               label="Fourier integral")
    else:
        half, _ = integrate_1d(
            integrand,
            0.0,
            cutoff,
            epsabs=1e-14,
            epsrel=1e-11,
            limit=400,
            weight="cos",
            wvar=abs(theta),
            label="Fourier integral",
        )

    growth = math.exp(p.a * p.a * t)
    bound1 = 2.0 * math.sqrt(math.pi) * growth / math.sqrt(t)
    bound2 = math.inf if theta == 0 else math.sqrt(t) * (1.0 + t) * growth / (theta * theta)
    integral = 2.0 * half
    if abs(integral) > bound1 * (1.0 + _BOUND_RTOL):
        raise CertificationError(
            f"|integral| {abs(integral):.6e} exceeds 2 sqrt(pi) e^(a^2 t)/sqrt(t) = {bound1:.6e} at t={t}"
        )
    if constant is not None and theta != 0 and abs(integral) > constant * bound2 * (1.0 + _BOUND_RTOL):
        raise CertificationError(
            f"|integral| {abs(integral):.6e} exceeds C * bound2 = {constant * bound2:.6e} "
            f"at t={t}, theta={theta}"
        )
    return FourierBounds(bound1=bound1, bound2=bound2, integral=integral)


@cached()
def _fit_fourier(p: TaParams, ts: tuple, thetas: tuple, margin: float) -> float:
    worst = 0.0
    for t in ts:
        for theta in thetas:
            if theta == 0:
                continue
            fb = ta_fourier_bounds(t, theta, p)
            worst = max(worst, abs(fb.integral) / fb.bound2)
    return worst * (1.0 + margin)


def fit_fourier_constant(p: TaParams, ts=None, thetas=None, margin: float = Config.FIT_MARGIN):
    """Fitted multiple C with |integral| <= C * bound2 on the sampled (t, theta) grid."""
    ts = tuple(float(t) for t in (ts if ts is not None else np.geomspace(0.05, 5.0, 9)))
    thetas = tuple(float(x) for x in (thetas if thetas is not None else np.linspace(0.5, 20.0, 9)))
    constant = _fit_fourier(p, ts, thetas, margin)
    context_log.info("Fourier constant fitted", a=p.a, eps=p.eps, constant=constant)
    return constant


# ============================================================================
# Comparison of e^{tT_a} with e^{t Delta}
# ============================================================================


def ta_comparison(t, dtheta, p: TaParams) -> Comparison:
    """|heat_ta - heat_s1| and the envelope (1+t) e^{-eps1 t}."""
    if abs(dtheta) > math.pi:
        raise DomainError(f"dtheta must satisfy |dtheta| <= pi, got {dtheta}")
    diff = abs(ta_difference(t, dtheta, p))
    return Comparison(diff=diff, envelope=(1.0 + t) * math.exp(-p.eps1 * t))


def comparison_grids(n_t: int = 24, n_theta: int = 16):
    """Training grid and an interleaved held-out grid on t in [1e-2, 20], dtheta in [-pi, pi]."""
    log_t = np.linspace(-2.0, 1.3, n_t)
    train_t = 10.0 ** log_t
    held_t = 10.0 ** (0.5 * (log_t[:-1] + log_t[1:]))
    train_theta = np.linspace(-math.pi, math.pi, n_theta + 1)
    held_theta = 0.5 * (train_theta[:-1] + train_theta[1:])
    return (train_t, train_theta), (held_t, held_theta)


def _max_comparison_ratio(p: TaParams, ts, dthetas) -> float:
    worst = 0.0
    for t in ts:
        envelope = (1.0 + t) * math.exp(-p.eps1 * t)
        diffs = np.abs(ta_difference(t, np.asarray(dthetas, dtype=float), p))
        worst = max(worst, float(diffs.max()) / envelope)
    return worst


@cached()
def _fit_comparison(p: TaParams, ts: tuple, dthetas: tuple, margin: float) -> float:
    return _max_comparison_ratio(p, ts, dthetas) * (1.0 + margin)


def fit_comparison_constant(p: TaParams, ts=None, dthetas=None, margin: float = Config.FIT_MARGIN):
    """
    Empirical constant C with |heat_ta - heat_s1| <= C (1+t) e^{-eps1 t} on the
    training grid. Not a proof; check it with verify_comparison.
    """
    (train_t, train_theta), _ = comparison_grids()
    ts = tuple(float(t) for t in (ts if ts is not None else train_t))
    dthetas = tuple(float(x) for x in (dthetas if dthetas is not None else train_theta))
    constant = _fit_comparison(p, ts, dthetas, margin)
    context_log.info("Comparison constant fitted", a=p.a, eps=p.eps, constant=constant)
    return constant


def verify_comparison(p: TaParams, constant: float, ts=None, dthetas=None):
    """Return (holds, max_ratio) of the comparison bound on the held-out grid."""
    _, (held_t, held_theta) = comparison_grids()
    ts = held_t if ts is None else ts
    dthetas = held_theta if dthetas is None else dthetas
    ratio = _max_comparison_ratio(p, ts, dthetas)
    holds = ratio <= constant
    if not holds:
        context_log.warning("Comparison bound fails on held-out grid", ratio=ratio, constant=constant)
    return holds, ratio


# ============================================================================
# Half-line Hardy heat kernel
# ============================================================================


def heat_halfline_hardy(t, w, wp):
    """
    Kernel of e^{t(d_w^2 + 1/4w^2)} on (0, inf):
    (sqrt(w w')/4 pi t) int_0^{2pi} e^{-(w^2+w'^2-2ww' cos v)/4t} dv
    = (sqrt(w w')/2t) e^{-(w-w')^2/4t} i0e(w w'/2t).
    """
    _check_time(t)
    w_arr = np.asarray(w, dtype=float)
    wp_arr = np.asarray(wp, dtype=float)
    if np.any(w_arr <= 0) or np.any(wp_arr <= 0):
        raise DomainError("half-line Hardy kernel needs w > 0 and w' > 0")
    prod = w_arr * wp_arr
    diff = w_arr - wp_arr
    values = np.sqrt(prod) / (2.0 * t) * np.exp(-diff * diff / (4.0 * t)) * i0e(prod / (2.0 * t))
    if np.ndim(values) == 0:
        return float(values)
    return values


__all__ = [
    "TaParams",
    "KernelTruncation",
    "DEFAULT_TRUNCATION",
    "FourierBounds",
    "Comparison",
    "default_eps",
    "heat_s1_spectral",
    "heat_s1_poisson",
    "heat_s1",
    "heat_line",
    "heat_ta",
    "ta_difference",
    "dirichlet_form",
    "ta_quadratic_form",
    "ta_fourier_bounds",
    "fit_fourier_constant",
    "ta_comparison",
    "comparison_grids",
    "fit_comparison_constant",
    "verify_comparison",
    "heat_halfline_hardy",
]
