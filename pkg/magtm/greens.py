# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

greens.py - Fractional-Power Kernels and Bound Certificates
Purpose: Evaluate the inverse square-root kernels

    PHI1 = (-d_w^2 - Delta_S1 + lam)^{-1/2}
    PHI2 = (-d_w^2 - T_a + lam)^{-1/2}
    PHI4 = (-d_w^2 - 1/4w^2 - Delta_S1 + lam)^{-1/2}
    PHI5 = (-d_w^2 - 1/4w^2 - T_a + lam)^{-1/2}

through closed forms where they exist and through the Laplace representation
(1/Gamma(1/2)) int_0^inf t^{-1/2} e^{-lam t} (heat kernels) dt otherwise, and
fit empirical bound certificates for their near-diagonal and far-field behaviour.

Fitted constants are reproducible artifacts recorded with their grids; they are
not proofs.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from magtm.config import Config
from magtm.core import (
    CertificationError,
    ContextLogger,
    DomainError,
    MissingCertificateError,
    OnDiagonalError,
    ParameterError,
)
from magtm.cylinder import reduce_angle
from magtm.heatkernels import (
    DEFAULT_TRUNCATION,
    KernelTruncation,
    TaParams,
    default_eps,
    heat_halfline_hardy,
    heat_line,
    heat_s1,
    ta_difference,
)
from magtm.performance import cached, timer
from magtm.quadrature import integrate_1d, integrate_pieces
from magtm.rearrange import MeasuredSamples, rearrange
from magtm.specfun import BesselArgs, HypergeometricArgs, besselK, hyp2f1

_TWO_PI = 2.0 * math.pi
_LAPLACE_NORM = 2.0 / math.sqrt(math.pi)

# e^{-lam s^2} below e^{-50} is dropped from Laplace integrals
_LAPLACE_CUTOFF = 50.0

_GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = leggauss(_GL_ORDER)

context_log = ContextLogger("magtm.greens")


class KernelId(str, Enum):
    PHI1 = "phi1"
    PHI2 = "phi2"
    PHI4 = "phi4"
    PHI5 = "phi5"


class Regime(str, Enum):
    NEAR = "near"
    FAR = "far"


@dataclass(frozen=True)
class Displacement:
    dw: float
    dtheta: float

    def __post_init__(self):
        object.__setattr__(self, "dtheta", reduce_angle(self.dtheta))

    @property
    def on_diagonal(self) -> bool:
        return self.dw == 0 and self.dtheta == 0

    @property
    def rho(self) -> float:
        return math.hypot(self.dw, self.dtheta)


def _check_lambda(lam):
    if not lam > 0:
        raise ParameterError(f"lambda must be positive, got {lam}")


def _check_half_line(w, wp):
    if not (w > 0 and wp > 0):
        raise DomainError(f"half-line kernels need w, w' > 0, got w={w}, w'={wp}")


# ============================================================================
# PHI1
# ============================================================================


def _phi1_images(lam: float, trunc: KernelTruncation) -> int:
    """Images |n| <= M; the rest lie at distance >= (2M+1)pi."""
    root = math.sqrt(lam)
    ratio = math.exp(-_TWO_PI * root)
    for m in range(trunc.image_max + 1):
        nearest = (2 * m + 1) * math.pi
        tail = 2.0 * math.exp(-root * nearest) / (_TWO_PI * nearest * (1.0 - ratio))
        if tail <= trunc.tail_tol:
            return m
    raise ParameterError(f"image sum for lambda={lam} exceeds {trunc.image_max} images")


def phi1_values(dw, dtheta, lam: float, trunc: KernelTruncation = DEFAULT_TRUNCATION):
    """Vectorised closed form (1/2pi) sum_n e^{-sqrt(lam) rho_n}/rho_n."""
    _check_lambda(lam)
    dw = np.asarray(dw, dtype=float)
    dtheta = reduce_angle(dtheta)
    m = _phi1_images(lam, trunc)
    shifts = _TWO_PI * np.arange(-m, m + 1, dtype=float)
    dw_b, dtheta_b = np.broadcast_arrays(dw, np.asarray(dtheta, dtype=float))
    if np.any((dw_b == 0) & (dtheta_b == 0)):
        raise OnDiagonalError("phi1 is singular at zero displacement")
    rho = np.sqrt(dw_b[..., None] ** 2 + (dtheta_b[..., None] - shifts) ** 2)
    values = np.sum(np.exp(-math.sqrt(lam) * rho) / rho, axis=-1) / _TWO_PI
    return float(values) if values.ndim == 0 else values


def phi1(d: Displacement, lam: float, trunc: KernelTruncation = DEFAULT_TRUNCATION) -> float:
    if d.on_diagonal:
        raise OnDiagonalError("phi1 is singular at zero displacement")
    return phi1_values(d.dw, d.dtheta, lam, trunc)


def _laplace_breaks(scale: float, s_max: float):
    """Breakpoints in s = sqrt(t): the heat peak near scale/2, the switch at 1."""
    points = {1.0}
    if scale > 0:
        points.update({0.25 * scale, 0.5 * scale, scale})
    return [0.0] + sorted(p for p in points if 0 < p < s_max) + [s_max]


def _laplace_s_max(lam: float, dw: float = 0.0) -> float:
    return math.sqrt((_LAPLACE_CUTOFF + math.sqrt(lam) * abs(dw)) / lam)


def phi1_laplace(d: Displacement, lam: float) -> float:
    """Oracle: (2/sqrt(pi)) int_0^inf e^{-lam s^2} heat_line(s^2, dw) heat_s1(s^2, dtheta) ds."""
    _check_lambda(lam)
    if d.on_diagonal:
        raise OnDiagonalError("phi1 is singular at zero displacement")

    def integrand(s):
        if s == 0.0:
            return 0.0
        t = s * s
        return math.exp(-lam * t) * heat_line(t, d.dw) * heat_s1(t, d.dtheta)

    s_max = _laplace_s_max(lam, d.dw)
    value, _ = integrate_pieces(
        integrand, _laplace_breaks(d.rho, s_max), epsabs=1e-14, epsrel=1e-11, label="phi1 Laplace"
    )
    return _LAPLACE_NORM * value


# ============================================================================
# PHI2: PHI1 plus the Laplace transform of heat_line x (heat_ta - heat_s1)
# ============================================================================


def _t_lower(dw: float, dtheta: float) -> float:
    """Lower Laplace cutoff: e^{-dw^2/4t} < e^{-50} below it, or t << dtheta^2 on dw = 0."""
    if dw != 0:
        return dw * dw / 200.0
    return 1e-4 * dtheta * dtheta


def phi2_correction(d: Displacement, lam: float, p: TaParams) -> float:
    """(2/sqrt(pi)) int e^{-lam s^2} heat_line(s^2, dw) (heat_ta - heat_s1)(s^2, dtheta) ds."""

    def integrand(s):
        t = s * s
        return math.exp(-lam * t) * heat_line(t, d.dw) * ta_difference(t, d.dtheta, p)

    s_lo = math.sqrt(_t_lower(d.dw, d.dtheta))
    s_max = _laplace_s_max(lam, d.dw)
    breaks = [s_lo] + [b for b in _laplace_breaks(abs(d.dw), s_max)[1:] if b > s_lo]
    value, _ = integrate_pieces(integrand, breaks, epsabs=1e-13, epsrel=1e-9, label="phi2 Laplace")
    return _LAPLACE_NORM * value


def phi2(d: Displacement, lam: float, p: TaParams) -> float:
    _check_lambda(lam)
    if d.on_diagonal:
        raise OnDiagonalError("phi2 is singular at zero displacement")
    return phi1(d, lam) + phi2_correction(d, lam, p)


# ============================================================================
# PHI4 and the Hardy weight identity
# ============================================================================


def hardy_weight_closed(w, wp, dtheta) -> float:
    """pi sqrt(ww') / (sqrt((w+w')^2 + dtheta^2) sqrt((w-w')^2 + dtheta^2))."""
    _check_half_line(w, wp)
    plus = math.hypot(w + wp, dtheta)
    minus = math.hypot(w - wp, dtheta)
    if minus == 0:
        raise OnDiagonalError("Hardy weight is singular on the diagonal")
    return math.pi * math.sqrt(w * wp) / (plus * minus)


def hardy_weight_quadrature(w, wp, dtheta) -> float:
    """int_0^pi sqrt(ww')/(w^2 + w'^2 - 2ww' cos v + dtheta^2) dv."""
    _check_half_line(w, wp)
    if w == wp and dtheta == 0:
        raise OnDiagonalError("Hardy weight is singular on the diagonal")
    base = w * w + wp * wp + dtheta * dtheta
    cross = 2.0 * w * wp
    root = math.sqrt(w * wp)
    # Peak of width ~ rho / sqrt(ww') at v = 0
    width = min(math.pi, math.hypot(w - wp, dtheta) / root)
    value, _ = integrate_1d(
        lambda v: root / (base - cross * math.cos(v)),
        0.0,
        math.pi,
        epsabs=1e-15,
        epsrel=1e-13,
        limit=400,
        points=[0.1 * width, width, 10.0 * width],
        label="Hardy weight",
    )
    return value


def hardy_weight_hypergeometric(w, wp, dtheta) -> float:
    """pi sqrt(ww')/((w+w')^2 + dtheta^2) F(1, 1/2; 1; z), z = 4ww'/((w+w')^2 + dtheta^2)."""
    _check_half_line(w, wp)
    outer = (w + wp) ** 2 + dtheta * dtheta
    z = 4.0 * w * wp / outer
    if z >= 1.0:
        raise OnDiagonalError("Hardy weight is singular on the diagonal")
    return math.pi * math.sqrt(w * wp) / outer * hyp2f1(HypergeometricArgs(1.0, 0.5, 1.0, z))


def phi4_near_term(w, wp, dtheta) -> float:
    """n = 0 image of phi4 with K_1(x) replaced by 1/x: W(w, w', dtheta)/pi^2."""
    return hardy_weight_closed(w, wp, reduce_angle(dtheta)) / (math.pi * math.pi)


def _k1_over_r(root_lam: float, r: float) -> float:
    return besselK(BesselArgs(1.0, root_lam * r)) / r


def phi4(w, wp, dtheta, lam: float, trunc: KernelTruncation = DEFAULT_TRUNCATION) -> float:
    """(sqrt(lam)/pi^2) sqrt(ww') sum_n int_0^pi K_1(sqrt(lam) R_n)/R_n dv."""
    _check_half_line(w, wp)
    _check_lambda(lam)
    dtheta = reduce_angle(dtheta)
    if w == wp and dtheta == 0:
        raise OnDiagonalError("phi4 is singular at zero displacement")

    root_lam = math.sqrt(lam)
    base = w * w + wp * wp
    cross = 2.0 * w * wp
    prefactor = root_lam * math.sqrt(w * wp) / (math.pi * math.pi)
    decay = math.exp(-_TWO_PI * root_lam)

    def image(shift):
        ang2 = (dtheta - shift) ** 2
        rho = math.hypot(w - wp, dtheta - shift)
        width = min(math.pi, rho / math.sqrt(w * wp))
        value, _ = integrate_1d(
            lambda v: _k1_over_r(root_lam, math.sqrt(base - cross * math.cos(v) + ang2)),
            0.0,
            math.pi,
            epsabs=1e-15,
            epsrel=1e-11,
            limit=400,
            points=[0.1 * width, width, 10.0 * width],
            label="phi4 image",
        )
        return value

    total = image(0.0)
    for m in range(1, trunc.image_max + 1):
        total += image(_TWO_PI * m) + image(-_TWO_PI * m)
        # Images beyond m sit at distance >= (2m+1)pi; K_1(x)/x decays at least like e^{-x}
        nearest = (2 * m + 1) * math.pi
        tail = 2.0 * math.pi * _k1_over_r(root_lam, nearest) / (1.0 - decay)
        if prefactor * tail <= max(trunc.tail_tol, 1e-13 * prefactor * abs(total)):
            return prefactor * total
    raise ParameterError(f"phi4 image sum exceeds {trunc.image_max} images")


def phi4_laplace(w, wp, dtheta, lam: float) -> float:
    """Oracle: (2/sqrt(pi)) int e^{-lam s^2} H_hardy(s^2, w, w') heat_s1(s^2, dtheta) ds."""
    _check_half_line(w, wp)
    _check_lambda(lam)
    rho = math.hypot(w - wp, reduce_angle(dtheta))
    if rho == 0:
        raise OnDiagonalError("phi4 is singular at zero displacement")

    def integrand(s):
        if s == 0.0:
            return 0.0
        t = s * s
        return math.exp(-lam * t) * heat_halfline_hardy(t, w, wp) * heat_s1(t, dtheta)

    s_max = _laplace_s_max(lam, w - wp)
    value, _ = integrate_pieces(
        integrand, _laplace_breaks(rho, s_max), epsabs=1e-14, epsrel=1e-11, label="phi4 Laplace"
    )
    return _LAPLACE_NORM * value


def phi5(w, wp, dtheta, lam: float, p: TaParams) -> float:
    """phi4 plus the Laplace transform of H_hardy x (heat_ta - heat_s1)."""
    base = phi4(w, wp, dtheta, lam)
    dw = w - wp

    def integrand(s):
        t = s * s
        return math.exp(-lam * t) * heat_halfline_hardy(t, w, wp) * ta_difference(t, dtheta, p)

    s_lo = math.sqrt(_t_lower(dw, reduce_angle(dtheta)))
    s_max = _laplace_s_max(lam, dw)
    breaks = [s_lo] + [b for b in _laplace_breaks(abs(dw), s_max)[1:] if b > s_lo]
    value, _ = integrate_pieces(integrand, breaks, epsabs=1e-13, epsrel=1e-9, label="phi5 Laplace")
    return base + _LAPLACE_NORM * value


# ============================================================================
# Vectorised sampling on tensor grids
# ============================================================================


def _s_quadrature(s_min: float, s_max: float):
    """Composite Gauss-Legendre nodes: geometric panels up to 1, unit-half panels after."""
    edges = []
    top = min(1.0, s_max)
    if s_min < top:
        n_geo = max(1, math.ceil(math.log(top / s_min) / math.log(1.25)))
        edges.extend(np.geomspace(s_min, top, n_geo + 1))
    else:
        edges.append(s_min)
    if s_max > edges[-1]:
        n_lin = max(1, math.ceil((s_max - edges[-1]) / 0.5))
        edges.extend(np.linspace(edges[-1], s_max, n_lin + 1)[1:])
    edges = np.asarray(edges)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (hi - lo) * _GL_NODES[None, :] + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * _GL_WEIGHTS[None, :]
    return nodes.ravel(), weights.ravel()


def _laplace_tensor(radial, angular, lam, s_min, s_max):
    """(2/sqrt(pi)) sum_k W_k e^{-lam s_k^2} radial(s_k^2)[:, None] angular(s_k^2)[None, :]."""
    nodes, weights = _s_quadrature(s_min, s_max)
    total = None
    for s, wt in zip(nodes, weights):
        t = s * s
        term = (wt * math.exp(-lam * t)) * np.multiply.outer(radial(t), angular(t))
        total = term if total is None else total + term
    return _LAPLACE_NORM * total


def _min_offdiag_rho(dws, dthetas) -> float:
    rho = np.hypot.outer(np.asarray(dws, dtype=float), np.asarray(dthetas, dtype=float))
    if np.any(rho == 0):
        raise OnDiagonalError("sampling grid contains the diagonal")
    return float(rho.min())


def sample_kernel(kernel: KernelId, dws, dthetas, lam: float, p: Optional[TaParams] = None,
                  center: float = 3.0) -> np.ndarray:
    """
    Kernel values on the tensor grid dws x dthetas, shape (len(dws), len(dthetas)).

    Hardy kernels are sampled at w = center + dw, w' = center.
    """
    kernel = KernelId(kernel)
    _check_lambda(lam)
    dws = np.asarray(dws, dtype=float)
    dthetas = reduce_angle(np.asarray(dthetas, dtype=float))
    rho_min = _min_offdiag_rho(dws, dthetas)
    s_min = rho_min / 12.0
    s_max = _laplace_s_max(lam, float(np.abs(dws).max()))

    if kernel in (KernelId.PHI2, KernelId.PHI5) and p is None:
        raise ParameterError(f"{kernel.value} needs TaParams")

    if kernel is KernelId.PHI1:
        return phi1_values(dws[:, None], dthetas[None, :], lam)

    if kernel is KernelId.PHI2:
        base = phi1_values(dws[:, None], dthetas[None, :], lam)
        correction = _laplace_tensor(
            lambda t: heat_line(t, dws),
            lambda t: ta_difference(t, dthetas, p),
            lam,
            s_min,
            s_max,
        )
        return base + correction

    w = center + dws
    if np.any(w <= 0):
        raise DomainError("center + dw must stay positive for Hardy kernels")

    def angular(t):
        if kernel is KernelId.PHI4:
            return heat_s1(t, dthetas)
        return heat_s1(t, dthetas) + ta_difference(t, dthetas, p)

    return _laplace_tensor(lambda t: heat_halfline_hardy(t, w, center), angular, lam, s_min, s_max)


# ============================================================================
# Domination of PHI2 by PHI1 + C' K_0
# ============================================================================


@dataclass(frozen=True)
class DominationFit:
    constant: float
    max_ratio: float
    n_points: int


def fit_domination_constant(lam: float, p: TaParams, points=None,
                            margin: float = Config.FIT_MARGIN) -> DominationFit:
    """
    C' with phi2 <= phi1 + C' K_0(sqrt(lam)|dw|) over the sampled displacements;
    points with dw = 0 are skipped.
    """
    if points is None:
        dws = np.concatenate((-np.geomspace(0.05, 6.0, 8), np.geomspace(0.05, 6.0, 8)))
        dthetas = np.linspace(-math.pi, math.pi, 9, endpoint=False)
    else:
        dws = np.asarray(sorted({float(d.dw) for d in points if d.dw != 0}))
        dthetas = np.asarray(sorted({float(reduce_angle(d.dtheta)) for d in points}))
    dws = dws[dws != 0]
    if dws.size == 0:
        raise ParameterError("domination fit needs displacements with dw != 0")

    values = sample_kernel(KernelId.PHI2, dws, dthetas, lam, p)
    base = phi1_values(dws[:, None], dthetas[None, :], lam)
    k0 = np.array([besselK(BesselArgs(0.0, math.sqrt(lam) * abs(x))) for x in dws])
    ratios = (values - base) / k0[:, None]
    max_ratio = float(ratios.max())
    constant = max(0.0, max_ratio) + margin * float(np.abs(ratios).max())
    context_log.info("Domination constant fitted", lam=lam, a=p.a, eps=p.eps, constant=constant)
    return DominationFit(constant=constant, max_ratio=max_ratio, n_points=int(ratios.size))


# ============================================================================
# Certificates
# ============================================================================


@dataclass(frozen=True)
class CertifyParams:
    lam: float = 1.0
    a: float = 0.25
    eps: Optional[float] = None
    delta3: float = 0.25
    center: float = 3.0
    margin: float = Config.FIT_MARGIN
    n_dw: int = 10
    n_dtheta: int = 12

    def __post_init__(self):
        _check_lambda(self.lam)
        if not 0 < self.delta3 < 0.5:
            raise ParameterError(f"delta3 must lie in (0, 1/2), got {self.delta3}")
        if self.n_dw < 2 or self.n_dtheta < 2:
            raise ParameterError("certification grids need at least two nodes per axis")
        if self.eps is None:
            object.__setattr__(self, "eps", default_eps(self.a, self.lam))

    @property
    def ta(self) -> TaParams:
        return TaParams(self.a, self.eps)

    def to_dict(self) -> dict:
        return {
            "lam": self.lam,
            "a": self.a,
            "eps": self.eps,
            "delta3": self.delta3,
            "center": self.center,
            "margin": self.margin,
            "n_dw": self.n_dw,
            "n_dtheta": self.n_dtheta,
        }


@dataclass(frozen=True)
class BoundCertificate:
    kernel: KernelId
    regime: Regime
    leading_coeff: float
    correction_exponent: float
    decay_rate: float
    fitted_constant: float
    sample_report: float
    held_out_report: float
    params: dict = dc_field(default_factory=dict)
    grid: dict = dc_field(default_factory=dict)
    grid_hash: str = ""


@dataclass(frozen=True)
class RearrangementEnvelope:
    """
    t <= 1: PHI1 f*(t) <= 1/sqrt(4 pi t) + constant,
            PHI2 f**(t) <= 1/sqrt(pi t) + constant t^{-delta3};
    t > 1:  f*(t) <= far_constant e^{-far_decay t}.
    """

    kind: str
    constant: float
    delta3: float
    far_constant: float
    far_decay: float
    sample_measure: float


@dataclass(frozen=True)
class KernelCertificate:
    kernel: KernelId
    near: BoundCertificate
    far: BoundCertificate
    envelope: Optional[RearrangementEnvelope] = None


def _grids(regime: Regime, params: CertifyParams):
    """Training grid and an interleaved held-out grid for one regime."""
    n = params.n_dw
    if regime is Regime.NEAR:
        mags = np.geomspace(0.02, 1.0, n)
        held_mags = np.sqrt(mags[:-1] * mags[1:])
        train_dw = np.concatenate((-mags[::-1], mags))
        held_dw = np.concatenate((-held_mags[::-1], held_mags))
    else:
        train_dw = np.linspace(1.0, 8.0, n)
        held_dw = 0.5 * (train_dw[:-1] + train_dw[1:])
    train_theta = np.linspace(-math.pi, math.pi, params.n_dtheta, endpoint=False)
    held_theta = train_theta + math.pi / params.n_dtheta
    return (train_dw, train_theta), (held_dw, reduce_angle(held_theta))


def grid_hash(payload: dict) -> str:
    """sha256 of the canonical JSON text of a grid description."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _bound_shape(kernel: KernelId, regime: Regime, params: CertifyParams):
    """(leading_coeff, correction_exponent, decay_rate) for a kernel and regime."""
    decay = math.sqrt(params.lam) / 2.0
    if regime is Regime.NEAR:
        exponent = params.delta3 if kernel in (KernelId.PHI2, KernelId.PHI5) else 0.0
        return 1.0 / _TWO_PI, exponent, decay
    return 0.0, 0.0, decay


def _ratios(kernel, regime, params, dws, dthetas):
    leading, exponent, decay = _bound_shape(kernel, regime, params)
    values = sample_kernel(kernel, dws, dthetas, params.lam, params.ta, params.center)
    if regime is Regime.NEAR:
        rho = np.hypot.outer(dws, dthetas)
        return (values - leading / rho) * np.abs(dws)[:, None] ** exponent
    return values * np.exp(decay * np.abs(dws))[:, None]


@cached()
def _certify_bounds(kernel: KernelId, regime: Regime, params: CertifyParams) -> BoundCertificate:
    (train_dw, train_theta), (held_dw, held_theta) = _grids(regime, params)
    leading, exponent, decay = _bound_shape(kernel, regime, params)

    with timer(f"certify {kernel.value}/{regime.value}"):
        train = _ratios(kernel, regime, params, train_dw, train_theta)
        held = _ratios(kernel, regime, params, held_dw, held_theta)

    if not (np.all(np.isfinite(train)) and np.all(np.isfinite(held))):
        raise CertificationError(f"{kernel.value}/{regime.value}: unbounded observed ratio")

    max_ratio = float(train.max())
    fitted = max_ratio + params.margin * max(abs(max_ratio), float(np.abs(train).max()))
    held_max = float(held.max())

    grid = {
        "train_dw": [float(x) for x in train_dw],
        "train_dtheta": [float(x) for x in train_theta],
        "held_dw": [float(x) for x in held_dw],
        "held_dtheta": [float(x) for x in held_theta],
    }
    digest = grid_hash(
        {"kernel": kernel.value, "regime": regime.value, "params": params.to_dict(), "grid": grid}
    )

    if held_max > fitted:
        context_log.error(
            "Certificate fails on held-out grid",
            kernel=kernel.value, regime=regime.value, fitted=fitted, held_out=held_max,
            grid_hash=digest,
        )
        raise CertificationError(
            f"{kernel.value}/{regime.value}: held-out ratio {held_max:.6g} exceeds {fitted:.6g}"
        )

    context_log.info(
        "Certificate fitted",
        kernel=kernel.value, regime=regime.value, fitted=fitted, grid_hash=digest,
    )
    return BoundCertificate(
        kernel=kernel,
        regime=regime,
        leading_coeff=leading,
        correction_exponent=exponent,
        decay_rate=decay,
        fitted_constant=fitted,
        sample_report=max_ratio,
        held_out_report=held_max,
        params=params.to_dict(),
        grid=grid,
        grid_hash=digest,
    )


def certify_bounds(kernel: KernelId, params: CertifyParams = CertifyParams(),
                   regime: Regime = Regime.NEAR) -> BoundCertificate:
    """
    Fit the bound of one (kernel, regime) pair.

    near: (phi - (1/2pi)/rho) |dw|^{delta} bounded, delta = delta3 for the T_a kernels, 0 otherwise
    far:  phi e^{(sqrt(lam)/2)|dw|} bounded
    """
    return _certify_bounds(KernelId(kernel), Regime(regime), params)


def _rearranged_kernel(kernel: KernelId, params: CertifyParams, half_width: float = 12.0,
                       n_dw: int = 600, n_dtheta: int = 64):
    """Rearrangement of the kernel sampled on midpoints of [-L, L] x [-pi, pi)."""
    h = 2.0 * half_width / n_dw
    dws = -half_width + (np.arange(n_dw) + 0.5) * h
    dthetas = -math.pi + (np.arange(n_dtheta) + 0.5) * (_TWO_PI / n_dtheta)
    values = sample_kernel(kernel, dws, dthetas, params.lam, params.ta, params.center)
    samples = MeasuredSamples(np.abs(values), np.full(values.shape, h * _TWO_PI / n_dtheta))
    return rearrange(samples)


def _fit_envelope(kernel: KernelId, params: CertifyParams) -> RearrangementEnvelope:
    profile = _rearranged_kernel(kernel, params)
    near_t = np.geomspace(0.02, 1.0, 24)
    far_t = np.linspace(1.0, 40.0, 40)[1:]
    far_decay = math.sqrt(params.lam) / (8.0 * math.pi)

    if kernel is KernelId.PHI1:
        kind = "star"
        excess = profile.star(near_t) - 1.0 / np.sqrt(4.0 * math.pi * near_t)
    else:
        kind = "star_star"
        excess = (profile.star_star(near_t) - 1.0 / np.sqrt(math.pi * near_t)) * near_t ** params.delta3

    near_max = float(excess.max())
    constant = near_max + params.margin * max(abs(near_max), float(np.abs(excess).max()))
    far_ratio = float((profile.star(far_t) * np.exp(far_decay * far_t)).max())
    far_constant = far_ratio * (1.0 + params.margin)

    return RearrangementEnvelope(
        kind=kind,
        constant=constant,
        delta3=params.delta3,
        far_constant=far_constant,
        far_decay=far_decay,
        sample_measure=profile.total_measure,
    )


@cached()
def _certify_kernel(kernel: KernelId, params: CertifyParams) -> KernelCertificate:
    near = certify_bounds(kernel, params, Regime.NEAR)
    far = certify_bounds(kernel, params, Regime.FAR)
    envelope = None
    if kernel in (KernelId.PHI1, KernelId.PHI2):
        with timer(f"envelope {kernel.value}"):
            envelope = _fit_envelope(kernel, params)
    return KernelCertificate(kernel=kernel, near=near, far=far, envelope=envelope)


def certify_kernel(kernel: KernelId, params: CertifyParams = CertifyParams()) -> KernelCertificate:
    """Near and far certificates plus, for PHI1 and PHI2, the rearrangement envelope."""
    return _certify_kernel(KernelId(kernel), params)


def rearrangement_upper(kernel: KernelId, t: float, cert: Optional[KernelCertificate]) -> float:
    """Envelope for f* (PHI1) or f** (PHI2) at t <= 1 and for f* at t > 1."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    kernel = KernelId(kernel)
    if cert is None or cert.kernel is not kernel or cert.envelope is None:
        raise MissingCertificateError(f"no rearrangement certificate for {kernel.value}")

    env = cert.envelope
    if t > 1.0:
        return env.far_constant * math.exp(-env.far_decay * t)
    if env.kind == "star":
        return 1.0 / math.sqrt(4.0 * math.pi * t) + env.constant
    return 1.0 / math.sqrt(math.pi * t) + env.constant * t ** (-env.delta3)


__all__ = [
    "KernelId",
    "Regime",
    "Displacement",
    "phi1",
    "phi1_values",
    "phi1_laplace",
    "phi2",
    "phi2_correction",
    "phi4",
    "phi4_laplace",
    "phi4_near_term",
    "phi5",
    "hardy_weight_closed",
    "hardy_weight_quadrature",
    "hardy_weight_hypergeometric",
    "sample_kernel",
    "DominationFit",
    "fit_domination_constant",
    "CertifyParams",
    "BoundCertificate",
    "RearrangementEnvelope",
    "KernelCertificate",
    "grid_hash",
    "certify_bounds",
    "certify_kernel",
    "rearrangement_upper",
]
