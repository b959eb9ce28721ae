# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

rearrange.py - Distribution Functions and Decreasing Rearrangements
Purpose: Build exact step-function rearrangements f* and running averages f**
from weighted samples, and evaluate the convolution bounds stated in terms of
them (O'Neil, kernel envelopes) together with a cyclic-group testbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from magtm.core import DivergentTailError, InfiniteMeasureError, ParameterError
from magtm.performance import timeit
from magtm.quadrature import integrate_1d


@dataclass(frozen=True, eq=False)
class MeasuredSamples:
    """Weighted sample of |f|: value i occupies measure weights[i]."""

    values: np.ndarray = dc_field(repr=False)
    weights: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        weights = np.array(self.weights, dtype=float).ravel()
        if values.shape != weights.shape:
            raise ParameterError("values and weights must have the same length")
        if np.isnan(values).any() or np.isnan(weights).any():
            raise ParameterError("samples contain NaN")
        if (values < 0).any():
            raise ParameterError("sample values must be nonnegative")
        if np.isinf(values).any():
            raise ParameterError("sample values must be finite; truncate singular samples first")
        if (weights <= 0).any():
            raise ParameterError("sample weights must be positive")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_arrays(cls, values, weights) -> "MeasuredSamples":
        return cls(np.abs(np.asarray(values)), weights)

    @classmethod
    def from_field(cls, field) -> "MeasuredSamples":
        """|u| on the nodes of a SampledField with its quadrature weights."""
        return cls(np.abs(field.values), field.weights)


@dataclass(frozen=True, eq=False)
class DecreasingProfile:
    """
    Right-continuous step function f*(t) = values[k] on [edges[k], edges[k+1]),
    zero beyond edges[-1].
    """

    edges: np.ndarray = dc_field(repr=False)
    values: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if edges.shape != (values.size + 1,):
            raise ParameterError("profile needs len(edges) == len(values) + 1")
        if np.any(np.diff(values) > 0):
            raise ParameterError("profile values must be non-increasing")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)
        cumulative = np.concatenate(([0.0], np.cumsum(values * np.diff(edges))))
        object.__setattr__(self, "_cumulative", cumulative)

    @classmethod
    def empty(cls) -> "DecreasingProfile":
        return cls(np.zeros(1), np.zeros(0))

    @property
    def total_measure(self) -> float:
        return float(self.edges[-1])

    def _index(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ParameterError("profiles are defined for t >= 0")
        return t, np.searchsorted(self.edges, t, side="right") - 1

    def star(self, t):
        t, idx = self._index(t)
        if self.values.size == 0:
            out = np.zeros_like(t)
        else:
            k = np.minimum(idx, self.values.size - 1)
            out = np.where(idx < self.values.size, self.values[k], 0.0)
        return float(out) if out.ndim == 0 else out

    def integral(self, t):
        """int_0^t f*(s) ds."""
        t, idx = self._index(t)
        if self.values.size == 0:
            out = np.zeros_like(t)
        else:
            k = np.minimum(idx, self.values.size - 1)
            partial = self._cumulative[k] + self.values[k] * (t - self.edges[k])
            out = np.where(idx < self.values.size, partial, self._cumulative[-1])
        return float(out) if out.ndim == 0 else out

    def star_star(self, t):
        """f**(t) = (1/t) int_0^t f*."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr <= 0):
            raise ParameterError("f** is defined for t > 0")
        return self.integral(t_arr) / t_arr if t_arr.ndim else self.integral(float(t_arr)) / float(t_arr)

    def tail_product_integral(self, other: "DecreasingProfile", t: float) -> float:
        """int_t^inf f*(s) g*(s) ds, exact for step profiles."""
        stop = min(self.total_measure, other.total_measure)
        if t >= stop:
            return 0.0
        breaks = np.union1d(self.edges, other.edges)
        breaks = np.concatenate(([t], breaks[(breaks > t) & (breaks < stop)], [stop]))
        mids = 0.5 * (breaks[:-1] + breaks[1:])
        total = float(np.sum(self.star(mids) * other.star(mids) * np.diff(breaks)))
        return total


def distribution(samples: MeasuredSamples, s: float) -> float:
    """m(f, s): measure of {|f| > s}."""
    if s < 0:
        raise ParameterError(f"level must be >= 0, got {s}")
    return float(np.sum(samples.weights[samples.values > s]))


def rearrange(samples: MeasuredSamples) -> DecreasingProfile:
    """Sort by value, descending, and accumulate weights; zero samples are dropped."""
    keep = samples.values > 0
    values = samples.values[keep]
    weights = samples.weights[keep]
    if np.isinf(weights).any():
        raise InfiniteMeasureError("a superlevel set {|f| > s} has infinite measure")
    order = np.argsort(-values, kind="stable")
    values = values[order]
    edges = np.concatenate(([0.0], np.cumsum(weights[order])))
    return DecreasingProfile(edges, values)


def oneil_bound(f: DecreasingProfile, g: DecreasingProfile, t: float) -> float:
    """t f**(t) g**(t) + int_t^inf f*(s) g*(s) ds."""
    if not t > 0:
        raise ParameterError(f"t must be positive, got {t}")
    head = f.integral(t) * g.integral(t) / t
    tail = f.tail_product_integral(g, t)
    bound = head + tail
    if not math.isfinite(bound):
        raise DivergentTailError(f"O'Neil bound is not finite at t={t}")
    return bound


def duhamel_identity_check(samples: MeasuredSamples, t: float) -> float:
    """|t f**(t) - t f*(t) - int_{f*(t)}^inf m(f, s) ds|."""
    if not t > 0:
        raise ParameterError(f"t must be positive, got {t}")
    profile = rearrange(samples)
    level = profile.star(t)
    lhs = profile.integral(t)
    # int_level^inf m(f, s) ds = sum w (v - level)^+
    layer = float(np.sum(samples.weights * np.clip(samples.values - level, 0.0, None)))
    return abs(lhs - t * level - layer)


def cyclic_convolution(f, g) -> np.ndarray:
    """h[k] = sum_j f[j] g[k - j mod N] by direct summation."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape or f.ndim != 1:
        raise ParameterError("cyclic convolution needs two 1-D arrays of equal length")
    n = f.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return (g[idx] * f[None, :]).sum(axis=1)


def counting_samples(values) -> MeasuredSamples:
    """|values| under counting measure."""
    values = np.abs(np.asarray(values, dtype=float))
    return MeasuredSamples(values, np.ones_like(values))


def oneil_slack(f, g, ts=None) -> float:
    """
    min over t of bound(t) - h**(t) for h = f * g on Z_N. Default ts are the
    integers and half-integers in (0, N].
    """
    h = cyclic_convolution(f, g)
    f_prof = rearrange(counting_samples(f))
    g_prof = rearrange(counting_samples(g))
    h_prof = rearrange(counting_samples(h))
    if ts is None:
        ts = 0.5 * np.arange(1, 2 * len(h) + 1)
    slack = math.inf
    for t in ts:
        t = float(t)
        lhs = h_prof.star_star(t) if h_prof.values.size else 0.0
        slack = min(slack, oneil_bound(f_prof, g_prof, t) - lhs)
    return slack


@timeit
def oneil_suite(rng: np.random.Generator, n_pairs: int = 200, n_max: int = 64) -> float:
    """Worst O'Neil slack over random nonnegative pairs on Z_N, 2 <= N <= n_max."""
    worst = math.inf
    for _ in range(n_pairs):
        n = int(rng.integers(2, n_max + 1))
        f = rng.random(n) * (rng.random(n) < 0.8)
        g = rng.exponential(size=n)
        worst = min(worst, oneil_slack(f, g))
    return worst


def sample_power_singularity(delta: float, n: int, w_max: float) -> MeasuredSamples:
    """
    Midpoint samples of |w|^{-delta} on the half strip (0, w_max] x S^1, with the
    angle integrated out. The rearrangement approximates (2 pi)^delta t^{-delta}
    for t well inside (0, 2 pi w_max).
    """
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if n < 1 or not w_max > 0:
        raise ParameterError("need n >= 1 and w_max > 0")
    h = w_max / n
    w = (np.arange(n) + 0.5) * h
    return MeasuredSamples(w ** (-delta), np.full(n, 2.0 * math.pi * h))


def power_singularity_star(delta: float, t):
    """(2 pi)^delta t^{-delta}."""
    t = np.asarray(t, dtype=float)
    out = (2.0 * math.pi) ** delta * t ** (-delta)
    return float(out) if out.ndim == 0 else out


def envelope_convolution_bound(v: DecreasingProfile, envelope, t: float, antiderivative=None) -> float:
    """
    v**(t) int_0^t phi*(s) ds + int_t^inf v*(s) phi*(s) ds for a decreasing kernel
    envelope phi*. `antiderivative(x) = int_0^x phi*` is used when supplied.
    """
    if not t > 0:
        raise ParameterError(f"t must be positive, got {t}")

    def primitive(x):
        if antiderivative is not None:
            return antiderivative(x)
        if x <= 0:
            return 0.0
        return integrate_1d(envelope, 0.0, x, epsabs=1e-13, epsrel=1e-10,
                            label="envelope integral")[0]

    head = v.star_star(t) * primitive(t)

    stop = v.total_measure
    tail = 0.0
    if t < stop:
        breaks = v.edges[(v.edges > t) & (v.edges < stop)]
        breaks = np.concatenate(([t], breaks, [stop]))
        prims = np.array([primitive(x) for x in breaks])
        mids = 0.5 * (breaks[:-1] + breaks[1:])
        tail = float(np.sum(v.star(mids) * np.diff(prims)))

    bound = head + tail
    if not math.isfinite(bound):
        raise DivergentTailError(f"envelope bound is not finite at t={t}")
    return bound


def profile_rows(profile: DecreasingProfile, ts) -> list:
    """Rows (t, f_star, f_star_star) for table export."""
    rows = []
    for t in ts:
        t = float(t)
        rows.append({"t": t, "f_star": profile.star(t), "f_star_star": profile.star_star(t)})
    return rows


__all__ = [
    "MeasuredSamples",
    "DecreasingProfile",
    "distribution",
    "rearrange",
    "oneil_bound",
    "duhamel_identity_check",
    "cyclic_convolution",
    "counting_samples",
    "oneil_slack",
    "oneil_suite",
    "sample_power_singularity",
    "power_singularity_star",
    "envelope_convolution_bound",
    "profile_rows",
]
