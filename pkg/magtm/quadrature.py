# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

quadrature.py - Adaptive Quadrature Wrapper
Purpose: Run scipy's QUADPACK routines with explicit tolerances and turn an
unmet tolerance into ConvergenceError instead of a warning
"""

import math
import warnings

from scipy import integrate

from magtm.core import ConvergenceError

# QUADPACK's own error estimate may exceed the request by this factor before failing
_SLACK = 100.0


def integrate_1d(
    func,
    lower,
    upper,
    *,
    epsabs=1e-13,
    epsrel=1e-11,
    limit=200,
    points=None,
    weight=None,
    wvar=None,
    label="integral",
):
    """
    Integrate func over [lower, upper] and return (value, abserr).

    `weight`/`wvar` are passed to scipy (e.g. weight="cos" for oscillatory
    integrands, weight="alg" for algebraic endpoint singularities).
    """
    kwargs = {"epsabs": epsabs, "epsrel": epsrel, "limit": limit}
    if points is not None:
        inner = sorted(p for p in points if lower < p < upper)
        if inner:
            kwargs["points"] = inner
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar
        kwargs.pop("points", None)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(func, lower, upper, **kwargs)[:2]

    if not math.isfinite(value):
        raise ConvergenceError(f"{label}: non-finite quadrature value on [{lower}, {upper}]")

    allowed = max(epsabs, epsrel * abs(value)) * _SLACK
    if abserr > allowed:
        raise ConvergenceError(
            f"{label}: error estimate {abserr:.3e} exceeds budget {allowed:.3e} "
            f"on [{lower}, {upper}]"
        )
    return value, abserr


def integrate_pieces(func, breakpoints, **kwargs):
    """Sum integrate_1d over consecutive breakpoint intervals."""
    total = 0.0
    err = 0.0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi <= lo:
            continue
        value, abserr = integrate_1d(func, lo, hi, **kwargs)
        total += value
        err += abserr
    return total, err


__all__ = ["integrate_1d", "integrate_pieces"]
