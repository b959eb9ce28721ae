# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

specfun.py - Special Functions
Purpose: Gamma, the modified Bessel function K_nu and the Gauss hypergeometric
function 2F1 on real arguments, each with an independent quadrature oracle.

K_nu uses Temme's series for z <= 2 and the Steed/Temme continued fraction
(the convergent form of the large-argument expansion) for z > 2, followed by
upward recurrence in the order. The integral

    K_nu(z) = integral_0^inf cosh(nu s) exp(-z cosh s) ds

is kept as an oracle only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from magtm.config import Config
from magtm.core import ConvergenceError, DomainError, ParameterError
from magtm.quadrature import integrate_1d

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Even-index coefficients c2, c4, ..., c18 of 1/Gamma(z) = sum c_k z^k
_RGAMMA_EVEN = (
    0.5772156649015329,
    -0.0420026350340952,
    -0.0421977345555443,
    0.0072189432466630,
    -0.0002152416741149,
    -0.0000201348547807,
    0.0000011330272320,
    0.0000000061160950,
    -0.0000000011812746,
)

TEMME_SWITCH = 2.0
HYP2F1_NEAR_ONE = 0.95


@dataclass(frozen=True)
class EvalPolicy:
    """Tolerance and budget shared by the series and quadrature evaluators."""

    rel_tol: float = Config.REL_TOL
    max_terms: int = Config.MAX_TERMS
    quad_points: int = Config.QUAD_POINTS

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ParameterError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise ParameterError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.quad_points < 2:
            raise ParameterError(f"quad_points must be >= 2, got {self.quad_points}")


DEFAULT_POLICY = EvalPolicy()


@dataclass(frozen=True)
class BesselArgs:
    nu: float
    z: float

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu < 0:
            raise ParameterError(f"Bessel order must be >= 0, got {self.nu}")
        if not math.isfinite(self.z) or self.z <= 0:
            raise DomainError(f"K_nu is defined here for z > 0, got z={self.z}")


@dataclass(frozen=True)
class HypergeometricArgs:
    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_int(self.c):
            raise ParameterError(f"c must not be a nonpositive integer, got {self.c}")
        if not 0.0 <= self.z < 1.0:
            raise DomainError(f"2F1 is evaluated for z in [0, 1), got z={self.z}")


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


# ============================================================================
# Gamma
# ============================================================================


def gamma(x: float) -> float:
    """Gamma function by the Lanczos approximation with reflection below 1/2."""
    x = float(x)
    if _is_nonpositive_int(x):
        raise DomainError(f"Gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))

    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    if x < 140.0:
        return _SQRT_2PI * math.pow(t, x + 0.5) * math.exp(-t) * acc
    try:
        return _SQRT_2PI * math.exp((x + 0.5) * math.log(t) - t) * acc
    except OverflowError:
        return math.inf


# ============================================================================
# Modified Bessel function of the second kind
# ============================================================================


def _temme_gammas(mu: float):
    """gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu) for |mu| <= 1/2."""
    gampl = 1.0 / gamma(1.0 + mu)
    gammi = 1.0 / gamma(1.0 - mu)
    if abs(mu) < 0.1:
        mu2 = mu * mu
        acc = 0.0
        for coef in reversed(_RGAMMA_EVEN):
            acc = acc * mu2 + coef
        gam1 = -acc
    else:
        gam1 = (gammi - gampl) / (2.0 * mu)
    gam2 = 0.5 * (gammi + gampl)
    return gam1, gam2, gampl, gammi


def _kmu_series(mu: float, x: float, policy: EvalPolicy):
    """Temme's series: K_mu(x), K_{mu+1}(x) and an error estimate, x <= 2."""
    gam1, gam2, gampl, gammi = _temme_gammas(mu)
    mu2 = mu * mu
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if pimu == 0.0 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 if e == 0.0 else math.sinh(e) / e
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    sum1 = p

    for i in range(1, policy.max_terms + 1):
        ff = (i * ff + p + q) / (i * i - mu2)
        c *= d / i
        p /= i - mu
        q /= i + mu
        delta = c * ff
        total += delta
        sum1 += c * (p - i * ff)
        if abs(delta) <= abs(total) * policy.rel_tol:
            return total, sum1 * 2.0 / x, abs(delta)

    raise ConvergenceError(f"K series did not converge in {policy.max_terms} terms at z={x}")


def _kmu_continued_fraction(mu: float, x: float, policy: EvalPolicy):
    """Steed's method for Temme's CF2: K_mu(x), K_{mu+1}(x) and an error estimate, x > 2."""
    mu2 = mu * mu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh

    for i in range(2, policy.max_terms + 2):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) <= policy.rel_tol:
            h = a1 * h
            kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
            k1 = kmu * (mu + x + 0.5 - h) / x
            return kmu, k1, abs(dels / s) * kmu

    raise ConvergenceError(
        f"K continued fraction did not converge in {policy.max_terms} steps at z={x}"
    )


def besselK_with_error(args: BesselArgs, policy: EvalPolicy = DEFAULT_POLICY):
    """Return (K_nu(z), estimated absolute error)."""
    nu, x = args.nu, args.z
    nl = int(nu + 0.5)
    mu = nu - nl

    if x <= TEMME_SWITCH:
        kmu, k1, err = _kmu_series(mu, x, policy)
    else:
        kmu, k1, err = _kmu_continued_fraction(mu, x, policy)

    rel = err / abs(kmu) if kmu else 0.0

    # Upward recurrence K_{m+1} = (2m/x) K_m + K_{m-1} is stable for K
    xi2 = 2.0 / x
    for i in range(1, nl + 1):
        kmu, k1 = k1, (mu + i) * xi2 * k1 + kmu

    # Recurrence preserves the relative error of the starting pair
    return kmu, abs(kmu) * (rel + 4e-16 * (nl + 1))


def besselK(args: BesselArgs, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """K_nu(z) for real nu >= 0, z > 0."""
    return besselK_with_error(args, policy)[0]


def besselK_integral(args: BesselArgs, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """
    Quadrature oracle: the Laplace-type integral with beta = gamma = z/2, written
    after x = e^s as integral_0^inf cosh(nu s) exp(-z cosh s) ds.
    """
    nu, z = args.nu, args.z
    s_peak = math.asinh(nu / z) if nu > 0 else 0.0

    def phase(s):
        return nu * s - z * math.cosh(s)

    peak = phase(s_peak)
    target = peak - 60.0
    s_hi = s_peak + 1.0
    while phase(s_hi) > target:
        s_hi *= 2.0
    s_max = brentq(lambda s: phase(s) - target, s_peak, s_hi, xtol=1e-12)

    def integrand(s):
        damp = z * math.cosh(s) + peak
        return 0.5 * (math.exp(nu * s - damp) + math.exp(-nu * s - damp))

    value, _ = integrate_1d(
        integrand,
        0.0,
        s_max,
        epsabs=1e-15,
        epsrel=max(policy.rel_tol, 1e-12),
        limit=policy.quad_points,
        points=[s_peak],
        label=f"K_{nu} oracle",
    )
    return value * math.exp(peak)


def besselK_upper_bound(args: BesselArgs) -> float:
    """2^{nu-1} Gamma(nu) z^{-nu}, an upper bound for K_nu(z) when nu > 0."""
    if args.nu <= 0:
        raise DomainError(f"the bound needs nu > 0, got {args.nu}")
    return math.pow(2.0, args.nu - 1.0) * gamma(args.nu) * math.pow(args.z, -args.nu)


def besselK_small_z(nu: float, z: float) -> float:
    """Leading small-argument behaviour: -ln z for nu = 0, Gamma(nu)/2 (z/2)^{-nu} otherwise."""
    if nu == 0:
        return -math.log(z)
    return 0.5 * gamma(nu) * math.pow(0.5 * z, -nu)


def besselK_large_z(nu: float, z: float) -> float:
    """Leading large-argument behaviour sqrt(pi/2z) e^{-z}."""
    return math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)


# ============================================================================
# Gauss hypergeometric function
# ============================================================================


def _hyp2f1_series(a, b, c, z, policy: EvalPolicy) -> float:
    if z == 0.0:
        return 1.0

    term = 1.0
    total = 1.0
    # Terms may grow before the ratio settles near z
    k_min = abs(a) + abs(b) + abs(c)
    small_run = 0
    for k in range(policy.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if term == 0.0:
            return total
        if k >= k_min and abs(term) <= policy.rel_tol * abs(total) * (1.0 - z):
            small_run += 1
            if small_run >= 2:
                return total
        else:
            small_run = 0

    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in {policy.max_terms} terms"
    )


def _hyp2f1_connection(a, b, c, z, policy: EvalPolicy) -> float:
    """Two series in 1 - z; needs c - a - b non-integer and a, b, c - a, c - b off the poles."""
    excess = c - a - b
    w = 1.0 - z
    first = gamma(c) * gamma(excess) / (gamma(c - a) * gamma(c - b))
    second = gamma(c) * gamma(-excess) / (gamma(a) * gamma(b))
    return first * _hyp2f1_series(a, b, 1.0 - excess, w, policy) + second * math.pow(
        w, excess
    ) * _hyp2f1_series(c - a, c - b, 1.0 + excess, w, policy)


def hyp2f1(args: HypergeometricArgs, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """
    F(a, b; c; z) for real z in [0, 1).

    Above z = 0.95:
      - a or b a nonpositive integer: the polynomial is summed directly;
      - c-a or c-b a nonpositive integer: (1-z)^{c-a-b} F(c-a, c-b; c; z), which terminates;
      - c-a-b > 0 non-integer: the connection formula in 1 - z;
      - c-a-b a positive integer: the Euler integral when c > b > 0 or c > a > 0.
    Anything else near one is refused.
    """
    a, b, c, z = args.a, args.b, args.c, args.z
    if z <= HYP2F1_NEAR_ONE or _is_nonpositive_int(a) or _is_nonpositive_int(b):
        return _hyp2f1_series(a, b, c, z, policy)

    excess = c - a - b
    if _is_nonpositive_int(c - a) or _is_nonpositive_int(c - b):
        return math.pow(1.0 - z, excess) * _hyp2f1_series(c - a, c - b, c, z, policy)
    if excess > 0 and not float(excess).is_integer():
        return _hyp2f1_connection(a, b, c, z, policy)
    if excess > 0:
        if c > b > 0:
            return hyp2f1_integral(args, policy)
        if c > a > 0:
            return hyp2f1_integral(HypergeometricArgs(b, a, c, z), policy)

    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) near z=1 with c-a-b={excess} is not evaluated"
    )


def hyp2f1_integral(args: HypergeometricArgs, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """
    Euler integral representation, valid for c > b > 0:
    Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 t^{b-1}(1-t)^{c-b-1}(1-tz)^{-a} dt.
    """
    a, b, c, z = args.a, args.b, args.c, args.z
    if not c > b > 0:
        raise ParameterError(f"integral form needs c > b > 0, got b={b}, c={c}")

    value, _ = integrate_1d(
        lambda t: math.pow(1.0 - t * z, -a),
        0.0,
        1.0,
        epsabs=1e-15,
        epsrel=max(policy.rel_tol, 1e-12),
        limit=policy.quad_points,
        weight="alg",
        wvar=(b - 1.0, c - b - 1.0),
        label="2F1 integral",
    )
    return gamma(c) / (gamma(b) * gamma(c - b)) * value


def check_transformation(args: HypergeometricArgs, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """|F(a,b;c;z) - (1-z)^{c-a-b} F(c-a,c-b;c;z)| with both sides summed as series."""
    a, b, c, z = args.a, args.b, args.c, args.z
    lhs = _hyp2f1_series(a, b, c, z, policy)
    rhs = math.pow(1.0 - z, c - a - b) * _hyp2f1_series(c - a, c - b, c, z, policy)
    return abs(lhs - rhs)


__all__ = [
    "EvalPolicy",
    "DEFAULT_POLICY",
    "BesselArgs",
    "HypergeometricArgs",
    "gamma",
    "besselK",
    "besselK_with_error",
    "besselK_integral",
    "besselK_upper_bound",
    "besselK_small_z",
    "besselK_large_z",
    "hyp2f1",
    "hyp2f1_integral",
    "check_transformation",
]
