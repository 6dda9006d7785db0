"""Pure-Python implementations of the scalar hot loops.

This module mirrors the compiled extension `mlf._kernels` function for
function; `mlf._backend` picks one of the two at import time.  Everything
here is scalar: series summation of the two-parameter function, the
negative-axis integral pair, the one-sided stable tail series, and the
gamma-family primitives they consume.
"""

import math

from . import quadrature
from .quadrature import QuadratureConfig

NAME = "python"

_EPS = 2.220446049250313e-16
_LN_SQRT_2PI = 0.9189385332046727
EULER_GAMMA = 0.5772156649015329

# B_{2n}/(2n(2n-1)) for n = 1..6, the Stirling series for ln Gamma
_STIRLING_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
)
# B_{2n}/(2n) for n = 1..6, the asymptotic series for digamma
_DIGAMMA_COEF = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)

_STIRLING_CUT = 9.0


def lgamma_pos(x):
    """ln Gamma(x) for x > 0: upward recurrence into x >= 9, then the
    Stirling series truncated at B_12."""
    if x <= 0.0:
        raise ValueError(f"lgamma_pos needs x > 0, got {x}")
    shift = 0.0
    while x < _STIRLING_CUT:
        shift += math.log(x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = 1.0 / x
    for c in _STIRLING_COEF:
        series += c * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _LN_SQRT_2PI + series - shift


def digamma_real(x):
    """psi(x) for real non-pole x; reflection below zero, recurrence into
    x >= 9, then the asymptotic series truncated at B_12."""
    if x <= 0.0:
        if x == math.floor(x):
            raise ValueError(f"digamma pole at {x}")
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma_real(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < _STIRLING_CUT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for c in _DIGAMMA_COEF:
        series += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def _sinpi(x):
    """sin(pi*x) with the integer part of x split off exactly."""
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n & 1 else s


# Maclaurin coefficients of 1/Gamma: rgamma(y) = y*(c0 + c1 y + ...);
# the omitted tail is below 3e-19 on (0, 1]
_RGAMMA_TAYLOR = (
    1.0,
    0.5772156649015329,
    -0.6558780715202539,
    -0.04200263503409524,
    0.16653861138229148,
    -0.04219773455554433,
    -0.009621971527876973,
    0.0072189432466631,
    -0.0011651675918590652,
    -0.00021524167411495098,
    0.0001280502823881162,
    -2.013485478078824e-05,
    -1.2504934821426706e-06,
    1.133027231981696e-06,
    -2.056338416977607e-07,
    6.116095104481416e-09,
    5.002007644469223e-09,
    -1.18127457048702e-09,
    1.0434267116911005e-10,
    7.782263439905071e-12,
    -3.696805618642206e-12,
    5.100370287454476e-13,
    -2.0583260535665066e-14,
    -5.348122539423018e-15,
    1.2267786282382608e-15,
    -1.1812593016974588e-16,
    1.1866922547516004e-18,
    1.4123806553180319e-18,
)


def _rgamma_pos(x):
    """1/Gamma(x) for x > 0.

    Below the Stirling range the Maclaurin series of 1/Gamma is applied at
    the reduced point y = x - m in (0, 1]; working through exp(-lgamma)
    there would cancel ~10 digits near the lgamma zeros at 1 and 2."""
    if x >= _STIRLING_CUT:
        return math.exp(-lgamma_pos(x))
    m = math.ceil(x) - 1
    y = x - m
    h = 0.0
    for c in reversed(_RGAMMA_TAYLOR):
        h = h * y + c
    if m <= 0:
        return y * h
    # 1/Gamma(x) = 1/[(x-1)...(y) Gamma(y)]; the leading factor y cancels
    prod = 1.0
    for j in range(1, m):
        prod *= y + j
    return h / prod


def rgamma_real(x):
    """1/Gamma(x) for any real x; exactly 0.0 at the poles 0, -1, -2, ..."""
    if x > 0.0:
        if x > 178.0:
            return 0.0  # Gamma overflows binary64, reciprocal underflows
        return _rgamma_pos(x)
    if x == math.floor(x):
        return 0.0
    # 1/Gamma(x) = sin(pi*x) * Gamma(1-x) / pi
    s = _sinpi(x)
    y = 1.0 - x
    if y < _STIRLING_CUT:
        return s / (math.pi * _rgamma_pos(y))
    lg = lgamma_pos(y)
    if lg > 700.0:
        magnitude = lg + math.log(abs(s) / math.pi)
        if magnitude > 709.0:
            return math.inf if s > 0.0 else -math.inf
        return math.copysign(math.exp(magnitude), s)
    return s / math.pi * math.exp(lg)


def erfc_real(x):
    """Complement of the error function, hand-built: Maclaurin series of erf
    below x^2 = 1.5, Lentz continued fraction for Q(1/2, x^2) above."""
    if x < 0.0:
        return 2.0 - erfc_real(-x)
    xx = x * x
    if xx < 1.5:
        # erf(x) = 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k! (2k+1))
        term = x
        acc = x
        k = 0
        while True:
            k += 1
            term *= -xx / k
            contrib = term / (2 * k + 1)
            acc += contrib
            if abs(contrib) <= 1e-18 * abs(acc):
                break
        return 1.0 - 1.1283791670955126 * acc
    if xx > 708.0:
        return 0.0
    return _gamma_q_cf(0.5, xx)


def _gamma_q_cf(s, x):
    """Regularized upper incomplete Q(s, x) by modified Lentz continued
    fraction; reliable for x > s + 1."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 400):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x + s * math.log(x) - lgamma_pos(s)) * h


def _gamma_p_series(s, x):
    """Regularized lower incomplete P(s, x) by its power series; for
    x < s + 1."""
    if x == 0.0:
        return 0.0
    term = 1.0 / s
    acc = term
    n = 0
    while True:
        n += 1
        term *= x / (s + n)
        acc += term
        if abs(term) < 1e-17 * abs(acc) or n > 10000:
            break
    return acc * math.exp(s * math.log(x) - x - lgamma_pos(s))


def gamma_p(s, x):
    """Regularized lower incomplete gamma P(s, x), s > 0, x >= 0."""
    if x < s + 1.0:
        return _gamma_p_series(s, x)
    return 1.0 - _gamma_q_cf(s, x)


# series summation -----------------------------------------------------------

def ml_taylor_sum(a, b, zre, zim, tol, max_terms):
    """Partial sums of sum_k z^k / Gamma(b + a k).

    Returns (re, im, abs_err_est, n_terms, peak_ratio, hit_budget).
    peak_ratio is max |partial| / |sum|, the cancellation severity.
    Stops once |term| <= tol*|partial| three times in a row and the gamma
    argument has passed its minimum near 1.4616 (so later terms only shrink).
    """
    z = complex(zre, zim)
    zp = 1.0 + 0.0j
    acc = 0.0 + 0.0j
    peak = 0.0
    sum_abs = 0.0
    small_run = 0
    last_mag = 0.0
    n = 0
    hit_budget = 1
    while n < max_terms:
        g = rgamma_real(b + a * n)
        term = zp * g
        acc += term
        mag = abs(acc)
        if mag > peak:
            peak = mag
        last_mag = abs(term)
        sum_abs += last_mag
        if last_mag <= tol * mag and mag > 0.0:
            small_run += 1
            if small_run >= 3 and b + a * n >= 1.462:
                hit_budget = 0
                n += 1
                break
        else:
            small_run = 0
        zp *= z
        n += 1
        if abs(zp) > 1e290:
            break  # power overflow imminent; caller sees hit_budget
    denom = abs(acc)
    ratio = peak / denom if denom > 0.0 else math.inf
    # each term carries ~100 eps relative slop from the log-space reciprocal
    # gamma and the b + a*n argument rounding, so the rounding floor scales
    # with sum |term|, not just the peak partial
    err = peak * _EPS * 4.0 + sum_abs * _EPS * 100.0 + last_mag
    return acc.real, acc.imag, err, n, ratio, hit_budget


def e1b_series(b, zre, zim):
    """E with first parameter 1: e^z * sum_k (-z)^k (b-1) / (k! (b-1+k)),
    scaled by 1/Gamma(b).  Entire in b and z; the b=1 limit collapses to e^z.

    Returns (re, im, abs_err_est).
    """
    z = complex(zre, zim)
    rg = rgamma_real(b)
    s = b - 1.0
    term = 1.0 + 0.0j
    acc = 1.0 + 0.0j  # k=0 term: s/(s+0) = 1, also the b -> 1 limit
    peak = 1.0
    sum_abs = 1.0
    k = 0
    while k < 2000:
        k += 1
        term *= -z / k
        contrib = term * (s / (s + k)) if s != 0.0 else 0.0
        acc += contrib
        sum_abs += abs(contrib)
        mag = abs(acc)
        if mag > peak:
            peak = mag
        if abs(term) < 1e-17 * max(mag, 1.0) and k > 3:
            break
    ez = _cexp(z)
    value = ez * rg * acc
    err = abs(ez) * abs(rg) * (peak * _EPS * 4.0 + sum_abs * _EPS * 40.0)
    return value.real, value.imag, err


def _cexp(z):
    m = math.exp(z.real)
    return complex(m * math.cos(z.imag), m * math.sin(z.imag))


# negative real axis ---------------------------------------------------------

def neg_axis_integral(a, b, x, rel_tol, abs_tol, max_subdiv):
    """E_{a,b}(-x) for x > 0, 0 < a < 1, b < a + 1, through the pair of
    exponentially damped integrals over the algebraic kernel
    1 + 2 u^a cos(pi a) + u^(2a).

    Returns (value, abs_err_est, converged).
    """
    cfg = QuadratureConfig(rel_tol=rel_tol, abs_tol=abs_tol,
                           max_subdivisions=max_subdiv)
    cos_pa = math.cos(math.pi * a)
    lam = x ** (1.0 / a)
    p1 = a - b
    p2 = 2.0 * a - b

    def kernel(u):
        ua = u ** a
        return 1.0 / (1.0 + 2.0 * ua * cos_pa + ua * ua)

    def f1(u):
        return u ** p1 * math.exp(-lam * u) * kernel(u)

    def f2(u):
        return u ** p2 * math.exp(-lam * u) * kernel(u)

    r1 = quadrature.integrate_semi_infinite(
        f1, lam, cfg, singular_lo=p1 if p1 < 0.0 else None, power=max(p1, 0.0))
    r2 = quadrature.integrate_semi_infinite(
        f2, lam, cfg, singular_lo=p2 if p2 < 0.0 else None, power=max(p2, 0.0))
    pref = x ** ((1.0 - b) / a)
    c1 = -math.sin(math.pi * (a - b)) / math.pi
    c2 = math.sin(math.pi * b) / math.pi
    value = pref * (c1 * r1.value.real + c2 * r2.value.real)
    err = abs(pref) * (abs(c1) * r1.err_est + abs(c2) * r2.err_est)
    # the kernel's near-double-root at u = 1 when a -> 1 amplifies roundoff
    sin_pa = math.sin(math.pi * a)
    err += abs(value) * _EPS * 4.0 / (sin_pa * sin_pa)
    return value, err, (r1.converged and r2.converged)


# one-sided stable tail series ----------------------------------------------

def stable_series(a, t, tol, want_pdf):
    """Tail series of the one-sided stable law with Laplace exponent s^a.

    want_pdf nonzero sums the density series (terms Gamma(ka+1) t^(-ak-1)),
    else the upper-tail series (terms Gamma(ka) t^(-ak)).  Terms are built
    in log space.  Returns (value, abs_err_est, peak_ratio, n_terms,
    decayed) where decayed reports whether the envelope ratio dropped below
    0.9 within the 400-term budget.
    """
    ln_t = math.log(t)
    acc = 0.0
    peak = 0.0
    prev_env = 0.0
    decayed = 0
    n = 0
    sign = 1.0
    for k in range(1, 401):
        if want_pdf:
            ln_env = lgamma_pos(k * a + 1.0) - lgamma_pos(k + 1.0) \
                - (a * k + 1.0) * ln_t
        else:
            ln_env = lgamma_pos(k * a) - lgamma_pos(k + 1.0) - a * k * ln_t
        if ln_env > 700.0:
            # envelope overflow; unusable this far below t_min
            return acc / math.pi, math.inf, math.inf, k, 0
        env = math.exp(ln_env)
        term = sign * env * math.sin(math.pi * k * a)
        acc += term
        if abs(acc) > peak:
            peak = abs(acc)
        n = k
        if prev_env > 0.0 and env / prev_env < 0.9:
            decayed = 1
        if decayed and env < tol * max(abs(acc), 1e-300) and k > 2:
            break
        prev_env = env
        sign = -sign
    value = acc / math.pi
    denom = abs(acc)
    ratio = peak / denom if denom > 0.0 else math.inf
    err = (peak * _EPS * 4.0 + (env if n < 400 else env / 0.1)) / math.pi
    return value, err, ratio, n, decayed
