"""Derivatives and expansions built on the two-parameter evaluator.

Covers z-derivatives of any order through the closed form mixing both
Stirling triangles, logarithmic derivatives, Taylor re-expansion around
nonzero centers, the series coefficients of the logarithm, derivatives in
the parameters, and the sigmoid-derivative machinery that powers the
small-first-parameter expansion.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import stirling
from .core import (DEFAULT_TOL, EvalResult, MethodTag, MLParams, ml_eval,
                   taylor_radius)
from .errors import (DomainError, NearZeroDenominator, NonConvergence,
                     PoleError, PreconditionViolation)
from .gammafn import digamma, gamma_real, recip_gamma, recip_gamma_derivs

_EPS = 2.220446049250313e-16
_J_MAX = 20
_FD_MAX = 30
_MAX_TERMS = 20000

_stirling = lru_cache(maxsize=None)(stirling)


@dataclass(frozen=True)
class TaylorExpansion:
    """Truncated expansion around a nonzero center; radius_hint is the
    last-coefficient ratio, a working range for the polynomial rather
    than a convergence radius (the function is entire)."""
    center: complex
    coeffs: tuple
    radius_hint: float


def ml_derivative(p: MLParams, z, tol: float = DEFAULT_TOL) -> complex:
    """First derivative in z from the two-function recurrence; the z=0
    limit is the linear series coefficient."""
    zc = complex(z)
    if zc == 0:
        return complex(recip_gamma(p.a + p.b))
    low = ml_eval(MLParams(p.a, p.b - 1.0), zc, tol).value
    here = ml_eval(p, zc, tol).value
    return (low - (p.b - 1.0) * here) / (p.a * zc)


def ml_derivative_n(p: MLParams, w, j: int, tol: float = DEFAULT_TOL) -> complex:
    """j-th derivative in z at w != 0.

    Closed form: w^-j sum_k E_{a,b-k}(w) sum_m C(m,k) prod_i (1-b-i)
    sum_q S1[j][q] S2[q][m] a^-q, with the signed first-kind triangle.
    The falling product replaces a Gamma ratio that hits poles for
    integer b."""
    if not isinstance(j, int) or not (0 <= j <= _J_MAX):
        raise PreconditionViolation(f"derivative order must be 0..{_J_MAX}, got {j!r}")
    wc = complex(w)
    if wc == 0:
        raise DomainError("closed-form derivative needs w != 0")
    if j == 0:
        return ml_eval(p, wc, tol).value
    a, b = p.a, p.b
    s1, s2 = _stirling(j)
    apow = [a ** (-q) for q in range(j + 1)]
    total = 0.0j
    for k in range(j + 1):
        ek = ml_eval(MLParams(a, b - k), wc, tol).value
        coef = 0.0
        for m in range(k, j + 1):
            falling = 1.0
            for i in range(m - k):
                falling *= 1.0 - b - i
            if falling == 0.0:
                continue
            inner = 0.0
            for q in range(m, j + 1):
                inner += s1[j][q] * s2[q][m] * apow[q]
            coef += math.comb(m, k) * falling * inner
        total += ek * coef
    return total * wc ** (-j)


def _log_ratios(p: MLParams, z, tol: float, need_second: bool):
    zc = complex(z)
    if zc == 0:
        raise DomainError("logarithmic derivative needs z != 0")
    here = ml_eval(p, zc, tol).value
    low = ml_eval(MLParams(p.a, p.b - 1.0), zc, tol).value
    if abs(here) < 1e-13 * max(1.0, abs(low)):
        raise NearZeroDenominator(
            f"|E_(a,b)({zc!r})| = {abs(here):.3g} is below the ratio floor")
    if not need_second:
        return zc, low / here, None
    lower = ml_eval(MLParams(p.a, p.b - 2.0), zc, tol).value
    return zc, low / here, lower / here


def ml_log_derivative(p: MLParams, z, tol: float = DEFAULT_TOL) -> complex:
    """d log E / dz = (E_{a,b-1}/E_{a,b} - (b-1)) / (a z)."""
    zc, r1, _ = _log_ratios(p, z, tol, False)
    return (r1 - (p.b - 1.0)) / (p.a * zc)


def ml_log_derivative2(p: MLParams, z, tol: float = DEFAULT_TOL) -> complex:
    """Second logarithmic derivative by the three-function ratio form."""
    zc, r1, r2 = _log_ratios(p, z, tol, True)
    a, b = p.a, p.b
    return (r2 + a * (b - 1.0) - (a - 1.0) * r1 - r1 * r1) / (a * zc) ** 2


def ml_taylor_at(p: MLParams, y0, J: int, tol: float = DEFAULT_TOL) -> TaylorExpansion:
    """Expansion around y0 != 0 with coefficient j = (d^j E)(y0)/j!."""
    if not isinstance(J, int) or not (0 <= J <= _J_MAX):
        raise PreconditionViolation(f"expansion order must be 0..{_J_MAX}, got {J!r}")
    y0c = complex(y0)
    if y0c == 0:
        raise DomainError("re-expansion center must be nonzero; the origin series is ml_taylor")
    coeffs = []
    fact = 1.0
    for j in range(J + 1):
        if j:
            fact *= j
        coeffs.append(ml_derivative_n(p, y0c, j, tol) / fact)
    hint = math.inf
    if J > 0 and coeffs[J] != 0:
        hint = abs(coeffs[J - 1]) / abs(coeffs[J])
    return TaylorExpansion(y0c, tuple(coeffs), hint)


def log_ml_coeffs(p: MLParams, M: int):
    """Series coefficients c_1..c_M of log E_{a,b} around 0.

    c_m = -sum_k (-Gamma(b))^k / k * s[k][m], where s[k][.] is the k-fold
    Cauchy self-product of the tail coefficients 1/Gamma(b+a i), i >= 1.
    """
    if not isinstance(M, int) or not (1 <= M <= 12):
        raise PreconditionViolation(f"coefficient count must be 1..12, got {M!r}")
    if not (p.b > 0.0):
        raise DomainError(f"log expansion needs b > 0, got b={p.b!r}")
    a, b = p.a, p.b
    gb = gamma_real(b).value
    tail = [0.0] * (M + 1)
    for i in range(1, M + 1):
        tail[i] = recip_gamma(b + a * i)
    c = [0.0] * (M + 1)
    power = tail[:]
    fac = 1.0
    for k in range(1, M + 1):
        fac *= -gb
        if k > 1:
            nxt = [0.0] * (M + 1)
            for m in range(k, M + 1):
                s = 0.0
                for i in range(1, m - k + 2):
                    s += power[m - i] * tail[i]
                nxt[m] = s
            power = nxt
        for m in range(k, M + 1):
            c[m] -= fac / k * power[m]
    return c[1:]


def _recip_gamma_prime(x: float) -> float:
    """d/dx (1/Gamma) for real x; at the zeros -n the limit is (-1)^n n!."""
    if x <= 0.0 and x == math.floor(x):
        n = int(-x)
        if n > 170:
            return math.inf if n % 2 == 0 else -math.inf
        f = float(math.factorial(n))
        return f if n % 2 == 0 else -f
    return -digamma(x) * recip_gamma(x)


def ml_param_derivs(p: MLParams, z, tol: float = DEFAULT_TOL):
    """(dE/da, dE/db) by term-wise differentiation of the origin series;
    only valid inside the Taylor radius."""
    a, b = p.a, p.b
    zc = complex(z)
    if abs(zc) > taylor_radius(a, b):
        raise PreconditionViolation(
            f"|z| = {abs(zc):.3g} outside the Taylor radius {taylor_radius(a, b):.3g}")
    if zc == 0:
        return (0.0j, complex(_recip_gamma_prime(b)))
    da = 0.0j
    db = 0.0j
    zp = 1.0 + 0.0j
    quiet = 0
    for k in range(_MAX_TERMS):
        term = zp * _recip_gamma_prime(b + a * k)
        db += term
        da += k * term
        zp *= zc
        if abs(term) <= tol * max(abs(db), 1e-300):
            quiet += 1
            if quiet >= 3 and b + a * k >= 2.0:
                return (da, db)
        else:
            quiet = 0
    raise NonConvergence("parameter-derivative series did not settle")


def fermi_dirac_neg(k: int, y) -> complex:
    """Fermi-Dirac integral of negative integer order -k: the (k-1)-th
    derivative of the sigmoid, via second-kind Stirling numbers."""
    if not isinstance(k, int) or not (1 <= k <= _FD_MAX):
        raise PreconditionViolation(f"order must be 1..{_FD_MAX}, got {k!r}")
    yc = complex(y)
    em = cmath.exp(-yc)
    den = 1.0 + em
    if abs(den) <= 1e-9 * (1.0 + abs(em)):
        raise PoleError(f"sigmoid pole near y = {yc!r} (odd multiple of i*pi)")
    sig = 1.0 / den
    _, s2 = _stirling(k)
    acc = 0.0j
    fact = 1.0
    spow = 1.0 + 0.0j
    for m in range(1, k + 1):
        if m > 1:
            fact *= m - 1
        spow *= sig
        term = fact * s2[k][m] * spow
        acc += term if m % 2 == 1 else -term
    return acc


def ml_small_a(p: MLParams, z, M: int, tol: float = DEFAULT_TOL) -> EvalResult:
    """E_{a,b}(-z) for 0 < a < 0.2 and |z| < 1, expanded in powers of a
    around the geometric a=0 profile; term m couples the m-th reciprocal
    Gamma derivative at b with the sigmoid derivative at -log z."""
    a, b = p.a, p.b
    if not (0.0 < a < 0.2):
        raise PreconditionViolation(f"expansion needs 0 < a < 0.2, got {a!r}")
    zc = complex(z)
    if not (abs(zc) < 1.0):
        raise PreconditionViolation(f"expansion needs |z| < 1, got |z| = {abs(zc):.3g}")
    if not isinstance(M, int) or not (1 <= M <= _FD_MAX - 1):
        raise PreconditionViolation(f"term count must be 1..{_FD_MAX - 1}, got {M!r}")
    if zc == 0:
        rg = recip_gamma(b)
        return EvalResult(complex(rg), 2.0 * _EPS * abs(rg), MethodTag.Taylor)
    g = recip_gamma_derivs(b, M)
    y = -cmath.log(zc)
    acc = 0.0j
    fact = 1.0
    apow = 1.0
    sizes = []
    for m in range(M + 1):
        if m:
            fact *= m
            apow *= -a
        term = g[m] * fermi_dirac_neg(m + 1, y) * apow / fact
        acc += term
        sizes.append(abs(term))
    # growth below tol*|sum| is roundoff wiggle at the term floor, not divergence
    floor = max(tol, 4.0 * _EPS) * max(abs(acc), 1e-300)
    for m in range(M // 2 + 1, M + 1):
        if sizes[m] > sizes[m - 1] and sizes[m] > floor:
            raise NonConvergence(
                f"term sizes still growing at index {m} of {M}; a too large for this route")
    err = sizes[M] + 4.0 * _EPS * sum(sizes)
    return EvalResult(acc, err, MethodTag.Taylor)
