"""Evaluation engine for the two-parameter Mittag-Leffler function.

E_{a,b}(z) = sum_{k>=0} z^k / Gamma(b + a k) for real a >= 0, real b,
complex z.  The routes: Taylor summation, a catalog of closed forms, the
residue-plus-integral representation, the negative-axis integral pair,
cyclotomic reduction in a, b-shift recursions, large-|z| asymptotics, and
the a=0 geometric sum.  ml_eval picks one from (a, b, z); every result
carries the method used and an absolute error estimate.

Values that genuinely exceed the double range saturate to inf rather than
raise, so table generation over wide grids keeps going.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from ._backend import kernels as _k
from .errors import (CancellationLoss, DomainError, NonConvergence,
                     PreconditionViolation, RayProximity)
from .gammafn import incomplete_gamma_P, recip_gamma
from .quadrature import QuadratureConfig, integrate_semi_infinite

_EPS = 2.220446049250313e-16
DELTA_RAY = 0.05 * math.pi
DEFAULT_TOL = 1e-12
_MAX_TERMS = 20000


class MethodTag(Enum):
    Taylor = "taylor"
    ClosedForm = "closed_form"
    IntegralRep = "integral_rep"
    NegRealIntegral = "neg_real_integral"
    CyclotomicReduction = "cyclotomic_reduction"
    BShift = "b_shift"
    Asymptotic = "asymptotic"
    Geometric = "geometric"


@dataclass(frozen=True)
class MLParams:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a >= 0.0) or math.isinf(self.a):
            raise DomainError(f"first parameter must be finite and >= 0, got {self.a!r}")
        if not math.isfinite(self.b):
            raise DomainError(f"second parameter must be finite, got {self.b!r}")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_err_est: float
    method: MethodTag


def taylor_radius(a: float, b: float) -> float:
    """Dispatch radius inside which plain Taylor summation is trusted."""
    base = 1.0 + math.floor(b)
    if base <= 0.0:
        return 1.0
    return max(1.0, base ** a / 2.0)


def asym_threshold(a: float) -> float:
    """|z| beyond which the large-argument expansion takes over."""
    return 12.0 ** a


def _cexp(w: complex) -> complex:
    if w.real > 709.0:
        return cmath.rect(math.inf, w.imag)
    return cmath.exp(w)


def _root(z: complex, a: float) -> complex:
    # |z|^(1/a) e^(i arg z / a) off the principal log; arg may leave (-pi, pi]
    return cmath.exp(cmath.log(z) / a)


# individual routes ----------------------------------------------------------

def ml_taylor(p: MLParams, z, tol: float = DEFAULT_TOL,
              max_terms: int = _MAX_TERMS) -> EvalResult:
    """Direct partial sums; raises CancellationLoss when the partial sums
    tower over the result, which tells the dispatcher to use an integral."""
    if not p.a > 0.0:
        raise PreconditionViolation("Taylor summation needs a > 0")
    zc = complex(z)
    re, im, err, _n, ratio, hit = _k.ml_taylor_sum(
        p.a, p.b, zc.real, zc.imag, tol, max_terms)
    if hit:
        raise NonConvergence(f"Taylor did not settle within {max_terms} terms")
    if ratio > 1e8:
        raise CancellationLoss(
            f"partial sums peaked {ratio:.2e} times the final magnitude")
    return EvalResult(complex(re, im), err, MethodTag.Taylor)


def _taylor_last_resort(p: MLParams, z: complex, tol: float) -> EvalResult:
    re, im, err, _n, ratio, hit = _k.ml_taylor_sum(
        p.a, p.b, z.real, z.imag, tol, _MAX_TERMS)
    if hit:
        raise NonConvergence(
            f"no route converged for a={p.a}, b={p.b}, z={z}")
    if not math.isfinite(ratio):
        err = math.inf
    return EvalResult(complex(re, im), err, MethodTag.Taylor)


def _erfcx(t: float) -> float:
    """e^(t^2) erfc(t) for t >= 0 without overflow."""
    if t <= 6.0:
        return math.exp(t * t) * _k.erfc_real(t)
    # asymptotic continued product; minimum term ~ e^(-t^2), far below eps
    inv2t2 = 1.0 / (2.0 * t * t)
    term = 1.0
    acc = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (2 * k - 1) * inv2t2
        if abs(nxt) >= abs(term):
            break
        term = nxt
        acc += term
        if abs(term) <= 1e-18 * abs(acc):
            break
    return acc / (t * math.sqrt(math.pi))


def _e1b(p: MLParams, zc: complex):
    b = p.b
    if b == 1.0:
        v = _cexp(zc)
        return EvalResult(v, 4.0 * _EPS * abs(v), MethodTag.ClosedForm)
    if b <= 0.0:
        return None
    if zc.imag == 0.0 and zc.real > 0.0 and b > 1.0:
        # z^(1-b) e^z P(b-1, z): every factor positive, no cancellation
        x = zc.real
        lg = (1.0 - b) * math.log(x) + x
        pv = incomplete_gamma_P(b - 1.0, x)
        v = math.exp(lg) * pv if lg <= 709.0 else math.inf
        err = abs(v) * (1e-12 + (2.0 + abs(lg)) * _EPS)
        return EvalResult(complex(v, 0.0), err, MethodTag.ClosedForm)
    # alternating-series form; loses e^c * eps to cancellation where
    # c = |z| + min(Re z, 0), so hand large-|z| points to the asymptotics
    c = abs(zc) + min(zc.real, 0.0)
    if c > 18.0:
        return None
    re, im, err = _k.e1b_series(b, zc.real, zc.imag)
    return EvalResult(complex(re, im), err, MethodTag.ClosedForm)


def ml_closed_form(p: MLParams, z):
    """The (a, b, z) families with elementary or incomplete-gamma forms.

    Returns None when no family applies (including cases declined for
    numerical reasons, e.g. the small-|z| cancellation of the integer-order
    exponential sums; the Taylor route covers those).
    """
    a, b = p.a, p.b
    zc = complex(z)

    if a == 0.0:
        if abs(zc) >= 1.0:
            return None
        v = recip_gamma(b) / (1.0 - zc)
        return EvalResult(v, 4.0 * _EPS * abs(v), MethodTag.Geometric)

    if a == 1.0:
        return _e1b(p, zc)

    if a == 2.0 and b == 1.0:
        w = cmath.sqrt(zc)
        ew = _cexp(w)
        v = 0.5 * (ew + 1.0 / ew) if abs(ew) > 0.0 else 0.5 * ew
        return EvalResult(v, (abs(v) + 1.0) * (3.0 + abs(w)) * _EPS,
                          MethodTag.ClosedForm)

    if a == 2.0 and b == 2.0 and abs(zc) >= 1e-2:
        w = cmath.sqrt(zc)
        ew = _cexp(w)
        v = 0.5 * (ew - 1.0 / ew) / w
        return EvalResult(v, (abs(v) + 1.0 / abs(w)) * (3.0 + abs(w)) * _EPS,
                          MethodTag.ClosedForm)

    if a == 0.5 and b == 1.0 and zc.imag == 0.0:
        x = zc.real
        if x >= 0.0:
            x2 = x * x
            v = math.exp(x2) * (2.0 - _k.erfc_real(x)) if x2 <= 709.0 else math.inf
            return EvalResult(complex(v, 0.0), abs(v) * (4.0 + x2) * _EPS,
                              MethodTag.ClosedForm)
        v = _erfcx(-x)
        return EvalResult(complex(v, 0.0), abs(v) * 8.0 * _EPS,
                          MethodTag.ClosedForm)

    m = round(a)
    n = round(b)
    if (abs(a - m) < 1e-12 and abs(b - n) < 1e-12 and m >= 1
            and 1 <= n <= m and abs(zc) >= 1.0):
        root = _root(zc, float(m))
        tot = 0.0j
        mag = 0.0
        wmax = 0.0
        for r in range(m):
            w = root * cmath.exp(2j * math.pi * r / m)
            term = cmath.exp(-2j * math.pi * r * (n - 1) / m) * _cexp(w)
            tot += term
            mag += abs(term)
            wmax = max(wmax, abs(w))
        pref = zc ** (-(n - 1) / m) / m
        v = pref * tot
        err = abs(pref) * mag * (3.0 + wmax) * _EPS
        return EvalResult(v, err, MethodTag.ClosedForm)

    if 0.0 < a < 1.0:
        n = round(1.0 / a)
        if (n >= 2 and abs(a * n - 1.0) < 1e-12 and zc.imag == 0.0
                and zc.real > 0.0 and b >= 1.0):
            x = zc.real
            xn = x ** n
            s = 0.0
            for j in range(n):
                sj = b - 1.0 + j / n
                s += 1.0 if sj == 0.0 else incomplete_gamma_P(sj, min(xn, 1e300))
            lg = (1.0 - b) * n * math.log(x) + xn
            v = math.exp(lg) * s if lg <= 709.0 else math.inf
            err = abs(v) * (n * 1e-13 + (2.0 + abs(lg)) * _EPS)
            return EvalResult(complex(v, 0.0), err, MethodTag.ClosedForm)

    return None


def ml_neg_real(p: MLParams, x: float, cfg: QuadratureConfig = None) -> EvalResult:
    """E_{a,b}(-x) for x > 0 through the damped-integral pair on (0, inf)."""
    a, b = p.a, p.b
    if not (0.0 < a <= 1.0):
        raise PreconditionViolation(f"negative-axis integral needs 0 < a <= 1, got {a!r}")
    if not (a + 1.0 > b):
        raise PreconditionViolation(f"negative-axis integral needs b < a+1, got b={b!r}")
    if not (x > 0.0 and math.isfinite(x)):
        raise PreconditionViolation(f"argument must be a finite positive real, got {x!r}")
    if a == 1.0:
        # the integrand's algebraic kernel degenerates to a double root, so
        # the quadrature pair is unusable; sum the series instead, raising b
        # above 0 first through E_{1,b}(z) = 1/Gamma(b) + z E_{1,b+1}(z)
        head = 0.0
        mag = 0.0
        zpow = 1.0
        bj = b
        while bj <= 0.0:
            t = zpow * _k.rgamma_real(bj)
            head += t
            mag += abs(t)
            zpow *= -x
            bj += 1.0
        re, _im, err = _k.e1b_series(bj, -x, 0.0)
        v = head + zpow * re
        err = abs(zpow) * err + (mag + abs(v)) * 4.0 * _EPS
        res = EvalResult(complex(v, 0.0), err, MethodTag.NegRealIntegral)
        if x > 18.0:
            # deep-negative b makes the raised heads cancel at large x;
            # hand over to the tail expansion when its estimate is tighter
            alt = ml_asymptotic(p, complex(-x, 0.0), min(250, int(x)))
            if alt.abs_err_est < res.abs_err_est:
                return alt
        return res
    cfg = cfg or QuadratureConfig()
    v, err, _ok = _k.neg_axis_integral(a, b, x, cfg.rel_tol, cfg.abs_tol,
                                       cfg.max_subdivisions)
    return EvalResult(complex(v, 0.0), err, MethodTag.NegRealIntegral)


def ml_integral_rep(p: MLParams, z, cfg: QuadratureConfig = None) -> EvalResult:
    """Residue sum plus the two damped real integrals over the algebraic
    kernel y^2a - 2 z y^a cos(pi a) + z^2; valid away from the critical
    rays |arg z| = a pi where that kernel pinches the contour."""
    a, b = p.a, p.b
    if not (0.0 < a <= 1.0):
        raise PreconditionViolation(f"integral representation needs 0 < a <= 1, got {a!r}")
    if not (a - b > -1.0):
        raise PreconditionViolation(
            f"integral representation needs b < a+1; shift b={b!r} first")
    zc = complex(z)
    if zc == 0.0:
        raise PreconditionViolation("z = 0 has no integral representation")
    theta = abs(cmath.phase(zc))
    if abs(theta - a * math.pi) <= DELTA_RAY:
        raise RayProximity(
            f"arg z = {cmath.phase(zc):.4f} within the exclusion band of |arg z| = a pi")
    cfg = cfg or QuadratureConfig()

    cos_pa = math.cos(math.pi * a)
    z2 = zc * zc
    p1 = 2.0 * a - b
    p2 = a - b

    def denom(y):
        ya = y ** a
        return ya * ya - 2.0 * zc * ya * cos_pa + z2

    def f1(y):
        return y ** p1 * math.exp(-y) / denom(y)

    def f2(y):
        return y ** p2 * math.exp(-y) / denom(y)

    r1 = integrate_semi_infinite(f1, 1.0, cfg,
                                 singular_lo=p1 if p1 < 0.0 else None,
                                 power=max(p1, 0.0))
    r2 = integrate_semi_infinite(f2, 1.0, cfg,
                                 singular_lo=p2 if p2 < 0.0 else None,
                                 power=max(p2, 0.0))
    sb = math.sin(math.pi * b)
    sab = math.sin(math.pi * (a - b))
    value = (sb * r1.value + zc * sab * r2.value) / math.pi
    err = (abs(sb) * r1.err_est + abs(zc) * abs(sab) * r2.err_est) / math.pi

    two_pi = 2.0 * math.pi
    arg = cmath.phase(zc)
    lo = int(math.floor(-(a / 2.0 + arg / two_pi))) - 1
    hi = int(math.floor(a / 2.0 - arg / two_pi)) + 1
    for k in range(lo, hi + 1):
        # strictly enclosed poles only; the ray band keeps the boundary away
        if abs(arg + two_pi * k) < a * math.pi:
            w = cmath.exp((cmath.log(zc) + 2j * math.pi * k) / a)
            term = w ** (1.0 - b) * _cexp(w) / a
            value += term
            err += abs(term) * (3.0 + abs(w)) * _EPS
    if not math.isfinite(abs(value)):
        err = math.inf
    return EvalResult(value, err, MethodTag.IntegralRep)


def ml_reduce_a(p: MLParams, z, tol: float = DEFAULT_TOL) -> EvalResult:
    """Average of n sub-evaluations at first parameter a/n, n = floor(a)+1."""
    if not p.a > 1.0:
        raise PreconditionViolation(f"reduction applies to a > 1, got {p.a!r}")
    zc = complex(z)
    n = int(math.floor(p.a)) + 1
    sub = MLParams(p.a / n, p.b)
    root = _root(zc, float(n)) if zc != 0.0 else 0.0j
    total = 0.0j
    err = 0.0
    mag = 0.0
    for r in range(n):
        w = root * cmath.exp(2j * math.pi * r / n)
        res = ml_eval(sub, w, tol)
        total += res.value
        err += res.abs_err_est
        mag += abs(res.value)
    value = total / n
    if not math.isfinite(abs(value)):
        return EvalResult(value, math.inf, MethodTag.CyclotomicReduction)
    return EvalResult(value, (err + 4.0 * _EPS * mag) / n,
                      MethodTag.CyclotomicReduction)


def ml_shift_b(p: MLParams, z, m: int, tol: float = DEFAULT_TOL) -> EvalResult:
    """Rebuild E_{a,b} from an evaluation at b -+ m a.

    Positive m reads the value off E_{a,b-ma} minus the leading m Taylor
    terms; negative m runs the recursion the other way.  The subtraction's
    cancellation is folded into the error estimate.
    """
    zc = complex(z)
    if zc == 0.0:
        raise DomainError("the b-shift recursion is undefined at z = 0")
    if m == 0:
        return ml_eval(p, zc, tol)
    a, b = p.a, p.b
    if m > 0:
        bsub = b - m * a
        sub = ml_eval(MLParams(a, bsub), zc, tol)
        acc = 0.0j
        mag = 0.0
        zp = 1.0 + 0.0j
        for l in range(m):
            t = zp * recip_gamma(bsub + l * a)
            acc += t
            mag += abs(t)
            zp *= zc
        scale = zc ** (-m)
        value = (sub.value - acc) * scale
        err = abs(scale) * (sub.abs_err_est
                            + 2.0 * _EPS * (abs(sub.value) + mag))
        return EvalResult(value, err, MethodTag.BShift)
    mm = -m
    bsub = b + mm * a
    sub = ml_eval(MLParams(a, bsub), zc, tol)
    acc = 0.0j
    mag = 0.0
    zp = 1.0 + 0.0j
    for l in range(mm):
        t = zp * recip_gamma(b + l * a)
        acc += t
        mag += abs(t)
        zp *= zc
    head = zp * sub.value
    value = head + acc
    err = abs(zp) * sub.abs_err_est + 2.0 * _EPS * (abs(head) + mag)
    return EvalResult(value, err, MethodTag.BShift)


def ml_asymptotic(p: MLParams, z, K: int) -> EvalResult:
    """Large-|z| expansion: the k=0 exponential (inside its sector) minus
    the algebraic tail sum_{k=1..K} z^-k / Gamma(b - a k)."""
    a, b = p.a, p.b
    if not (0.0 < a < 2.0):
        raise PreconditionViolation(f"asymptotic expansion needs 0 < a < 2, got {a!r}")
    zc = complex(z)
    az = abs(zc)
    if az < asym_threshold(a):
        raise PreconditionViolation(
            f"|z| = {az:.3g} below the asymptotic threshold {asym_threshold(a):.3g}")
    k_opt = int(az ** min(1.0, 1.0 / a))
    if K > k_opt:
        raise PreconditionViolation(f"K = {K} exceeds the optimal cutoff {k_opt}")

    acc = 0.0j
    mag = 0.0
    wsum = 0.0
    zpow = 1.0 + 0.0j
    k_stop = K
    for k in range(1, K + 1):
        zpow /= zc
        t = zpow * recip_gamma(b - a * k)
        acc += t
        mag += abs(t)
        # each term carries a few ulps plus the k accumulated power divisions
        wsum += (k + 6.0) * abs(t)
        k_stop = k
        if abs(t) < 1e-18 * max(mag, 1e-300) and k > 2:
            break
    omit = az ** (-(k_stop + 1))
    omitted = max(omit * abs(recip_gamma(b - a * (k_stop + 1))),
                  omit / az * abs(recip_gamma(b - a * (k_stop + 2))))
    value = -acc
    err = omitted + _EPS * wsum

    theta = abs(cmath.phase(zc))
    w = _root(zc, a)
    pref = zc ** ((1.0 - b) / a) / a
    if theta < 0.95 * a * math.pi:
        head = pref * _cexp(w)
        value = head + value
        # the root w and the prefactor power carry eps-relative argument
        # noise, amplified to |w| (resp. |(1-b)/a * log z|) in the exponential
        amp = abs(w.real) + abs(w.imag) + abs((1.0 - b) / a) * abs(cmath.log(zc))
        err += abs(head) * (4.0 + amp) * _EPS
    elif theta <= a * math.pi:
        # exponential dropped inside the fading band; count it as error
        err += abs(pref) * math.exp(min(w.real, 700.0))
    if not math.isfinite(abs(value)):
        err = math.inf
    return EvalResult(value, err, MethodTag.Asymptotic)


def hadamard_series(a: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """sum_k x^k / (k!)^a, all terms positive."""
    if not (a > 0.0) or not (x >= 0.0):
        raise DomainError(f"series needs a > 0 and x >= 0, got a={a!r}, x={x!r}")
    acc = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= x / k ** a
        acc += term
        if math.isinf(acc):
            raise OverflowError("series exceeds the double range")
        if term <= tol * acc and k > 2:
            return acc
        if k >= 200000:
            raise NonConvergence(
                f"series still moving after {k} terms (a={a!r}, x={x!r})")


# dispatcher -----------------------------------------------------------------

def _shift_steps(a: float, b: float) -> int:
    """Steps m with b - m a inside the window (a-1, a+1), endpoints avoided."""
    if b >= a + 1.0 - 1e-12:
        m = int(math.ceil((b - (a + 1.0)) / a))
        while b - m * a >= a + 1.0 - 1e-12:
            m += 1
        return m
    m = -int(math.ceil(((a - 1.0) - b) / a))
    while b - m * a <= a - 1.0:
        m -= 1
    return m


def ml_eval(p: MLParams, z, tol: float = DEFAULT_TOL) -> EvalResult:
    """Evaluate E_{a,b}(z), choosing the route from (a, b, z)."""
    zc = complex(z)
    a = p.a
    if a == 0.0:
        if abs(zc) >= 1.0:
            raise DomainError("a = 0 reduces to a geometric sum; needs |z| < 1")
        return ml_closed_form(p, zc)
    if a < 1e-4:
        if abs(zc) < 1.0:
            from .calculus import ml_small_a
            return ml_small_a(p, -zc, 24, tol)
        raise NonConvergence(
            f"a = {a!r} needs O(1/a) Taylor terms and no integral route applies for |z| >= 1")
    return _dispatch(p, zc, tol, 0)


def _dispatch(p: MLParams, z: complex, tol: float, ray_depth: int) -> EvalResult:
    a, b = p.a, p.b
    got = ml_closed_form(p, z)
    if got is not None:
        return got
    if a > 1.0:
        return ml_reduce_a(p, z, tol)
    if abs(z) <= taylor_radius(a, b):
        try:
            return ml_taylor(p, z, tol)
        except (CancellationLoss, NonConvergence):
            pass
    if b >= a + 1.0 - 1e-12:
        # out of the integral-representation range; rebuild from the window
        return ml_shift_b(p, z, _shift_steps(a, b), tol)
    if z.imag == 0.0 and z.real < 0.0:
        return ml_neg_real(p, -z.real)
    if abs(z) >= asym_threshold(a):
        k_opt = int(abs(z) ** min(1.0, 1.0 / a))
        return ml_asymptotic(p, z, min(k_opt, 250))
    try:
        return ml_integral_rep(p, z)
    except RayProximity:
        if ray_depth == 0:
            # halving a moves the critical rays off the point; the principal
            # square root may still sit in the band, in which case its
            # sub-dispatch lands on the Taylor fallback below
            root = cmath.sqrt(z)
            half = MLParams(a / 2.0, b)
            r1 = _dispatch(half, root, tol, 1)
            r2 = _dispatch(half, -root, tol, 1)
            value = 0.5 * (r1.value + r2.value)
            err = 0.5 * (r1.abs_err_est + r2.abs_err_est) \
                + 2.0 * _EPS * (abs(r1.value) + abs(r2.value))
            return EvalResult(value, err, MethodTag.CyclotomicReduction)
    return _taylor_last_resort(p, z, tol)
