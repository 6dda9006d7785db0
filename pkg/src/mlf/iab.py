"""The companion integral I_{a,b}(z) = integral over u >= 0 of z^u / Gamma(b+au).

Three routes: direct semi-infinite quadrature of the definition (|z| < 1),
the reciprocal-Gamma-derivative series in powers of a/log z, and the
residue-plus-branch-cut representation valid off the Re(z^{1/a}) = 0 line,
extended to b > 1 through the linear parameter map. euler_maclaurin_E
bridges I back to the series function it shadows.
"""

import cmath
import math
from dataclasses import dataclass

from .core import DEFAULT_TOL, EvalResult, MethodTag
from .errors import DomainError, NonConvergence, PreconditionViolation, RayProximity
from .gammafn import recip_gamma, recip_gamma_derivs
from .quadrature import QuadratureConfig, integrate_finite, integrate_semi_infinite

_EPS = 2.220446049250313e-16
_DELTA_RE = 0.02


@dataclass(frozen=True)
class IabParams:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise DomainError(f"first parameter must be positive and finite, got {self.a!r}")
        if not math.isfinite(self.b):
            raise DomainError(f"second parameter must be finite, got {self.b!r}")


def _root(z: complex, a: float) -> complex:
    return cmath.exp(cmath.log(z) / a)


def _sinpi(x: float) -> float:
    # exactly 0 at integers so the log-weighted kernel term drops out cleanly
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n & 1 else s


def _cospi(x: float) -> float:
    n = round(x)
    c = math.cos(math.pi * (x - n))
    return -c if n & 1 else c


def _cexp(w: complex) -> complex:
    if w.real > 709.0:
        return cmath.rect(math.inf, w.imag)
    return cmath.exp(w)


def iab_quadrature(p: IabParams, z, cfg: QuadratureConfig = None) -> EvalResult:
    """Direct quadrature of the defining integral; |z| < 1 so the integrand
    decays like e^(u ln|z|). Negative real z is split into the cosine and
    sine components of z^u = |z|^u e^(i pi u)."""
    a, b = p.a, p.b
    zc = complex(z)
    if zc == 0:
        return EvalResult(0.0j, 0.0, MethodTag.IntegralRep)
    az = abs(zc)
    if az >= 1.0:
        raise PreconditionViolation(f"quadrature needs |z| < 1, got |z| = {az:.3g}")
    decay = -math.log(az)
    if zc.imag == 0.0 and zc.real < 0.0:
        lz = math.log(az)
        re = integrate_semi_infinite(
            lambda u: math.exp(u * lz) * math.cos(math.pi * u) * recip_gamma(b + a * u),
            decay, cfg)
        im = integrate_semi_infinite(
            lambda u: math.exp(u * lz) * math.sin(math.pi * u) * recip_gamma(b + a * u),
            decay, cfg)
        value = complex(re.value.real, im.value.real)
        err = re.err_est + im.err_est
        good = re.converged and im.converged
    else:
        lz = cmath.log(zc)
        q = integrate_semi_infinite(
            lambda u: cmath.exp(u * lz) * recip_gamma(b + a * u), decay, cfg)
        value = q.value
        err = q.err_est
        good = q.converged
    if not good:
        raise NonConvergence("defining-integral quadrature did not converge")
    return EvalResult(value, err + 4.0 * _EPS * abs(value), MethodTag.IntegralRep)


def iab_series(p: IabParams, z, M: int) -> EvalResult:
    """-(1/ln z) sum_j g_j (-a/ln z)^j with g_j the j-th derivative of
    1/Gamma at b; geometric-tail truncation estimate in q = |a/ln z|."""
    a, b = p.a, p.b
    if not isinstance(M, int) or M < 0:
        raise PreconditionViolation(f"term count must be a non-negative integer, got {M!r}")
    zc = complex(z)
    if zc == 0 or not (abs(zc) < 1.0):
        raise PreconditionViolation(f"series needs 0 < |z| < 1, got |z| = {abs(zc):.3g}")
    lz = cmath.log(zc)
    q = abs(a / lz)
    if not (q < 1.0):
        raise PreconditionViolation(f"series needs |a/ln z| < 1, got {q:.3g}")
    g = recip_gamma_derivs(b, M)
    ratio = -a / lz
    acc = 0.0j
    rpow = 1.0 + 0.0j
    mag = 0.0
    sizes = []
    for j in range(M + 1):
        term = g[j] * rpow
        acc += term
        sizes.append(abs(term))
        mag += sizes[-1]
        rpow *= ratio
    # the derivative magnitudes wobble, so anchor the geometric tail on the
    # largest of the closing terms rather than the literal last one
    tail = max(sizes[-3:]) * q / (1.0 - q)
    scale = 1.0 / abs(lz)
    value = -acc / lz
    err = scale * tail + 4.0 * _EPS * scale * mag
    return EvalResult(value, err, MethodTag.Taylor)


def _rep_tail(b: float, w: complex, cfg) -> tuple:
    """The branch-cut integral of the representation for b <= 1, split at
    x = 1: the inner part in t = -ln x through a tangent map (bounded on
    the half-open angle interval), the outer part with its e^(-Re w) decay."""
    s = _sinpi(b)
    c = _cospi(b)

    def inner(theta):
        t = math.tan(theta)
        sec2 = 1.0 + t * t
        damp = math.exp(-(1.0 - b) * t) if b < 1.0 else 1.0
        return (cmath.exp(-w * math.exp(-t)) * damp * sec2
                * (c - (s / math.pi) * t) / (math.pi * math.pi + t * t))

    def outer(y):
        x = 1.0 + y
        lx = math.log1p(y)
        return (cmath.exp(-w * x) * x ** (-b)
                * ((s / math.pi) * lx + c) / (math.pi * math.pi + lx * lx))

    qa = integrate_finite(inner, 0.0, 0.5 * math.pi, cfg)
    qb = integrate_semi_infinite(outer, w.real, cfg)
    if not (qa.converged and qb.converged):
        raise NonConvergence("branch-cut quadrature did not converge")
    return qa.value + qb.value, qa.err_est + qb.err_est


def iab_rep(p: IabParams, z, cfg: QuadratureConfig = None) -> EvalResult:
    """Residue-plus-branch-cut representation, valid off Re(z^{1/a}) = 0;
    identically zero on the negative side. b > 1 is reduced to the b = 1
    kernel by the linear parameter map, which costs one finite integral."""
    a, b = p.a, p.b
    zc = complex(z)
    if zc == 0:
        raise RayProximity("z = 0 sits on the Re(z^(1/a)) = 0 line")
    w = _root(zc, a)
    if abs(w.real) < _DELTA_RE:
        raise RayProximity(
            f"Re(z^(1/a)) = {w.real:.3g} within {_DELTA_RE} of the vanishing line")
    if w.real < 0.0:
        return EvalResult(0.0j, 0.0, MethodTag.IntegralRep)
    pref = zc ** ((1.0 - b) / a) / a
    if b <= 1.0:
        tail, terr = _rep_tail(b, w, cfg)
        braces = _cexp(w) + tail
        corr_err = 0.0
    else:
        tail, terr = _rep_tail(1.0, w, cfg)
        qc = integrate_finite(
            lambda v: cmath.exp(v * cmath.log(w)) * recip_gamma(1.0 + v),
            0.0, b - 1.0, cfg)
        if not qc.converged:
            raise NonConvergence("parameter-map correction integral did not converge")
        braces = _cexp(w) + tail - qc.value
        corr_err = qc.err_est
    value = pref * braces
    if not math.isfinite(abs(value)):
        return EvalResult(value, math.inf, MethodTag.IntegralRep)
    noise = (4.0 + abs(w.real) + abs(w.imag)) * _EPS * abs(_cexp(w))
    err = abs(pref) * (terr + corr_err + noise) + 4.0 * _EPS * abs(value)
    return EvalResult(value, err, MethodTag.IntegralRep)


def iab_eval(p: IabParams, z, cfg: QuadratureConfig = None) -> EvalResult:
    """Route picker: series deep inside the unit disk, the representation
    from e^(-a) outward, direct quadrature as the in-disk fallback."""
    zc = complex(z)
    if zc == 0:
        return EvalResult(0.0j, 0.0, MethodTag.IntegralRep)
    az = abs(zc)
    if az < math.exp(-p.a) and abs(p.a / cmath.log(zc)) <= 0.4:
        # a/ln z is below 1 in this disk but approaches it at the rim,
        # where the series stalls; the estimate decides if it was enough
        r = iab_series(p, zc, 60)
        if r.abs_err_est <= 1e-9 * max(1.0, abs(r.value)):
            return r
    if az < 1.0 and _root(zc, p.a).real < _DELTA_RE:
        # the representation vanishes left of the critical line, which is
        # not the defining integral; inside the disk the latter is available
        return iab_quadrature(p, zc, cfg)
    return iab_rep(p, zc, cfg)


def euler_maclaurin_E(p: IabParams, z, m: int) -> EvalResult:
    """Bridge back to the series function:
    E_{a,b}(z) ~ z^m I_{a,b+ma}(z) + sum_{l=0}^{m} z^l / Gamma(b+la),
    with the half-step residual ~ |z|^m / (2 Gamma(b+ma)) in the estimate."""
    a, b = p.a, p.b
    if not isinstance(m, int) or m < 0:
        raise PreconditionViolation(f"bridge order must be a non-negative integer, got {m!r}")
    zc = complex(z)
    if zc == 0:
        rg = recip_gamma(b)
        return EvalResult(complex(rg), 2.0 * _EPS * abs(rg), MethodTag.BShift)
    if not (abs(zc) < 1.0):
        raise PreconditionViolation(f"bridge needs |z| < 1, got |z| = {abs(zc):.3g}")
    sub = iab_quadrature(IabParams(a, b + m * a), zc)
    zm = zc ** m
    acc = 0.0j
    zp = 1.0 + 0.0j
    mag = 0.0
    for l in range(m + 1):
        t = zp * recip_gamma(b + l * a)
        acc += t
        mag += abs(t)
        zp *= zc
    value = zm * sub.value + acc
    residual = 0.5 * abs(zm) * abs(recip_gamma(b + m * a))
    err = abs(zm) * sub.abs_err_est + residual + 4.0 * _EPS * (mag + abs(value))
    return EvalResult(value, err, MethodTag.BShift)
