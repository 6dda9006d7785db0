"""Probability laws tied to the two-parameter function: the heavy-tailed
Mittag-Leffler distribution (cdf 1 - E_a(-t^a)), its density, quantiles and
samplers, the one-sided stable law R with Laplace transform e^(-z^a), and
the spectral weight whose transform recovers E_a(-s^a).

Samplers draw from an externally supplied uniform source (anything with a
numpy-Generator-style .random()); there is no hidden global state, and a
fixed seed reproduces the exact output sequence.
"""

import math
from dataclasses import dataclass

from . import _backend as _k
from .core import MLParams, ml_eval
from .errors import (DomainError, NonConvergence, PreconditionViolation,
                     SeriesDivergence)

_QUANTILE_TOL = 1e-10
_MAX_ITER = 200
_STABLE_TERMS = 400
# beyond this peak-partial-to-sum ratio the alternating stable series has
# cancelled away all binary64 digits
_CANCEL_RATIO = 1e13


@dataclass(frozen=True)
class MLDistribution:
    a: float

    def __post_init__(self):
        if not (0.0 < self.a <= 1.0):
            raise DomainError(f"tail exponent must lie in (0, 1], got {self.a!r}")


@dataclass(frozen=True)
class StableOneSided:
    a: float

    def __post_init__(self):
        if not (0.0 < self.a < 1.0):
            raise DomainError(f"stable index must lie in (0, 1), got {self.a!r}")


def _sinpi(x: float) -> float:
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n & 1 else s


def ml_cdf(d: MLDistribution, t: float) -> float:
    """Pr[M <= t] = 1 - E_a(-t^a)."""
    if t < 0.0:
        raise PreconditionViolation(f"cdf argument must be >= 0, got {t!r}")
    if t == 0.0:
        return 0.0
    e = ml_eval(MLParams(d.a, 1.0), -(t ** d.a))
    return 1.0 - e.value.real


def ml_pdf(d: MLDistribution, t: float) -> float:
    """Density t^(a-1) E_{a,a}(-t^a); blows up like t^(a-1) at 0 for a < 1."""
    if not (t > 0.0):
        raise PreconditionViolation(f"density argument must be > 0, got {t!r}")
    e = ml_eval(MLParams(d.a, d.a), -(t ** d.a))
    return t ** (d.a - 1.0) * e.value.real


def spectral_density_fa(a: float, t: float) -> float:
    """Non-negative weight whose Laplace transform is E_a(-s^a)."""
    if not (0.0 < a < 1.0):
        raise PreconditionViolation(f"spectral density needs 0 < a < 1, got {a!r}")
    if not (t > 0.0):
        raise PreconditionViolation(f"spectral density argument must be > 0, got {t!r}")
    ta = t ** a
    return (_sinpi(a) / math.pi) * t ** (a - 1.0) / (1.0 + 2.0 * ta * math.cos(math.pi * a) + ta * ta)


def ml_quantile(d: MLDistribution, p: float) -> float:
    """Unique t with |cdf(t) - p| <= 1e-10, by geometric bracketing from
    t = 1 and a bracket-safeguarded Newton iteration."""
    if not (0.0 < p < 1.0):
        raise PreconditionViolation(f"quantile level must lie in (0, 1), got {p!r}")
    iters = 0
    lo, hi = 1.0, 1.0
    f_one = ml_cdf(d, 1.0)
    if f_one >= p:
        while ml_cdf(d, lo) >= p:
            lo /= 4.0
            iters += 1
            if lo == 0.0:
                break
            if iters >= _MAX_ITER:
                raise NonConvergence(f"bracketing stalled at level p={p!r}")
    else:
        while ml_cdf(d, hi) < p:
            hi *= 4.0
            iters += 1
            if iters >= _MAX_ITER:
                raise NonConvergence(f"bracketing stalled at level p={p!r}")
    t = math.sqrt(max(lo, 1e-300) * hi)
    if f_one == p:
        return 1.0
    while iters < _MAX_ITER:
        iters += 1
        F = ml_cdf(d, t)
        if abs(F - p) <= _QUANTILE_TOL:
            return t
        if F < p:
            lo = t
        else:
            hi = t
        f = ml_pdf(d, t)
        step_ok = f > 1e-300
        if step_ok:
            t_new = t - (F - p) / f
            step_ok = lo < t_new < hi
        t = t_new if step_ok else 0.5 * (lo + hi)
    raise NonConvergence(f"quantile iteration did not reach 1e-10 at p={p!r}")


def _clip_unit(u: float) -> float:
    # uniform generators may return exactly 0.0; the quantile needs (0, 1)
    if u <= 0.0:
        return 5e-324
    if u >= 1.0:
        return 1.0 - 2.3e-16
    return u


def ml_sample(d: MLDistribution, rng, n: int) -> list:
    """n i.i.d. draws by inverse-cdf transform of uniforms from rng."""
    if n < 1:
        raise PreconditionViolation(f"sample count must be >= 1, got {n!r}")
    return [ml_quantile(d, _clip_unit(rng.random())) for _ in range(n)]


def _stable_tail_sum(a: float, t: float, tol: float, shift: int) -> float:
    """Alternating large-t series shared by the stable density (shift 1,
    weight Gamma(ka+1) t^(-ak-1)) and tail probability (shift 0, Gamma(ka)
    t^(-ak)). Terms first grow for small t; the sum is trusted only if the
    term envelope decays by ratio < 0.9 within 400 terms and the running
    peak has not cancelled away the binary64 mantissa."""
    value, err, ratio, _n, decayed = _k.stable_series(a, t, tol, shift)
    if not decayed:
        if math.isinf(err):
            raise SeriesDivergence(
                f"stable series term overflows at t={t!r} (t below the validity edge)")
        raise SeriesDivergence(
            f"stable series not decaying within {_STABLE_TERMS} terms at t={t!r}")
    if ratio > _CANCEL_RATIO:
        raise SeriesDivergence(
            f"stable series cancellation exhausts double precision at t={t!r}")
    return value


def stable_pdf(s: StableOneSided, t: float, tol: float = 1e-12) -> float:
    if not (t > 0.0):
        raise PreconditionViolation(f"stable density argument must be > 0, got {t!r}")
    return _stable_tail_sum(s.a, t, tol, 1)


def stable_cdf_complement(s: StableOneSided, t: float, tol: float = 1e-12) -> float:
    """Pr[R > t]."""
    if not (t > 0.0):
        raise PreconditionViolation(f"stable tail argument must be > 0, got {t!r}")
    return _stable_tail_sum(s.a, t, tol, 0)


def _stable_invert(s: StableOneSided, u: float) -> float:
    """t with Pr[R > t] = u. Where the level would need t below the series
    validity edge the inversion clamps to the edge; the probability mass
    out there is far below sampling resolution."""
    lo, hi = 1.0, 1.0
    try:
        c_one = stable_cdf_complement(s, 1.0)
    except SeriesDivergence:
        c_one = 1.0
    iters = 0
    if c_one > u:
        while True:
            iters += 1
            if iters >= _MAX_ITER:
                raise NonConvergence(f"stable bracketing stalled at level {u!r}")
            hi *= 4.0
            if stable_cdf_complement(s, hi) <= u:
                break
    else:
        while True:
            iters += 1
            if iters >= _MAX_ITER:
                raise NonConvergence(f"stable bracketing stalled at level {u!r}")
            lo /= 4.0
            try:
                if stable_cdf_complement(s, lo) >= u:
                    break
            except SeriesDivergence:
                return lo * 4.0
    t = math.sqrt(lo * hi)
    while iters < _MAX_ITER:
        iters += 1
        try:
            C = stable_cdf_complement(s, t)
        except SeriesDivergence:
            lo = t
            t = math.sqrt(lo * hi) if hi / lo > 4.0 else 0.5 * (lo + hi)
            continue
        if abs(C - u) <= _QUANTILE_TOL:
            return t
        if C > u:
            lo = t
        else:
            hi = t
        f = stable_pdf(s, t)
        step_ok = f > 1e-300
        if step_ok:
            t_new = t + (C - u) / f
            step_ok = lo < t_new < hi
        t = t_new if step_ok else 0.5 * (lo + hi)
    raise NonConvergence(f"stable inversion did not converge at level {u!r}")


def ml_sample_decomposed(d: MLDistribution, rng, n: int) -> list:
    """Product sampler M = R * W: W = Y^(1/a) with Y standard exponential
    from the uniform source, R by numeric inversion of the stable tail.
    Per draw the rng is consumed as (uniform for Y, uniform for R)."""
    if not (d.a < 1.0):
        raise PreconditionViolation("decomposition needs a < 1; at a = 1 the law is Exp(1)")
    if n < 1:
        raise PreconditionViolation(f"sample count must be >= 1, got {n!r}")
    s = StableOneSided(d.a)
    out = []
    for _ in range(n):
        y = -math.log(_clip_unit(rng.random()))
        w = y ** (1.0 / d.a)
        r = _stable_invert(s, _clip_unit(rng.random()))
        out.append(r * w)
    return out
