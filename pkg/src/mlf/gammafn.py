"""Real-argument Gamma-family toolkit.

Scalar, double-precision Gamma machinery used by every series and integral
in the package: ln Gamma, Gamma with in-band pole reporting, the entire
reciprocal 1/Gamma, digamma, polygamma, the derivative ladder of 1/Gamma,
the regularized lower incomplete gamma, and erfc.

The hot scalar paths live in the backend kernels; this module adds argument
validation, pole bookkeeping, and the pure-Python pieces (polygamma and the
1/Gamma derivative ladder) that only run at setup time of a series.
"""

import math
from dataclasses import dataclass

from ._backend import kernels as _k
from .combinatorics import bernoulli
from .errors import DomainError

EULER_GAMMA = _k.EULER_GAMMA

# exp argument beyond which double precision overflows
_EXP_MAX = 709.78


@dataclass(frozen=True)
class GammaValue:
    """Gamma(x) together with a flag marking the poles at 0, -1, -2, ..."""

    value: float
    is_pole: bool


def _is_nonpos_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def log_gamma_real(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"log_gamma_real requires finite x > 0, got {x!r}")
    return _k.lgamma_pos(x)


def gamma_real(x: float) -> GammaValue:
    """Gamma(x) for any finite real x; poles are reported, not raised."""
    if not math.isfinite(x):
        raise DomainError(f"gamma_real requires finite x, got {x!r}")
    if _is_nonpos_integer(x):
        return GammaValue(math.inf, True)
    if x > 0.0:
        lg = _k.lgamma_pos(x)
        return GammaValue(math.inf if lg > _EXP_MAX else math.exp(lg), False)
    # reflection; split x = n + r so the sine is evaluated at pi*r, r in (0,1),
    # which stays accurate however far left x sits
    n = math.floor(x)
    r = x - n
    sin_pir = math.sin(math.pi * r)
    log_mag = math.log(math.pi) - math.log(sin_pir) - _k.lgamma_pos(1.0 - x)
    sign = 1.0 if n % 2 == 0 else -1.0
    if log_mag > _EXP_MAX:
        return GammaValue(sign * math.inf, False)
    return GammaValue(sign * math.exp(log_mag), False)


def recip_gamma(x: float) -> float:
    """1/Gamma(x), entire: exactly 0.0 at the poles of Gamma."""
    if not math.isfinite(x):
        raise DomainError(f"recip_gamma requires finite x, got {x!r}")
    return _k.rgamma_real(x)


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) away from the poles."""
    if not math.isfinite(x) or _is_nonpos_integer(x):
        raise DomainError(f"digamma undefined at {x!r}")
    return _k.digamma_real(x)


def polygamma(n: int, x: float) -> float:
    """psi^(n)(x) = (-1)^(n+1) n! sum_k (x+k)^(-n-1) for n >= 1, x > 0.

    Direct summation to a point y = x+K far enough out that an
    Euler-Maclaurin tail with Bernoulli numbers B_2..B_14 closes the sum.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"polygamma order must be an integer >= 1, got {n!r}")
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"polygamma requires finite x > 0, got {x!r}")
    # tail is accurate once y is comfortably larger than the order
    y_min = max(18.0, 1.4 * n)
    big_k = 0 if x >= y_min else int(math.ceil(y_min - x))
    s = 0.0
    for k in range(big_k):
        s += (x + k) ** (-(n + 1))
    y = x + big_k
    s += y ** (-n) / n + 0.5 * y ** (-(n + 1))
    bern = bernoulli(14)
    fall = 1.0  # (n+1)(n+2)...(n+2j-1) / (2j)!
    ypow = y ** (-n)
    y2 = y * y
    for j in range(1, 8):
        fall *= (n + 2 * j - 1) * (n + 2 * j - 2) if j > 1 else (n + 1)
        fall /= (2 * j) * (2 * j - 1)
        ypow /= y2
        s += float(bern[2 * j]) * fall * ypow
    sign = 1.0 if n % 2 == 1 else -1.0
    if n <= 170:
        return sign * math.factorial(n) * s
    return sign * math.exp(math.lgamma(n + 1.0) + math.log(s))


def recip_gamma_derivs(x: float, jmax: int) -> list:
    """d^j/du^j of 1/Gamma(u) at u = x for j = 0..jmax.

    Built from the logarithmic recurrence g' = -psi*g, i.e.
    g^(j+1) = -sum_i C(j,i) psi^(i) g^(j-i), anchored at a shifted point
    u = x+m far enough right that the recurrence is well conditioned, then
    stepped down through 1/Gamma(u) = u/Gamma(u+1) differentiated j times.
    The downshift itself does not amplify relative error; the anchor must
    sit near or beyond jmax/4 or the ladder loses digits to cancellation.
    """
    if not isinstance(jmax, int) or jmax < 0:
        raise DomainError(f"jmax must be an integer >= 0, got {jmax!r}")
    if not math.isfinite(x):
        raise DomainError(f"recip_gamma_derivs requires finite x, got {x!r}")
    if _is_nonpos_integer(x):
        raise DomainError(f"recip_gamma_derivs: {x!r} is a pole of Gamma")
    anchor = max(8.0, 0.25 * jmax + 2.0)
    shift = 0 if x >= anchor else int(math.ceil(anchor - x))
    y = x + shift
    g = [_k.rgamma_real(y)]
    if jmax > 0 or shift > 0:
        psis = [_k.digamma_real(y)]
        psis += [polygamma(i, y) for i in range(1, jmax)]
        for j in range(jmax):
            nxt = 0.0
            for i in range(j + 1):
                nxt -= math.comb(j, i) * psis[i] * g[j - i]
            g.append(nxt)
    u = y
    for _ in range(shift):
        u -= 1.0
        g = [u * g[j] + (j * g[j - 1] if j > 0 else 0.0) for j in range(len(g))]
    return g[: jmax + 1]


def incomplete_gamma_P(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x), s > 0, x >= 0."""
    if not (s > 0.0) or math.isinf(s):
        raise DomainError(f"incomplete_gamma_P requires finite s > 0, got {s!r}")
    if not (x >= 0.0):
        raise DomainError(f"incomplete_gamma_P requires x >= 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    return _k.gamma_p(s, x)


def erfc(x: float) -> float:
    """Complementary error function for any finite real x."""
    if not math.isfinite(x):
        raise DomainError(f"erfc requires finite x, got {x!r}")
    return _k.erfc_real(x)
