"""Shared test helpers: a high-precision summation oracle and small statistics utilities.

The oracle deliberately shares nothing with the package under test: it is a direct
summation of the defining power series in mpmath, with working precision sized to
cover the worst intermediate term so the final cancellation cannot eat into the
digits we compare against.
"""

import math

import mpmath as mp
from hypothesis import settings

settings.register_profile("mlf", deadline=None, max_examples=150)
settings.load_profile("mlf")

# the summation oracle is only honest while exp(|z|^(1/a)) stays representable
# at the chosen precision; past this the test must pick a different point
ORACLE_GROWTH_CAP = 700.0


def oracle_feasible(a: float, z: complex) -> bool:
    if a <= 0:
        return False
    return abs(z) ** (1.0 / a) <= ORACLE_GROWTH_CAP


def ml_reference(a: float, b: float, z: complex, min_dps: int = 50) -> complex:
    """Sum k>=0 of z^k / Gamma(b + a k) in big-float arithmetic.

    Precision grows with the peak term magnitude ~ exp(|z|^(1/a)) so that the
    returned double carries full accuracy even after massive cancellation on
    the negative axis.  Raises ValueError outside the feasible region instead
    of returning silently degraded digits.
    """
    growth = abs(z) ** (1.0 / a) if (z != 0 and a > 0) else 0.0
    if growth > ORACLE_GROWTH_CAP:
        raise ValueError(f"oracle infeasible: |z|^(1/a) = {growth:.1f}")
    dps = int(min_dps + 0.45 * growth) + 20
    with mp.workdps(dps):
        # the gamma argument must be formed in mpf arithmetic: float b + a*k
        # carries ~1e-13 relative error near the peak term, which the final
        # cancellation would amplify into garbage for non-dyadic a
        aa = mp.mpf(a)
        bb = mp.mpf(b)
        zz = mp.mpc(z)
        acc = mp.mpc(0)
        zp = mp.mpc(1)
        floor_ = mp.mpf(10) ** (-(dps - 8))
        small_run = 0
        k = 0
        while True:
            term = zp * mp.rgamma(bb + aa * k)
            acc += term
            # only count "small" once past the reciprocal-gamma hump, and demand
            # a run of four so alternating near-zeros cannot stop us early
            if abs(term) <= floor_ * max(abs(acc), mp.mpf(1)) and b + a * k > 1.5:
                small_run += 1
                if small_run >= 4:
                    break
            else:
                small_run = 0
            zp = zp * zz
            k += 1
            if k > 400000:
                raise RuntimeError("oracle series did not settle")
        return complex(acc)


def rel_err(approx, exact) -> float:
    """|approx - exact| / |exact|, guarding the zero denominator."""
    a = complex(approx)
    e = complex(exact)
    return abs(a - e) / max(abs(e), 1e-300)


def ks_one_sample(samples, cdf) -> float:
    """Kolmogorov-Smirnov statistic of sorted-able samples against a cdf callable."""
    xs = sorted(samples)
    n = len(xs)
    d = 0.0
    for i, x in enumerate(xs):
        f = cdf(x)
        d = max(d, abs(f - i / n), abs((i + 1) / n - f))
    return d


def ks_two_sample(xs, ys) -> float:
    """Two-sample KS statistic via a merge walk over both empirical cdfs."""
    xs = sorted(xs)
    ys = sorted(ys)
    n, m = len(xs), len(ys)
    i = j = 0
    d = 0.0
    while i < n and j < m:
        if xs[i] <= ys[j]:
            i += 1
        else:
            j += 1
        d = max(d, abs(i / n - j / m))
    return d


def ks_critical(n: int, alpha: float = 0.01) -> float:
    """Asymptotic one-sample critical value; 1.628/sqrt(n) at the 1% level."""
    coef = math.sqrt(-0.5 * math.log(alpha / 2.0))
    return coef / math.sqrt(n)


def ks_critical_two(n: int, m: int, alpha: float = 0.01) -> float:
    coef = math.sqrt(-0.5 * math.log(alpha / 2.0))
    return coef * math.sqrt((n + m) / (n * m))
