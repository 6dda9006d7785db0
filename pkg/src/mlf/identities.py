"""Executable catalog of cross-representation identities.

Each entry evaluates both sides of a known relation over a fixed grid and
reports the worst relative discrepancy.  The catalog doubles as an
end-to-end verification net: a regression in any evaluation route surfaces
as a failed identity rather than a silent drift.

Default tolerances track the dominant error source per entry: pure
recurrences 1e-9, single quadratures 1e-6, truncated tails 1e-4.  The
sandwich-bound entry is strict and carries tolerance 0.  Grids are chosen
so the two sides never share a code path: where the point dispatcher would
reduce or shift one side into a verbatim copy of the other, the grid stays
on parameter ranges where it does not.
"""

import cmath
import math
from dataclasses import dataclass

from .combinatorics import mobius
from .core import MLParams, ml_eval, ml_taylor
from .distributions import spectral_density_fa
from .errors import UnknownIdentity
from .gammafn import gamma_real, incomplete_gamma_P, recip_gamma
from .iab import IabParams, euler_maclaurin_E
from .quadrature import integrate_finite, integrate_semi_infinite

_TINY = 1e-300
# five-point stencil step; eps^(1/5) balances truncation against roundoff
_FD_H = 2.220446049250313e-16 ** 0.2


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one catalog entry over its full grid."""

    id: str
    grid_size: int
    max_rel_err: float
    tolerance: float
    passed: bool


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), _TINY)


# ---------------------------------------------------------------- recurrences

_EVEN_ODD_AB = ((0.35, 0.7), (0.35, 1.0), (0.35, 2.0),
                (0.5, 0.7), (0.5, 1.0), (0.5, 2.0),
                (1.0, 1.0), (1.0, 2.0))


def _even_odd(cfg):
    """Half-parameter split: the even and odd parts of E_{a,b} in z."""
    errs = []
    for a, b in _EVEN_ODD_AB:
        for z in (0.6, -1.2, 1.8, 1.1 + 0.6j):
            ep = ml_eval(MLParams(a, b), z).value
            em = ml_eval(MLParams(a, b), -z).value
            even = ml_eval(MLParams(2.0 * a, b), z * z).value
            odd = ml_eval(MLParams(2.0 * a, b + a), z * z).value
            errs.append(_rel(even, 0.5 * (ep + em)))
            errs.append(_rel(odd, (ep - em) / (2.0 * z)))
    return errs


def _root_average(a, b, z, m):
    acc = 0j
    for r in range(m):
        acc += ml_eval(MLParams(a, b), z * cmath.exp(2j * math.pi * r / m)).value
    return acc / m


def _cyclotomic(m, grid, cfg):
    errs = []
    for a, b in grid:
        for z in (0.8, -0.7, 1.4, 0.9 * cmath.exp(0.2j * math.pi)):
            lhs = ml_eval(MLParams(a * m, b), z ** m).value
            errs.append(_rel(lhs, _root_average(a, b, z, m)))
    return errs


def _cyclotomic_m2(cfg):
    return _cyclotomic(2, ((0.3, 1.0), (0.3, 1.6), (0.45, 1.0),
                           (0.45, 1.6), (0.5, 1.0), (0.5, 1.6)), cfg)


def _cyclotomic_m3(cfg):
    return _cyclotomic(3, ((0.55, 1.0), (0.55, 1.6), (0.8, 1.0),
                           (0.8, 1.6), (1.0, 1.6)), cfg)


_SHIFT_UP_GRID = ((0.5, 1.0, 1, 0.9), (0.5, 1.0, 3, -0.95),
                  (0.5, 1.2, 2, 0.5 + 0.8j), (0.8, 1.5, 3, 0.9),
                  (0.8, 0.8, 2, -0.6), (1.3, 1.5, 3, 0.95),
                  (1.3, 1.0, 1, 0.5 + 0.8j), (2.4, 1.1, 2, 0.7))


def _shift_up(cfg):
    """Raising b by m*a subtracts the first m series terms."""
    errs = []
    for a, b, m, z in _SHIFT_UP_GRID:
        lhs = z ** m * ml_eval(MLParams(a, b + m * a), z).value
        head = sum(z ** l * recip_gamma(b + l * a) for l in range(m))
        rhs = ml_eval(MLParams(a, b), z).value - head
        errs.append(_rel(lhs, rhs))
    return errs


_SHIFT_DOWN_GRID = ((0.5, 1.2, 2, 0.9), (0.5, 1.2, 3, 2.4),
                    (0.8, 1.5, 1, -0.95), (0.8, 1.45, 3, 0.9),
                    (1.3, 1.0, 2, 0.5 + 0.8j), (1.0, 1.8, 2, -2.5))


def _shift_down(cfg):
    """Lowering b by m*a prepends m inverse-power terms."""
    errs = []
    for a, b, m, z in _SHIFT_DOWN_GRID:
        lhs = z ** (-m) * ml_eval(MLParams(a, b - m * a), z).value
        head = sum(z ** (-k) * recip_gamma(b - k * a) for k in range(1, m + 1))
        rhs = ml_eval(MLParams(a, b), z).value + head
        errs.append(_rel(lhs, rhs))
    return errs


def _deriv_rule(cfg):
    """a z E' = E_{a,b-1} - (b-1) E_{a,b}; the derivative side is a
    five-point stencil so the check never routes through ml_derivative."""
    errs = []
    for a in (0.6, 1.0, 1.6):
        for b in (1.3, 2.2):
            for z in (0.8, -2.0, 1.5 + 0.9j):
                p = MLParams(a, b)
                h = _FD_H * max(1.0, abs(z))
                d = (-ml_eval(p, z + 2 * h).value + 8.0 * ml_eval(p, z + h).value
                     - 8.0 * ml_eval(p, z - h).value + ml_eval(p, z - 2 * h).value
                     ) / (12.0 * h)
                rhs = (ml_eval(MLParams(a, b - 1.0), z).value
                       - (b - 1.0) * ml_eval(p, z).value)
                errs.append(_rel(a * z * d, rhs))
    return errs


_WIMAN_GRID = ((2, 1.0), (2, 1.7), (3, 1.0), (3, 1.7), (4, 1.2))


def _wiman(cfg):
    """a = 1/n on the positive axis: raw series against the
    regularized-incomplete-gamma assembly."""
    errs = []
    for n, b in _WIMAN_GRID:
        for x in (0.6, 1.4, 2.1):
            lhs = ml_taylor(MLParams(1.0 / n, b), x).value.real
            xn = x ** n
            s = 0.0
            for j in range(n):
                sj = b - 1.0 + j / n
                s += 1.0 if sj == 0.0 else incomplete_gamma_P(sj, xn)
            rhs = math.exp((1.0 - b) * n * math.log(x) + xn) * s
            errs.append(_rel(lhs, rhs))
    return errs


# ------------------------------------------------------------- truncated tails

def _neg_a_continuation(cfg):
    """E_{a,b}(1/z) = 1/Gamma(b) + sum_k z^(-k)/Gamma(b+ak): the continuation
    series at large |z| against the small-argument dispatcher."""
    errs = []
    for a in (0.6, 1.0, 1.3):
        for b in (1.0, 1.8):
            for z in (5.0, -8.0, 6j):
                zc = complex(z)
                lhs = ml_eval(MLParams(a, b), 1.0 / zc).value
                rhs = complex(recip_gamma(b), 0.0)
                for k in range(1, 41):
                    rhs += zc ** (-k) * recip_gamma(b + a * k)
                errs.append(_rel(lhs, rhs))
    return errs


_MOBIUS_GRID = ((0.7, 1.0, 0.5), (1.0, 1.4, 0.3), (1.3, 1.0, 0.6),
                (0.9, 1.2, 0.45 + 0.45j))


def _mobius_inversion(cfg):
    """Moebius-weighted sum over the n-fold parameters recovers one
    series term; truncated at N=40 with an observed tail estimate."""
    errs = []
    for x, b, z in _MOBIUS_GRID:
        zc = complex(z)
        lhs = zc ** x * recip_gamma(b + x)
        rgb = recip_gamma(b)
        acc = 0j
        partials = []
        for n in range(1, 41):
            mu = mobius(n)
            if mu != 0:
                e = ml_eval(MLParams(n * x, b), zc ** (n * x)).value
                acc += mu * (e - rgb)
            partials.append(acc)
        tail = max(abs(partials[-1] - partials[-j]) for j in (2, 3, 4))
        scale = max(abs(lhs), abs(acc), _TINY)
        errs.append((abs(lhs - acc) + tail) / scale)
    return errs


_EM_GRID = ((0.4, 1.0, 0.5), (0.7, 1.3, 0.3), (1.0, 1.0, 0.6),
            (0.5, 0.8, -0.4), (0.8, 1.5, 0.5j))


def _em_bridge(cfg):
    """Series head plus companion-integral remainder at m = 12."""
    errs = []
    for a, b, z in _EM_GRID:
        lhs = euler_maclaurin_E(IabParams(a, b), z, 12).value
        errs.append(_rel(lhs, ml_eval(MLParams(a, b), z).value))
    return errs


# ----------------------------------------------------------------- quadratures

def _laplace_pair(cfg):
    """Laplace transform of t^(b-1) E_{a,b}(x t^a) at x = -1."""
    errs = []
    for a in (0.5, 1.0, 1.5):
        for b in (1.0, 2.0):
            p = MLParams(a, b)
            for s in (1.0, 2.0):
                def f(t):
                    return math.exp(-s * t) * t ** (b - 1.0) * ml_eval(
                        p, -t ** a).value.real
                q = integrate_semi_infinite(f, s, cfg, power=b - 1.0)
                rhs = s ** (a - b) / (s ** a + 1.0)
                errs.append(_rel(q.value, rhs))
    return errs


_GEN_INT_GRID = ((0.8, 1.0, 0.5, -1.0, 1.5), (1.2, 1.5, 1.5, 0.7, 1.0),
                 (0.6, 2.0, 1.0, -0.5, 2.0))


def _gen_integration(cfg):
    """Fractional integration in the second parameter."""
    errs = []
    for a, b, w, lam, x in _GEN_INT_GRID:
        p = MLParams(a, b)
        def f(u):
            return ((x - u) ** (w - 1.0) * u ** (b - 1.0)
                    * ml_eval(p, lam * u ** a).value.real)
        q = integrate_finite(f, 0.0, x, cfg,
                             singular_lo=None if b == 1.0 else b - 1.0,
                             singular_hi=None if w == 1.0 else w - 1.0)
        rhs = x ** (b - 1.0 + w) * ml_eval(MLParams(a, b + w),
                                           lam * x ** a).value.real
        errs.append(_rel(recip_gamma(w) * q.value, rhs))
    return errs


_PROD_INT_GRID = ((0.7, 1.2, 0.8, -1.0, 0.5, 1.2),
                  (1.0, 1.0, 1.0, -0.3, -1.5, 2.0),
                  (0.5, 1.5, 0.6, 0.4, -0.8, 1.0))


def _product_integration(cfg):
    """Convolution of two functions of the family collapses to a difference."""
    errs = []
    for a, b, w, lam, mu, x in _PROD_INT_GRID:
        pb, pw = MLParams(a, b), MLParams(a, w)
        def f(u):
            return ((x - u) ** (w - 1.0) * u ** (b - 1.0)
                    * ml_eval(pb, lam * u ** a).value.real
                    * ml_eval(pw, mu * (x - u) ** a).value.real)
        q = integrate_finite(f, 0.0, x, cfg,
                             singular_lo=None if b == 1.0 else b - 1.0,
                             singular_hi=None if w == 1.0 else w - 1.0)
        pbw = MLParams(a, b + w)
        rhs = (x ** (b + w - 1.0)
               * (lam * ml_eval(pbw, lam * x ** a).value.real
                  - mu * ml_eval(pbw, mu * x ** a).value.real) / (lam - mu))
        errs.append(_rel(q.value, rhs))
    return errs


_DUP_GRID = ((0.4, 1.0, 0.5), (0.7, 0.8, 2.0), (0.5, 1.5, 1.0))


def _dup_integral(cfg):
    """Gamma-weighted average of the doubled parameters on the negative axis."""
    errs = []
    for a, b, z in _DUP_GRID:
        p = MLParams(2.0 * a, 2.0 * b)
        def f(t):
            return (t ** (b - 0.5) * math.exp(-t)
                    * ml_eval(p, -z * (4.0 * t) ** a).value.real)
        q = integrate_semi_infinite(f, 1.0, cfg, singular_lo=b - 0.5,
                                    power=b - 0.5)
        lhs = 2.0 ** (2.0 * b - 1.0) / math.sqrt(math.pi) * q.value
        errs.append(_rel(lhs, ml_eval(MLParams(a, b), -z).value.real))
    return errs


def _berberan_santos(cfg):
    """Double-argument average: after w = s tan(theta) the Cauchy weight
    drops out and the integral runs over a quarter period."""
    errs = []
    for a, b in ((0.4, 1.0), (0.8, 1.3)):
        p = MLParams(2.0 * a, b)
        for s in (0.5, 1.0, 2.0):
            def f(theta):
                w = s * math.tan(theta)
                return ml_eval(p, -w * w).value.real
            q = integrate_finite(f, 0.0, 0.5 * math.pi, cfg)
            lhs = (2.0 / math.pi) * q.value
            errs.append(_rel(lhs, ml_eval(MLParams(a, b), -s).value.real))
    return errs


def _arctan_form(cfg):
    """Exponentially damped arctan kernel for E_a(-x), 0 < a < 1."""
    errs = []
    for a in (0.3, 0.5, 0.75):
        sa, ca = math.sin(math.pi * a), math.cos(math.pi * a)
        for x in (0.8, 2.0, 5.0):
            r = x ** (1.0 / a)
            def f(u):
                return math.atan((u ** a + ca) / sa) * math.exp(-r * u)
            q = integrate_semi_infinite(f, r, cfg)
            lhs = 1.0 - 0.5 / a + r / (math.pi * a) * q.value
            errs.append(_rel(lhs, ml_eval(MLParams(a, 1.0), -x).value.real))
    return errs


def _finite_interval(cfg):
    """Finite-interval form of E_a(-x) for a < 1/2; the integrand is flat
    zero near t = 0 and climbs to cos^2(pi a) at t = tan(pi a)."""
    errs = []
    for a in (0.2, 0.35, 0.45):
        sa, ca = math.sin(math.pi * a), math.cos(math.pi * a)
        T = math.tan(math.pi * a)
        lx_pow = 1.0 / a
        for x in (0.5, 1.5, 4.0):
            lx = math.log(x)
            def f(t):
                g = sa / t - ca
                # exponent in log space; g spans many decades near t = 0
                e = lx_pow * (lx + math.log(g))
                return math.exp(-math.exp(min(e, 709.0))) / (1.0 + t * t)
            q = integrate_finite(f, 0.0, T, cfg)
            lhs = q.value / (a * math.pi)
            errs.append(_rel(lhs, ml_eval(MLParams(a, 1.0), -x).value.real))
    return errs


def _q_closed_form(cfg):
    """Cosh-kernel cosine transform; the closed form is the spectral
    density up to an elementary prefactor."""
    errs = []
    for a in (0.3, 0.5, 0.7):
        dec = math.pi * (1.0 - a)
        for u in (0.5, 1.0, 2.0, 5.0):
            lu = math.log(u)
            def f(t):
                x = math.pi * t
                ratio = (math.exp((a - 1.0) * x)
                         * (1.0 + math.exp(-2.0 * a * x))
                         / (1.0 + math.exp(-2.0 * x)))
                return ratio * math.cos(a * t * lu)
            q = integrate_semi_infinite(f, dec, cfg)
            rhs = (math.pi / math.sin(math.pi * a)
                   * u ** (1.0 - 0.5 * a) * (1.0 + u ** a)
                   * math.cos(0.5 * math.pi * a) * spectral_density_fa(a, u))
            errs.append(_rel(q.value, rhs))
    return errs


def _bounds_sandwich(cfg):
    """Strict two-sided envelope of E_a(-x) for a < 1/2; entries report
    the relative violation, which must be exactly zero."""
    errs = []
    for a in (0.2, 0.3, 0.4):
        sa = math.sin(math.pi * a)
        corr = math.sin(2.0 * math.pi * a) / (1.0 + math.cos(math.pi * a))
        ga = gamma_real(a).value
        for x in (0.5, 1.0, 2.0, 5.0, 10.0):
            e = ml_eval(MLParams(a, 1.0), -x).value.real
            damp = math.exp(-x ** (1.0 / a))
            lo = 0.5 * damp
            hi = sa / math.pi * ga / x - damp / (4.0 * a * math.pi) * corr
            viol = max(lo - e, e - hi, 0.0)
            errs.append(viol / abs(e))
    return errs


_CATALOG = {
    "even_odd": (_even_odd, 1e-9),
    "cyclotomic_m2": (_cyclotomic_m2, 1e-9),
    "cyclotomic_m3": (_cyclotomic_m3, 1e-9),
    "shift_up": (_shift_up, 1e-9),
    "shift_down": (_shift_down, 1e-9),
    "deriv_rule": (_deriv_rule, 1e-9),
    "wiman": (_wiman, 1e-9),
    "neg_a_continuation": (_neg_a_continuation, 1e-4),
    "mobius_inversion": (_mobius_inversion, 1e-4),
    "em_bridge": (_em_bridge, 1e-4),
    "laplace_pair": (_laplace_pair, 1e-6),
    "gen_integration": (_gen_integration, 1e-6),
    "product_integration": (_product_integration, 1e-6),
    "dup_integral": (_dup_integral, 1e-6),
    "berberan_santos": (_berberan_santos, 1e-6),
    "arctan_form": (_arctan_form, 1e-6),
    "finite_interval": (_finite_interval, 1e-6),
    "q_closed_form": (_q_closed_form, 1e-6),
    "bounds_sandwich": (_bounds_sandwich, 0.0),
}


def run_identity(identity_id, tol=None, cfg=None):
    """Evaluate one catalog entry; tol None selects the entry's default."""
    if identity_id not in _CATALOG:
        raise UnknownIdentity(f"no catalog entry named {identity_id!r}")
    fn, default_tol = _CATALOG[identity_id]
    errs = fn(cfg)
    worst = max(errs)
    tolerance = default_tol if tol is None else float(tol)
    return IdentityReport(identity_id, len(errs), worst, tolerance,
                          worst <= tolerance)


def run_all(tol_overrides=None, cfg=None):
    """Run the whole catalog in id order; failures are reported, not raised."""
    overrides = tol_overrides or {}
    return [run_identity(i, overrides.get(i), cfg) for i in sorted(_CATALOG)]


def catalog_ids():
    """Sorted ids of every catalog entry."""
    return sorted(_CATALOG)
