"""Command-line front end: point and table evaluation, derivatives,
distribution queries and sampling, the companion integral, identity checks,
and Gamma utilities.  Data goes to stdout as CSV (default) or JSON;
diagnostics go to stderr.

Usage:
    mlf eval --a 0.5 --b 1 --z -2           # one evaluation record
    mlf eval --a 1 --b 1 --z 0,1 --format json
    mlf table --a 0.5 --b 1 --z-from -10 --z-to 0 --points 11
    mlf table --a 0.5 --b 1 --z-from 1 --z-to 1000 --points 20 --x-log
    mlf dist cdf --a 0.8 --t 1.5
    mlf dist sample --a 0.6 --n 5 --seed 7  # seed-deterministic draws
    mlf check --only cyclotomic_m2,laplace_pair
    mlf gamma --x 0.5
    mlf iab --a 1 --b 1 --z 0.5
    mlf deriv --a 1 --b 1 --z 0 --order 1

Exit codes: 0 success, 1 usage error, 2 domain violation, 3 convergence
failure (and a failed identity check).
"""

import functools
import json
import sys

import click
import numpy as np

from .calculus import ml_derivative, ml_derivative_n
from .core import DEFAULT_TOL, MLParams, ml_eval
from .distributions import MLDistribution, ml_cdf, ml_pdf, ml_quantile, ml_sample
from .errors import (CancellationLoss, DomainError, NearZeroDenominator,
                     NonConvergence, PoleError, PreconditionViolation,
                     RayProximity, SeriesDivergence, UnknownIdentity)
from .gammafn import (digamma, erfc, gamma_real, log_gamma_real, polygamma,
                      recip_gamma)
from .iab import IabParams, iab_eval, iab_quadrature, iab_rep, iab_series
from .identities import catalog_ids, run_all, run_identity
from .quadrature import QuadratureConfig

__all__ = ["cli", "main"]

# the contract reserves 2 for domain violations; click's default usage
# exit code collides with it
click.UsageError.exit_code = 1

_DOMAIN = (DomainError, PreconditionViolation, PoleError, RayProximity)
_NOCONV = (NonConvergence, CancellationLoss, SeriesDivergence,
           NearZeroDenominator)

# config-file keys with a fixed meaning; everything else may name a
# catalog entry whose tolerance it overrides
_CONFIG_KEYS = ("tol", "rel_tol", "abs_tol", "max_subdivisions")


def _mapped(fn):
    """Translate library failures into the exit-code contract."""
    @functools.wraps(fn)
    def wrapped(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _DOMAIN as exc:
            click.echo(f"domain error: {exc}", err=True)
            sys.exit(2)
        except _NOCONV as exc:
            click.echo(f"no convergence: {exc}", err=True)
            sys.exit(3)
    return wrapped


class ComplexParam(click.ParamType):
    """Shell-safe complex literal: a real part, optionally ',imag'."""

    name = "re[,im]"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        parts = str(value).split(",")
        try:
            if len(parts) == 1:
                return complex(float(parts[0]), 0.0)
            if len(parts) == 2:
                return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            pass
        self.fail(f"{value!r} is not of the form re or re,im", param, ctx)


COMPLEX = ComplexParam()


def _fmt(x: float) -> str:
    # 17 significant digits: parses back to the identical binary64, and
    # re-emitting the parsed value reproduces the byte sequence
    return f"{x:.17g}"


def _cell(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _emit(records: list, fmt: str) -> None:
    """One CSV row (with header) or JSON object per record; a single
    record serializes as a bare JSON object, several as an array."""
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        click.echo(json.dumps(payload))
        return
    cols = list(records[0].keys())
    click.echo(",".join(cols))
    for rec in records:
        click.echo(",".join(_cell(rec[c]) for c in cols))


def _load_config(path):
    if path is None:
        return {}
    conf = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep or not val.strip():
                raise click.UsageError(
                    f"{path}:{lineno}: expected key=value, got {line!r}")
            conf[key.strip()] = val.strip()
    return conf


def _conf_float(conf: dict, key: str) -> float:
    try:
        return float(conf[key])
    except ValueError:
        raise click.UsageError(
            f"config key {key!r} is not a number: {conf[key]!r}")


def _tol(flag_value, conf: dict) -> float:
    if flag_value is not None:
        return flag_value
    if "tol" in conf:
        return _conf_float(conf, "tol")
    return DEFAULT_TOL


def _quad_cfg(conf: dict):
    """QuadratureConfig from config-file overrides, or None for defaults."""
    if not any(k in conf for k in ("rel_tol", "abs_tol", "max_subdivisions")):
        return None
    cfg = QuadratureConfig()
    if "rel_tol" in conf:
        cfg.rel_tol = _conf_float(conf, "rel_tol")
    if "abs_tol" in conf:
        cfg.abs_tol = _conf_float(conf, "abs_tol")
    if "max_subdivisions" in conf:
        cfg.max_subdivisions = int(_conf_float(conf, "max_subdivisions"))
    return cfg


def _eval_record(a, b, z, r) -> dict:
    return {"a": a, "b": b, "z_re": z.real, "z_im": z.imag,
            "value_re": r.value.real, "value_im": r.value.imag,
            "abs_err_est": r.abs_err_est, "method": r.method.name}


@click.group()
@click.option("--config", "config_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="key=value file overriding default tolerances")
@click.pass_context
def cli(ctx, config_path):
    """Two-parameter Mittag-Leffler toolkit.

    Evaluate E_a,b(z) and its derivatives, tabulate relaxation profiles,
    query the heavy-tailed waiting-time law, run the identity catalog.
    """
    ctx.obj = _load_config(config_path)


@cli.command("eval")
@click.option("--a", "a", type=float, required=True, help="first parameter, >= 0")
@click.option("--b", "b", type=float, required=True, help="second parameter")
@click.option("--z", "z", type=COMPLEX, required=True, help="argument")
@click.option("--tol", type=float, default=None,
              help=f"target tolerance (default {DEFAULT_TOL:g})")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.pass_obj
@_mapped
def cmd_eval(conf, a, b, z, tol, fmt):
    """Evaluate E_a,b(z): value, error estimate, and the route taken.

    Examples:

        mlf eval --a 1 --b 1 --z 1          # e, method ClosedForm

        mlf eval --a 0.5 --b 1 --z -4,0.5   # complex argument
    """
    r = ml_eval(MLParams(a, b), z, _tol(tol, conf))
    _emit([_eval_record(a, b, z, r)], fmt)


@cli.command("table")
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, default=1.0, show_default=True)
@click.option("--z-from", "z_from", type=float, required=True)
@click.option("--z-to", "z_to", type=float, required=True)
@click.option("--points", "n", type=int, required=True, help="row count, >= 1")
@click.option("--x-log", "x_log", is_flag=True,
              help="geometric grid of times x > 0, tabulating E_a,b(-x^a)")
@click.option("--tol", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.pass_obj
@_mapped
def cmd_table(conf, a, b, z_from, z_to, n, x_log, tol, fmt):
    """Tabulate along the real axis; one record per grid point.

    Default mode evaluates at z on a uniform grid from --z-from to --z-to.
    With --x-log the grid is geometric in x and each row holds the
    relaxation value E_a,b(-x^a), which decays like
    sin(pi a)/pi * Gamma(a) * x^(-a) for large x when b = 1.
    """
    if n < 1:
        raise click.UsageError(f"--points must be >= 1, got {n}")
    tol_v = _tol(tol, conf)
    p = MLParams(a, b)
    records = []
    if x_log:
        if not (z_from > 0.0 and z_to > 0.0):
            raise click.UsageError("--x-log needs positive --z-from/--z-to")
        for x in np.geomspace(z_from, z_to, n):
            x = float(x)
            r = ml_eval(p, -(x ** a), tol_v)
            rec = {"x": x}
            rec.update(_eval_record(a, b, complex(-(x ** a)), r))
            records.append(rec)
    else:
        for x in np.linspace(z_from, z_to, n):
            r = ml_eval(p, float(x), tol_v)
            records.append(_eval_record(a, b, complex(float(x)), r))
    _emit(records, fmt)


@cli.group("dist")
def dist():
    """Mittag-Leffler waiting-time law: density, cdf, quantiles, draws."""


@dist.command("pdf")
@click.option("--a", "a", type=float, required=True, help="tail exponent in (0, 1]")
@click.option("--t", "t", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@_mapped
def dist_pdf(a, t, fmt):
    """Density at t > 0."""
    _emit([{"a": a, "t": t, "value": ml_pdf(MLDistribution(a), t)}], fmt)


@dist.command("cdf")
@click.option("--a", "a", type=float, required=True, help="tail exponent in (0, 1]")
@click.option("--t", "t", type=float, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@_mapped
def dist_cdf(a, t, fmt):
    """Pr[M <= t] = 1 - E_a(-t^a)."""
    _emit([{"a": a, "t": t, "value": ml_cdf(MLDistribution(a), t)}], fmt)


@dist.command("quantile")
@click.option("--a", "a", type=float, required=True, help="tail exponent in (0, 1]")
@click.option("--p", "p", type=float, required=True, help="probability in [0, 1)")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@_mapped
def dist_quantile(a, p, fmt):
    """Inverse cdf at p."""
    _emit([{"a": a, "p": p, "value": ml_quantile(MLDistribution(a), p)}], fmt)


@dist.command("sample")
@click.option("--a", "a", type=float, required=True, help="tail exponent in (0, 1]")
@click.option("--n", "n", type=int, required=True, help="number of draws, >= 1")
@click.option("--seed", type=int, default=None,
              help="RNG seed; same seed, same draws")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@_mapped
def dist_sample(a, n, seed, fmt):
    """Draw n values by inverse-transform sampling.

    Example:

        mlf dist sample --a 0.6 --n 5 --seed 7
    """
    rng = np.random.default_rng(seed)
    draws = ml_sample(MLDistribution(a), rng, n)
    records = []
    for i, v in enumerate(draws):
        rec = {"a": a}
        if seed is not None:
            rec["seed"] = seed
        rec["index"] = i
        rec["value"] = v
        records.append(rec)
    _emit(records, fmt)


@cli.command("check")
@click.option("--only", default=None, help="comma-separated identity ids")
@click.option("--tol", "tol_overrides", multiple=True, metavar="ID=TOL",
              help="per-identity tolerance override (repeatable)")
@click.pass_obj
@_mapped
def cmd_check(conf, only, tol_overrides):
    """Run the identity catalog; exit 0 iff every entry passes.

    Examples:

        mlf check

        mlf check --only cyclotomic_m2

        mlf check --tol laplace_pair=1e-15   # fails: below the route floor
    """
    overrides = {k: _conf_float(conf, k) for k in conf
                 if k not in _CONFIG_KEYS and k in catalog_ids()}
    for item in tol_overrides:
        key, sep, val = item.partition("=")
        try:
            if not sep:
                raise ValueError
            overrides[key.strip()] = float(val)
        except ValueError:
            raise click.UsageError(f"--tol expects ID=TOL, got {item!r}")
    cfg = _quad_cfg(conf)
    try:
        if only is None:
            reports = run_all(overrides, cfg)
        else:
            ids = [s.strip() for s in only.split(",") if s.strip()]
            if not ids:
                raise click.UsageError("--only lists no ids")
            reports = [run_identity(i, overrides.get(i), cfg) for i in ids]
    except UnknownIdentity as exc:
        raise click.UsageError(str(exc))
    width = max(len(r.id) for r in reports)
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        click.echo(f"{r.id:<{width}}  grid={r.grid_size:<3d} "
                   f"max_rel_err={r.max_rel_err:.3e}  "
                   f"tol={r.tolerance:.1e}  {status}")
    failed = sum(1 for r in reports if not r.passed)
    if failed:
        click.echo(f"{failed} of {len(reports)} identities failed", err=True)
        sys.exit(3)


@cli.command("gamma")
@click.option("--x", "x", type=float, required=True)
@click.option("--fn", type=click.Choice(["gamma", "log", "digamma",
                                         "polygamma", "rgamma", "erfc"]),
              default="gamma", show_default=True)
@click.option("--order", type=int, default=1, show_default=True,
              help="derivative order for --fn polygamma")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@_mapped
def cmd_gamma(x, fn, order, fmt):
    """Gamma-family point evaluation.

    Example:

        mlf gamma --x 0.5          # sqrt(pi)
    """
    if fn == "gamma":
        g = gamma_real(x)
        if g.is_pole:
            raise PoleError(f"Gamma has a pole at {x!r}")
        value = g.value
    elif fn == "log":
        value = log_gamma_real(x)
    elif fn == "digamma":
        value = digamma(x)
    elif fn == "polygamma":
        value = polygamma(order, x)
    elif fn == "rgamma":
        value = recip_gamma(x)
    else:
        value = erfc(x)
    rec = {"fn": fn, "x": x}
    if fn == "polygamma":
        rec["order"] = order
    rec["value"] = value
    _emit([rec], fmt)


@cli.command("iab")
@click.option("--a", "a", type=float, required=True, help="first parameter, > 0")
@click.option("--b", "b", type=float, required=True)
@click.option("--z", "z", type=COMPLEX, required=True)
@click.option("--route", type=click.Choice(["auto", "quadrature", "series",
                                            "rep"]),
              default="auto", show_default=True)
@click.option("--terms", type=int, default=30, show_default=True,
              help="partial-sum length for --route series")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.pass_obj
@_mapped
def cmd_iab(conf, a, b, z, route, terms, fmt):
    """Companion integral I_a,b(z).

    Example:

        mlf iab --a 1 --b 1 --z 0.5
    """
    p = IabParams(a, b)
    cfg = _quad_cfg(conf)
    if route == "quadrature":
        r = iab_quadrature(p, z, cfg)
    elif route == "series":
        r = iab_series(p, z, terms)
    elif route == "rep":
        r = iab_rep(p, z, cfg)
    else:
        r = iab_eval(p, z, cfg)
    _emit([_eval_record(a, b, z, r)], fmt)


@cli.command("deriv")
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, required=True)
@click.option("--z", "z", type=COMPLEX, required=True)
@click.option("--order", type=int, default=1, show_default=True)
@click.option("--tol", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.pass_obj
@_mapped
def cmd_deriv(conf, a, b, z, order, tol, fmt):
    """d^order/dz^order of E_a,b at z (order >= 2 needs z != 0).

    Example:

        mlf deriv --a 1 --b 1 --z 0 --order 1    # 1
    """
    if order < 0:
        raise click.UsageError(f"--order must be >= 0, got {order}")
    p = MLParams(a, b)
    tol_v = _tol(tol, conf)
    if order == 0:
        value = ml_eval(p, z, tol_v).value
    elif order == 1:
        value = ml_derivative(p, z, tol_v)
    else:
        value = ml_derivative_n(p, z, order, tol_v)
    rec = {"a": a, "b": b, "z_re": z.real, "z_im": z.imag, "order": order,
           "value_re": value.real, "value_im": value.imag}
    _emit([rec], fmt)


def main():
    """Entry point for the console script."""
    cli()


if __name__ == "__main__":
    main()
