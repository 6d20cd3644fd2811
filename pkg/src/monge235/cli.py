"""Command-line front end.

Exit codes: 0 all selected checks pass, 1 a check failed, 2 usage or
parameter errors.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import liealg, maps, params, suites
from .catalog import (
    SingularParameterError,
    load_model_json,
    model_exp,
    model_higher,
    model_ln,
    model_N12,
    model_NS,
    model_Pm,
    model_Q,
    model_Qab,
    model_Qnm,
)
from .jet import growth_vector
from .zerotest import ZeroTestConfig


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"not a rational number: {text!r}")


def _parse_point(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            out.append(float(part))
    return out


def _model_from_flags(model, m, a, b, r1, r2, n, coeffs):
    try:
        if model == "Pm":
            return model_Pm(_frac(m))
        if model == "Qab":
            return model_Qab(_frac(a), _frac(b))
        if model == "Q":
            return model_Q(_frac(r1), _frac(r2))
        if model == "Qnm":
            return model_Qnm(_frac(m))
        if model == "N12":
            return model_N12()
        if model == "ln":
            return model_ln()
        if model == "NS":
            return model_NS()
        if model == "exp":
            return model_exp()
        if model == "higher":
            cs = [_frac(c) for c in coeffs.split(",")] if coeffs else []
            return model_higher(int(n), cs)
        if model.endswith(".json"):
            return load_model_json(model)
    except SingularParameterError as exc:
        raise click.ClickException(str(exc))
    except (TypeError, ValueError) as exc:
        raise click.UsageError(str(exc))
    raise click.UsageError(f"unknown model {model!r}")


@click.group()
def main():
    """Verification toolkit for submaximal Monge equations."""


@main.command()
@click.option("--suite", default="all", show_default=True,
              help="one of: all, sym, structure, maps, dihedral, invariants, higher, weyl")
@click.option("--samples", default=32, show_default=True, type=int)
@click.option("--tol", default=1e-9, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--json", "json_path", default=None, help="write the JSON report here")
@click.option("--m", default=None, help="also check the power family at this m")
@click.option("--list-checks", "listing", is_flag=True, help="list check ids and exit")
def verify(suite, samples, tol, seed, json_path, m, listing):
    """Run a verification suite and report pass/fail per check."""
    try:
        ids = suites.list_checks(suite)
    except KeyError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    if listing:
        for cid in ids:
            click.echo(cid)
        return
    cfg = ZeroTestConfig(samples=samples, tol=tol, seed=seed)
    extra = []
    if m is not None:
        try:
            extra = suites.run_pm_checks(_frac(m), cfg)
        except SingularParameterError as exc:
            click.echo(f"linear model excluded: {exc}", err=True)
            sys.exit(2)
    reports = suites.run_suite(suite, cfg) + extra
    failed = 0
    for r in reports:
        mark = "PASS" if r.ok else "FAIL"
        failed += not r.ok
        click.echo(f"{mark}  {r.check_id}  residual={r.max_residual:.3g}  "
                   f"({r.wall_time:.2f}s){'  ' + r.detail if r.detail else ''}")
    click.echo(f"{len(reports) - failed}/{len(reports)} checks passed "
               f"(suite={suite}, seed={seed}, samples={samples}, tol={tol:g})")
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(suites.reports_to_json(reports))
    sys.exit(1 if failed else 0)


@main.command()
@click.option("--m", required=True)
@click.option("--json", "as_json", is_flag=True)
def invariant(m, as_json):
    """J, k and I^2 for the power family at parameter m."""
    rec = liealg.invariant_record(_frac(m))
    if as_json:
        click.echo(json.dumps({
            "m": str(rec.m), "k": str(rec.k), "J": str(rec.J),
            "I2": str(rec.I2), "consistent": rec.consistent, "g2": rec.g2,
        }))
        return
    click.echo(f"m = {rec.m}  k = {rec.k}")
    click.echo(f"J = {rec.J}")
    click.echo(f"I^2 = {rec.I2}")
    click.echo(f"25J = 9(1 + 1/I^2): {'ok' if rec.consistent else 'VIOLATED'}")
    if rec.g2:
        click.echo("flag: G2 locus")


@main.command()
@click.option("--m", default=None)
@click.option("--kappa", default=None)
@click.option("--json", "as_json", is_flag=True)
def orbit(m, kappa, as_json):
    """Parameter orbit of m under the Klein four-group, or of kappa on P^1."""
    try:
        if m is not None:
            orb = params.orbit_m(_frac(m))
            elems = [str(v) for v in orb.elements]
        elif kappa is not None:
            orb = params.orbit_kappa(complex(kappa.replace("i", "j")))
            elems = [str(v) for v in orb.elements]
        else:
            raise click.UsageError("need --m or --kappa")
    except params.ExcludedPointError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    if as_json:
        click.echo(json.dumps({"orbit": elems, "canonical": str(orb.canonical)}))
        return
    click.echo(", ".join(elems))
    click.echo(f"canonical: {orb.canonical}")


@main.command("map")
@click.option("--name", required=True)
@click.option("--m", default=None)
@click.option("--point", required=True, help="comma-separated chart point")
def map_cmd(name, m, point):
    """Apply a builtin transformation to a point."""
    kwargs = {"m": _frac(m)} if m is not None else {}
    try:
        T = maps.builtin(name, **kwargs)
        img = T.apply(_parse_point(point))
    except (maps.InvalidParameterError, TypeError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    click.echo(", ".join(_fmt_num(v) for v in img))


def _fmt_num(v):
    if isinstance(v, Fraction):
        return str(v)
    v = complex(v)
    if abs(v.imag) < 1e-14:
        return f"{v.real:.12g}"
    return f"{v:.12g}"


@main.command("map-check")
@click.option("--name", required=True)
@click.option("--m", default=None)
@click.option("--samples", default=32, show_default=True, type=int)
@click.option("--tol", default=1e-9, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
def map_check(name, m, samples, tol, seed):
    """Check a builtin transformation against its declared model pair."""
    kwargs = {"m": _frac(m)} if m is not None else {}
    cfg = ZeroTestConfig(samples=samples, tol=tol, seed=seed)
    try:
        T = maps.builtin(name, **kwargs)
        src = maps.source_model(T.source)
        tgt = maps.source_model(T.target)
    except (maps.InvalidParameterError, SingularParameterError, TypeError) as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    rep = maps.check_equivalence(T, src, tgt, cfg)

    def fib(f):
        return f[0] if f[1] is None else f"{f[0]}(m={f[1]})"

    click.echo(f"{'PASS' if rep.ok else 'FAIL'}  {T.name}: {fib(T.source)} -> {fib(T.target)}  "
               f"residual={rep.max_residual:.3g}  samples={rep.samples}")
    sys.exit(0 if rep.ok else 1)


@main.command()
@click.option("--model", required=True)
@click.option("--m", default=None)
@click.option("--a", default=None)
@click.option("--b", default=None)
@click.option("--r1", default=None)
@click.option("--r2", default=None)
@click.option("--n", default=None)
@click.option("--coeffs", default=None)
@click.option("--json", "as_json", is_flag=True)
def structure(model, m, a, b, r1, r2, n, coeffs, as_json):
    """Structure constants of a model's listed symmetry basis."""
    mo = _model_from_flags(model, m, a, b, r1, r2, n, coeffs)
    if not mo.symmetries:
        click.echo(f"model {mo.name} carries no symmetry list", err=True)
        sys.exit(2)
    alg = liealg.structure_constants_model(mo)
    if as_json:
        out = {
            "model": mo.name,
            "exact": alg.exact,
            "max_residual": alg.max_residual,
            "derived_series": liealg.derived_series(alg) if alg.exact else None,
            "brackets": {
                f"[{alg.names[i]},{alg.names[j]}]": {
                    alg.names[k]: str(v)
                    for k, v in enumerate(alg.tensor[i][j]) if v != 0
                }
                for i in range(alg.dim) for j in range(i)
                if any(v != 0 for v in alg.tensor[i][j])
            },
        }
        click.echo(json.dumps(out, indent=2))
        return
    click.echo(f"model {mo.name}: basis {', '.join(alg.names)} "
               f"({'exact' if alg.exact else 'float'}, residual {alg.max_residual:.3g})")
    for i in range(alg.dim):
        for j in range(i):
            nz = {alg.names[k]: v for k, v in enumerate(alg.tensor[i][j]) if v != 0}
            if nz:
                terms = " + ".join(f"({v})*{k}" for k, v in nz.items())
                click.echo(f"[{alg.names[i]},{alg.names[j]}] = {terms}")
    if alg.exact:
        ds = liealg.derived_series(alg)
        click.echo(f"derived series: {ds}  solvable: {ds[-1] == 0}")


@main.command()
@click.option("--model", required=True)
@click.option("--m", default=None)
@click.option("--a", default=None)
@click.option("--b", default=None)
@click.option("--r1", default=None)
@click.option("--r2", default=None)
@click.option("--n", default=None)
@click.option("--coeffs", default=None)
@click.option("--point", default=None, help="comma-separated chart point")
@click.option("--seed", default=0, type=int)
def growth(model, m, a, b, r1, r2, n, coeffs, point, seed):
    """Growth vector of a model's distribution at a point."""
    import random as _random

    mo = _model_from_flags(model, m, a, b, r1, r2, n, coeffs)
    if point:
        p = _parse_point(point)
    else:
        cfg = ZeroTestConfig(seed=seed)
        vals = cfg.sample_point(mo.chart, _random.Random(seed))
        p = [vals[v.name] for v in mo.chart]
    gv = growth_vector(mo.distribution(), p)
    click.echo(",".join(str(d) for d in gv))


@main.command()
@click.option("--roots", default=None, help="comma-separated exponents a1..an")
@click.option("--coeffs", default=None, help="comma-separated coefficients r1..rn")
@click.option("--json", "as_json", is_flag=True)
def weyl(roots, coeffs, as_json):
    """Root/coefficient correspondence and Weyl orbit of the exponents."""
    if roots:
        rs = [complex(v.replace("i", "j")) for v in roots.split(",")]
        cs = params.coeffs_from_roots(rs)
    elif coeffs:
        cs = tuple(_frac(v) for v in coeffs.split(","))
        rs = params.roots_from_coeffs(cs).roots
    else:
        raise click.UsageError("need --roots or --coeffs")
    orbit = params.weyl_orbit(rs)
    if as_json:
        click.echo(json.dumps({
            "roots": [str(v) for v in rs],
            "coeffs": [str(c) for c in cs],
            "orbit_size": len(orbit),
        }))
        return
    click.echo(f"roots: {', '.join(_fmt_num(v) for v in rs)}")
    click.echo(f"coeffs: {', '.join(_fmt_num(c) for c in cs)}")
    click.echo(f"Weyl orbit size: {len(orbit)}")


@main.command()
@click.option("--roots", required=True)
@click.option("--tol", default=1e-9, type=float)
def stratum(roots, tol):
    """Test whether {+-a_i} forms an arithmetic progression."""
    rs = [complex(v.replace("i", "j")) for v in roots.split(",")]
    try:
        res = params.arithmetic_stratum(rs, tol)
    except params.StratumSizeError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    click.echo("arithmetic" if res else "generic")


if __name__ == "__main__":
    main()
