"""Subcommands of the ``dqm`` tool.

Exit codes: 0 success, 2 parse or configuration error, 3 budget exceeded or
unresolved result, 4 verification failure.
"""

import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from dqm.cli.config import FORMATS, JobConfig, default_cache_dir, parse_modulus
from dqm.forms import SEQ_NAMES, Unresolved, divides, evaluate, grading_of, nu_infty, sequence
from dqm.hyperderive import dn, set_default_cache_dir, stages_for, taylor_of
from dqm.parser import ParseError, parse, parse_form, print_tree

log = logging.getLogger("dqm")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class ConfigError(click.ClickException):
    exit_code = EXIT_CONFIG


class BudgetError(click.ClickException):
    exit_code = EXIT_BUDGET


def _form(F, text):
    try:
        return parse_form(F, text)
    except ParseError as exc:
        raise ConfigError(str(exc)) from None
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot evaluate {text!r}: {exc}") from None


def _emit(cfg, text=None, data=None, rows=None):
    if cfg.fmt == "json":
        click.echo(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=False))
    elif cfg.fmt == "csv":
        if rows is None:
            rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (list, dict)) else v} for k, v in data.items()]
        buf = io.StringIO()
        if rows:
            wr = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            wr.writeheader()
            wr.writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(text)


def _exit(code):
    click.get_current_context().exit(code)


def _field_json(F):
    return F.descriptor()


@click.group()
@click.option("--p", "p", type=int, default=3, show_default=True, help="Characteristic.")
@click.option("--e", "e", type=int, default=1, show_default=True, help="Extension degree, q = p^e.")
@click.option("--modulus", default=None, help="Modulus coefficients, low to high, e.g. 1,1,1.")
@click.option("--cache", "cache", default=None, help="Cache directory (default $DQM_CACHE_DIR or ~/.cache/dqm).")
@click.option("--no-cache", is_flag=True, help="Do not read or write the disk cache.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes for sweeps.")
@click.option("--precision-cap", type=int, default=2 ** 14, show_default=True)
@click.option("--quiet", "-q", is_flag=True, help="Suppress progress messages.")
@click.pass_context
def cli(ctx, p, e, modulus, cache, no_cache, fmt, jobs, precision_cap, quiet):
    """Exact computations with Drinfeld quasi-modular forms over F_q(T)."""
    logging.basicConfig(
        level=logging.WARNING if quiet else logging.INFO,
        format="[%(name)s] %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = JobConfig(p, e, parse_modulus(modulus), None if no_cache else (cache or default_cache_dir()),
                        fmt, jobs, precision_cap)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.cache_dir:
        set_default_cache_dir(cfg.cache_dir)
    ctx.obj = cfg


@cli.command()
@click.option("--expr", required=True, help="Form expression, e.g. 'x[1]' or 'E*g+h'.")
@click.option("--prec", type=int, default=None, help="u-adic precision (default 4 * weight, at least 16).")
@click.option("--nu", "want_nu", is_flag=True, help="Also report the order of vanishing.")
@click.pass_obj
def expand(cfg, expr, prec, want_nu):
    """u-expansion of a form."""
    F = cfg.field()
    f = _form(F, expr)
    if not f.is_polynomial():
        raise ConfigError("expand needs a polynomial form (no negative powers of h)")
    if prec is None:
        prec = max(4 * max(f.weights()), 16) if not f.is_zero() else 16
    if prec > cfg.precision_cap:
        raise BudgetError(f"precision {prec} exceeds --precision-cap {cfg.precision_cap}")
    log.info("evaluating to u^%d", prec)
    s = evaluate(f, prec)
    data = {"field": _field_json(F), "expr": expr, "series": s.to_json()}
    text = s.to_text()
    code = EXIT_OK
    if want_nu:
        r = _nu(cfg, f)
        if isinstance(r, Unresolved):
            data["nu"] = str(r)
            text += f"\nnu = {r}"
            code = EXIT_BUDGET
        else:
            data["nu"] = r.nu
            data["leading"] = str(r.leading)
            text += f"\nnu = {r.nu}"
    _emit(cfg, text, data)
    if code:
        _exit(code)


def _nu(cfg, f):
    if f.is_zero():
        raise ConfigError("the zero form has no order of vanishing")
    log.info("adaptive nu_infty (cap u^%d)", cfg.precision_cap)
    return nu_infty(f, cap=cfg.precision_cap)


@cli.command()
@click.option("--expr", required=True)
@click.pass_obj
def nu(cfg, expr):
    """Order of vanishing at infinity and leading coefficient."""
    F = cfg.field()
    f = _form(F, expr)
    r = _nu(cfg, f)
    if isinstance(r, Unresolved):
        _emit(cfg, str(r), {"expr": expr, "nu": None, "status": str(r)})
        _exit(EXIT_BUDGET)
    _emit(cfg, f"nu = {r.nu}\nleading = {r.leading}",
          {"expr": expr, "nu": r.nu, "leading": str(r.leading), "precision_used": r.precision_used})


def _check_budget(cfg, F, n):
    if n + 1 > cfg.precision_cap:
        r = stages_for(F, n)
        raise BudgetError(
            f"D_{n} needs Taylor expansions modulo X^{n + 1} (stage {r}, X-precision {F.q ** (r + 1)}); "
            f"raise --precision-cap to at least {n + 1}"
        )


@cli.command()
@click.option("--expr", required=True)
@click.option("--n", "n", type=int, required=True, help="Order of the hyperderivative D_n.")
@click.pass_obj
def derive(cfg, expr, n):
    """Hyperderivative D_n of a form."""
    F = cfg.field()
    f = _form(F, expr)
    if n < 0:
        raise ConfigError("--n must be >= 0")
    _check_budget(cfg, F, n)
    log.info("D_%d at stage %d", n, stages_for(F, n))
    d = dn(f, n)
    _emit(cfg, str(d), {"expr": expr, "n": n, "result": str(d), "form": d.to_json()})


def _poly_in_X(coeffs, var="X"):
    """Text of sum c_n X^n for QMForm coefficients."""
    out = []
    for n, c in sorted(coeffs.items()):
        s = str(c)
        multi = len(c) > 1 or "/" in s
        if n == 0:
            mono = s
        else:
            x = var if n == 1 else f"{var}^{n}"
            if s == "1":
                mono = x
            elif s == "-1":
                mono = "-" + x
            elif multi:
                mono = f"({s})*{x}"
            else:
                mono = f"{s}*{x}"
        if out and not mono.startswith("-"):
            out.append("+")
        out.append(mono)
    return "".join(out) or "0"


def factor_taylor(target, tp):
    """{n: c_n / target} when every coefficient is a multiple of target, else None."""
    quots = {}
    for n, c in tp.c.items():
        qt = divides(target, c)
        if qt is None:
            return None
        quots[n] = qt
    return quots


@cli.command()
@click.option("--target", required=True, help="Form whose Taylor expansion T_X is wanted.")
@click.option("--stage", type=int, required=True, help="Work modulo X^(q^stage).")
@click.pass_obj
def taylor(cfg, target, stage):
    """Truncated Taylor expansion T_(X,stage)(target)."""
    F = cfg.field()
    f = _form(F, target)
    if stage < 1:
        raise ConfigError("--stage must be >= 1")
    N = F.q ** stage
    if N > cfg.precision_cap:
        raise BudgetError(f"stage {stage} needs X-precision {N} > --precision-cap {cfg.precision_cap}")
    log.info("T_X(%s) modulo X^%d", target, N)
    tp = taylor_of(f, N)
    quots = factor_taylor(f, tp) if f.is_polynomial() and not f.is_zero() else None
    if quots is not None:
        tree = parse(target)
        name = print_tree(tree)
        if tree[0] not in ("gen", "fam", "num", "T"):
            name = f"({name})"
        text = f"{name}*({_poly_in_X(quots)})"
    else:
        text = _poly_in_X(tp.c)
    data = {"target": target, "xprec": N, "text": text, "taylor": tp.to_json()}
    rows = [{"n": n, "coefficient": str(c)} for n, c in sorted(tp.c.items())]
    _emit(cfg, text, data, rows)


@cli.command()
@click.option("--name", type=click.Choice(SEQ_NAMES), required=True)
@click.option("--k", "k", type=int, default=0, show_default=True)
@click.pass_obj
def seq(cfg, name, k):
    """A member of one of the families g, h, x, y, xi, eta, Delta."""
    F = cfg.field()
    try:
        f = sequence(F, name, k)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    gr = grading_of(f) if not f.is_zero() else None
    data = {"name": name, "k": k, "form": f.to_json(), "text": str(f)}
    if gr and gr != "inhomogeneous":
        data.update(w=gr.w, m=gr.m, l=gr.l)
    label = name if name == "Delta" else f"{name}[{k}]"
    _emit(cfg, f"{label} = {f}", data)


def _extremal(cfg, w, m, l):
    from dqm.extremal import extremal_form

    F = cfg.field()
    try:
        rep = extremal_form(F, w, m, l, cap=cfg.precision_cap)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return rep


@cli.command()
@click.option("--w", "w", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.pass_obj
def extremal(cfg, w, m, l):
    """Extremal form of the space of weight w, type m, depth <= l."""
    log.info("extremal search w=%d m=%d l=%d", w, m, l)
    rep = _extremal(cfg, w, m, l)
    data = rep.to_json()
    if rep.status != "resolved":
        _emit(cfg, f"dim = {rep.dim}\nstatus = {rep.status}", data)
        _exit(EXIT_BUDGET)
    text = (f"dim = {rep.dim}\nnu_max = {rep.nu_max}\nspectrum = {rep.spectrum}"
            f"\nform = {rep.extremal_form}")
    _emit(cfg, text, data)


@cli.command()
@click.option("--w", "w", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.pass_obj
def spectrum(cfg, w, m, l):
    """Vanishing spectrum of the space of weight w, type m, depth <= l."""
    rep = _extremal(cfg, w, m, l)
    data = {"dim": rep.dim, "spectrum": rep.spectrum, "is_interval": rep.is_interval, "status": rep.status}
    _emit(cfg, f"{rep.spectrum}" + ("" if rep.status == "resolved" else f" ({rep.status})"), data,
          [{"index": i, "nu": v} for i, v in enumerate(rep.spectrum)])
    if rep.status != "resolved":
        _exit(EXIT_BUDGET)


def _cell(args):
    F, k, l, with_eps, store, cap, cache = args
    from dqm.extremal.table import table_cell

    if cache:
        set_default_cache_dir(cache)
    row, _ = table_cell(F, k, l, with_eps, store, cap)
    return row


@cli.command()
@click.option("--kmax", type=int, default=1, show_default=True)
@click.option("--lmax", type=int, default=None, help="Largest depth (default q+1).")
@click.option("--no-epsilon", is_flag=True, help="Skip the differential exponent column.")
@click.option("--store", default=None, help="Directory for extremal forms keyed by form_id.")
@click.pass_obj
def table(cfg, kmax, lmax, no_epsilon, store):
    """Extremal forms of the spaces of weight l(q^k+1), type l, depth <= l."""
    from dqm.extremal.table import COLUMNS, table_csv, table_json

    F = cfg.field()
    lmax = F.q + 1 if lmax is None else lmax
    cells = [(F, k, l, not no_epsilon, store, cfg.precision_cap, cfg.cache_dir)
             for l in range(1, min(lmax, F.q + 1) + 1) for k in range(kmax + 1)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            rows = list(ex.map(_cell, cells))
    else:
        rows = []
        for c in cells:
            log.info("cell k=%d l=%d", c[1], c[2])
            rows.append(_cell(c))
    rows.sort(key=lambda r: (r["k"], r["l"]))
    if cfg.fmt == "json":
        click.echo(table_json(rows))
    elif cfg.fmt == "csv":
        click.echo(table_csv(rows), nl=False)
    else:
        widths = {c: max(len(c), *(len(str(r.get(c))) for r in rows)) for c in COLUMNS}
        click.echo("  ".join(c.ljust(widths[c]) for c in COLUMNS))
        for r in rows:
            click.echo("  ".join(str(r.get(c)).ljust(widths[c]) for c in COLUMNS))
    if any(r["status"] == "unresolved" for r in rows):
        _exit(EXIT_BUDGET)


@cli.command()
@click.option("--suite", type=click.Choice(["fast", "full", "paper"]), default="fast", show_default=True)
@click.pass_obj
def verify(cfg, suite):
    """Run the identity checks; nonzero exit on any failure."""
    from dqm.checks import FAIL, UNRESOLVED, suite as make_suite

    plan = make_suite(suite, cfg.field())
    results = []
    for key, run in plan.items():
        log.info("check %s", key)
        r = run()
        results.append(r)
        if cfg.fmt == "text":
            click.echo(r.line())
    if cfg.fmt == "json":
        click.echo(json.dumps([r.to_json() for r in results], indent=2, ensure_ascii=False))
    elif cfg.fmt == "csv":
        rows = [{"key": r.key, "status": r.status, "checks": r.count, "title": r.title} for r in results]
        _emit(cfg, rows=rows)
    statuses = {r.status for r in results}
    if cfg.fmt == "text":
        counts = {s: sum(r.status == s for r in results) for s in sorted(statuses)}
        click.echo("summary: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
    if FAIL in statuses:
        _exit(EXIT_VERIFY)
    if UNRESOLVED in statuses:
        _exit(EXIT_BUDGET)


def main(argv=None):
    try:
        code = cli.main(args=argv, prog_name="dqm", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
