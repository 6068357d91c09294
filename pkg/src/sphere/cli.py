"""Command line front end: ``sphere <command> ...``.

Reports are plain text; identity checks end with a ``RESULT`` line.  Exit
status: 0 success, 1 an ``--expect`` verdict was not met, 2 usage or input
errors, 3 other errors raised by a computation.
"""
from __future__ import annotations

import json
import sys
from itertools import product
from pathlib import Path

import click

from .errors import SphereError
from .ring import as_ring


class UsageFailure(click.UsageError):
    """Bad input detected after click's own parsing (exit 2)."""


def _ring(text):
    try:
        return as_ring(text)
    except Exception as exc:
        raise UsageFailure(f"bad ring descriptor {text!r}: {exc}") from None


def _read_text(arg: str) -> str:
    """Inline text, or the contents of a file if ``arg`` names one."""
    p = Path(arg)
    if not arg.lstrip().startswith("{") and p.exists():
        return p.read_text()
    return arg


def _form(text, ring):
    from .quadratic import parse_form
    try:
        return parse_form(_read_text(text), ring if ring else None)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageFailure(f"cannot read form {text!r}: {exc}") from None


def _algebra(path):
    from .spherical import TernaryAlgebra
    try:
        return TernaryAlgebra.from_json(_read_text(path))
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageFailure(f"cannot read algebra {path!r}: {exc}") from None


def _ints(text, name):
    try:
        return tuple(int(v) for v in text.split(",")) if text else ()
    except ValueError:
        raise UsageFailure(f"{name} must be comma-separated integers") from None


def _strategy(kind, seed, count, box):
    from .verify import Strategy
    if kind not in ("exhaustive", "exhaustive-basis", "exhaustive-module", "sampled"):
        raise UsageFailure(f"unknown strategy {kind!r}")
    return Strategy(kind, count=count, seed=seed, box=box)


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _finish(reports, expect):
    bad = [r for r in reports if expect and r.verdict != expect]
    if bad:
        sys.exit(1)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SphereError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(3)


@click.group(cls=_Group)
def main():
    """Exact constructions and checks for spherical spaces and their loops."""


_strategy_opts = [
    click.option("--strategy", default="exhaustive", show_default=True,
                 help="exhaustive | exhaustive-basis | exhaustive-module | sampled"),
    click.option("--seed", default=0, show_default=True, type=int),
    click.option("--count", default=1000, show_default=True, type=int),
]


def strategy_options(fn):
    for opt in reversed(_strategy_opts):
        fn = opt(fn)
    return fn


# -- table ------------------------------------------------------------------------

@main.command()
@click.option("--form", "form_text", required=True, help="alpha,beta,gamma or a form file")
@click.option("--ring", "ring_text", default="int", show_default=True)
@click.option("--five", is_flag=True, help="five-fold products instead of basis triples")
def table(form_text, ring_text, five):
    """Basis products of the canonical rank-2 product."""
    from .binary2d import canonical_ternary, five_fold, form_space, format_vector
    sp = form_space(_form(form_text, _ring(ring_text)))
    a, b, c = sp.binary_coefficients
    click.echo(f"form ({a},{b},{c}) over {sp.ring}")
    E = sp.basis()
    if not five:
        for i, j, k in product(range(2), repeat=3):
            v = canonical_ternary(sp, E[i], E[j], E[k])
            click.echo(f"<e{i + 1} e{j + 1} e{k + 1}> = {format_vector(v)}")
        return
    for idx in product((1, 2), repeat=5):
        vals = [five_fold(sp, idx, br) for br in ("left", "middle", "right")]
        same = "equal" if vals[0] == vals[1] == vals[2] else "DIFFER"
        name = "".join(map(str, idx))
        click.echo(f"{name} = {format_vector(vals[0])} ({same} across bracketings)")


# -- verify -----------------------------------------------------------------------

@main.command()
@click.option("--alg", "alg_path", help="algebra file")
@click.option("--form", "form_text", help="canonical rank-2 product of this form")
@click.option("--ring", "ring_text", default=None)
@click.option("--id", "ids", required=True, multiple=True, help="identity name (repeatable)")
@strategy_options
@click.option("--box", default=None, type=int, help="coordinate box for infinite rings")
@click.option("--expect", type=click.Choice(["holds", "fails"]), default=None)
def verify(alg_path, form_text, ring_text, ids, strategy, seed, count, box, expect):
    """Check identities on a ternary algebra."""
    from .binary2d import canonical_algebra
    from .verify import get_identity, verify as run
    if bool(alg_path) == bool(form_text):
        raise UsageFailure("give exactly one of --alg and --form")
    alg = (_algebra(alg_path) if alg_path
           else canonical_algebra(_form(form_text, _ring(ring_text or "int"))))
    st = _strategy(strategy, seed, count, box)
    reports = []
    for name in ids:
        try:
            get_identity(name)
        except KeyError as exc:
            raise UsageFailure(str(exc)) from None
        r = run(alg, name, st)
        reports.append(r)
        click.echo(str(r))
    _finish(reports, expect)


# -- build ------------------------------------------------------------------------

RECIPES = ("minkowski", "splitnull", "polarized", "cliffordq", "kd", "abcd")


@main.command()
@click.option("--recipe", required=True, type=click.Choice(RECIPES))
@click.option("--ring", "ring_text", default="int", show_default=True)
@click.option("--n", "n", default=3, show_default=True, type=int, help="rank (minkowski)")
@click.option("--phi", default=None, help="comma-separated coefficients (minkowski)")
@click.option("--psi", default=None, help="comma-separated coefficients (minkowski)")
@click.option("--base", default=None, help="base algebra file (splitnull, abcd)")
@click.option("--form", "form_text", default=None, help="binary form (cliffordq, kd, abcd base)")
@click.option("--module", default="adjoint", type=click.Choice(["adjoint", "zero"]),
              show_default=True, help="right module (splitnull)")
@click.option("--b", "bmat", default=None, help="JSON matrix b (polarized)")
@click.option("--mu", default="-1", show_default=True,
              help="doubling parameters, one per stage (kd, abcd)")
@click.option("--side", default=None, type=click.Choice(["left", "right"]))
@click.option("--out", default=None, help="output file (default stdout)")
def build(recipe, ring_text, n, phi, psi, base, form_text, module, bmat, mu, side, out):
    """Construct an algebra and write it as an algebra file."""
    from . import constructions as C
    from .binary2d import canonical_algebra
    R = _ring(ring_text)

    def need(value, flag):
        if value is None:
            raise UsageFailure(f"recipe {recipe} needs {flag}")
        return value

    mus = [R.parse_element(m) for m in mu.split(",")] if recipe in ("kd", "abcd") else []
    if recipe == "minkowski":
        alg = C.minkowski_extension(R, n, _ints(need(phi, "--phi"), "--phi"),
                                    _ints(need(psi, "--psi"), "--psi"))
    elif recipe == "splitnull":
        b_alg = (_algebra(base) if base
                 else canonical_algebra(_form(need(form_text, "--base or --form"), R)))
        act = (C.RightModuleAction.adjoint(b_alg) if module == "adjoint"
               else C.RightModuleAction.zero(b_alg))
        alg = C.split_null_extension(b_alg, act)
    elif recipe == "polarized":
        try:
            b = json.loads(need(bmat, "--b"))
        except json.JSONDecodeError as exc:
            raise UsageFailure(f"--b is not JSON: {exc}") from None
        alg = C.polarized_space(b, R)
    elif recipe == "cliffordq":
        alg = C.clifford_quaternion(_form(need(form_text, "--form"), R), R)
    elif recipe == "kd":
        sd = need(side, "--side")
        a = C.binarion(_form(need(form_text, "--form"), R), R)
        for m in mus:
            a = C.kd_double(a, m, sd)
        alg = a.to_ternary(sd, label=a.label)
    else:
        sd = need(side, "--side")
        alg = (_algebra(base) if base
               else canonical_algebra(_form(need(form_text, "--base or --form"), R)))
        for m in mus:
            alg = C.abcd_double(alg, m, sd)
    _emit(alg.to_json(), out)


# -- enumeration ---------------------------------------------------------------------

@main.command("sphere-enum")
@click.option("--alg", "alg_path", default=None)
@click.option("--form", "form_text", default=None)
@click.option("--ring", "ring_text", default=None)
@click.option("--c", "level", default="1", show_default=True)
@click.option("--box", default=None, type=int)
def sphere_enum(alg_path, form_text, ring_text, level, box):
    """List the vectors with q(x) = c."""
    from .quadratic import sphere_vectors
    if bool(alg_path) == bool(form_text):
        raise UsageFailure("give exactly one of --alg and --form")
    space = (_algebra(alg_path).space if alg_path
             else _form(form_text, _ring(ring_text or "int")))
    pts = sphere_vectors(space, space.ring.parse_element(level), box)
    for p in pts:
        click.echo(" ".join(str(v) for v in p))
    click.echo(f"count {len(pts)}")


@main.command()
@click.option("--form", "form_text", required=True)
@click.option("--box", required=True, type=int)
def roots(form_text, box):
    """Root vectors of an integral form within a coordinate box."""
    from .quadratic import root_vectors
    space = _form(form_text, as_ring("int"))
    pts = root_vectors(space, box)
    for p in pts:
        click.echo(" ".join(str(v) for v in p))
    click.echo(f"count {len(pts)}")


# -- loops ---------------------------------------------------------------------------

def _table(path):
    from .loops import FiniteMagma
    try:
        return FiniteMagma.from_text(Path(path).read_text(), label=Path(path).stem)
    except (OSError, ValueError) as exc:
        raise UsageFailure(f"cannot read table {path!r}: {exc}") from None


@main.command()
@click.option("--table", "table_path", required=True, help="Cayley table file")
@click.option("--check", "checks", multiple=True, help="property name (repeatable)")
@click.option("--ternary", type=click.Choice(["left", "right"]), default=None,
              help="check the ternary product x(y^-1 z) (left) or (x y^-1)z (right)")
@click.option("--identify", "do_identify", is_flag=True)
@strategy_options
@click.option("--expect", type=click.Choice(["holds", "fails"]), default=None)
def loop(table_path, checks, ternary, do_identify, strategy, seed, count, expect):
    """Check loop properties of a Cayley table."""
    from .catalog import identify
    from .loops import check_property, property_names, ternary_from_inverse_loop
    m = _table(table_path)
    click.echo(f"{m.label}: {'binary' if m.arity == 2 else 'ternary'}, {m.order} elements")
    if do_identify:
        click.echo(f"identified as {identify(m)}")
    target = ternary_from_inverse_loop(m, ternary) if ternary else m
    st = _strategy("exhaustive" if strategy == "exhaustive" else strategy, seed, count, None)
    known = set(property_names()) | {"defining", "PA"}
    reports = []
    for name in checks:
        if name not in known:
            raise UsageFailure(f"unknown property {name!r}; known: {', '.join(property_names())}")
        r = check_property(target, name, st)
        reports.append(r)
        click.echo(str(r))
    _finish(reports, expect)


@main.command()
@click.option("--seed", "seed_name", required=True,
              help="c2, c3, c4, c6, c2xc2, q8 or a Cayley table file of a group")
@click.option("--eps", default="-1", show_default=True)
@click.option("--mu", default="1", show_default=True)
@click.option("--steps", default=1, show_default=True, type=int)
@click.option("--convention", default="bullet", show_default=True,
              type=click.Choice(["bullet", "bullet-prime"]))
@click.option("--emit-cayley", "emit", default=None, help="write the last stage's table here")
def double(seed_name, eps, mu, steps, convention, emit):
    """Iterated Moufang doubling with per-stage verdicts."""
    from .errors import InvalidStageParameter, NotInverseLoop
    from .moufang_double import FiniteGroup, doubling_chain, seed_group
    if steps < 1:
        raise UsageFailure("--steps must be at least 1")
    if Path(seed_name).exists():
        try:
            g = FiniteGroup(_table(seed_name))
        except (NotInverseLoop, SphereError) as exc:
            raise UsageFailure(f"seed table is not a group with central inverse: {exc}") from None
    else:
        try:
            g = seed_group(seed_name)
        except ValueError as exc:
            raise UsageFailure(str(exc)) from None
    try:
        stages = doubling_chain(g, [(eps, mu)] * steps, convention)
    except InvalidStageParameter as exc:
        raise UsageFailure(str(exc)) from None
    click.echo(f"seed {seed_name}, eps {eps}, mu {mu}, convention {convention}")
    for n, s in enumerate(stages):
        click.echo(f"stage {n}: {s.summary()}")
    if emit:
        from .loops import FiniteMagma
        last = stages[-1].loop
        plain = FiniteMagma([str(x) for x in last.elements], 2, table=last.materialize())
        Path(emit).write_text(plain.to_text())


if __name__ == "__main__":
    main()
