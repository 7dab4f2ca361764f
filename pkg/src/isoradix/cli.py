"""Command-line interface.

Exit codes: 0 on success, 1 on user error, 2 on an internal invariant
violation. Reports are deterministic for fixed flags: the provenance block
records the command and its arguments but not --threads or --cache-dir,
which cannot change results.
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys
from importlib.metadata import PackageNotFoundError, version

import click

from .batch import SweepConfig, point_rng
from .cache import TraceCache
from .curve import BadReduction, InvariantViolation, group_order, reduce
from .curvefile import CurveFileError, bundled_path, ingest_curves
from .distinguish import EmptySample, joint_valuation_density, mismatch_scan
from .galois import KINDS, CMCurveError, GroupModel, coupled_mismatch_fraction, eigen_one_fraction
from .lfunc import classify, count_extension
from .modarith import is_prime
from .radical import fingerprint

try:
    __version__ = version("isoradix")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0+unknown"


class Context:
    def __init__(self, cache_dir, seed, threads, fmt, curves_file):
        self.cache_dir = cache_dir
        self.seed = seed
        self.threads = threads
        self.fmt = fmt
        self.curves_file = curves_file
        self._cache = None

    @property
    def config(self) -> SweepConfig:
        return SweepConfig(seed=self.seed, workers=self.threads)

    @property
    def cache(self):
        if self.cache_dir is None:
            return None
        if self._cache is None:
            try:
                self._cache = TraceCache(self.cache_dir)
            except OSError as exc:
                raise click.ClickException(
                    f"{exc}\n  hint: pass a writable --cache-dir or unset ISORADIX_CACHE_DIR")
        return self._cache

    def curves(self, path=None):
        path = path or self.curves_file
        try:
            return {E.label: E for E in ingest_curves(path)}
        except OSError as exc:
            raise click.ClickException(f"cannot read curve file {path}: {exc.strerror}")
        except CurveFileError as exc:
            raise click.ClickException(str(exc))

    def curve(self, label):
        curves = self.curves()
        if label not in curves:
            known = ", ".join(sorted(curves))
            raise click.ClickException(
                f"unknown curve label {label!r}\n  hint: labels in {self.curves_file or bundled_path()}: {known}")
        return curves[label]


def _prime(value, name):
    if value < 2 or not is_prime(value):
        raise click.BadParameter(f"{value} is not prime", param_hint=name)
    return value


def _ells(text):
    try:
        ells = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a comma-separated list of integers", param_hint="--ells")
    if not ells:
        raise click.BadParameter("need at least one ell", param_hint="--ells")
    for ell in ells:
        _prime(ell, "--ells")
    return ells


def _emit(ctx: Context, command, args, payload, rows):
    """Print JSON (payload + provenance) or CSV (header row first)."""
    if ctx.fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        click.echo(buf.getvalue(), nl=False)
        return
    payload = dict(payload)
    payload["version"] = __version__
    payload["invocation"] = {"command": command, "args": args, "seed": ctx.seed}
    click.echo(json.dumps(payload, indent=2))


@click.group()
@click.option("--cache-dir", envvar="ISORADIX_CACHE_DIR", type=click.Path(file_okay=False),
              default=None, help="Directory for the a_p cache (default: $ISORADIX_CACHE_DIR, else no cache).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for prime sweeps.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--curves", "curves_file", type=click.Path(dir_okay=False), default=None,
              help="Curve file used to resolve labels (default: bundled curves).")
@click.pass_context
def cli(click_ctx, cache_dir, seed, threads, fmt, curves_file):
    """Radical fingerprints of elliptic curves over Q."""
    click_ctx.obj = Context(cache_dir, seed, threads, fmt, curves_file)


@cli.command()
@click.option("--curve", "label", required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--degree", "k", type=click.IntRange(1, 10), default=1, show_default=True)
@click.pass_obj
def count(ctx: Context, label, p, k):
    """Group order, trace and reduction type at one prime."""
    E = ctx.curve(label)
    _prime(p, "--p")
    try:
        R = reduce(E, p)
    except BadReduction as exc:
        raise click.ClickException(f"{exc}\n  hint: choose a prime of good reduction")
    except ValueError as exc:
        raise click.ClickException(str(exc))
    N = group_order(R, point_rng(ctx.seed, E.a, E.b, p))
    a = p + 1 - N
    data = count_extension(a, p, k)
    cls = classify(data)
    payload = {"p": p, "N": N, "a": a, "class": cls.kind}
    if cls.case is not None:
        payload["case"] = cls.case
    if k > 1:
        payload.update(degree=k, t_k=data.t_k, N_k=data.N_k)
    header = list(payload)
    _emit(ctx, "count", {"curve": label, "p": p, "degree": k}, payload,
          [header, [payload[h] for h in header]])


@cli.command(name="fingerprint")
@click.option("--curves", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--bound", "B", type=click.IntRange(min=5), required=True)
@click.option("--ells", "ells", required=True)
@click.option("--degree", "k", type=click.IntRange(1, 10), default=1, show_default=True)
@click.pass_obj
def fingerprint_cmd(ctx: Context, path, B, ells, k):
    """Valuation matrix v_ell(#E(F_{p^k})) for every curve in a file."""
    ells = _ells(ells)
    curves = ctx.curves(path)
    out = []
    rows = [["label", "p"] + [f"v_{ell}" for ell in ells]]
    for label, E in curves.items():
        fp = fingerprint(E, B, ells, k, cache=ctx.cache, config=ctx.config)
        vals = fp.vals.tolist()
        out.append({"label": label, "key": E.key, "primes": fp.primes.tolist(), "valuations": vals})
        rows += [[label, p] + v for p, v in zip(fp.primes.tolist(), vals)]
    payload = {"bound": B, "ells": ells, "degree": k, "curves": out}
    _emit(ctx, "fingerprint", {"curves": os.path.basename(path), "bound": B, "ells": ells, "degree": k},
          payload, rows)


@cli.command()
@click.option("--curve1", required=True)
@click.option("--curve2", required=True)
@click.option("--bound", "B", type=click.IntRange(min=5), required=True)
@click.option("--ells", "ells", default="2,3,5,7,11,13,17,19,23,29,31,37,41,43,47", show_default=True)
@click.pass_obj
def compare(ctx: Context, curve1, curve2, B, ells):
    """Mismatch scan between two curves."""
    ells = _ells(ells)
    E1, E2 = ctx.curve(curve1), ctx.curve(curve2)
    report = mismatch_scan(E1, E2, B, ells, cache=ctx.cache, config=ctx.config)
    if not report.primes_tested:
        raise click.ClickException(f"no common good primes <= {B}\n  hint: raise --bound")
    payload = {"curve1": curve1, "curve2": curve2}
    payload.update(report.to_dict())
    rows = [["record", "p", "ell", "v1", "v2", "density"]]
    rows += [["mismatch", p, ell, v1, v2, ""] for p, ell, v1, v2 in report.mismatches]
    rows += [["density", "", ell, "", "", d] for ell, d in report.per_ell_density.items()]
    _emit(ctx, "compare", {"curve1": curve1, "curve2": curve2, "bound": B, "ells": ells}, payload, rows)


@cli.command()
@click.option("--curve1", required=True)
@click.option("--curve2", required=True)
@click.option("--ell", type=int, required=True)
@click.option("--bound", "B", type=click.IntRange(min=5), required=True)
@click.pass_obj
def density(ctx: Context, curve1, curve2, ell, B):
    """Joint valuation grid of v_ell over common good primes."""
    _prime(ell, "--ell")
    E1, E2 = ctx.curve(curve1), ctx.curve(curve2)
    try:
        grid = joint_valuation_density(E1, E2, ell, B, cache=ctx.cache, config=ctx.config)
    except EmptySample as exc:
        raise click.ClickException(f"{exc}\n  hint: raise --bound")
    payload = {"curve1": curve1, "curve2": curve2}
    payload.update(grid.to_dict())
    dens = grid.densities.tolist()
    rows = [["m1", "m2", "count", "density"]]
    for m1, row in enumerate(grid.counts.tolist()):
        rows += [[m1, m2, c, dens[m1][m2]] for m2, c in enumerate(row)]
    rows.append(["overflow", "overflow", grid.overflow, grid.overflow_density])
    _emit(ctx, "density", {"curve1": curve1, "curve2": curve2, "ell": ell, "bound": B}, payload, rows)


@cli.command()
@click.option("--model", type=click.Choice(KINDS), required=True)
@click.option("--ell", type=int, required=True)
@click.option("--coupled", is_flag=True, help="Also report the equal-determinant coupled mismatch fraction.")
@click.pass_obj
def galois(ctx: Context, model, ell, coupled):
    """Exact eigenvalue-one fraction of a mod-ell image model."""
    _prime(ell, "--ell")
    try:
        G = GroupModel(model, ell)
        frac = eigen_one_fraction(G)
        payload = {"model": model, "ell": ell, "order": G.order, "eigen_one": f"{frac.numerator}/{frac.denominator}"}
        if coupled:
            c = coupled_mismatch_fraction(G, G)
            payload["coupled_mismatch"] = f"{c.numerator}/{c.denominator}"
    except ValueError as exc:
        raise click.ClickException(str(exc))
    header = list(payload)
    _emit(ctx, "galois", {"model": model, "ell": ell, "coupled": coupled}, payload,
          [header, [payload[h] for h in header]])


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="isoradix", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (CMCurveError, EmptySample, CurveFileError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return 1
    except InvariantViolation as exc:
        click.echo(f"internal error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
