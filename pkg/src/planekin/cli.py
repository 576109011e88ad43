"""Command line entry point: ``planekin``."""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import scenario as sc_mod
from .errors import KinematicsError, SchemaError
from .kernels import BACKEND

FORMATS = ("report", "csv", "svg")


def _write_outputs(sc: sc_mod.Scenario, formats, out_dir, samples, tol) -> None:
    settings = sc_mod.Settings(samples=samples, tol=tol)
    formats = tuple(formats) or sc.outputs
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    for fmt in formats:
        if fmt == "report":
            text = sc_mod.report(sc, settings).text()
            suffix = "txt"
        elif fmt == "csv":
            text = sc_mod.csv_text(*sc_mod.sweep_table(sc))
            suffix = "csv"
        else:
            text = sc_mod.figure(sc, settings).to_svg()
            suffix = "svg"
        if out_dir is None:
            if fmt == "svg":
                click.echo("svg output needs --out-dir", err=True)
                continue
            click.echo(text, nl=False)
        else:
            path = Path(out_dir) / f"{sc.name}.{suffix}"
            path.write_text(text, encoding="utf-8")
            click.echo(f"wrote {path}")


def _run(load, formats, out_dir, samples, tol) -> None:
    try:
        sc = load()
        _write_outputs(sc, formats, out_dir, samples, tol)
    except SchemaError as exc:
        click.echo(f"error: invalid scenario: {exc}", err=True)
        sys.exit(2)
    except KinematicsError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)


_common = [
    click.option("--out-dir", type=click.Path(file_okay=False), default=None,
                 help="Directory for output files; reports go to stdout when omitted."),
    click.option("--samples", type=click.IntRange(16), default=2048, show_default=True,
                 help="Polyline samples used for crossing and root detection."),
    click.option("--tol", type=float, default=1e-12, show_default=True, help="Quadrature tolerance."),
    click.option("--format", "formats", type=click.Choice(FORMATS), multiple=True,
                 help="Output format; repeatable. Defaults to the scenario's outputs."),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(package_name="artifact", message=f"planekin %(version)s (kernels: {BACKEND})")
def main() -> None:
    """Plane kinematics: curves, linkages, cams and polygon profiles."""


@main.command()
@click.argument("name")
@common_options
def repro(name, out_dir, samples, tol, formats):
    """Run a bundled scenario by NAME, or list them with ``repro list``."""
    bundled = sc_mod.shipped()
    if name == "list":
        for key, path in bundled.items():
            sc = sc_mod.load(path)
            click.echo(f"{key:28s} {sc.kind}")
        return
    if name not in bundled:
        click.echo(f"error: unknown scenario {name!r}; try 'planekin repro list'", err=True)
        sys.exit(2)
    _run(lambda: sc_mod.load(bundled[name]), formats, out_dir, samples, tol)


@main.command()
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@common_options
def run(scenario, out_dir, samples, tol, formats):
    """Evaluate a scenario JSON file."""
    _run(lambda: sc_mod.load(scenario), formats, out_dir, samples, tol)


@main.command()
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=None)
@click.option("--points", type=click.IntRange(2), default=None, help="Override the sweep sample count.")
def sweep(scenario, out_dir, points):
    """Tabulate a scenario over its sweep range as CSV."""
    try:
        sc = sc_mod.load(scenario)
        text = sc_mod.csv_text(*sc_mod.sweep_table(sc, points))
    except SchemaError as exc:
        click.echo(f"error: invalid scenario: {exc}", err=True)
        sys.exit(2)
    except KinematicsError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(3)
    if out_dir is None:
        click.echo(text, nl=False)
    else:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        path = Path(out_dir) / f"{sc.name}.csv"
        path.write_text(text, encoding="utf-8")
        click.echo(f"wrote {path}")


@main.command()
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--samples", type=click.IntRange(16), default=2048, show_default=True)
def render(scenario, out_dir, samples):
    """Draw a scenario as SVG."""
    _run(lambda: sc_mod.load(scenario), ("svg",), out_dir, samples, 1e-12)


if __name__ == "__main__":  # pragma: no cover
    main()
