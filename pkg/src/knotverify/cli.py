"""Command-line interface.

Exit codes: 0 success, 2 verification mismatch, 3 degenerate input
(singular frame, tangential crossing, bad geometry), 4 I/O error.
"""

from __future__ import annotations

import json
import sys

import click

from .curve_kernel import Point3, load_polygon, make_perturbation_arc, polygon_to_json
from .errors import (
    DomainError,
    InvalidGeometryError,
    SingularFrameError,
    TangentialCrossingError,
)
from .pipeline import AnalysisConfig, reproduce_example, run_analysis
from .simplicity import sweep_simplicity

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


def _emit(payload: dict, json_out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if json_out:
        try:
            with open(json_out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            click.echo(json.dumps({"error": str(exc)}), err=True)
            sys.exit(EXIT_IO)
    click.echo(text)


def _fail(exc: Exception, code: int):
    click.echo(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), err=True)
    sys.exit(code)


def _load(path):
    try:
        return load_polygon(path)
    except (OSError, json.JSONDecodeError) as exc:
        _fail(exc, EXIT_IO)
    except InvalidGeometryError as exc:
        _fail(exc, EXIT_DEGENERATE)


@click.group()
def main():
    """Verify knot types of Bezier curves built over control polygons."""


@main.command()
@click.argument("polygon_file", type=click.Path())
@click.option("--insert-rounds", default=4, show_default=True, help="Midpoint insertion rounds.")
@click.option("--grid", default=32, show_default=True, help="Root search grid resolution.")
@click.option("--tol", default=1e-6, show_default=True, help="Root residual tolerance.")
@click.option("--json-out", type=click.Path(), default=None, help="Also write the report here.")
def analyze(polygon_file, insert_rounds, grid, tol, json_out):
    """Full verification report for a polygon JSON file."""
    polygon = _load(polygon_file)
    config = AnalysisConfig(insert_rounds=insert_rounds, grid=grid, root_tolerance=tol)
    try:
        report = run_analysis(polygon, config, curve_id=str(polygon_file))
    except (SingularFrameError, TangentialCrossingError, InvalidGeometryError, DomainError) as exc:
        _fail(exc, EXIT_DEGENERATE)
    _emit(report.to_json_dict(), json_out)
    sys.exit(EXIT_OK if report.oracle_agrees is not False else EXIT_MISMATCH)


@main.command()
@click.argument("polygon_file", type=click.Path())
@click.option("--vertex", required=True, type=int, help="Index of the vertex to move.")
@click.option("--to", "target", required=True, help="Target position x,y,z.")
@click.option("--sweep/--no-sweep", default=False, help="Certify simplicity along the rotation.")
@click.option("--steps", default=4096, show_default=True, help="Sweep sample count.")
@click.option("--json-out", type=click.Path(), default=None)
def perturb(polygon_file, vertex, target, sweep, steps, json_out):
    """Rotate one vertex toward a target about its neighbors' line."""
    polygon = _load(polygon_file)
    try:
        x, y, z = (float(c) for c in target.split(","))
    except ValueError as exc:
        _fail(exc, EXIT_IO)
    try:
        arc = make_perturbation_arc(polygon, vertex, Point3(x, y, z))
        payload = {
            "vertex_index": arc.vertex_index,
            "alpha": arc.total_angle,
            "radius_start": arc.radius_start,
            "radius_end": arc.radius_end,
            "polygon": polygon_to_json(polygon.with_vertex(vertex, Point3(x, y, z))),
        }
        if sweep:
            payload["sweep"] = sweep_simplicity(polygon, arc, steps=steps).to_json_dict()
    except (InvalidGeometryError, DomainError) as exc:
        _fail(exc, EXIT_DEGENERATE)
    _emit(payload, json_out)
    sys.exit(EXIT_OK)


@main.command("reproduce-example")
@click.option("--insert-rounds", default=4, show_default=True)
@click.option("--grid", default=32, show_default=True)
@click.option("--json-out", type=click.Path(), default=None)
def reproduce_example_cmd(insert_rounds, grid, json_out):
    """Run the bundled counterexample end to end and diff the results."""
    config = AnalysisConfig(insert_rounds=insert_rounds, grid=grid)
    try:
        status, bundle = reproduce_example(config)
    except (SingularFrameError, TangentialCrossingError, InvalidGeometryError, DomainError) as exc:
        _fail(exc, EXIT_DEGENERATE)
    _emit(bundle, json_out)
    if status != 0:
        for m in bundle["mismatches"]:
            click.echo(f"MISMATCH: {m}", err=True)
    sys.exit(EXIT_OK if status == 0 else EXIT_MISMATCH)


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
