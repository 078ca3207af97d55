"""Command-line interface.

Subcommands: ``calibrate`` (survey file -> calibration JSON), ``run``
(scenario batch -> per-seed CSV/JSON plus aggregate), ``report`` (series
CSV -> the three standard figures) and ``serve`` (live steering service).

Exit codes: 0 on success, 2 on validation errors, 1 on runtime errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, calibration, scenario as scenario_mod
from .calibration import CalibrationData, default_calibration
from .scenario import ScenarioError


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_calibration(path: str | None) -> CalibrationData:
    if path is None:
        return default_calibration()
    try:
        return CalibrationData.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot load calibration {path}: {exc}", 2)


def _parse_caps(spec: str | None) -> dict | None:
    if spec is None:
        return None
    caps = {}
    try:
        for part in spec.split(","):
            mode, value = part.split("=")
            caps[mode.strip().lower()] = float(value)
    except ValueError:
        _fail(f"invalid caps spec {spec!r}; expected e.g. walk=10,bike=55,car=195,bus=100", 2)
    return caps


@click.group()
@click.version_option(__version__, prog_name="modalsim")
def main():
    """Agent-based simulator of urban modal choice."""


@main.command()
@click.option("--survey", required=True, type=click.Path(exists=True), help="Delimited survey export.")
@click.option("--caps", default=None, help="Per-mode distance caps, e.g. walk=10,bike=55.")
@click.option("--mapping", default=None, type=click.Path(exists=True), help="Column mapping JSON.")
@click.option("--out", required=True, type=click.Path(), help="Calibration JSON output path.")
def calibrate(survey, caps, mapping, out):
    """Compute calibration statistics from a survey file."""
    mapping_data = json.loads(Path(mapping).read_text()) if mapping else None
    try:
        parsed = calibration.parse_survey(Path(survey).read_text(), mapping_data)
    except ValueError as exc:
        _fail(str(exc), 2)
    if parsed.dropped:
        click.echo(f"warning: dropped {parsed.dropped} malformed rows", err=True)
    try:
        calib = calibration.calibrate(parsed.responses, caps=_parse_caps(caps), source=str(survey))
    except ValueError as exc:
        _fail(str(exc), 1)
    Path(out).write_text(calib.to_json())
    click.echo(f"calibration written to {out} ({len(parsed.responses)} responses)")


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(exists=True))
@click.option("--calibration", "calibration_path", default=None, type=click.Path(exists=True))
@click.option("--out", default="out", type=click.Path(), help="Output directory.")
@click.option("--format", "fmt", default="csv", type=click.Choice(["csv", "json"]))
def run(scenario_path, calibration_path, out, fmt):
    """Run a scenario over its seeds and export time series."""
    try:
        scn = scenario_mod.parse_scenario(Path(scenario_path).read_text())
    except (ScenarioError, json.JSONDecodeError) as exc:
        _fail(str(exc), 2)
    calib = _load_calibration(calibration_path)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        results = scenario_mod.run_scenario(scn, calib)
    except Exception as exc:
        _fail(str(exc), 1)
    for seed, series in results.items():
        scenario_mod.export(series, fmt, out_dir / f"seed_{seed}.{fmt}")
    if fmt == "csv":
        (out_dir / "aggregate.csv").write_text(scenario_mod.aggregate_csv(results))
    click.echo(f"wrote {len(results)} seed series to {out_dir}")


@main.command()
@click.option("--series", required=True, type=click.Path(exists=True), help="Exported per-seed CSV.")
@click.option("--out", default="report", type=click.Path(), help="Figure output directory.")
def report(series, out):
    """Render the three standard figures from an exported series."""
    from .report import render_report

    try:
        written = render_report(series, out)
    except ValueError as exc:
        _fail(str(exc), 2)
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--calibration", "calibration_path", default=None, type=click.Path(exists=True))
@click.option("--seed", default=0, type=int)
@click.option("--n-agents", default=200, type=int)
@click.option("--assets", default=None, type=click.Path(exists=True), help="Dashboard static files.")
def serve(port, host, calibration_path, seed, n_agents, assets):
    """Host a live steering session over a websocket."""
    from .engine import SimConfig
    from .service import serve as run_service

    calib = _load_calibration(calibration_path)
    config = SimConfig(seed=seed, n_agents=n_agents)
    run_service(calib, config, port=port, host=host, assets_dir=assets)


if __name__ == "__main__":
    main()
