"""Command-line entry point.

Commands: ``simulate`` (one score -> control/displacement CSVs + manifest),
``plot`` (displacement CSV -> SVG line chart), ``matrix`` (nine CV syllables
-> CSVs, 3x3 panel, qualitative check report) and ``score validate``.

Exit codes: 0 ok, 1 input error, 2 I/O error, 3 qualitative check failure.
CSV values are printed with 6 decimal digits, comma separated, LF endings;
bodies are deterministic for identical score/config/dt (timestamps appear
only in file names and manifests). Files are written atomically
(write-temp-then-rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from .articmap import (
    DEFAULT_CONFIG,
    SynergyConfig,
    config_to_dict,
    load_config,
)
from .errors import ArticulodynError
from .fleshpoints import (
    CV_LABELS,
    FleshPoint,
    FleshPointTrajectorySet,
    qualitative_checks,
)
from .pipeline import SimulationResult, closure_interval, simulate
from .score import CV_TIMING_DEFAULTS, make_cv_score, parse_score
from .svgplot import fleshpoint_chart_svg, matrix_panel_svg
from .taskgen import TaskVariableId

CONFIG_ENV_VAR = "ARTICULODYN_CONFIG"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_CHECKS = 3

_DISPLACEMENT_COLUMNS = (
    "t_ms",
    "upper_lip_y",
    "lower_lip_y",
    "tongue_tip_y",
    "tongue_dorsum_y",
    "jaw_y",
)

_CSV_POINT_FOR_COLUMN = {
    "upper_lip_y": FleshPoint.UPPER_LIP,
    "lower_lip_y": FleshPoint.LOWER_LIP,
    "tongue_tip_y": FleshPoint.TONGUE_TIP,
    "tongue_dorsum_y": FleshPoint.TONGUE_DORSUM,
    "jaw_y": FleshPoint.JAW,
}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _atomic_write_text(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _num(x: float) -> str:
    return f"{x:.6f}"


def control_csv_text(result: SimulationResult) -> str:
    variables = list(TaskVariableId)
    header = (
        ["t_ms"]
        + [v.value for v in variables]
        + [f"act_{v.value}" for v in variables]
    )
    lines = [",".join(header)]
    times = result.tasks.times_ms
    for k in range(result.tasks.n_steps):
        row = [_num(times[k])]
        row += [_num(result.tasks.series[v][k]) for v in variables]
        row += [_num(result.tasks.activation[v][k]) for v in variables]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def displacement_csv_text(result: SimulationResult) -> str:
    lines = [",".join(_DISPLACEMENT_COLUMNS)]
    times = result.points.times_ms
    s = result.points.series
    for k in range(result.points.n_steps):
        lines.append(
            ",".join(
                [
                    _num(times[k]),
                    _num(s[FleshPoint.UPPER_LIP][k]),
                    _num(s[FleshPoint.LOWER_LIP][k]),
                    _num(s[FleshPoint.TONGUE_TIP][k]),
                    _num(s[FleshPoint.TONGUE_DORSUM][k]),
                    _num(s[FleshPoint.JAW][k]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def read_displacement_csv(path: Path) -> FleshPointTrajectorySet:
    """Parse a displacement CSV back into a trajectory set."""
    text = path.read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise ArticulodynError(f"{path}: empty CSV")
    header = tuple(lines[0].split(","))
    if header != _DISPLACEMENT_COLUMNS:
        raise ArticulodynError(
            f"{path}: unexpected header {','.join(header)!r} "
            f"(expected {','.join(_DISPLACEMENT_COLUMNS)!r})"
        )
    if len(lines) < 2:
        raise ArticulodynError(f"{path}: no data rows")
    try:
        rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    except ValueError as err:
        raise ArticulodynError(f"{path}: malformed row ({err})") from None
    if rows.shape[1] != len(_DISPLACEMENT_COLUMNS):
        raise ArticulodynError(f"{path}: wrong column count {rows.shape[1]}")
    times = rows[:, 0]
    dt = float(times[1] - times[0]) if len(times) > 1 else 1.0
    series = {
        point: rows[:, i]
        for i, col in enumerate(_DISPLACEMENT_COLUMNS)
        if (point := _CSV_POINT_FOR_COLUMN.get(col)) is not None
    }
    return FleshPointTrajectorySet(dt_ms=dt, t0_ms=float(times[0]), series=series)


def config_hash(cfg: SynergyConfig) -> str:
    """Deterministic identifier of a synergy config plus timing defaults."""
    payload = json.dumps(
        {"config": config_to_dict(cfg), "timing_defaults": CV_TIMING_DEFAULTS},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    label: str
    config_hash: str
    dt_ms: float
    outputs: dict[str, str]
    timestamp: int

    def to_json(self) -> str:
        return (
            json.dumps(
                {
                    "label": self.label,
                    "config_hash": self.config_hash,
                    "dt_ms": self.dt_ms,
                    "outputs": self.outputs,
                    "timestamp": self.timestamp,
                },
                indent=2,
            )
            + "\n"
        )


def _load_config_opt(config_path: str | None) -> SynergyConfig:
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return DEFAULT_CONFIG
    return load_config(path)


def _load_score_opt(cv: str | None, score_path: str | None):
    if cv and score_path:
        raise ArticulodynError("use either --cv or --score, not both")
    if score_path:
        try:
            text = Path(score_path).read_text(encoding="utf-8")
        except OSError as err:
            _fail(EXIT_IO, f"cannot read score file: {err}")
        return parse_score(text)
    label = cv or "pa"
    label = label.strip().strip("/").lower()
    if len(label) != 2 or label not in CV_LABELS:
        raise ArticulodynError(
            f"--cv must be one of {', '.join(CV_LABELS)}, got {label!r}"
        )
    return make_cv_score(label[0], label[1])


def _run_and_export(result: SimulationResult, out_dir: Path, tag: str = "") -> RunManifest:
    out_dir.mkdir(parents=True, exist_ok=True)
    stamp = int(time.time())
    infix = f"{tag}_" if tag else ""
    control = out_dir / f"control_{infix}{stamp}.csv"
    displacement = out_dir / f"displacement_{infix}{stamp}.csv"
    manifest_path = out_dir / f"manifest_{infix}{stamp}.json"
    _atomic_write_text(control, control_csv_text(result))
    _atomic_write_text(displacement, displacement_csv_text(result))
    manifest = RunManifest(
        label=result.score.label,
        config_hash=config_hash(result.config),
        dt_ms=result.dt_ms,
        outputs={"control": str(control), "displacement": str(displacement)},
        timestamp=stamp,
    )
    _atomic_write_text(manifest_path, manifest.to_json())
    return manifest


def _parse_window(window: str | None) -> tuple[float, float] | None:
    if window is None:
        return None
    try:
        lo, hi = window.split(":")
        lo_f, hi_f = float(lo), float(hi)
    except ValueError:
        raise ArticulodynError(f"--window must look like 40:160, got {window!r}")
    if not lo_f < hi_f:
        raise ArticulodynError(f"--window start must be below end, got {window!r}")
    return lo_f, hi_f


@click.group()
def main():
    """Gestural-score driven articulatory movement simulator."""


@main.command("simulate")
@click.option("--cv", default=None, help="Built-in CV syllable (pa, ti, ku, ...).")
@click.option("--score", "score_path", default=None, help="Path to a score JSON file.")
@click.option("--config", "config_path", default=None, help="SynergyConfig JSON path.")
@click.option("--dt-ms", default=1.0, show_default=True, help="Sampling step.")
@click.option("--out", "out_dir", default=".", show_default=True, help="Output directory.")
def simulate_cmd(cv, score_path, config_path, dt_ms, out_dir):
    """Simulate one score and export control/displacement CSVs + manifest."""
    try:
        score = _load_score_opt(cv, score_path)
        cfg = _load_config_opt(config_path)
        result = simulate(score, cfg, dt_ms)
    except ArticulodynError as err:
        _fail(EXIT_INPUT, str(err))
    except OSError as err:
        _fail(EXIT_IO, f"cannot read config: {err}")
    try:
        manifest = _run_and_export(result, Path(out_dir))
    except OSError as err:
        _fail(EXIT_IO, f"cannot write outputs: {err}")
    click.echo(f"{score.label}: wrote {manifest.outputs['control']} and "
               f"{manifest.outputs['displacement']}")


@main.command()
@click.argument("csv_path", type=click.Path())
@click.option("--window", default=None, help="Time window from:to in ms (e.g. 40:160).")
@click.option("--out", "out_path", default=None, help="Output SVG path.")
def plot(csv_path, window, out_path):
    """Render a displacement CSV as an SVG line chart."""
    path = Path(csv_path)
    try:
        trajs = read_displacement_csv(path)
        x_range = _parse_window(window)
        if x_range is not None:
            lo, hi = x_range
            span = (trajs.t0_ms, trajs.t0_ms + trajs.span_ms)
            if lo < span[0] - 1e-9 or hi > span[1] + 1e-9:
                raise ArticulodynError(
                    f"--window {window} outside data range {span[0]:g}:{span[1]:g}"
                )
    except ArticulodynError as err:
        _fail(EXIT_INPUT, str(err))
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {csv_path}: {err}")
    svg = fleshpoint_chart_svg(trajs, title=path.stem, x_range=x_range)
    target = Path(out_path) if out_path else path.with_suffix(".svg")
    try:
        _atomic_write_text(target, svg)
    except OSError as err:
        _fail(EXIT_IO, f"cannot write {target}: {err}")
    click.echo(f"wrote {target}")


@main.command()
@click.option("--config", "config_path", default=None, help="SynergyConfig JSON path.")
@click.option("--dt-ms", default=1.0, show_default=True, help="Sampling step.")
@click.option("--out", "out_dir", default=".", show_default=True, help="Output directory.")
def matrix(config_path, dt_ms, out_dir):
    """Run all nine CV syllables, export CSVs, a 3x3 panel and a check report."""
    try:
        cfg = _load_config_opt(config_path)
    except ArticulodynError as err:
        _fail(EXIT_INPUT, str(err))
    except OSError as err:
        _fail(EXIT_IO, f"cannot read config: {err}")

    out = Path(out_dir)
    runs: dict[str, FleshPointTrajectorySet] = {}
    panels = []
    closure = (60.0, 140.0)
    try:
        out.mkdir(parents=True, exist_ok=True)
        stamp = int(time.time())
        for label in CV_LABELS:
            score = make_cv_score(label[0], label[1])
            result = simulate(score, cfg, dt_ms)
            _run_and_export(result, out, tag=label)
            runs[label] = result.points
            window_interval = closure_interval(score)
            if window_interval is not None:
                closure = window_interval
            panels.append((score.label, result.points))
        report = qualitative_checks(runs, closure_ms=closure)
        _atomic_write_text(out / f"matrix_{stamp}.svg",
                           matrix_panel_svg(panels, x_range=(40.0, 160.0)))
        _atomic_write_text(out / f"checks_{stamp}.json",
                           json.dumps(report.to_dict(), indent=2) + "\n")
    except ArticulodynError as err:
        _fail(EXIT_INPUT, str(err))
    except OSError as err:
        _fail(EXIT_IO, f"cannot write outputs: {err}")

    if not report.passed:
        for failure in report.failures:
            click.echo(f"check failed: {failure}", err=True)
        sys.exit(EXIT_CHECKS)
    click.echo(f"all qualitative checks passed ({len(CV_LABELS)} syllables)")


@main.group()
def score():
    """Score file utilities."""


@score.command("validate")
@click.argument("score_path", type=click.Path())
def score_validate(score_path):
    """Parse and validate a score file."""
    try:
        text = Path(score_path).read_text(encoding="utf-8")
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {score_path}: {err}")
    try:
        parsed = parse_score(text)
    except ArticulodynError as err:
        _fail(EXIT_INPUT, str(err))
    click.echo(
        f"OK: {parsed.label or '<unlabeled>'} "
        f"({len(parsed.gestures)} gestures, {parsed.duration_ms:g} ms)"
    )


if __name__ == "__main__":
    main()
