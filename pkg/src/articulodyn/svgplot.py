"""Minimal deterministic SVG line charts.

Hand-rolled on purpose: output is a pure function of the data (no library
version strings, no random ids), so golden-file diffs and structural tests
stay stable. Coordinates are formatted with two decimals.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .fleshpoints import FleshPoint, FleshPointTrajectorySet

__all__ = ["FLESH_COLORS", "line_chart_svg", "fleshpoint_chart_svg", "matrix_panel_svg"]

# Fig-1/Fig-3 color scheme: dorsum blue, tip orange, upper lip green,
# lower lip red, jaw magenta.
FLESH_COLORS: dict[FleshPoint, str] = {
    FleshPoint.TONGUE_DORSUM: "blue",
    FleshPoint.TONGUE_TIP: "orange",
    FleshPoint.UPPER_LIP: "green",
    FleshPoint.LOWER_LIP: "red",
    FleshPoint.JAW: "magenta",
}

_POINT_ORDER = (
    FleshPoint.UPPER_LIP,
    FleshPoint.LOWER_LIP,
    FleshPoint.TONGUE_TIP,
    FleshPoint.TONGUE_DORSUM,
    FleshPoint.JAW,
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if raw <= step:
            break
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * max(1.0, abs(hi)):
        ticks.append(round(t, 10))
        t += step
    return ticks


def line_chart_svg(
    times: Sequence[float],
    series: Mapping[str, tuple[Sequence[float], str]],
    title: str = "",
    x_label: str = "t (ms)",
    y_label: str = "y (model units)",
    width: int = 640,
    height: int = 400,
    x_range: tuple[float, float] | None = None,
    legend: bool = True,
) -> str:
    """One chart, one polyline per named series (values, css-color)."""
    times = np.asarray(times, dtype=float)
    x_lo, x_hi = x_range if x_range is not None else (float(times[0]), float(times[-1]))
    mask = (times >= x_lo - 1e-9) & (times <= x_hi + 1e-9)
    ys = [np.asarray(vals, dtype=float)[mask] for vals, _ in series.values()]
    y_lo = min(float(np.min(y)) for y in ys)
    y_hi = max(float(np.max(y)) for y in ys)
    if y_hi - y_lo < 1e-12:
        y_lo -= 1.0
        y_hi += 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    ml, mr, mt, mb = 56.0, 14.0, 26.0, 40.0
    pw, ph = width - ml - mr, height - mt - mb

    def sx(x: float) -> float:
        return ml + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y: float) -> float:
        return mt + (y_hi - y) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{_fmt(ml + pw / 2)}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" font-weight="bold">{title}</text>'
        )
    # frame and ticks
    out.append(
        f'<rect x="{_fmt(ml)}" y="{_fmt(mt)}" width="{_fmt(pw)}" height="{_fmt(ph)}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for tx in _ticks(x_lo, x_hi):
        px = sx(tx)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(mt + ph)}" x2="{_fmt(px)}" '
            f'y2="{_fmt(mt + ph + 4)}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{_fmt(mt + ph + 16)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{tx:g}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        py = sy(ty)
        out.append(
            f'<line x1="{_fmt(ml - 4)}" y1="{_fmt(py)}" x2="{_fmt(ml)}" '
            f'y2="{_fmt(py)}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(ml - 7)}" y="{_fmt(py + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{ty:g}</text>'
        )
    out.append(
        f'<text x="{_fmt(ml + pw / 2)}" y="{_fmt(height - 6)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{x_label}</text>'
    )
    out.append(
        f'<text x="14" y="{_fmt(mt + ph / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11" '
        f'transform="rotate(-90 14 {_fmt(mt + ph / 2)})">{y_label}</text>'
    )
    # data
    t_sel = times[mask]
    for (name, (vals, color)), y in zip(series.items(), ys):
        pts = " ".join(f"{_fmt(sx(t))},{_fmt(sy(v))}" for t, v in zip(t_sel, y))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{pts}"/>'
        )
    if legend:
        lx = ml + pw - 120.0
        ly = mt + 8.0
        for i, (name, (_, color)) in enumerate(series.items()):
            yy = ly + i * 14.0
            out.append(
                f'<line x1="{_fmt(lx)}" y1="{_fmt(yy)}" x2="{_fmt(lx + 18)}" '
                f'y2="{_fmt(yy)}" stroke="{color}" stroke-width="2" '
                f'class="legend-swatch"/>'
            )
            out.append(
                f'<text x="{_fmt(lx + 23)}" y="{_fmt(yy + 3.5)}" '
                f'font-family="sans-serif" font-size="10" '
                f'class="legend-label">{name}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def fleshpoint_chart_svg(
    trajs: FleshPointTrajectorySet,
    title: str = "",
    x_range: tuple[float, float] | None = None,
    width: int = 640,
    height: int = 400,
    legend: bool = True,
) -> str:
    series = {
        p.value: (trajs.series[p], FLESH_COLORS[p]) for p in _POINT_ORDER
    }
    return line_chart_svg(
        trajs.times_ms,
        series,
        title=title,
        x_range=x_range,
        width=width,
        height=height,
        legend=legend,
    )


def matrix_panel_svg(
    panels: Sequence[tuple[str, FleshPointTrajectorySet]],
    x_range: tuple[float, float] | None = None,
    ncols: int = 3,
    cell_width: int = 320,
    cell_height: int = 240,
) -> str:
    """Grid of flesh-point charts, one per (title, trajectories) pair."""
    nrows = (len(panels) + ncols - 1) // ncols
    width = ncols * cell_width
    height = nrows * cell_height
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for i, (title, trajs) in enumerate(panels):
        cx = (i % ncols) * cell_width
        cy = (i // ncols) * cell_height
        inner = fleshpoint_chart_svg(
            trajs,
            title=title,
            x_range=x_range,
            width=cell_width,
            height=cell_height,
            legend=False,
        )
        body = inner.split("\n", 1)[1].rsplit("</svg>", 1)[0]
        out.append(f'<g transform="translate({cx} {cy})">')
        out.append(body.rstrip())
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
