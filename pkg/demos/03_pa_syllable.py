#!/usr/bin/env python3
"""The /pa/ syllable: jaw support, lower-lip saturation, tongue co-movement.

Simulates the built-in /pa/ score and walks through the flesh-point story:
the jaw rises high during the bilabial closure even though /a/ wants it low,
the virtual lower lip crosses above the upper lip (tissue compression once
the closure saturates), the tongue points ride the jaw passively, and the
utterance ends with the jaw below its pre-closure height because the vocalic
/a/ posture takes over.
"""

from pathlib import Path

import numpy as np

from articulodyn import FleshPoint, make_cv_score, simulate, window
from articulodyn.pipeline import closure_interval
from articulodyn.svgplot import fleshpoint_chart_svg

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

result = simulate(make_cv_score("p", "a"))
points = result.points
closure = closure_interval(result.score)
print(f"score {result.score.label}, closure interval {closure} ms")

jaw = points.series[FleshPoint.JAW]
times = points.times_ms
in_closure = (times >= closure[0]) & (times <= closure[1])
print(f"jaw peak during closure : {np.max(jaw[in_closure]):+.3f}")
print(f"jaw just before closure : {jaw[int(closure[0])]:+.3f}")
print(f"jaw at utterance end    : {jaw[-1]:+.3f}  (vocalic /a/ posture)")

lower = points.series[FleshPoint.LOWER_LIP]
upper = points.series[FleshPoint.UPPER_LIP]
crossing = np.max((lower - upper)[in_closure])
print(f"max lower-minus-upper lip during closure: {crossing:+.3f} "
      f"({'saturated, tissue compressed' if crossing > 0 else 'no contact'})")

compressions = [f.lip_compression for f in result.frames if f.lip_compression > 0]
print(f"frames with lip compression: {len(compressions)}")

full = fleshpoint_chart_svg(points, title="/pa/ flesh points, full utterance")
(OUT / "pa_full.svg").write_text(full)
clipped = fleshpoint_chart_svg(
    window(points, 40.0, 160.0),
    title="/pa/ flesh points, 40-160 ms",
)
(OUT / "pa_window.svg").write_text(clipped)
print(f"wrote {OUT / 'pa_full.svg'} and {OUT / 'pa_window.svg'}")
