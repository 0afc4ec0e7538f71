#!/usr/bin/env python3
"""Gesture activations and first-order task trajectories.

A gesture is an activation interval with cosine rise/fall ramps; the task
variable it drives lags behind the activation-weighted target exponentially.
This script builds a two-gesture glottal tier, prints a few checkpoints
against the analytic exponential, and renders the activation and trajectory
curves side by side.
"""

import math
from pathlib import Path

from articulodyn import (
    Gesture,
    GestureScore,
    GlottalTargets,
    TaskVariableId,
    Tier,
    activation_weight,
    first_order_trajectories,
)
from articulodyn.svgplot import line_chart_svg

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

open_gesture = Gesture(
    tier=Tier.GLOTTAL,
    onset_ms=50.0,
    offset_ms=250.0,
    ramp_ms=40.0,
    time_constant_ms=30.0,
    targets=GlottalTargets(aperture=1.0),
)
close_gesture = Gesture(
    tier=Tier.GLOTTAL,
    onset_ms=280.0,
    offset_ms=450.0,
    ramp_ms=30.0,
    time_constant_ms=50.0,
    targets=GlottalTargets(aperture=0.2),
)
score = GestureScore(
    duration_ms=500.0, gestures=(open_gesture, close_gesture), label="demo"
)

tasks = first_order_trajectories(score, dt_ms=1.0)
times = tasks.times_ms
x = tasks.series[TaskVariableId.GLOTTAL_APERTURE]
w = tasks.activation[TaskVariableId.GLOTTAL_APERTURE]

print("activation checkpoints for the first gesture:")
for t in (40.0, 70.0, 90.0, 150.0, 260.0):
    print(f"  w({t:5.1f} ms) = {activation_weight(open_gesture, t):.3f}")

# with a step-like plateau the lag is a textbook exponential: after one time
# constant the variable has covered 63.2% of the distance to its target
plateau_start = open_gesture.onset_ms + open_gesture.ramp_ms
k = int(plateau_start + open_gesture.time_constant_ms)
print(f"\nvalue one tau after the plateau starts: {x[k]:.4f}")
print(f"1 - 1/e                                : {1.0 - 1.0 / math.e:.4f}")

svg = line_chart_svg(
    times,
    {
        "activation": (w, "gray"),
        "glottal aperture": (x, "magenta"),
    },
    title="first-order lag behind a two-gesture tier",
    y_label="normalized",
)
(OUT / "first_order_lag.svg").write_text(svg)
print(f"\nwrote {OUT / 'first_order_lag.svg'}")
