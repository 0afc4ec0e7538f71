"""Articulatory effort costing: sum of squared per-articulator displacements.

The cost of moving a set of articulators is the sum of their squared
displacement magnitudes, so dividing one displacement requirement across n
cooperating articulators divides the total cost by n. On simulated runs the
per-articulator displacement is taken over the closure window as the peak
deviation from the pre-closure baseline of each articulator's own (actively
produced) trajectory: the jaw is its own carrier and is measured absolutely,
while the carried articulators (lower lip, tongue tip, tongue dorsum) are
measured by their own-action component so that passively riding the jaw is
not double-billed as effort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .articmap import ArticulatorFrame
from .errors import DomainError, WindowRangeError
from .fleshpoints import FleshPoint

__all__ = ["EffortReport", "effort_cost", "split_comparison", "report_from_frames"]


def effort_cost(displacements: Iterable[float]) -> float:
    """Sum of squared displacement magnitudes.

    Uses exactly rounded summation, so the cost is independent of the order
    in which displacements are listed.
    """
    return math.fsum(d * d for d in displacements)


def split_comparison(total, n: int):
    """Cost of one articulator producing ``total`` alone vs an equal n-way split.

    Returns (total^2, total^2 / n). The split cost equals the single cost
    divided by n exactly.
    """
    if n < 1:
        raise DomainError(f"split count must be >= 1, got {n}")
    single = total * total
    return single, single / n


@dataclass(frozen=True)
class EffortReport:
    """Per-articulator displacement magnitudes and the summed squared cost."""

    per_articulator: Mapping[str, float]
    total_cost: float

    @classmethod
    def from_displacements(cls, per_articulator: Mapping[str, float]) -> "EffortReport":
        return cls(
            per_articulator=dict(per_articulator),
            total_cost=effort_cost(per_articulator.values()),
        )


def _peak_deviation(series: np.ndarray) -> float:
    """Largest deviation from the first sample (the pre-closure baseline)."""
    return float(np.max(np.abs(series - series[0])))


def report_from_frames(
    frames: Sequence[ArticulatorFrame], closure_window: tuple[float, float]
) -> EffortReport:
    """Effort report over a closure window of simulated frames.

    ``closure_window`` is (from_ms, to_ms) in the frames' time coordinates;
    the window must contain at least one frame and lie inside the spanned
    interval.
    """
    if len(frames) == 0:
        raise WindowRangeError("closure window over empty frames")
    from_ms, to_ms = closure_window
    t_first, t_last = frames[0].t_ms, frames[-1].t_ms
    if not (t_first <= from_ms < to_ms <= t_last + 1e-9):
        raise WindowRangeError(
            f"closure window [{from_ms}, {to_ms}] outside frames "
            f"[{t_first}, {t_last}] ms"
        )
    sel = [f for f in frames if from_ms <= f.t_ms <= to_ms]
    if not sel:
        raise WindowRangeError(
            f"closure window [{from_ms}, {to_ms}] contains no frames"
        )
    own = {
        FleshPoint.JAW.value: np.array([f.jaw_y for f in sel]),
        FleshPoint.UPPER_LIP.value: np.array([f.upper_lip_y for f in sel]),
        FleshPoint.LOWER_LIP.value: np.array([f.lower_lip_own for f in sel]),
        FleshPoint.TONGUE_TIP.value: np.array([f.tongue_tip_own for f in sel]),
        FleshPoint.TONGUE_DORSUM.value: np.array([f.tongue_dorsum_own for f in sel]),
    }
    return EffortReport.from_displacements(
        {name: _peak_deviation(series) for name, series in own.items()}
    )
