"""Flesh-point trajectory extraction, windowing and qualitative checks.

The five tracked flesh points are upper lip, lower lip, tongue tip, tongue
dorsum and lower jaw; only vertical displacement is analyzed. The
qualitative check battery mirrors the reference CV findings: jaw peak inside
the closure interval, weaker jaw raising in /ti/ than /ta/, labial
saturation in all /pV/ contexts, passive co-movement of the uninvolved
articulators, and the /pa/ end-of-utterance jaw below its pre-closure value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .articmap import ArticulatorFrame
from .errors import EmptyInputError, MissingSyllableError, WindowRangeError

__all__ = [
    "FleshPoint",
    "FleshPointTrajectorySet",
    "CheckReport",
    "extract",
    "window",
    "qualitative_checks",
    "CV_LABELS",
    "COMOVEMENT_RHO_THRESHOLD",
]


class FleshPoint(enum.Enum):
    UPPER_LIP = "upper_lip"
    LOWER_LIP = "lower_lip"
    TONGUE_TIP = "tongue_tip"
    TONGUE_DORSUM = "tongue_dorsum"
    JAW = "jaw"


CV_LABELS = ("pa", "pi", "pu", "ta", "ti", "tu", "ka", "ki", "ku")

# Co-movement counts as "clearly recognizable" when the Pearson correlation
# with the jaw over the closure interval exceeds this fixed threshold.
COMOVEMENT_RHO_THRESHOLD = 0.5

# Flesh points not involved in forming the closure, per consonant.
_NON_PRIMARY: dict[str, tuple[FleshPoint, ...]] = {
    "p": (FleshPoint.TONGUE_TIP, FleshPoint.TONGUE_DORSUM),
    "t": (FleshPoint.LOWER_LIP,),
    "k": (FleshPoint.LOWER_LIP, FleshPoint.TONGUE_TIP),
}


@dataclass(frozen=True, eq=False)
class FleshPointTrajectorySet:
    """Sampled vertical positions of the five flesh points.

    Samples sit at t0_ms + k*dt_ms for k in [0, n_steps); all five series
    always have identical length.
    """

    dt_ms: float
    t0_ms: float
    series: Mapping[FleshPoint, np.ndarray]

    def __post_init__(self):
        lengths = {len(s) for s in self.series.values()}
        if set(self.series) != set(FleshPoint):
            missing = sorted(p.value for p in set(FleshPoint) - set(self.series))
            raise EmptyInputError(f"series missing flesh points: {missing}")
        if len(lengths) != 1:
            raise EmptyInputError(f"series lengths differ: {sorted(lengths)}")

    @property
    def n_steps(self) -> int:
        return len(next(iter(self.series.values())))

    @property
    def span_ms(self) -> float:
        return self.n_steps * self.dt_ms

    @property
    def times_ms(self) -> np.ndarray:
        return self.t0_ms + np.arange(self.n_steps) * self.dt_ms


def extract(frames: Sequence[ArticulatorFrame]) -> FleshPointTrajectorySet:
    """Pull the five flesh-point series out of an articulator frame sequence.

    The lower-lip series is the virtual position capped at the upper lip plus
    compression, which renders the contact-phase crossing of the two lip
    trajectories.
    """
    if len(frames) == 0:
        raise EmptyInputError("no frames to extract from")
    dt = frames[1].t_ms - frames[0].t_ms if len(frames) > 1 else 1.0
    lower = np.array(
        [min(f.lower_lip_y, f.upper_lip_y + f.lip_compression) for f in frames]
    )
    series = {
        FleshPoint.UPPER_LIP: np.array([f.upper_lip_y for f in frames]),
        FleshPoint.LOWER_LIP: lower,
        FleshPoint.TONGUE_TIP: np.array([f.tongue_tip_y for f in frames]),
        FleshPoint.TONGUE_DORSUM: np.array([f.tongue_dorsum_y for f in frames]),
        FleshPoint.JAW: np.array([f.jaw_y for f in frames]),
    }
    return FleshPointTrajectorySet(dt_ms=dt, t0_ms=frames[0].t_ms, series=series)


def window(
    trajs: FleshPointTrajectorySet, from_ms: float, to_ms: float
) -> FleshPointTrajectorySet:
    """Half-open slice [from_ms, to_ms) relative to the set's origin.

    window(x, 0, x.span_ms) is the identity;
    window(window(x, a, b), 0, b - a) == window(x, a, b).
    """
    if not (0.0 <= from_ms < to_ms <= trajs.span_ms):
        raise WindowRangeError(
            f"window [{from_ms}, {to_ms}) outside available span "
            f"[0, {trajs.span_ms}] ms"
        )
    i0 = int(math.ceil(from_ms / trajs.dt_ms - 1e-9))
    i1 = int(math.ceil(to_ms / trajs.dt_ms - 1e-9))
    return FleshPointTrajectorySet(
        dt_ms=trajs.dt_ms,
        t0_ms=trajs.t0_ms + from_ms,
        series={p: s[i0:i1] for p, s in trajs.series.items()},
    )


@dataclass(frozen=True)
class CheckReport:
    """Boolean outcomes of the nine-syllable qualitative regression."""

    jaw_peak_in_closure: dict[str, bool]
    jaw_ti_below_ta: bool
    jaw_peak_ti: float
    jaw_peak_ta: float
    labial_saturation: dict[str, bool]
    comovement_ok: dict[str, bool]
    comovement_rho: dict[str, dict[str, float]]
    pa_final_jaw_below_preclosure: bool
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "jaw_peak_in_closure": self.jaw_peak_in_closure,
            "jaw_ti_below_ta": self.jaw_ti_below_ta,
            "jaw_peak_ti": self.jaw_peak_ti,
            "jaw_peak_ta": self.jaw_peak_ta,
            "labial_saturation": self.labial_saturation,
            "comovement_ok": self.comovement_ok,
            "comovement_rho": self.comovement_rho,
            "pa_final_jaw_below_preclosure": self.pa_final_jaw_below_preclosure,
            "failures": list(self.failures),
        }


def _normalize_label(label: str) -> str:
    return label.strip().strip("/").lower()


def _closure_indices(
    trajs: FleshPointTrajectorySet, closure_ms: tuple[float, float]
) -> np.ndarray:
    times = trajs.times_ms
    return np.flatnonzero((times >= closure_ms[0]) & (times <= closure_ms[1]))


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    # a constant series has no defined correlation; report 0 (check fails)
    if float(np.std(a)) == 0.0 or float(np.std(b)) == 0.0:
        return 0.0
    return float(np.corrcoef(a, b)[0, 1])


def qualitative_checks(
    runs: Mapping[str, FleshPointTrajectorySet],
    closure_ms: tuple[float, float] = (60.0, 140.0),
) -> CheckReport:
    """Run the qualitative battery over the nine CV syllable runs.

    ``runs`` maps syllable labels ("pa" or "/pa/") to full-utterance
    trajectory sets. Deterministic: no hidden thresholds beyond the
    documented correlation threshold.
    """
    trajs_by_label = {_normalize_label(k): v for k, v in runs.items()}
    missing = [lbl for lbl in CV_LABELS if lbl not in trajs_by_label]
    if missing:
        raise MissingSyllableError(f"missing syllables: {missing}")

    failures: list[str] = []
    jaw_peak_in_closure: dict[str, bool] = {}
    labial_saturation: dict[str, bool] = {}
    comovement_ok: dict[str, bool] = {}
    comovement_rho: dict[str, dict[str, float]] = {}
    jaw_peaks: dict[str, float] = {}

    for label in CV_LABELS:
        trajs = trajs_by_label[label]
        idx = _closure_indices(trajs, closure_ms)
        jaw = trajs.series[FleshPoint.JAW]
        inside = jaw[idx]
        outside = np.delete(jaw, idx)
        jaw_peaks[label] = float(np.max(inside))
        ok = float(np.max(inside)) > float(np.max(outside))
        jaw_peak_in_closure[label] = ok
        if not ok:
            failures.append(f"jaw_peak_in_closure[{label}]")

        rho_by_point: dict[str, float] = {}
        all_ok = True
        for point in _NON_PRIMARY[label[0]]:
            rho = _pearson(trajs.series[point][idx], inside)
            rho_by_point[point.value] = rho
            if not rho > COMOVEMENT_RHO_THRESHOLD:
                all_ok = False
                failures.append(f"comovement[{label}.{point.value}] rho={rho:.3f}")
        comovement_ok[label] = all_ok
        comovement_rho[label] = rho_by_point

        if label[0] == "p":
            lower = trajs.series[FleshPoint.LOWER_LIP][idx]
            upper = trajs.series[FleshPoint.UPPER_LIP][idx]
            saturated = bool(np.max(lower - upper) > 0.0)
            labial_saturation[label] = saturated
            if not saturated:
                failures.append(f"labial_saturation[{label}]")

    jaw_ti_below_ta = jaw_peaks["ti"] < jaw_peaks["ta"]
    if not jaw_ti_below_ta:
        failures.append("jaw_peak_ti_below_ta")

    pa_jaw = trajs_by_label["pa"].series[FleshPoint.JAW]
    pa_times = trajs_by_label["pa"].times_ms
    pre_idx = int(np.searchsorted(pa_times, closure_ms[0]))
    pa_final_ok = bool(pa_jaw[-1] < pa_jaw[pre_idx])
    if not pa_final_ok:
        failures.append("pa_final_jaw_below_preclosure")

    return CheckReport(
        jaw_peak_in_closure=jaw_peak_in_closure,
        jaw_ti_below_ta=jaw_ti_below_ta,
        jaw_peak_ti=jaw_peaks["ti"],
        jaw_peak_ta=jaw_peaks["ta"],
        labial_saturation=labial_saturation,
        comovement_ok=comovement_ok,
        comovement_rho=comovement_rho,
        pa_final_jaw_below_preclosure=pa_final_ok,
        failures=tuple(failures),
    )
