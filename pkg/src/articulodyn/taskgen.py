"""Task-space trajectory generation.

Two generators live here:

* ``first_order_trajectories`` is the production path. Each task variable
  follows an exponential lag toward its activation-weighted effective target,

      dx/dt = (x_eff(t) - x) / tau,
      x_eff(t) = (1 - w(t)) * x_neutral + w(t) * x_target,

  integrated with an exact per-step exponential update (unconditionally
  stable; the only discretization error is holding w constant over a step).
  The neutral posture is the all-zero task state. When sequential gestures
  abut on a tier, state carries over continuously and the effective target
  switches with the incoming gesture's activation; after a gesture's offset
  the variable relaxes back toward neutral with that gesture's time constant
  until another gesture takes over.

* ``second_order_trajectory`` is the critically damped reference path
  (x'' + B x' + K (x - x_target) = 0) integrated with a fixed-step classic
  4th-order Runge-Kutta scheme, validated against the closed form in
  ``analytic_second_order``. Task-space production does not use it; it exists
  as the validation/reference route.

No inverse-kinematic mapping (q' = J^{-1}(q) x') is computed anywhere: the
articulator model consumes task trajectories directly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ConfigError, OracleDomainError
from .score import (
    ConsonantalTargets,
    Gesture,
    GestureScore,
    GlottalTargets,
    Location,
    PulmonaryTargets,
    Tier,
    VelopharyngealTargets,
    VocalicTargets,
)

__all__ = [
    "TaskVariableId",
    "TaskSnapshot",
    "TaskTrajectorySet",
    "SecondOrderParams",
    "activation_weight",
    "first_order_trajectories",
    "second_order_trajectory",
    "analytic_second_order",
    "NEUTRAL_VALUE",
    "DEFAULT_RELAX_TAU_MS",
]

# Neutral posture of every task variable (all-zero normalized task state).
NEUTRAL_VALUE = 0.0

# Relaxation time constant used before any gesture has touched a variable.
DEFAULT_RELAX_TAU_MS = 40.0


class TaskVariableId(enum.Enum):
    """Closed set of task-space control variables."""

    VOCALIC_HEIGHT = "vocalic_height"
    VOCALIC_FRONTING = "vocalic_fronting"
    LIP_ROUNDING = "lip_rounding"
    CONSONANTAL_LABIAL = "consonantal_labial"
    CONSONANTAL_APICAL = "consonantal_apical"
    CONSONANTAL_DORSAL = "consonantal_dorsal"
    VELOPHARYNGEAL_APERTURE = "velopharyngeal_aperture"
    GLOTTAL_APERTURE = "glottal_aperture"
    SUBGLOTTAL_PRESSURE = "subglottal_pressure"


CONSTRICTION_VARIABLE: dict[Location, TaskVariableId] = {
    Location.LABIAL: TaskVariableId.CONSONANTAL_LABIAL,
    Location.APICAL: TaskVariableId.CONSONANTAL_APICAL,
    Location.DORSAL: TaskVariableId.CONSONANTAL_DORSAL,
}


def gesture_drives(gesture: Gesture) -> list[tuple[TaskVariableId, float]]:
    """Task variables a gesture drives, with their target values."""
    t = gesture.targets
    if isinstance(t, VocalicTargets):
        return [
            (TaskVariableId.VOCALIC_HEIGHT, t.vocalic_height),
            (TaskVariableId.VOCALIC_FRONTING, t.vocalic_fronting),
            (TaskVariableId.LIP_ROUNDING, t.lip_rounding),
        ]
    if isinstance(t, ConsonantalTargets):
        return [(CONSTRICTION_VARIABLE[t.location], t.strength)]
    if isinstance(t, VelopharyngealTargets):
        return [(TaskVariableId.VELOPHARYNGEAL_APERTURE, t.aperture)]
    if isinstance(t, GlottalTargets):
        return [(TaskVariableId.GLOTTAL_APERTURE, t.aperture)]
    if isinstance(t, PulmonaryTargets):
        return [(TaskVariableId.SUBGLOTTAL_PRESSURE, t.subglottal_pressure)]
    raise ConfigError(f"unknown target set type {type(t).__name__}")


def activation_weight(gesture: Gesture, t_ms: float) -> float:
    """Activation w(t) in [0, 1]: cosine rise/fall ramps around a plateau.

    0 strictly before onset and strictly after offset, 1 on the plateau
    [onset+ramp, offset-ramp], (1 - cos(pi u)) / 2 on the ramps. Continuous
    in t for ramp > 0; a step for ramp == 0.
    """
    onset, offset, ramp = gesture.onset_ms, gesture.offset_ms, gesture.ramp_ms
    if t_ms < onset or t_ms > offset:
        return 0.0
    if ramp == 0.0:
        return 1.0
    if t_ms < onset + ramp:
        u = (t_ms - onset) / ramp
        return 0.5 * (1.0 - math.cos(math.pi * u))
    if t_ms > offset - ramp:
        u = (offset - t_ms) / ramp
        return 0.5 * (1.0 - math.cos(math.pi * u))
    return 1.0


@dataclass(frozen=True)
class TaskSnapshot:
    """Task-variable values and activation weights at one time step."""

    t_ms: float
    values: Mapping[TaskVariableId, float]
    activations: Mapping[TaskVariableId, float]


@dataclass(frozen=True, eq=False)
class TaskTrajectorySet:
    """Sampled task trajectories on the half-open grid t = k*dt, k < n_steps.

    ``series`` holds the control-parameter values, ``activation`` the
    pointwise activation weights; both always contain every TaskVariableId.
    """

    dt_ms: float
    n_steps: int
    series: Mapping[TaskVariableId, np.ndarray]
    activation: Mapping[TaskVariableId, np.ndarray]

    @property
    def times_ms(self) -> np.ndarray:
        return np.arange(self.n_steps) * self.dt_ms

    def snapshot(self, k: int) -> TaskSnapshot:
        return TaskSnapshot(
            t_ms=k * self.dt_ms,
            values={var: float(s[k]) for var, s in self.series.items()},
            activations={var: float(a[k]) for var, a in self.activation.items()},
        )


def first_order_trajectories(score: GestureScore, dt_ms: float) -> TaskTrajectorySet:
    """Generate the task trajectories for a score by exponential lag.

    Raises ConfigError if dt_ms <= 0 or dt_ms >= tau/2 for any gesture
    (sampling-fidelity guard; the update itself is unconditionally stable).
    """
    if dt_ms <= 0:
        raise ConfigError(f"dt_ms must be > 0, got {dt_ms}")
    taus = [g.time_constant_ms for g in score.gestures] + [DEFAULT_RELAX_TAU_MS]
    if dt_ms >= min(taus) / 2.0:
        raise ConfigError(
            f"dt_ms {dt_ms} too coarse for time constant {min(taus)} "
            f"(requires dt < tau/2)"
        )

    n = int(round(score.duration_ms / dt_ms))
    times = np.arange(n) * dt_ms

    series: dict[TaskVariableId, np.ndarray] = {}
    activation: dict[TaskVariableId, np.ndarray] = {}
    drivers: dict[TaskVariableId, list[tuple[Gesture, float]]] = {
        var: [] for var in TaskVariableId
    }
    for g in score.gestures:
        for var, target in gesture_drives(g):
            drivers[var].append((g, target))

    for var in TaskVariableId:
        w = np.zeros(n)
        target = np.zeros(n)
        tau = np.full(n, DEFAULT_RELAX_TAU_MS)
        for g, tgt in sorted(drivers[var], key=lambda gt: gt[0].onset_ms):
            i0 = int(np.searchsorted(times, g.onset_ms, side="left"))
            i1 = int(np.searchsorted(times, g.offset_ms, side="right"))
            for k in range(i0, min(i1, n)):
                wk = activation_weight(g, times[k])
                if wk > 0.0 or w[k] == 0.0:
                    w[k] = wk
                    target[k] = tgt
            # The gesture's lag governs release too, until the next one starts.
            tau[i0:] = g.time_constant_ms

        x = np.empty(n)
        decay = np.exp(-dt_ms / tau)
        value = NEUTRAL_VALUE
        for k in range(n):
            x[k] = value
            eff = (1.0 - w[k]) * NEUTRAL_VALUE + w[k] * target[k]
            value = eff + (value - eff) * decay[k]
        series[var] = x
        activation[var] = w

    return TaskTrajectorySet(dt_ms=dt_ms, n_steps=n, series=series, activation=activation)


# ---------------------------------------------------------------------------
# Second-order reference path
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SecondOrderParams:
    """Parameters of x'' + B x' + K (x - x_target) = 0.

    Units: stiffness_k in 1/ms^2, damping_b in 1/ms. Critically damped
    configurations satisfy B = 2 sqrt(K).
    """

    stiffness_k: float
    damping_b: float
    x_target: float
    x0: float
    v0: float = 0.0

    @property
    def omega(self) -> float:
        return math.sqrt(self.stiffness_k)

    def is_critically_damped(self, rel_tol: float = 1e-12) -> bool:
        crit = 2.0 * self.omega
        return abs(self.damping_b - crit) <= rel_tol * max(crit, abs(self.damping_b))

    @classmethod
    def critically_damped(
        cls, stiffness_k: float, x_target: float, x0: float, v0: float = 0.0
    ) -> "SecondOrderParams":
        return cls(
            stiffness_k=stiffness_k,
            damping_b=2.0 * math.sqrt(stiffness_k),
            x_target=x_target,
            x0=x0,
            v0=v0,
        )


def second_order_trajectory(
    params: SecondOrderParams, duration_ms: float, dt_ms: float
) -> np.ndarray:
    """Integrate the second-order system with fixed-step classic RK4.

    Returns samples at t = 0, dt, ..., duration (both endpoints included).
    Stability bound: keep dt_ms <= 1/omega (RK4's real-axis limit is about
    2.78/omega for the critically damped double pole); tighter dt only
    improves accuracy.
    """
    if params.stiffness_k <= 0:
        raise ConfigError(f"stiffness_k must be > 0, got {params.stiffness_k}")
    if params.damping_b < 0:
        raise ConfigError(f"damping_b must be >= 0, got {params.damping_b}")
    if dt_ms <= 0:
        raise ConfigError(f"dt_ms must be > 0, got {dt_ms}")
    if duration_ms <= 0:
        raise ConfigError(f"duration_ms must be > 0, got {duration_ms}")

    n = int(round(duration_ms / dt_ms))
    k_stiff = params.stiffness_k
    b = params.damping_b
    xt = params.x_target
    out = np.empty(n + 1)
    x = float(params.x0)
    v = float(params.v0)
    out[0] = x
    h = dt_ms
    for i in range(1, n + 1):
        # classic RK4 on the (x, v) system, derivatives inlined
        a1x = v
        a1v = -b * v - k_stiff * (x - xt)
        x2 = x + 0.5 * h * a1x
        v2 = v + 0.5 * h * a1v
        a2x = v2
        a2v = -b * v2 - k_stiff * (x2 - xt)
        x3 = x + 0.5 * h * a2x
        v3 = v + 0.5 * h * a2v
        a3x = v3
        a3v = -b * v3 - k_stiff * (x3 - xt)
        x4 = x + h * a3x
        v4 = v + h * a3v
        a4x = v4
        a4v = -b * v4 - k_stiff * (x4 - xt)
        x += h / 6.0 * (a1x + 2.0 * a2x + 2.0 * a3x + a4x)
        v += h / 6.0 * (a1v + 2.0 * a2v + 2.0 * a3v + a4v)
        out[i] = x
    return out


def analytic_second_order(params: SecondOrderParams, t_ms):
    """Closed-form critically damped solution; the oracle for the RK4 path.

        x(t) = x_target + (x0 - x_target)(1 + w t) e^(-w t) + v0 t e^(-w t),
        w = sqrt(K).

    Raises OracleDomainError unless B = 2 sqrt(K) within 1e-12 relative.
    """
    if params.stiffness_k <= 0:
        raise OracleDomainError(f"stiffness_k must be > 0, got {params.stiffness_k}")
    if not params.is_critically_damped():
        raise OracleDomainError(
            f"not critically damped: B={params.damping_b}, "
            f"2*sqrt(K)={2.0 * params.omega}"
        )
    w = params.omega
    t = np.asarray(t_ms, dtype=float)
    envelope = np.exp(-w * t)
    x = params.x_target + (params.x0 - params.x_target) * (1.0 + w * t) * envelope
    x = x + params.v0 * t * envelope
    return float(x) if np.isscalar(t_ms) else x
