"""End-to-end convenience: score -> task trajectories -> frames -> flesh points."""

from __future__ import annotations

from dataclasses import dataclass

from .articmap import ArticulatorFrame, SynergyConfig, DEFAULT_CONFIG, map_trajectories
from .fleshpoints import FleshPointTrajectorySet, extract
from .score import GestureScore, Tier
from .taskgen import TaskTrajectorySet, first_order_trajectories

__all__ = ["SimulationResult", "simulate", "closure_interval"]

DEFAULT_DT_MS = 1.0


@dataclass(frozen=True, eq=False)
class SimulationResult:
    score: GestureScore
    config: SynergyConfig
    dt_ms: float
    tasks: TaskTrajectorySet
    frames: list[ArticulatorFrame]
    points: FleshPointTrajectorySet


def simulate(
    score: GestureScore,
    config: SynergyConfig = DEFAULT_CONFIG,
    dt_ms: float = DEFAULT_DT_MS,
) -> SimulationResult:
    """Run the full production pipeline for one score."""
    tasks = first_order_trajectories(score, dt_ms)
    frames = map_trajectories(tasks, config)
    points = extract(frames)
    return SimulationResult(
        score=score, config=config, dt_ms=dt_ms, tasks=tasks, frames=frames, points=points
    )


def closure_interval(score: GestureScore) -> tuple[float, float] | None:
    """Activation interval of the first consonantal gesture, if any."""
    consonantal = score.on_tier(Tier.CONSONANTAL)
    if not consonantal:
        return None
    g = consonantal[0]
    return g.onset_ms, g.offset_ms
