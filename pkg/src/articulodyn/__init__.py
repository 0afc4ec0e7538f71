"""articulodyn: gestural-score driven articulatory movement simulation.

Pipeline: a tiered gestural score is turned into first-order task-space
control trajectories, mapped per time step onto a simplified articulator
model implementing the lips-jaw / tongue-jaw tradeoff principles, and read
out as flesh-point displacement trajectories. A second-order critically
damped generator is included as a reference path, plus an effort-cost
analyzer and qualitative CV-syllable checks.
"""

from .articmap import (
    ArticulatorFrame,
    DEFAULT_CONFIG,
    SynergyConfig,
    config_from_dict,
    config_to_dict,
    jaw_blend,
    load_config,
    map_frame,
    map_trajectories,
    saturate_lips,
    vocalic_jaw_height,
)
from .effort import EffortReport, effort_cost, report_from_frames, split_comparison
from .errors import (
    ArticulodynError,
    ConfigError,
    DomainError,
    EmptyInputError,
    MissingSyllableError,
    OracleDomainError,
    RangeError,
    SchemaError,
    ValidationError,
    WindowRangeError,
)
from .fleshpoints import (
    CheckReport,
    CV_LABELS,
    FleshPoint,
    FleshPointTrajectorySet,
    extract,
    qualitative_checks,
    window,
)
from .pipeline import SimulationResult, closure_interval, simulate
from .score import (
    Consonant,
    ConsonantalTargets,
    Degree,
    Gesture,
    GestureScore,
    GlottalTargets,
    Location,
    PulmonaryTargets,
    Tier,
    VelopharyngealTargets,
    VocalicTargets,
    Vowel,
    VOWEL_TARGETS,
    make_cv_score,
    parse_score,
    serialize_score,
)
from .taskgen import (
    SecondOrderParams,
    TaskSnapshot,
    TaskTrajectorySet,
    TaskVariableId,
    activation_weight,
    analytic_second_order,
    first_order_trajectories,
    second_order_trajectory,
)

__version__ = "0.1.0"
