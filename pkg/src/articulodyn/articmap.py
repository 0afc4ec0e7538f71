"""Mapping task trajectories onto the simplified articulator model.

Per time step, in this order:

1. Jaw: the vocalic jaw height (interpolated from the vowel jaw table over
   the current vocalic task state) is blended convexly toward the
   consonant-in-isolation jaw height, weighted by the consonantal activation.
   For apical closures, part of the required jaw share is carried instead by
   the tongue dorsum when the vowel already holds the dorsum high, which
   lowers the blended jaw target by the same amount it raises the dorsum.
2. Passive co-movement: the jaw-carried articulators (lower lip, tongue tip,
   tongue dorsum) ride the consonantal jaw surplus (jaw_y - jaw_vocalic)
   scaled by their coupling. The upper lip is skull-fixed.
3. Primary-articulator action, driven by the (lagged) constriction task
   values: labial drives the lower lip to upper-lip contact plus an
   overshoot proportional to constriction strength; apical drives the tongue
   tip to alveolar contact height (plus the dorsum co-elevation from step 1);
   dorsal drives the tongue dorsum to palatal/velar contact height.
4. Dorsum deformation: displacing the jaw from its vocalic value deforms the
   anterior tongue dorsum by dorsum_deform_gain times the surplus.
5. Labial saturation: the lip gap is clamped at contact; any surplus becomes
   tissue compression. Velar and glottal apertures pass through unchanged.

``map_frame`` is a pure function of one task snapshot; frames for different
steps may be computed concurrently and reassembled in order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigError, DomainError
from .score import Location, Vowel, VOWEL_TARGETS
from .taskgen import TaskSnapshot, TaskTrajectorySet, TaskVariableId

__all__ = [
    "ArticulatorFrame",
    "SynergyConfig",
    "DEFAULT_CONFIG",
    "jaw_blend",
    "saturate_lips",
    "vocalic_jaw_height",
    "map_frame",
    "map_trajectories",
    "load_config",
    "config_to_dict",
    "config_from_dict",
]

# Flesh-point anatomy in model units (vertical, positive = raised). These are
# fixed model geometry, not per-run calibration, so they live here rather
# than in SynergyConfig.
UPPER_LIP_REST_Y = 1.0
LOWER_LIP_REST_Y = -1.0
TONGUE_TIP_REST_Y = 0.2
TONGUE_DORSUM_REST_Y = 0.8
ALVEOLAR_CONTACT_Y = 1.4
VELAR_CONTACT_Y = 1.8
# Virtual lower-lip overshoot past contact at full constriction strength
# (rendered as tissue compression).
LIP_CONTACT_OVERSHOOT = 0.5
# Vertical share of the vocalic height variable carried by each tongue point.
TIP_VOWEL_GAIN = 0.7
DORSUM_VOWEL_GAIN = 1.2


@dataclass(frozen=True)
class ArticulatorFrame:
    """Articulator state at one time step.

    ``lower_lip_y`` is the virtual (muscle-commanded) lower-lip position; it
    may exceed ``upper_lip_y`` by ``lip_compression`` when the lips are in
    contact. The ``*_own`` fields are diagnostics: the actively produced part
    of each carried articulator's displacement (excluding jaw ride and
    passive deformation), used by the effort analyzer.
    """

    t_ms: float
    jaw_y: float
    lower_lip_y: float
    upper_lip_y: float
    tongue_tip_y: float
    tongue_dorsum_y: float
    lip_aperture: float
    lip_compression: float
    velum_aperture: float
    glottal_aperture: float
    jaw_vocalic_y: float = 0.0
    lower_lip_own: float = 0.0
    tongue_tip_own: float = 0.0
    tongue_dorsum_own: float = 0.0


@dataclass(frozen=True)
class SynergyConfig:
    """Calibration of the articulatory tradeoff machinery.

    jaw_cons_table holds the jaw displacement each consonant would demand in
    isolation; vowel_jaw_table the vocalic jaw height per corner vowel.
    Couplings are the passive ride fractions of the consonantal jaw surplus.
    ``lip_closure_source`` selects which task variable drives lower-lip
    closure: the consonantal labial constriction (default) or the vocalic
    lip_rounding parameter ("vocalic" route).
    """

    jaw_cons_table: Mapping[Location, float]
    vowel_jaw_table: Mapping[Vowel, float]
    jaw_to_lip_coupling: float = 0.5
    jaw_to_tongue_coupling: float = 0.5
    dorsum_support_gain: float = 0.4
    dorsum_deform_gain: float = 0.3
    lip_closure_source: str = "consonantal"

    def __post_init__(self):
        object.__setattr__(self, "jaw_cons_table", dict(self.jaw_cons_table))
        object.__setattr__(self, "vowel_jaw_table", dict(self.vowel_jaw_table))
        for loc in Location:
            if loc not in self.jaw_cons_table:
                raise ConfigError(f"jaw_cons_table missing location {loc.value!r}")
        for v in Vowel:
            if v not in self.vowel_jaw_table:
                raise ConfigError(f"vowel_jaw_table missing vowel {v.value!r}")
        for name in ("jaw_to_lip_coupling", "jaw_to_tongue_coupling"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        for name in ("dorsum_support_gain", "dorsum_deform_gain"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        vowel_max = max(self.vowel_jaw_table.values())
        for loc, jaw in self.jaw_cons_table.items():
            if jaw < vowel_max:
                raise ConfigError(
                    f"jaw_cons_table[{loc.value}]={jaw} below the highest vocalic "
                    f"jaw height ({vowel_max}); consonants demand jaw raising"
                )
        if self.lip_closure_source not in ("consonantal", "vocalic"):
            raise ConfigError(
                f"lip_closure_source must be 'consonantal' or 'vocalic', "
                f"got {self.lip_closure_source!r}"
            )


# Default calibration: tuned once so the nine-syllable qualitative checks
# hold; shipped as data/default_config.json as well, all values overridable.
DEFAULT_CONFIG = SynergyConfig(
    jaw_cons_table={Location.LABIAL: 0.5, Location.APICAL: 0.8, Location.DORSAL: 0.6},
    vowel_jaw_table={Vowel.A: -2.0, Vowel.I: -0.5, Vowel.U: -0.8},
    jaw_to_lip_coupling=0.5,
    jaw_to_tongue_coupling=0.5,
    dorsum_support_gain=0.4,
    dorsum_deform_gain=0.3,
)


def config_to_dict(cfg: SynergyConfig) -> dict:
    return {
        "jaw_cons_table": {loc.value: cfg.jaw_cons_table[loc] for loc in Location},
        "vowel_jaw_table": {v.value: cfg.vowel_jaw_table[v] for v in Vowel},
        "jaw_to_lip_coupling": cfg.jaw_to_lip_coupling,
        "jaw_to_tongue_coupling": cfg.jaw_to_tongue_coupling,
        "dorsum_support_gain": cfg.dorsum_support_gain,
        "dorsum_deform_gain": cfg.dorsum_deform_gain,
        "lip_closure_source": cfg.lip_closure_source,
    }


def config_from_dict(data: dict) -> SynergyConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config: expected an object, got {type(data).__name__}")
    known = {
        "jaw_cons_table",
        "vowel_jaw_table",
        "jaw_to_lip_coupling",
        "jaw_to_tongue_coupling",
        "dorsum_support_gain",
        "dorsum_deform_gain",
        "lip_closure_source",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"config: unknown field {sorted(unknown)[0]!r}")
    kwargs = dict(
        jaw_cons_table=dict(DEFAULT_CONFIG.jaw_cons_table),
        vowel_jaw_table=dict(DEFAULT_CONFIG.vowel_jaw_table),
    )
    if "jaw_cons_table" in data:
        try:
            kwargs["jaw_cons_table"] = {
                Location(k): float(v) for k, v in data["jaw_cons_table"].items()
            }
        except (ValueError, AttributeError, TypeError) as err:
            raise ConfigError(f"jaw_cons_table: {err}") from None
    if "vowel_jaw_table" in data:
        try:
            kwargs["vowel_jaw_table"] = {
                Vowel(k): float(v) for k, v in data["vowel_jaw_table"].items()
            }
        except (ValueError, AttributeError, TypeError) as err:
            raise ConfigError(f"vowel_jaw_table: {err}") from None
    for name in (
        "jaw_to_lip_coupling",
        "jaw_to_tongue_coupling",
        "dorsum_support_gain",
        "dorsum_deform_gain",
    ):
        if name in data:
            if isinstance(data[name], bool) or not isinstance(data[name], (int, float)):
                raise ConfigError(f"{name}: expected a number")
            kwargs[name] = float(data[name])
    if "lip_closure_source" in data:
        kwargs["lip_closure_source"] = data["lip_closure_source"]
    return SynergyConfig(**kwargs)


def load_config(path) -> SynergyConfig:
    """Load a SynergyConfig from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path}: not valid JSON ({err})") from None
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# Elementary operations
# ---------------------------------------------------------------------------

def jaw_blend(jaw_vocalic: float, jaw_consonantal: float, w: float) -> float:
    """Convex blend of vocalic and consonantal jaw displacement.

    Returns (1-w)*jaw_vocalic + w*jaw_consonantal; the output always lies in
    the closed interval between the two inputs.
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"blend weight must be in [0, 1], got {w}")
    out = (1.0 - w) * jaw_vocalic + w * jaw_consonantal
    # rounding in the lerp may escape the interval by an ulp; the contract
    # guarantees containment, so pin it
    lo, hi = min(jaw_vocalic, jaw_consonantal), max(jaw_vocalic, jaw_consonantal)
    return min(max(out, lo), hi)


def saturate_lips(upper_lip_y: float, lower_lip_virtual_y: float) -> tuple[float, float]:
    """Split the signed lip gap into (aperture, compression).

    gap > 0 means open lips (aperture = gap); gap <= 0 means contact, and the
    virtual overshoot is reported as tissue compression. The rendered
    lower-lip flesh point is allowed to exceed the upper lip by exactly the
    compression magnitude.
    """
    gap = upper_lip_y - lower_lip_virtual_y
    if gap > 0.0:
        return gap, 0.0
    return 0.0, -gap


# Vowel anchor coordinates (height, fronting) shared with the score module,
# plus the neutral point. Inverse-distance-squared interpolation through
# these anchors defines the vocalic jaw height at any task state.
_NEUTRAL_ANCHOR = (0.0, 0.0)


def vocalic_jaw_height(
    height: float, fronting: float, vowel_jaw_table: Mapping[Vowel, float]
) -> float:
    """Vocalic jaw height at a (height, fronting) task state.

    Exact at the three vowel anchors and at the neutral posture (0, 0) -> 0.
    """
    anchors = [(_NEUTRAL_ANCHOR[0], _NEUTRAL_ANCHOR[1], 0.0)]
    for vowel, jaw in vowel_jaw_table.items():
        t = VOWEL_TARGETS[vowel]
        anchors.append((t.vocalic_height, t.vocalic_fronting, jaw))
    num = 0.0
    den = 0.0
    for ah, af, value in anchors:
        d2 = (height - ah) ** 2 + (fronting - af) ** 2
        if d2 < 1e-18:
            return value
        weight = 1.0 / d2
        num += weight * value
        den += weight
    return num / den


def _active_consonant(task: TaskSnapshot) -> tuple[float, Location | None]:
    """Consonantal activation weight and location of the active gesture."""
    w_best = 0.0
    loc_best: Location | None = None
    for loc in Location:
        w = task.activations[TaskVariableId[f"CONSONANTAL_{loc.name}"]]
        if w > w_best:
            w_best = w
            loc_best = loc
    return w_best, loc_best


def map_frame(task: TaskSnapshot, cfg: SynergyConfig) -> ArticulatorFrame:
    """Map one task snapshot to an articulator frame. Pure and stateless."""
    height = task.values[TaskVariableId.VOCALIC_HEIGHT]
    fronting = task.values[TaskVariableId.VOCALIC_FRONTING]
    jaw_voc = vocalic_jaw_height(height, fronting, cfg.vowel_jaw_table)
    dorsum_own_voc = DORSUM_VOWEL_GAIN * height
    tip_own_voc = TIP_VOWEL_GAIN * height

    # 1. Jaw blend toward the consonant-in-isolation value; apical closures
    #    shift part of the jaw share onto an already-elevated dorsum.
    w_cons, loc = _active_consonant(task)
    support = 0.0
    if loc is Location.APICAL:
        support = cfg.dorsum_support_gain * max(0.0, dorsum_own_voc)
    if loc is not None and w_cons > 0.0:
        jaw_y = jaw_blend(jaw_voc, cfg.jaw_cons_table[loc] - support, w_cons)
    else:
        jaw_y = jaw_voc
    jaw_surplus = jaw_y - jaw_voc

    # 2. Passive co-movement on the consonantal jaw surplus.
    lip_ride = cfg.jaw_to_lip_coupling * jaw_surplus
    tongue_ride = cfg.jaw_to_tongue_coupling * jaw_surplus

    # 3. Primary-articulator action, driven by the lagged constriction values.
    if cfg.lip_closure_source == "vocalic":
        c_labial = task.values[TaskVariableId.LIP_ROUNDING]
    else:
        c_labial = task.values[TaskVariableId.CONSONANTAL_LABIAL]
    c_apical = task.values[TaskVariableId.CONSONANTAL_APICAL]
    c_dorsal = task.values[TaskVariableId.CONSONANTAL_DORSAL]

    upper_lip_y = UPPER_LIP_REST_Y
    lower_base = LOWER_LIP_REST_Y + lip_ride
    lower_own = c_labial * (upper_lip_y - lower_base + LIP_CONTACT_OVERSHOOT)
    lower_lip_y = lower_base + lower_own

    tip_base = TONGUE_TIP_REST_Y + tongue_ride + tip_own_voc
    tip_own_cons = c_apical * (ALVEOLAR_CONTACT_Y - tip_base)
    tongue_tip_y = tip_base + tip_own_cons

    dorsum_support = w_cons * support if loc is Location.APICAL else 0.0
    dorsum_base = TONGUE_DORSUM_REST_Y + tongue_ride + dorsum_own_voc + dorsum_support
    dorsum_own_cons = c_dorsal * (VELAR_CONTACT_Y - dorsum_base)

    # 4. Anterior dorsum deformation from the jaw's consonantal displacement.
    dorsum_deform = cfg.dorsum_deform_gain * jaw_surplus
    tongue_dorsum_y = dorsum_base + dorsum_own_cons + dorsum_deform

    # 5. Labial saturation; velar/glottal apertures pass through.
    aperture, compression = saturate_lips(upper_lip_y, lower_lip_y)

    return ArticulatorFrame(
        t_ms=task.t_ms,
        jaw_y=jaw_y,
        lower_lip_y=lower_lip_y,
        upper_lip_y=upper_lip_y,
        tongue_tip_y=tongue_tip_y,
        tongue_dorsum_y=tongue_dorsum_y,
        lip_aperture=aperture,
        lip_compression=compression,
        velum_aperture=task.values[TaskVariableId.VELOPHARYNGEAL_APERTURE],
        glottal_aperture=task.values[TaskVariableId.GLOTTAL_APERTURE],
        jaw_vocalic_y=jaw_voc,
        lower_lip_own=lower_own,
        tongue_tip_own=tip_own_voc + tip_own_cons,
        tongue_dorsum_own=dorsum_own_voc + dorsum_own_cons + dorsum_support,
    )


def map_trajectories(
    tasks: TaskTrajectorySet, cfg: SynergyConfig
) -> list[ArticulatorFrame]:
    """Apply map_frame to every step of a task trajectory set."""
    return [map_frame(tasks.snapshot(k), cfg) for k in range(tasks.n_steps)]
