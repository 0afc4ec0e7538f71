"""Gestural scores: the tiered utterance specification.

A score is a set of gestures on five parallel tiers (vocalic, consonantal,
velopharyngeal, glottal, pulmonary). Each gesture has an activation interval
with cosine rise/fall ramps, a first-order time constant, and tier-specific
normalized targets. Scores are immutable after construction and safe to share
across concurrent simulation runs.

File format (UTF-8 JSON)::

    {
      "label": "/pa/",
      "duration_ms": 300.0,
      "gestures": [
        {
          "tier": "vocalic" | "consonantal" | "velopharyngeal"
                | "glottal" | "pulmonary",
          "onset_ms": 0.0,
          "offset_ms": 300.0,
          "ramp_ms": 20.0,
          "time_constant_ms": 40.0,
          "targets": { ... tier dependent, see the *Targets classes ... }
        }
      ]
    }

``parse_score`` / ``serialize_score`` round-trip exactly; serialization is
canonical (fixed field order, gestures sorted by tier then onset), so
serializing twice yields byte-identical text.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, fields

from .errors import SchemaError, ValidationError

__all__ = [
    "Tier",
    "Location",
    "Degree",
    "Consonant",
    "Vowel",
    "VocalicTargets",
    "ConsonantalTargets",
    "VelopharyngealTargets",
    "GlottalTargets",
    "PulmonaryTargets",
    "Gesture",
    "GestureScore",
    "VOWEL_TARGETS",
    "parse_score",
    "serialize_score",
    "make_cv_score",
]


class Tier(enum.Enum):
    VOCALIC = "vocalic"
    CONSONANTAL = "consonantal"
    VELOPHARYNGEAL = "velopharyngeal"
    GLOTTAL = "glottal"
    PULMONARY = "pulmonary"


# Canonical tier order used for sorting gestures.
TIER_ORDER = (
    Tier.VOCALIC,
    Tier.CONSONANTAL,
    Tier.VELOPHARYNGEAL,
    Tier.GLOTTAL,
    Tier.PULMONARY,
)


class Location(enum.Enum):
    """Primary closure-forming articulator of a consonantal gesture."""

    LABIAL = "labial"
    APICAL = "apical"
    DORSAL = "dorsal"


class Degree(enum.Enum):
    """Constriction degree. Only FULL_CLOSURE gets articulator-mapping
    support in v1; the others are representable in the format."""

    FULL_CLOSURE = "full_closure"
    FRICATIVE = "fricative"
    LATERAL = "lateral"
    APPROXIMANT = "approximant"
    VIBRANT = "vibrant"


class Consonant(enum.Enum):
    P = "p"
    T = "t"
    K = "k"


class Vowel(enum.Enum):
    A = "a"
    I = "i"
    U = "u"


def _check_range(path: str, value: float, lo: float, hi: float) -> float:
    if not (lo <= value <= hi):
        raise ValidationError(f"{path}: value {value!r} outside [{lo}, {hi}]")
    return float(value)


@dataclass(frozen=True)
class VocalicTargets:
    """Vocal-tract form targets: tongue-body height/fronting plus rounding."""

    vocalic_height: float = 0.0
    vocalic_fronting: float = 0.0
    lip_rounding: float = 0.0

    def __post_init__(self):
        _check_range("targets.vocalic_height", self.vocalic_height, -1.0, 1.0)
        _check_range("targets.vocalic_fronting", self.vocalic_fronting, -1.0, 1.0)
        _check_range("targets.lip_rounding", self.lip_rounding, 0.0, 1.0)


@dataclass(frozen=True)
class ConsonantalTargets:
    location: Location
    degree: Degree = Degree.FULL_CLOSURE
    strength: float = 1.0

    def __post_init__(self):
        if not isinstance(self.location, Location):
            raise SchemaError("targets.location: expected a Location")
        if not isinstance(self.degree, Degree):
            raise SchemaError("targets.degree: expected a Degree")
        _check_range("targets.strength", self.strength, 0.0, 1.0)


@dataclass(frozen=True)
class VelopharyngealTargets:
    aperture: float = 0.0

    def __post_init__(self):
        _check_range("targets.aperture", self.aperture, 0.0, 1.0)


@dataclass(frozen=True)
class GlottalTargets:
    aperture: float = 0.0

    def __post_init__(self):
        _check_range("targets.aperture", self.aperture, 0.0, 1.0)


@dataclass(frozen=True)
class PulmonaryTargets:
    subglottal_pressure: float = 1.0

    def __post_init__(self):
        _check_range("targets.subglottal_pressure", self.subglottal_pressure, 0.0, 1.0)


TargetSet = (
    VocalicTargets
    | ConsonantalTargets
    | VelopharyngealTargets
    | GlottalTargets
    | PulmonaryTargets
)

_TARGETS_FOR_TIER: dict[Tier, type] = {
    Tier.VOCALIC: VocalicTargets,
    Tier.CONSONANTAL: ConsonantalTargets,
    Tier.VELOPHARYNGEAL: VelopharyngealTargets,
    Tier.GLOTTAL: GlottalTargets,
    Tier.PULMONARY: PulmonaryTargets,
}


@dataclass(frozen=True)
class Gesture:
    """One goal-directed action: activation interval + targets + lag.

    ``ramp_ms`` is the cosine rise/fall duration; the activation plateau is
    [onset+ramp, offset-ramp]. ``time_constant_ms`` is the first-order lag tau
    used by the task trajectory generator.
    """

    tier: Tier
    onset_ms: float
    offset_ms: float
    targets: TargetSet
    ramp_ms: float = 0.0
    time_constant_ms: float = 30.0

    def __post_init__(self):
        object.__setattr__(self, "onset_ms", float(self.onset_ms))
        object.__setattr__(self, "offset_ms", float(self.offset_ms))
        object.__setattr__(self, "ramp_ms", float(self.ramp_ms))
        object.__setattr__(self, "time_constant_ms", float(self.time_constant_ms))
        if self.onset_ms < 0:
            raise ValidationError(f"onset_ms: must be >= 0, got {self.onset_ms}")
        if self.offset_ms <= self.onset_ms:
            raise ValidationError(
                f"offset_ms: must exceed onset_ms ({self.onset_ms}), got {self.offset_ms}"
            )
        if self.ramp_ms < 0:
            raise ValidationError(f"ramp_ms: must be >= 0, got {self.ramp_ms}")
        if self.ramp_ms > (self.offset_ms - self.onset_ms) / 2.0:
            raise ValidationError(
                f"ramp_ms: {self.ramp_ms} exceeds half the activation interval "
                f"({(self.offset_ms - self.onset_ms) / 2.0})"
            )
        if self.time_constant_ms <= 0:
            raise ValidationError(
                f"time_constant_ms: must be > 0, got {self.time_constant_ms}"
            )
        expected = _TARGETS_FOR_TIER[self.tier]
        if type(self.targets) is not expected:
            raise ValidationError(
                f"targets: {type(self.targets).__name__} is not legal for the "
                f"{self.tier.value} tier (expected {expected.__name__})"
            )


@dataclass(frozen=True)
class GestureScore:
    """A validated, canonically ordered utterance specification."""

    duration_ms: float
    gestures: tuple[Gesture, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "duration_ms", float(self.duration_ms))
        if not self.duration_ms > 0:
            raise ValidationError(f"duration_ms: must be > 0, got {self.duration_ms}")
        ordered = tuple(
            sorted(
                self.gestures,
                key=lambda g: (TIER_ORDER.index(g.tier), g.onset_ms, g.offset_ms),
            )
        )
        object.__setattr__(self, "gestures", ordered)
        for i, g in enumerate(ordered):
            if g.offset_ms > self.duration_ms:
                raise ValidationError(
                    f"gestures[{i}].offset_ms: {g.offset_ms} exceeds "
                    f"duration_ms ({self.duration_ms})"
                )
        # Sequential-on-tier: activation intervals on one tier must not overlap.
        by_tier: dict[Tier, list[Gesture]] = {}
        for g in ordered:
            by_tier.setdefault(g.tier, []).append(g)
        for tier, gs in by_tier.items():
            for a, b in zip(gs, gs[1:]):
                if b.onset_ms < a.offset_ms:
                    raise ValidationError(
                        f"{tier.value} tier: gestures overlap "
                        f"([{a.onset_ms}, {a.offset_ms}] and [{b.onset_ms}, {b.offset_ms}])"
                    )

    def on_tier(self, tier: Tier) -> tuple[Gesture, ...]:
        return tuple(g for g in self.gestures if g.tier is tier)


# ---------------------------------------------------------------------------
# JSON parsing / serialization
# ---------------------------------------------------------------------------

def _as_number(path: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {type(value).__name__}")
    out = float(value)
    if not math.isfinite(out):
        raise SchemaError(f"{path}: number must be finite, got {value!r}")
    return out


def _as_string(path: str, value) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a string, got {type(value).__name__}")
    return value


def _as_enum(path: str, value, enum_cls):
    name = _as_string(path, value)
    try:
        return enum_cls(name)
    except ValueError:
        legal = ", ".join(e.value for e in enum_cls)
        raise SchemaError(f"{path}: unknown value {name!r} (expected one of: {legal})")


def _as_object(path: str, value) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{path}: expected an object, got {type(value).__name__}")
    return value


def _parse_targets(path: str, tier: Tier, obj) -> TargetSet:
    data = _as_object(path, obj)
    cls = _TARGETS_FOR_TIER[tier]
    field_names = [f.name for f in fields(cls)]
    unknown = set(data) - set(field_names)
    if unknown:
        raise SchemaError(
            f"{path}.{sorted(unknown)[0]}: unknown target for the {tier.value} tier"
        )
    kwargs = {}
    for name, value in data.items():
        if name == "location":
            kwargs[name] = _as_enum(f"{path}.location", value, Location)
        elif name == "degree":
            kwargs[name] = _as_enum(f"{path}.degree", value, Degree)
        else:
            kwargs[name] = _as_number(f"{path}.{name}", value)
    if cls is ConsonantalTargets and "location" not in kwargs:
        raise SchemaError(f"{path}.location: required for consonantal gestures")
    try:
        return cls(**kwargs)
    except ValidationError as err:
        raise ValidationError(f"{path[: path.rfind('.targets')]}.{err}") from None


def _parse_gesture(path: str, obj) -> Gesture:
    data = _as_object(path, obj)
    known = {"tier", "onset_ms", "offset_ms", "ramp_ms", "time_constant_ms", "targets"}
    unknown = set(data) - known
    if unknown:
        raise SchemaError(f"{path}.{sorted(unknown)[0]}: unknown gesture field")
    for req in ("tier", "onset_ms", "offset_ms", "targets"):
        if req not in data:
            raise SchemaError(f"{path}.{req}: required field is missing")
    tier = _as_enum(f"{path}.tier", data["tier"], Tier)
    kwargs = dict(
        tier=tier,
        onset_ms=_as_number(f"{path}.onset_ms", data["onset_ms"]),
        offset_ms=_as_number(f"{path}.offset_ms", data["offset_ms"]),
        targets=_parse_targets(f"{path}.targets", tier, data["targets"]),
    )
    if "ramp_ms" in data:
        kwargs["ramp_ms"] = _as_number(f"{path}.ramp_ms", data["ramp_ms"])
    if "time_constant_ms" in data:
        kwargs["time_constant_ms"] = _as_number(
            f"{path}.time_constant_ms", data["time_constant_ms"]
        )
    try:
        return Gesture(**kwargs)
    except ValidationError as err:
        raise ValidationError(f"{path}.{err}") from None


def parse_score(document: str) -> GestureScore:
    """Parse a JSON score document into a validated GestureScore.

    Raises SchemaError for malformed structure (with the field path) and
    ValidationError for invariant violations (tier overlap, ranges).
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as err:
        raise SchemaError(f"document: not valid JSON ({err})") from None
    data = _as_object("document", data)
    unknown = set(data) - {"label", "duration_ms", "gestures"}
    if unknown:
        raise SchemaError(f"{sorted(unknown)[0]}: unknown top-level field")
    for req in ("duration_ms", "gestures"):
        if req not in data:
            raise SchemaError(f"{req}: required field is missing")
    label = _as_string("label", data.get("label", ""))
    duration = _as_number("duration_ms", data["duration_ms"])
    raw_gestures = data["gestures"]
    if not isinstance(raw_gestures, list):
        raise SchemaError(
            f"gestures: expected an array, got {type(raw_gestures).__name__}"
        )
    gestures = tuple(
        _parse_gesture(f"gestures[{i}]", g) for i, g in enumerate(raw_gestures)
    )
    return GestureScore(duration_ms=duration, gestures=gestures, label=label)


def _targets_to_dict(targets: TargetSet) -> dict:
    out = {}
    for f in fields(targets):
        value = getattr(targets, f.name)
        out[f.name] = value.value if isinstance(value, enum.Enum) else value
    return out


def serialize_score(score: GestureScore) -> str:
    """Serialize to the canonical JSON form. parse(serialize(s)) == s."""
    doc = {
        "label": score.label,
        "duration_ms": score.duration_ms,
        "gestures": [
            {
                "tier": g.tier.value,
                "onset_ms": g.onset_ms,
                "offset_ms": g.offset_ms,
                "ramp_ms": g.ramp_ms,
                "time_constant_ms": g.time_constant_ms,
                "targets": _targets_to_dict(g.targets),
            }
            for g in score.gestures
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Built-in CV syllable scores
# ---------------------------------------------------------------------------

# Canonical vowel targets in normalized task space. The jaw interpolation in
# the articulator map anchors on these same coordinates.
VOWEL_TARGETS: dict[Vowel, VocalicTargets] = {
    Vowel.A: VocalicTargets(vocalic_height=-1.0, vocalic_fronting=-0.2, lip_rounding=0.0),
    Vowel.I: VocalicTargets(vocalic_height=0.8, vocalic_fronting=0.9, lip_rounding=0.0),
    Vowel.U: VocalicTargets(vocalic_height=0.7, vocalic_fronting=-0.8, lip_rounding=0.8),
}

_CONSONANT_LOCATION: dict[Consonant, Location] = {
    Consonant.P: Location.LABIAL,
    Consonant.T: Location.APICAL,
    Consonant.K: Location.DORSAL,
}

# Timing defaults, chosen so the closure interval sits inside the standard
# 40-160 ms analysis window.
CV_DURATION_MS = 300.0
CLOSURE_ONSET_MS = 60.0
CLOSURE_OFFSET_MS = 140.0
CLOSURE_RAMP_MS = 20.0
VOCALIC_RAMP_MS = 20.0
VOCALIC_TAU_MS = 40.0
CONSONANTAL_TAU_MS = 25.0
GLOTTAL_ONSET_MS = 80.0
PHONATION_APERTURE = 0.1
SUBGLOTTAL_PRESSURE_ON = 1.0

CV_TIMING_DEFAULTS = {
    "cv_duration_ms": CV_DURATION_MS,
    "closure_onset_ms": CLOSURE_ONSET_MS,
    "closure_offset_ms": CLOSURE_OFFSET_MS,
    "closure_ramp_ms": CLOSURE_RAMP_MS,
    "vocalic_ramp_ms": VOCALIC_RAMP_MS,
    "vocalic_tau_ms": VOCALIC_TAU_MS,
    "consonantal_tau_ms": CONSONANTAL_TAU_MS,
    "glottal_onset_ms": GLOTTAL_ONSET_MS,
    "phonation_aperture": PHONATION_APERTURE,
    "subglottal_pressure_on": SUBGLOTTAL_PRESSURE_ON,
}


def make_cv_score(consonant: Consonant | str, vowel: Vowel | str) -> GestureScore:
    """Build the standard 300 ms CV syllable score for one of the nine
    plosive-vowel combinations (/p t k/ x /a i u/)."""
    consonant = Consonant(consonant) if not isinstance(consonant, Consonant) else consonant
    vowel = Vowel(vowel) if not isinstance(vowel, Vowel) else vowel
    label = f"/{consonant.value}{vowel.value}/"
    gestures = (
        Gesture(
            tier=Tier.VOCALIC,
            onset_ms=0.0,
            offset_ms=CV_DURATION_MS,
            ramp_ms=VOCALIC_RAMP_MS,
            time_constant_ms=VOCALIC_TAU_MS,
            targets=VOWEL_TARGETS[vowel],
        ),
        Gesture(
            tier=Tier.CONSONANTAL,
            onset_ms=CLOSURE_ONSET_MS,
            offset_ms=CLOSURE_OFFSET_MS,
            ramp_ms=CLOSURE_RAMP_MS,
            time_constant_ms=CONSONANTAL_TAU_MS,
            targets=ConsonantalTargets(
                location=_CONSONANT_LOCATION[consonant],
                degree=Degree.FULL_CLOSURE,
                strength=1.0,
            ),
        ),
        Gesture(
            tier=Tier.VELOPHARYNGEAL,
            onset_ms=0.0,
            offset_ms=CV_DURATION_MS,
            ramp_ms=10.0,
            time_constant_ms=30.0,
            targets=VelopharyngealTargets(aperture=0.0),
        ),
        Gesture(
            tier=Tier.GLOTTAL,
            onset_ms=GLOTTAL_ONSET_MS,
            offset_ms=CV_DURATION_MS,
            ramp_ms=20.0,
            time_constant_ms=30.0,
            targets=GlottalTargets(aperture=PHONATION_APERTURE),
        ),
        Gesture(
            tier=Tier.PULMONARY,
            onset_ms=0.0,
            offset_ms=CV_DURATION_MS,
            ramp_ms=20.0,
            time_constant_ms=25.0,
            targets=PulmonaryTargets(subglottal_pressure=SUBGLOTTAL_PRESSURE_ON),
        ),
    )
    return GestureScore(duration_ms=CV_DURATION_MS, gestures=gestures, label=label)
