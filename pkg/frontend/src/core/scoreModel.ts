/**
 * Score document model mirroring the core's JSON schema, plus the built-in
 * default /pa/ syllable and client-side validation used for inline editor
 * errors. Validation here only gates obviously broken edits before they
 * reach the core; the core remains the authority.
 */

export type TierName =
  | "vocalic"
  | "consonantal"
  | "velopharyngeal"
  | "glottal"
  | "pulmonary";

export const TIERS: TierName[] = [
  "vocalic",
  "consonantal",
  "velopharyngeal",
  "glottal",
  "pulmonary",
];

export interface GestureDoc {
  tier: TierName;
  onset_ms: number;
  offset_ms: number;
  ramp_ms: number;
  time_constant_ms: number;
  targets: Record<string, number | string>;
}

export interface ScoreDoc {
  label: string;
  duration_ms: number;
  gestures: GestureDoc[];
}

export interface ValidationIssue {
  /** index into gestures, or -1 for score-level issues */
  gesture: number;
  field: string;
  message: string;
}

const TARGET_RANGES: Record<TierName, Record<string, [number, number]>> = {
  vocalic: {
    vocalic_height: [-1, 1],
    vocalic_fronting: [-1, 1],
    lip_rounding: [0, 1],
  },
  consonantal: { strength: [0, 1] },
  velopharyngeal: { aperture: [0, 1] },
  glottal: { aperture: [0, 1] },
  pulmonary: { subglottal_pressure: [0, 1] },
};

export function validateScore(score: ScoreDoc): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  if (!(score.duration_ms > 0)) {
    issues.push({
      gesture: -1,
      field: "duration_ms",
      message: "duration must be positive",
    });
  }
  score.gestures.forEach((g, i) => {
    if (!(g.offset_ms > g.onset_ms)) {
      issues.push({
        gesture: i,
        field: "offset_ms",
        message: "offset must exceed onset",
      });
    }
    if (g.onset_ms < 0) {
      issues.push({ gesture: i, field: "onset_ms", message: "onset must be >= 0" });
    }
    if (g.offset_ms > score.duration_ms) {
      issues.push({
        gesture: i,
        field: "offset_ms",
        message: "gesture extends past the utterance",
      });
    }
    if (g.ramp_ms < 0 || g.ramp_ms > (g.offset_ms - g.onset_ms) / 2) {
      issues.push({
        gesture: i,
        field: "ramp_ms",
        message: "ramp must fit in half the interval",
      });
    }
    if (!(g.time_constant_ms > 0)) {
      issues.push({
        gesture: i,
        field: "time_constant_ms",
        message: "time constant must be positive",
      });
    }
    const ranges = TARGET_RANGES[g.tier] ?? {};
    for (const [name, value] of Object.entries(g.targets)) {
      const range = ranges[name];
      if (range && typeof value === "number") {
        const [lo, hi] = range;
        if (value < lo || value > hi) {
          issues.push({
            gesture: i,
            field: `targets.${name}`,
            message: `${name} must be in [${lo}, ${hi}]`,
          });
        }
      }
    }
  });
  // sequential-on-tier: activation intervals on one tier must not overlap
  for (const tier of TIERS) {
    const indexed = score.gestures
      .map((g, i) => ({ g, i }))
      .filter(({ g }) => g.tier === tier)
      .sort((a, b) => a.g.onset_ms - b.g.onset_ms);
    for (let k = 1; k < indexed.length; k++) {
      if (indexed[k].g.onset_ms < indexed[k - 1].g.offset_ms) {
        issues.push({
          gesture: indexed[k].i,
          field: "onset_ms",
          message: `overlaps another gesture on the ${tier} tier`,
        });
      }
    }
  }
  return issues;
}

/** Byte-for-byte the same syllable the core builds for --cv pa. */
export function defaultPaScore(): ScoreDoc {
  return {
    label: "/pa/",
    duration_ms: 300.0,
    gestures: [
      {
        tier: "vocalic",
        onset_ms: 0.0,
        offset_ms: 300.0,
        ramp_ms: 20.0,
        time_constant_ms: 40.0,
        targets: { vocalic_height: -1.0, vocalic_fronting: -0.2, lip_rounding: 0.0 },
      },
      {
        tier: "consonantal",
        onset_ms: 60.0,
        offset_ms: 140.0,
        ramp_ms: 20.0,
        time_constant_ms: 25.0,
        targets: { location: "labial", degree: "full_closure", strength: 1.0 },
      },
      {
        tier: "velopharyngeal",
        onset_ms: 0.0,
        offset_ms: 300.0,
        ramp_ms: 10.0,
        time_constant_ms: 30.0,
        targets: { aperture: 0.0 },
      },
      {
        tier: "glottal",
        onset_ms: 80.0,
        offset_ms: 300.0,
        ramp_ms: 20.0,
        time_constant_ms: 30.0,
        targets: { aperture: 0.1 },
      },
      {
        tier: "pulmonary",
        onset_ms: 0.0,
        offset_ms: 300.0,
        ramp_ms: 20.0,
        time_constant_ms: 25.0,
        targets: { subglottal_pressure: 1.0 },
      },
    ],
  };
}

export interface ConfigDoc {
  jaw_cons_table: { labial: number; apical: number; dorsal: number };
  vowel_jaw_table: { a: number; i: number; u: number };
  jaw_to_lip_coupling: number;
  jaw_to_tongue_coupling: number;
  dorsum_support_gain: number;
  dorsum_deform_gain: number;
  lip_closure_source: "consonantal" | "vocalic";
}

export function defaultConfig(): ConfigDoc {
  return {
    jaw_cons_table: { labial: 0.5, apical: 0.8, dorsal: 0.6 },
    vowel_jaw_table: { a: -2.0, i: -0.5, u: -0.8 },
    jaw_to_lip_coupling: 0.5,
    jaw_to_tongue_coupling: 0.5,
    dorsum_support_gain: 0.4,
    dorsum_deform_gain: 0.3,
    lip_closure_source: "consonantal",
  };
}
