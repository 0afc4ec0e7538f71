/**
 * Single-user session state: the editable score/config, the latest frame
 * bundle from the core, playhead and overlay toggles. Any edit after the
 * last simulation marks the bundle stale; exports are blocked while stale.
 * At most one simulation is in flight; a later run supersedes earlier ones
 * (cancel-and-replace by generation counter).
 */

import type { BoundaryClient, FrameBundle } from "./boundary.js";
import {
  defaultConfig,
  defaultPaScore,
  validateScore,
  type ConfigDoc,
  type GestureDoc,
  type ScoreDoc,
  type ValidationIssue,
} from "./scoreModel.js";

export interface OverlayToggles {
  fleshPoints: boolean;
  trajectories: boolean;
}

export type SessionListener = (session: Session) => void;

export const MIN_SPEED = 0.25;
export const MAX_SPEED = 2.0;

export class Session {
  score: ScoreDoc = defaultPaScore();
  config: ConfigDoc = defaultConfig();
  bundle: FrameBundle | null = null;
  stale = true;
  playheadMs = 0;
  playing = false;
  /** playback speed: 1 maps simulation time 1:1 to wall time */
  speed = 1.0;
  toggles: OverlayToggles = { fleshPoints: true, trajectories: false };
  issues: ValidationIssue[] = [];
  pending = false;
  lastError: string | null = null;

  /** bumped by every edit; a bundle only lands if its epoch is still current */
  private epoch = 0;
  /** id of the newest run; older in-flight runs are superseded */
  private latestRun = 0;
  private listeners: SessionListener[] = [];

  constructor(private readonly boundary: BoundaryClient) {}

  subscribe(listener: SessionListener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener(this);
    }
  }

  /** Replace one gesture; marks the bundle stale. */
  editGesture(index: number, patch: Partial<GestureDoc>): void {
    const gestures = this.score.gestures.map((g, i) =>
      i === index ? { ...g, ...patch, targets: { ...g.targets, ...(patch.targets ?? {}) } } : g
    );
    this.score = { ...this.score, gestures };
    this.markStale();
  }

  editConfig(patch: Partial<ConfigDoc>): void {
    this.config = { ...this.config, ...patch };
    this.markStale();
  }

  replaceScore(score: ScoreDoc): void {
    this.score = score;
    this.markStale();
  }

  private markStale(): void {
    this.stale = true;
    this.epoch += 1; // cancels the result of any in-flight simulation
    this.issues = validateScore(this.score);
    this.notify();
  }

  /** View-only switches never invalidate the bundle. */
  setToggle(name: keyof OverlayToggles, value: boolean): void {
    this.toggles = { ...this.toggles, [name]: value };
    this.notify();
  }

  setSpeed(speed: number): void {
    this.speed = Math.min(MAX_SPEED, Math.max(MIN_SPEED, speed));
    this.notify();
  }

  setPlayhead(ms: number): void {
    this.playheadMs = Math.min(Math.max(0, ms), this.durationMs());
    this.notify();
  }

  durationMs(): number {
    return this.score.duration_ms;
  }

  /** Advance the playhead by elapsed wall time; wraps at the end. */
  advancePlayhead(wallDeltaMs: number): void {
    if (!this.playing || !this.bundle) {
      return;
    }
    const next = this.playheadMs + wallDeltaMs * this.speed;
    this.playheadMs = next >= this.durationMs() ? 0 : next;
    this.notify();
  }

  frameAtPlayhead() {
    if (!this.bundle || this.bundle.frames.length === 0) {
      return null;
    }
    const frames = this.bundle.frames;
    const dt = frames.length > 1 ? frames[1].t_ms - frames[0].t_ms : 1;
    const index = Math.min(
      frames.length - 1,
      Math.max(0, Math.round((this.playheadMs - frames[0].t_ms) / dt))
    );
    return frames[index];
  }

  /**
   * Run the core. Refuses invalid scores (inline issues instead); an edit
   * during the flight supersedes the result of the older run.
   */
  async runSimulation(): Promise<boolean> {
    this.issues = validateScore(this.score);
    if (this.issues.length > 0) {
      this.lastError = "fix the highlighted gesture fields first";
      this.notify();
      return false;
    }
    const myEpoch = this.epoch;
    const myRun = ++this.latestRun;
    this.pending = true;
    this.lastError = null;
    this.notify();
    try {
      const bundle = await this.boundary({
        score: this.score,
        config: this.config,
        dt_ms: 1.0,
      });
      if (myRun !== this.latestRun || myEpoch !== this.epoch) {
        return false; // superseded by a newer run or an edit
      }
      this.bundle = bundle;
      this.stale = false;
      this.playheadMs = 0;
      return true;
    } catch (err) {
      if (myRun === this.latestRun && myEpoch === this.epoch) {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
      return false;
    } finally {
      if (myRun === this.latestRun) {
        this.pending = false;
      }
      this.notify();
    }
  }

  /**
   * CSV downloads, byte-identical to the CLI's files for the same inputs.
   * Blocked while the bundle is stale (warning surfaces in lastError).
   */
  exportCsvs(): { name: string; text: string }[] | null {
    if (!this.bundle || this.stale) {
      this.lastError = "score or config changed since the last run; re-run before exporting";
      this.notify();
      return null;
    }
    const seconds = this.bundle.manifest.timestamp;
    return [
      { name: `control_${seconds}.csv`, text: this.bundle.control },
      { name: `displacement_${seconds}.csv`, text: this.bundle.displacement },
    ];
  }
}
