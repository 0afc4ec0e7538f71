/**
 * The core boundary contract. Every numeric series shown in the UI
 * originates from the core through this document; the UI never computes
 * trajectories itself. The control/displacement members carry the core's
 * CSV output verbatim so exports stay byte-identical to the CLI's files.
 */

import type { ConfigDoc, ScoreDoc } from "./scoreModel.js";

export interface RunManifest {
  label: string;
  config_hash: string;
  dt_ms: number;
  outputs: Record<string, string>;
  timestamp: number;
}

export interface ArticulatorFrameView {
  t_ms: number;
  upper_lip_y: number;
  lower_lip_y: number;
  tongue_tip_y: number;
  tongue_dorsum_y: number;
  jaw_y: number;
  lip_aperture: number;
  lip_compression: number;
}

export interface FrameBundle {
  manifest: RunManifest;
  /** verbatim control CSV text from the core */
  control: string;
  /** verbatim displacement CSV text from the core */
  displacement: string;
  frames: ArticulatorFrameView[];
}

export interface SimulateRequest {
  score: ScoreDoc;
  config?: ConfigDoc;
  dt_ms?: number;
}

export type BoundaryClient = (request: SimulateRequest) => Promise<FrameBundle>;

export const DISPLACEMENT_HEADER =
  "t_ms,upper_lip_y,lower_lip_y,tongue_tip_y,tongue_dorsum_y,jaw_y";

/**
 * Re-package displacement CSV rows as per-step frame views. Apertures are
 * recovered from the lip series (the rendered lower lip exceeds the upper
 * lip by exactly the tissue compression); this is bookkeeping on core
 * output, not trajectory computation.
 */
export function framesFromDisplacementCsv(csv: string): ArticulatorFrameView[] {
  const lines = csv.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error("empty displacement CSV");
  }
  if (lines[0] !== DISPLACEMENT_HEADER) {
    throw new Error(`unexpected displacement CSV header: ${lines[0]}`);
  }
  return lines.slice(1).map((line, rowIndex) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== 6 || cells.some(Number.isNaN)) {
      throw new Error(`malformed displacement CSV row ${rowIndex + 1}`);
    }
    const [t_ms, upper_lip_y, lower_lip_y, tongue_tip_y, tongue_dorsum_y, jaw_y] =
      cells;
    const gap = upper_lip_y - lower_lip_y;
    return {
      t_ms,
      upper_lip_y,
      lower_lip_y,
      tongue_tip_y,
      tongue_dorsum_y,
      jaw_y,
      lip_aperture: Math.max(0, gap),
      lip_compression: Math.max(0, -gap),
    };
  });
}

/** Boundary client speaking to a local service endpoint. */
export function httpBoundaryClient(baseUrl = ""): BoundaryClient {
  return async (request: SimulateRequest): Promise<FrameBundle> => {
    const response = await fetch(`${baseUrl}/api/simulate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) {
      const detail = await response.text();
      throw new Error(`simulation failed (${response.status}): ${detail}`);
    }
    return (await response.json()) as FrameBundle;
  };
}
