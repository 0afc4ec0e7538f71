import { describe, expect, it } from "vitest";

import type { ArticulatorFrameView } from "../src/core/boundary.js";
import {
  computeScene,
  modelToCanvasY,
  type ScenePath,
  type ScenePoint,
} from "../src/core/render.js";

const TOGGLES_ON = { fleshPoints: true, trajectories: false };
const TOGGLES_OFF = { fleshPoints: false, trajectories: false };

function neutralFrame(): ArticulatorFrameView {
  return {
    t_ms: 0,
    upper_lip_y: 1.0,
    lower_lip_y: -1.0,
    tongue_tip_y: 0.2,
    tongue_dorsum_y: 0.8,
    jaw_y: 0.0,
    lip_aperture: 2.0,
    lip_compression: 0.0,
  };
}

function closureFrame(): ArticulatorFrameView {
  return {
    t_ms: 110,
    upper_lip_y: 1.0,
    lower_lip_y: 1.3,
    tongue_tip_y: 0.6,
    tongue_dorsum_y: 1.3,
    jaw_y: 0.5,
    lip_aperture: 0.0,
    lip_compression: 0.3,
  };
}

const points = (scene: ReturnType<typeof computeScene>) =>
  scene.filter((i): i is ScenePoint => i.kind === "point");
const paths = (scene: ReturnType<typeof computeScene>) =>
  scene.filter((i): i is ScenePath => i.kind === "path");

describe("computeScene", () => {
  it("places all five flesh points at rest for a neutral frame", () => {
    const scene = computeScene(neutralFrame(), TOGGLES_ON);
    const fp = points(scene);
    expect(fp.map((p) => p.name).sort()).toEqual([
      "jaw",
      "lower_lip",
      "tongue_dorsum",
      "tongue_tip",
      "upper_lip",
    ]);
    const byName = Object.fromEntries(fp.map((p) => [p.name, p]));
    expect(byName.upper_lip.y).toBeCloseTo(modelToCanvasY(1.0), 9);
    expect(byName.lower_lip.y).toBeCloseTo(modelToCanvasY(-1.0), 9);
    // canvas y grows downward: the open lower lip sits below the upper lip
    expect(byName.lower_lip.y).toBeGreaterThan(byName.upper_lip.y);
    expect(byName.jaw.color).toBe("magenta");
    expect(byName.tongue_dorsum.color).toBe("blue");
    // no contact, no compression shading
    expect(paths(scene).some((p) => p.name === "lip-compression")).toBe(false);
  });

  it("renders the closure frame with the lower lip at/above the upper lip", () => {
    const scene = computeScene(closureFrame(), TOGGLES_ON);
    const byName = Object.fromEntries(points(scene).map((p) => [p.name, p]));
    expect(byName.lower_lip.y).toBeLessThanOrEqual(byName.upper_lip.y);
    const shade = paths(scene).find((p) => p.name === "lip-compression");
    expect(shade).toBeDefined();
    expect(shade!.fill).toBeTruthy();
  });

  it("draws outline only when flesh points are toggled off", () => {
    const scene = computeScene(closureFrame(), TOGGLES_OFF);
    expect(points(scene)).toHaveLength(0);
    expect(paths(scene).length).toBeGreaterThan(0);
  });

  it("is a pure function of its inputs", () => {
    const a = computeScene(closureFrame(), TOGGLES_ON);
    const b = computeScene(closureFrame(), TOGGLES_ON);
    expect(a).toEqual(b);
  });
});
