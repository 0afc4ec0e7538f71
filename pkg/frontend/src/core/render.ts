/**
 * Schematic midsagittal scene for one articulator frame. computeScene is a
 * pure function of (frame, toggles) producing a display list; drawScene
 * paints it onto a canvas 2D context. Flesh points carry the standard
 * colors: upper lip green, lower lip red, tongue tip orange, tongue dorsum
 * blue, jaw magenta. Lip compression is rendered as an overlap shade.
 */

import type { ArticulatorFrameView } from "./boundary.js";
import type { OverlayToggles } from "./session.js";

export interface ScenePoint {
  kind: "point";
  name: string;
  color: string;
  x: number;
  y: number;
}

export interface ScenePath {
  kind: "path";
  name: string;
  color: string;
  points: [number, number][];
  closed: boolean;
  fill?: string;
}

export interface SceneLabel {
  kind: "label";
  text: string;
  x: number;
  y: number;
}

export type SceneItem = ScenePoint | ScenePath | SceneLabel;

export const FLESH_COLOR: Record<string, string> = {
  upper_lip: "green",
  lower_lip: "red",
  tongue_tip: "orange",
  tongue_dorsum: "blue",
  jaw: "magenta",
};

// canvas layout: model-unit vertical coordinates map into a 480x360 view
const VIEW_W = 480;
const VIEW_H = 360;
const Y_TOP_MODEL = 2.6; // model y mapped to the top band of the canvas
const Y_BOTTOM_MODEL = -3.4;

export function modelToCanvasY(y: number): number {
  const t = (Y_TOP_MODEL - y) / (Y_TOP_MODEL - Y_BOTTOM_MODEL);
  return 30 + t * (VIEW_H - 60);
}

// fixed horizontal stations, lips at the front (right side)
const X_LIPS = 380;
const X_TIP = 290;
const X_DORSUM = 190;
const X_JAW = 300;

export function computeScene(
  frame: ArticulatorFrameView,
  toggles: OverlayToggles
): SceneItem[] {
  const items: SceneItem[] = [];

  // static vocal-tract outline: palate from velum region to the upper lip
  const palate: [number, number][] = [
    [120, modelToCanvasY(1.9)],
    [190, modelToCanvasY(2.2)],
    [290, modelToCanvasY(1.7)],
    [X_LIPS, modelToCanvasY(1.0)],
  ];
  items.push({
    kind: "path",
    name: "palate",
    color: "#666666",
    points: palate,
    closed: false,
  });

  // tongue body sketch through dorsum and tip
  const tongue: [number, number][] = [
    [130, modelToCanvasY(frame.jaw_y - 0.6)],
    [X_DORSUM, modelToCanvasY(frame.tongue_dorsum_y)],
    [X_TIP, modelToCanvasY(frame.tongue_tip_y)],
    [330, modelToCanvasY(frame.jaw_y - 0.4)],
  ];
  items.push({
    kind: "path",
    name: "tongue",
    color: "#c08080",
    points: tongue,
    closed: false,
  });

  // jaw line under the tongue
  items.push({
    kind: "path",
    name: "jaw-line",
    color: "magenta",
    points: [
      [140, modelToCanvasY(frame.jaw_y - 1.2)],
      [X_JAW, modelToCanvasY(frame.jaw_y)],
      [X_LIPS, modelToCanvasY(frame.lower_lip_y - 0.5)],
    ],
    closed: false,
  });

  if (frame.lip_compression > 0) {
    // lips in contact: shade the overlap band
    const top = modelToCanvasY(frame.lower_lip_y);
    const bottom = modelToCanvasY(frame.upper_lip_y);
    items.push({
      kind: "path",
      name: "lip-compression",
      color: "#aa3333",
      fill: "rgba(200, 60, 60, 0.45)",
      points: [
        [X_LIPS - 14, top],
        [X_LIPS + 14, top],
        [X_LIPS + 14, bottom],
        [X_LIPS - 14, bottom],
      ],
      closed: true,
    });
  }

  if (toggles.fleshPoints) {
    const points: [string, number, number][] = [
      ["upper_lip", X_LIPS, frame.upper_lip_y],
      ["lower_lip", X_LIPS, frame.lower_lip_y],
      ["tongue_tip", X_TIP, frame.tongue_tip_y],
      ["tongue_dorsum", X_DORSUM, frame.tongue_dorsum_y],
      ["jaw", X_JAW, frame.jaw_y],
    ];
    for (const [name, x, yModel] of points) {
      items.push({
        kind: "point",
        name,
        color: FLESH_COLOR[name],
        x,
        y: modelToCanvasY(yModel),
      });
    }
  }

  items.push({
    kind: "label",
    text: `t = ${frame.t_ms.toFixed(0)} ms`,
    x: 16,
    y: 24,
  });
  return items;
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: SceneItem[]
): void {
  ctx.clearRect(0, 0, VIEW_W, VIEW_H);
  ctx.lineWidth = 2;
  for (const item of scene) {
    if (item.kind === "path") {
      ctx.beginPath();
      item.points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
      if (item.closed) {
        ctx.closePath();
      }
      if (item.fill) {
        ctx.fillStyle = item.fill;
        ctx.fill();
      }
      ctx.strokeStyle = item.color;
      ctx.stroke();
    } else if (item.kind === "point") {
      ctx.beginPath();
      ctx.arc(item.x, item.y, 6, 0, 2 * Math.PI);
      ctx.fillStyle = item.color;
      ctx.fill();
    } else {
      ctx.fillStyle = "#222222";
      ctx.font = "13px sans-serif";
      ctx.fillText(item.text, item.x, item.y);
    }
  }
}

export const VIEW_SIZE = { width: VIEW_W, height: VIEW_H };
