/**
 * DOM wiring for the score editor + midsagittal animation viewer. All state
 * lives in the Session; this module only reflects it into the page and
 * forwards events. Editing and re-running swaps the frame bundle in place;
 * the page never reloads.
 */

import { httpBoundaryClient } from "../core/boundary.js";
import { FLESH_COLOR, VIEW_SIZE, computeScene, drawScene } from "../core/render.js";
import { Session } from "../core/session.js";
import type { GestureDoc } from "../core/scoreModel.js";

const session = new Session(httpBoundaryClient());

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const gestureTable = $("gesture-table") as HTMLTableElement;
const statusLine = $("status-line");
const runButton = $("run-button") as HTMLButtonElement;
const exportButton = $("export-button") as HTMLButtonElement;
const playButton = $("play-button") as HTMLButtonElement;
const scrubber = $("scrubber") as HTMLInputElement;
const speedSelect = $("speed-select") as HTMLSelectElement;
const fleshToggle = $("flesh-toggle") as HTMLInputElement;
const trajToggle = $("traj-toggle") as HTMLInputElement;
const sceneCanvas = $("scene-canvas") as HTMLCanvasElement;
const trajCanvas = $("traj-canvas") as HTMLCanvasElement;
const lipCoupling = $("lip-coupling") as HTMLInputElement;
const tongueCoupling = $("tongue-coupling") as HTMLInputElement;

const NUMERIC_FIELDS: (keyof GestureDoc)[] = [
  "onset_ms",
  "offset_ms",
  "ramp_ms",
  "time_constant_ms",
];

function renderGestureTable(): void {
  const issuesByGesture = new Map<number, string[]>();
  for (const issue of session.issues) {
    const list = issuesByGesture.get(issue.gesture) ?? [];
    list.push(`${issue.field}: ${issue.message}`);
    issuesByGesture.set(issue.gesture, list);
  }
  const head =
    "<tr><th>tier</th><th>onset</th><th>offset</th><th>ramp</th>" +
    "<th>tau</th><th>targets</th></tr>";
  const rows = session.score.gestures.map((g, i) => {
    const numeric = NUMERIC_FIELDS.map(
      (field) =>
        `<td><input type="number" step="5" data-gesture="${i}" ` +
        `data-field="${field}" value="${g[field]}"></td>`
    ).join("");
    const targets = Object.entries(g.targets)
      .map(([name, value]) =>
        typeof value === "number"
          ? `<label>${name} <input type="number" step="0.1" ` +
            `data-gesture="${i}" data-target="${name}" value="${value}"></label>`
          : `<span class="enum-target">${name}=${value}</span>`
      )
      .join(" ");
    const issues = issuesByGesture.get(i);
    const issueRow = issues
      ? `<tr class="issue-row"><td colspan="6">${issues.join("; ")}</td></tr>`
      : "";
    return `<tr><td>${g.tier}</td>${numeric}<td>${targets}</td></tr>${issueRow}`;
  });
  gestureTable.innerHTML = head + rows.join("");
}

gestureTable.addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement;
  const gestureIndex = Number(input.dataset.gesture);
  if (Number.isNaN(gestureIndex)) return;
  const value = Number(input.value);
  if (input.dataset.field) {
    session.editGesture(gestureIndex, { [input.dataset.field]: value });
  } else if (input.dataset.target) {
    session.editGesture(gestureIndex, { targets: { [input.dataset.target]: value } } as
      Partial<GestureDoc>);
  }
});

runButton.addEventListener("click", () => void session.runSimulation());

exportButton.addEventListener("click", () => {
  const files = session.exportCsvs();
  if (!files) return;
  for (const file of files) {
    const blob = new Blob([file.text], { type: "text/csv" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = file.name;
    link.click();
    URL.revokeObjectURL(link.href);
  }
});

playButton.addEventListener("click", () => {
  session.playing = !session.playing;
  playButton.textContent = session.playing ? "pause" : "play";
});

scrubber.addEventListener("input", () => {
  session.playing = false;
  playButton.textContent = "play";
  session.setPlayhead(Number(scrubber.value));
});

speedSelect.addEventListener("change", () => {
  session.setSpeed(Number(speedSelect.value));
});

fleshToggle.addEventListener("change", () =>
  session.setToggle("fleshPoints", fleshToggle.checked)
);
trajToggle.addEventListener("change", () =>
  session.setToggle("trajectories", trajToggle.checked)
);
lipCoupling.addEventListener("change", () =>
  session.editConfig({ jaw_to_lip_coupling: Number(lipCoupling.value) })
);
tongueCoupling.addEventListener("change", () =>
  session.editConfig({ jaw_to_tongue_coupling: Number(tongueCoupling.value) })
);

function renderTrajectories(): void {
  const ctx = trajCanvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, trajCanvas.width, trajCanvas.height);
  if (!session.toggles.trajectories || !session.bundle) return;
  const frames = session.bundle.frames;
  const keys: (keyof typeof FLESH_COLOR)[] = [
    "upper_lip",
    "lower_lip",
    "tongue_tip",
    "tongue_dorsum",
    "jaw",
  ];
  const values: Record<string, number[]> = {
    upper_lip: frames.map((f) => f.upper_lip_y),
    lower_lip: frames.map((f) => f.lower_lip_y),
    tongue_tip: frames.map((f) => f.tongue_tip_y),
    tongue_dorsum: frames.map((f) => f.tongue_dorsum_y),
    jaw: frames.map((f) => f.jaw_y),
  };
  const all = keys.flatMap((k) => values[k]);
  const lo = Math.min(...all);
  const hi = Math.max(...all);
  const sx = (i: number) => (i / (frames.length - 1)) * (trajCanvas.width - 10) + 5;
  const sy = (v: number) =>
    5 + ((hi - v) / (hi - lo || 1)) * (trajCanvas.height - 10);
  for (const key of keys) {
    ctx.beginPath();
    values[key].forEach((v, i) =>
      i === 0 ? ctx.moveTo(sx(i), sy(v)) : ctx.lineTo(sx(i), sy(v))
    );
    ctx.strokeStyle = FLESH_COLOR[key];
    ctx.lineWidth = 1.2;
    ctx.stroke();
  }
  // playhead cursor
  const cursor = sx(session.playheadMs / (session.durationMs() / frames.length));
  ctx.strokeStyle = "#00000066";
  ctx.beginPath();
  ctx.moveTo(cursor, 0);
  ctx.lineTo(cursor, trajCanvas.height);
  ctx.stroke();
}

function reflect(): void {
  renderGestureTable();
  runButton.disabled = session.pending;
  runButton.textContent = session.pending ? "running..." : "run simulation";
  scrubber.max = String(session.durationMs());
  scrubber.value = String(session.playheadMs);
  const parts: string[] = [];
  if (session.lastError) parts.push(`error: ${session.lastError}`);
  if (session.stale) parts.push("edited since last run (re-run to refresh)");
  if (session.bundle) {
    parts.push(
      `${session.bundle.manifest.label} / ${session.bundle.frames.length} frames`
    );
  }
  statusLine.textContent = parts.join(" | ") || "ready";
  statusLine.classList.toggle("stale", session.stale);
  renderTrajectories();
}

session.subscribe(reflect);

sceneCanvas.width = VIEW_SIZE.width;
sceneCanvas.height = VIEW_SIZE.height;

let lastTick = performance.now();
function tick(now: number): void {
  session.advancePlayhead(now - lastTick);
  lastTick = now;
  const frame = session.frameAtPlayhead();
  const ctx = sceneCanvas.getContext("2d");
  if (frame && ctx) {
    drawScene(ctx, computeScene(frame, session.toggles));
  }
  scrubber.value = String(session.playheadMs);
  requestAnimationFrame(tick);
}

reflect();
requestAnimationFrame(tick);
void session.runSimulation();
