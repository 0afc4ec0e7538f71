/**
 * Cross-component contract: for the default /pa/ session, the CSVs the UI
 * exports must be byte-identical to what the core CLI writes for the same
 * inputs, whether the boundary is exercised in-process or over HTTP.
 * Requires the core package to be installed (`articulodyn` on PATH).
 */

import { execFile } from "node:child_process";
import { mkdtemp, readFile, readdir, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import type { AddressInfo } from "node:net";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { httpBoundaryClient, type FrameBundle } from "../src/core/boundary.js";
import { defaultConfig, defaultPaScore } from "../src/core/scoreModel.js";
import { simulateViaCli } from "../src/server/bridge.js";
import { createApp } from "../src/server/main.js";
import { Session } from "../src/core/session.js";

const execFileAsync = promisify(execFile);
const BINARY = process.env.ARTICULODYN_BIN ?? "articulodyn";

let goldenControl: string;
let goldenDisplacement: string;
let goldenDir: string;

beforeAll(async () => {
  goldenDir = await mkdtemp(join(tmpdir(), "articulodyn-golden-"));
  await execFileAsync(BINARY, ["simulate", "--cv", "pa", "--out", goldenDir]);
  const names = await readdir(goldenDir);
  const read = (prefix: string) => {
    const name = names.find((n) => n.startsWith(prefix));
    if (!name) throw new Error(`missing golden ${prefix}`);
    return readFile(join(goldenDir, name), "utf-8");
  };
  goldenControl = await read("control_");
  goldenDisplacement = await read("displacement_");
}, 30000);

afterAll(async () => {
  await rm(goldenDir, { recursive: true, force: true });
});

describe("UI/CLI export equality for the default /pa/", () => {
  it("in-process bridge output matches the CLI golden files byte for byte", async () => {
    const bundle = await simulateViaCli({
      score: defaultPaScore(),
      config: defaultConfig(),
      dt_ms: 1.0,
    });
    expect(bundle.control).toBe(goldenControl);
    expect(bundle.displacement).toBe(goldenDisplacement);
    expect(bundle.frames).toHaveLength(300);
    expect(bundle.manifest.label).toBe("/pa/");
  }, 30000);

  it("session export through the HTTP boundary matches the goldens", async () => {
    const app = createApp();
    const server = app.listen(0);
    try {
      const { port } = server.address() as AddressInfo;
      const session = new Session(httpBoundaryClient(`http://127.0.0.1:${port}`));
      expect(await session.runSimulation()).toBe(true);
      const files = session.exportCsvs();
      expect(files).not.toBeNull();
      const [control, displacement] = files!;
      expect(control.name).toMatch(/^control_\d+\.csv$/);
      expect(displacement.name).toMatch(/^displacement_\d+\.csv$/);
      expect(control.text).toBe(goldenControl);
      expect(displacement.text).toBe(goldenDisplacement);
    } finally {
      server.close();
    }
  }, 30000);

  it("the service maps core input errors to a client error", async () => {
    const app = createApp();
    const server = app.listen(0);
    try {
      const { port } = server.address() as AddressInfo;
      const score = defaultPaScore();
      score.gestures[0].targets.vocalic_height = 42; // out of range for the core
      const response = await fetch(`http://127.0.0.1:${port}/api/simulate`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ score }),
      });
      expect(response.status).toBe(422);
      const body = (await response.json()) as { error: string };
      expect(body.error).toMatch(/vocalic_height/);
    } finally {
      server.close();
    }
  }, 30000);

  it("editing a gesture and re-running over HTTP swaps the bundle in place", async () => {
    const app = createApp();
    const server = app.listen(0);
    try {
      const { port } = server.address() as AddressInfo;
      const session = new Session(httpBoundaryClient(`http://127.0.0.1:${port}`));
      await session.runSimulation();
      const first: FrameBundle | null = session.bundle;
      session.editGesture(1, { onset_ms: 70.0, offset_ms: 150.0 });
      expect(session.stale).toBe(true);
      expect(await session.runSimulation()).toBe(true);
      expect(session.bundle).not.toBe(first);
      expect(session.stale).toBe(false);
      // the edited closure shifts the exported displacement series
      expect(session.bundle!.displacement).not.toBe(first!.displacement);
    } finally {
      server.close();
    }
  }, 30000);
});
