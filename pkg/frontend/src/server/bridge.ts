/**
 * Local-service bridge to the core: each simulate request becomes one
 * `articulodyn simulate` invocation in a scratch directory, and the CLI's
 * CSV/manifest outputs are returned verbatim inside the boundary document.
 */

import { execFile } from "node:child_process";
import { mkdtemp, readFile, readdir, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import {
  framesFromDisplacementCsv,
  type FrameBundle,
  type RunManifest,
  type SimulateRequest,
} from "../core/boundary.js";

const execFileAsync = promisify(execFile);

export interface BridgeOptions {
  /** core executable; override with ARTICULODYN_BIN for odd installs */
  binary?: string;
}

export class CoreError extends Error {
  constructor(message: string, readonly exitCode: number) {
    super(message);
  }
}

export async function simulateViaCli(
  request: SimulateRequest,
  options: BridgeOptions = {}
): Promise<FrameBundle> {
  const binary = options.binary ?? process.env.ARTICULODYN_BIN ?? "articulodyn";
  const workDir = await mkdtemp(join(tmpdir(), "articulodyn-ui-"));
  try {
    const scorePath = join(workDir, "score.json");
    await writeFile(scorePath, JSON.stringify(request.score), "utf-8");
    const args = [
      "simulate",
      "--score",
      scorePath,
      "--dt-ms",
      String(request.dt_ms ?? 1.0),
      "--out",
      workDir,
    ];
    if (request.config) {
      const configPath = join(workDir, "config.json");
      await writeFile(configPath, JSON.stringify(request.config), "utf-8");
      args.push("--config", configPath);
    }
    try {
      await execFileAsync(binary, args);
    } catch (err) {
      const failure = err as { code?: number; stderr?: string; message?: string };
      throw new CoreError(
        (failure.stderr || failure.message || "core invocation failed").trim(),
        typeof failure.code === "number" ? failure.code : 1
      );
    }
    const names = await readdir(workDir);
    const pick = async (prefix: string): Promise<string> => {
      const name = names.find((n) => n.startsWith(prefix));
      if (!name) {
        throw new CoreError(`core produced no ${prefix} file`, 2);
      }
      return readFile(join(workDir, name), "utf-8");
    };
    const control = await pick("control_");
    const displacement = await pick("displacement_");
    const manifest = JSON.parse(await pick("manifest_")) as RunManifest;
    return {
      manifest,
      control,
      displacement,
      frames: framesFromDisplacementCsv(displacement),
    };
  } finally {
    await rm(workDir, { recursive: true, force: true });
  }
}
