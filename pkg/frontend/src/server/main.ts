/**
 * Local service endpoint for the UI. Serves the static client and exposes
 * POST /api/simulate, which proxies the core CLI and returns the boundary
 * document {manifest, control, displacement, frames}. No server-side
 * persistence: every request is a fresh scratch-directory run.
 */

import express, { type Express } from "express";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { CoreError, simulateViaCli, type BridgeOptions } from "./bridge.js";
import type { SimulateRequest } from "../core/boundary.js";

export function createApp(options: BridgeOptions = {}): Express {
  const app = express();
  app.use(express.json({ limit: "2mb" }));

  const here = dirname(fileURLToPath(import.meta.url));
  app.use(express.static(join(here, "..", "..", "public")));
  app.use("/dist", express.static(join(here, "..")));

  app.post("/api/simulate", async (req, res) => {
    const request = req.body as SimulateRequest;
    if (!request || typeof request !== "object" || !request.score) {
      res.status(400).json({ error: "body must be {score, config?, dt_ms?}" });
      return;
    }
    try {
      const bundle = await simulateViaCli(request, options);
      res.json(bundle);
    } catch (err) {
      if (err instanceof CoreError) {
        // core exit 1 = input problem -> client error; anything else -> 502
        res
          .status(err.exitCode === 1 ? 422 : 502)
          .json({ error: err.message, exitCode: err.exitCode });
      } else {
        res.status(500).json({ error: String(err) });
      }
    }
  });

  return app;
}

const invokedDirectly =
  process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (invokedDirectly) {
  const port = Number(process.env.PORT ?? 8787);
  createApp().listen(port, () => {
    console.log(`articulodyn ui on http://127.0.0.1:${port}`);
  });
}
