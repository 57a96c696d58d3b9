/**
 * End-to-end editor flow against a live inference service.
 *
 * Ensures a trained checkpoint exists (training one via the Python CLI on
 * first run, ~2 minutes), starts the service, then drives the EditSession
 * state machine through the interactive loop: tokenize, select the
 * substituent span, target <high>, request candidates, accept the best one.
 * Asserts the accepted candidate raises the property and that no request
 * was ever rejected with 422.
 */

import { spawn, spawnSync } from "node:child_process";
import { existsSync, mkdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { createClient } from "../src/api.js";
import { EditSession, replayHistory } from "../src/session.js";

const here = dirname(fileURLToPath(import.meta.url));
const cacheDir = join(here, "..", "..", ".cache");
const checkpoint = process.env.MOLEDIT_CHECKPOINT ?? join(cacheDir, "e2e-model.npz");
const corpus = join(cacheDir, "e2e-corpus.tsv");
const addr = "127.0.0.1:8931";
const base = `http://${addr}`;

function run(args: string[]): void {
  const result = spawnSync("moledit", args, { stdio: "inherit" });
  if (result.status !== 0) throw new Error(`moledit ${args[0]} failed`);
}

function ensureCheckpoint(): void {
  if (existsSync(checkpoint)) return;
  mkdirSync(cacheDir, { recursive: true });
  console.log("no cached checkpoint — training one (about 2 minutes) ...");
  run(["synth-corpus", "--seed", "7", "--size", "10000", "--out", corpus]);
  run(["train-model", "--seed", "1", "--corpus", corpus, "--out", checkpoint,
       "--steps", "2000", "--batch-size", "32", "--warmup", "200", "--quiet"]);
}

async function waitForHealth(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${base}/api/v1/health`);
      if (r.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not become healthy");
}

function assert(condition: unknown, message: string): asserts condition {
  if (!condition) throw new Error(`E2E FAIL: ${message}`);
}

async function main(): Promise<void> {
  ensureCheckpoint();
  const server = spawn(
    "moledit", ["serve", "--checkpoint", checkpoint, "--addr", addr],
    { stdio: "ignore" },
  );
  try {
    await waitForHealth();
    const client = createClient(base);

    const health = await client.health();
    assert(health.modelStep && health.modelStep >= 2000, "model is trained");
    const vocab = await client.vocab();
    assert(vocab.size >= 400, "vocabulary served");

    // The interactive loop on a substituent-bearing molecule.
    const session = await EditSession.start(client, "3-ethyl-4-fluoropentane");
    assert(session.tokens.length > 4, "name tokenized into chips");

    // Select the "ethyl" fragment: two adjacent chips merge into one span.
    const surfaces = session.tokens.map((t) => t.surface);
    const start = surfaces.findIndex((s, i) => i >= 2 && s !== "-");
    session.selectSpan([start, start + 1]);
    assert(session.spans().length === 1, "contiguous selection is one span");
    session.setBucket("high");

    await session.requestCandidates({ mode: "sample", temperature: 1.0, k: 8, seed: 7 });
    assert(session.error === null, `no request errors (got: ${session.error})`);
    assert(session.candidates.length > 0, "candidates returned");

    const best = session.candidates.findIndex((c) => c.validity === "Valid");
    assert(best >= 0, "at least one Valid candidate");
    const chosen = session.candidates[best]!;
    assert(chosen.propertyAfter !== null, "Valid candidate has a property value");
    assert(
      chosen.propertyAfter! > chosen.propertyBefore,
      `property increased (${chosen.propertyBefore} -> ${chosen.propertyAfter})`,
    );

    await session.acceptCandidate(best);
    assert(session.history.length === 1, "history recorded the edit");
    assert(
      replayHistory(session.initialName, session.history) === session.workingName,
      "history replays to the working name",
    );

    // Iterate: new selection on the accepted molecule, second request.
    session.selectSpan([session.tokens.length - 1]);
    await session.requestCandidates({ mode: "sample", temperature: 1.0, k: 4, seed: 3 });
    assert(session.error === null, "second request also clean (no 422 ever fired)");

    console.log(
      `[SECONDARY] end-to-end editor flow: PASS ` +
        `(${session.history[0]!.sourceTokens.join("")} -> ${session.workingName}, ` +
        `property ${chosen.propertyBefore} -> ${chosen.propertyAfter})`,
    );
  } finally {
    server.kill();
  }
}

main().catch((err) => {
  console.error(String(err));
  console.log("[SECONDARY] end-to-end editor flow: FAIL");
  process.exit(1);
});
