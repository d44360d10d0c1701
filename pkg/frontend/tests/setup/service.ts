/** Global test setup: run the real seed service for the duration of the
 * test run.  The frontend talks to the primary component only through
 * its HTTP contract, so the tests do too - no mocks.
 *
 * The service port is written to tests/setup/service-port.txt for the
 * test files to read (the global setup runs in a separate process).
 */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdirSync, rmSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));
export const PORT_FILE = join(here, "service-port.txt");

let child: ChildProcess | null = null;

async function waitForHealth(port: number): Promise<void> {
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`http://127.0.0.1:${port}/api/health`);
      if (resp.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("seed service did not come up on port " + port);
}

export async function setup(): Promise<void> {
  // an ephemeral port out of the common ranges; retry once on collision
  for (const port of [8917, 8923, 8931]) {
    const proc = spawn(
      "python3",
      ["-m", "richardson.cli", "serve", "--port", String(port)],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    try {
      await waitForHealth(port);
      child = proc;
      mkdirSync(here, { recursive: true });
      writeFileSync(PORT_FILE, String(port));
      return;
    } catch (err) {
      proc.kill();
      if (port === 8931) throw err;
    }
  }
}

export async function teardown(): Promise<void> {
  if (child) {
    child.kill();
    child = null;
  }
  rmSync(PORT_FILE, { force: true });
}
