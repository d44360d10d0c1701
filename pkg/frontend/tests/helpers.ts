import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { SeedApi } from "../src/api.js";
import type { SeedRequest } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function serviceUrl(): string {
  const port = readFileSync(join(here, "setup", "service-port.txt"), "utf-8");
  return `http://127.0.0.1:${port.trim()}`;
}

export function api(): SeedApi {
  return new SeedApi(serviceUrl());
}

/** The eight-vertex A_5 stratum used throughout the tests. */
export const BIG_REQUEST: SeedRequest = {
  type: "A5",
  v: "s1 s2 s1 s4 s5 s4",
  w: "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
  word: "s1 s3 s5 s2 s4 s1 s3 s5 s2 s4 s1 s3 s5 s4",
};
