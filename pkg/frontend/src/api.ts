/** Typed client for the seed service's JSON contract.
 *
 * The service is the single source of truth: every document this client
 * holds is the verbatim response text, so byte-level comparisons (undo
 * restores the exact document) are literal string comparisons on what
 * the server sent.
 */

export interface SeedMeta {
  diagram: string;
  v: string;
  w: string;
  word: string;
  seed_rng: number | null;
  mutable_type: string | null;
}

export interface SeedCounts {
  vertices: number;
  frozen: number;
  mutable: number;
}

export interface SeedVertex {
  id: number;
  frozen: boolean;
  label: string;
  dim: number[];
}

export interface SeedDocument {
  meta: SeedMeta;
  counts: SeedCounts;
  warnings: string[];
  vertices: SeedVertex[];
  /** [source id, target id, multiplicity] per quiver arrow. */
  arrows: [number, number, number][];
  /** Laurent expressions in the initial variables, one per vertex. */
  variables: string[];
  lambda: number[][];
}

export interface SeedRequest {
  type: string;
  v?: string;
  w: string;
  word?: string | null;
  seed_rng?: number | null;
}

/** A document plus the exact bytes it arrived as. */
export interface SeedState {
  doc: SeedDocument;
  text: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function post(baseUrl: string, path: string, body: unknown): Promise<string> {
  const resp = await fetch(baseUrl + path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const text = await resp.text();
  if (!resp.ok) {
    let message = text;
    try {
      const parsed = JSON.parse(text) as { error?: string };
      if (parsed.error) message = parsed.error;
    } catch {
      /* non-JSON error body: keep the raw text */
    }
    throw new ApiError(resp.status, message);
  }
  return text;
}

export class SeedApi {
  constructor(readonly baseUrl: string) {}

  async health(): Promise<boolean> {
    try {
      const resp = await fetch(this.baseUrl + "/api/health");
      if (!resp.ok) return false;
      const body = (await resp.json()) as { status?: string };
      return body.status === "ok";
    } catch {
      return false;
    }
  }

  async seed(request: SeedRequest): Promise<SeedState> {
    const text = await post(this.baseUrl, "/api/seed", request);
    return { doc: JSON.parse(text) as SeedDocument, text };
  }

  /** Mutate at one vertex.  The current document travels with the request. */
  async mutate(state: SeedState, vertex: number): Promise<SeedState> {
    const text = await post(this.baseUrl, "/api/mutate", {
      seed: state.doc,
      vertex,
    });
    return { doc: JSON.parse(text) as SeedDocument, text };
  }
}

export function mutableIds(doc: SeedDocument): number[] {
  return doc.vertices.filter((v) => !v.frozen).map((v) => v.id);
}

export function vertexIndex(doc: SeedDocument, id: number): number {
  return doc.vertices.findIndex((v) => v.id === id);
}
