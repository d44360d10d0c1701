/** Exhaustive exploration of the mutation class through the API.
 *
 * Breadth-first search over seeds: mutate the current document at every
 * mutable vertex, deduplicate seeds by their unordered set of mutable
 * variable expressions, and collect every distinct mutable variable
 * encountered.  Finite cluster types terminate on their own; the cap
 * guards against runaway exploration of infinite types.
 */

import type { SeedApi, SeedState } from "./api.js";
import { mutableIds } from "./api.js";

export interface Exploration {
  seeds: number;
  variables: string[];
  complete: boolean;
}

function clusterKey(state: SeedState): string {
  const mutable = state.doc.vertices
    .map((vertex, i) => ({ vertex, expr: state.doc.variables[i] ?? "" }))
    .filter((e) => !e.vertex.frozen)
    .map((e) => e.expr)
    .sort();
  return JSON.stringify(mutable);
}

export async function exploreClass(
  api: SeedApi,
  start: SeedState,
  cap = 2000,
): Promise<Exploration> {
  const ids = mutableIds(start.doc);
  const seen = new Set<string>([clusterKey(start)]);
  const variables = new Set<string>();
  for (const expr of JSON.parse(clusterKey(start)) as string[]) {
    variables.add(expr);
  }
  const queue: SeedState[] = [start];
  let complete = true;

  while (queue.length > 0) {
    if (seen.size > cap) {
      complete = false;
      break;
    }
    const state = queue.shift()!;
    for (const id of ids) {
      const next = await api.mutate(state, id);
      const key = clusterKey(next);
      for (const expr of JSON.parse(key) as string[]) variables.add(expr);
      if (!seen.has(key)) {
        seen.add(key);
        queue.push(next);
      }
    }
  }

  return {
    seeds: seen.size,
    variables: [...variables].sort(),
    complete,
  };
}
