/** Undo history for seed exploration.
 *
 * The stack stores the exact response text of every state, so undo is a
 * pop returning the previous bytes untouched, and the click log can be
 * replayed against the API to re-derive the current state.
 */

import type { SeedState } from "./api.js";

export interface HistoryEntry {
  state: SeedState;
  /** Vertex clicked to reach this state; null for the initial load. */
  vertex: number | null;
}

export class History {
  private stack: HistoryEntry[] = [];

  /** Start over from a freshly loaded seed. */
  reset(state: SeedState): void {
    this.stack = [{ state, vertex: null }];
  }

  push(state: SeedState, vertex: number): void {
    if (this.stack.length === 0) {
      throw new Error("push before reset");
    }
    this.stack.push({ state, vertex });
  }

  get depth(): number {
    return this.stack.length;
  }

  get current(): SeedState | null {
    const top = this.stack[this.stack.length - 1];
    return top ? top.state : null;
  }

  canUndo(): boolean {
    return this.stack.length > 1;
  }

  /** The state `offset` entries below the top (0 = current). */
  peek(offset: number): SeedState | null {
    const entry = this.stack[this.stack.length - 1 - offset];
    return entry ? entry.state : null;
  }

  /** Drop the newest state and return the one before it. */
  undo(): SeedState | null {
    if (!this.canUndo()) return null;
    this.stack.pop();
    return this.current;
  }

  /** The vertices clicked since the initial load, oldest first. */
  clicks(): number[] {
    return this.stack
      .map((e) => e.vertex)
      .filter((v): v is number => v !== null);
  }
}
