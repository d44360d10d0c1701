/** Application wiring: form, quiver, history, exploration.
 *
 * At most one mutation request is in flight; responses carry a sequence
 * number and stale ones are discarded.  Undo never asks the server
 * anything - it restores the previous response bytes from the history
 * stack, which is what makes the mutate-then-undo round trip byte-equal
 * by construction.
 */

import { ApiError, SeedApi } from "./api.js";
import type { SeedState } from "./api.js";
import { exploreClass } from "./explore.js";
import { History } from "./history.js";
import {
  renderCounts,
  renderError,
  renderQuiver,
  renderVariables,
  renderWarnings,
} from "./view.js";

export interface FormInput {
  type: string;
  v: string;
  w: string;
  word: string;
}

const WORD_PATTERN = /^\s*(s\d+(\s+s\d+)*)?\s*$/;
const TYPE_PATTERN = /^[ADEade]\d+$/;

/** Client-side validation: malformed input never reaches the network. */
export function validateForm(input: FormInput): string | null {
  if (!TYPE_PATTERN.test(input.type.trim())) {
    return "type must look like A5, D4 or E6";
  }
  for (const [field, text] of [
    ["v", input.v],
    ["w", input.w],
    ["word", input.word],
  ] as const) {
    if (!WORD_PATTERN.test(text)) {
      return `${field} must be whitespace-separated s<i> tokens`;
    }
  }
  if (input.w.trim() === "" && input.word.trim() === "") {
    return "w (or an explicit word) is required";
  }
  return null;
}

export interface AppElements {
  form: HTMLFormElement;
  quiver: HTMLElement;
  counts: HTMLElement;
  variables: HTMLElement;
  warnings: HTMLElement;
  error: HTMLElement;
  status: HTMLElement;
  undoButton: HTMLButtonElement;
  exploreButton: HTMLButtonElement;
  exploreResult: HTMLElement;
}

export class App {
  readonly history = new History();
  private sequence = 0;
  private inFlight = false;

  constructor(
    readonly api: SeedApi,
    readonly el: AppElements,
  ) {
    el.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.loadSpec(this.readForm());
    });
    el.undoButton.addEventListener("click", () => this.undo());
    el.exploreButton.addEventListener("click", () => void this.explore());
  }

  private readForm(): FormInput {
    const data = new FormData(this.el.form);
    const get = (name: string) => String(data.get(name) ?? "");
    return { type: get("type"), v: get("v"), w: get("w"), word: get("word") };
  }

  private setStatus(text: string): void {
    this.el.status.textContent = text;
  }

  private render(state: SeedState): void {
    renderQuiver(this.el.quiver, state.doc, {
      onVertexClick: (id) => void this.clickMutate(id),
    });
    renderCounts(this.el.counts, state.doc);
    renderVariables(this.el.variables, state.doc);
    renderWarnings(this.el.warnings, state.doc);
    this.el.undoButton.disabled = !this.history.canUndo();
  }

  async loadSpec(input: FormInput): Promise<void> {
    const problem = validateForm(input);
    if (problem !== null) {
      renderError(this.el.error, problem); // no request sent
      return;
    }
    renderError(this.el.error, null);
    const seq = ++this.sequence;
    this.setStatus("loading…");
    try {
      const state = await this.api.seed({
        type: input.type.trim(),
        v: input.v.trim(),
        w: input.w.trim(),
        word: input.word.trim() || null,
      });
      if (seq !== this.sequence) return; // a newer request superseded this one
      this.history.reset(state);
      this.render(state);
      this.setStatus("");
    } catch (err) {
      if (seq !== this.sequence) return;
      this.setStatus("");
      renderError(
        this.el.error,
        err instanceof ApiError ? err.message : String(err),
      );
    }
  }

  async clickMutate(id: number): Promise<void> {
    const current = this.history.current;
    if (current === null || this.inFlight) return;
    const vertex = current.doc.vertices.find((v) => v.id === id);
    if (!vertex || vertex.frozen) return; // frozen vertices are inert
    const seq = ++this.sequence;
    this.inFlight = true;
    this.setStatus(`mutating at ${id}…`);
    try {
      const next = await this.api.mutate(current, id);
      if (seq !== this.sequence) return;
      const clicks = this.history.clicks();
      this.history.push(next, id);
      this.render(next);
      // double-click at the same vertex lands back on the previous bytes
      const again = clicks[clicks.length - 1] === id;
      this.setStatus(again && this.backToPrevious() ? "involution ✓" : "");
    } catch (err) {
      if (seq !== this.sequence) return;
      this.setStatus("");
      renderError(
        this.el.error,
        err instanceof ApiError ? err.message : String(err),
      );
    } finally {
      if (seq === this.sequence) this.inFlight = false;
    }
  }

  private backToPrevious(): boolean {
    // compare the newest state with the one two steps back, byte for byte
    const top = this.history.peek(0);
    const before = this.history.peek(2);
    return top !== null && before !== null && top.text === before.text;
  }

  undo(): void {
    const state = this.history.undo();
    if (state !== null) {
      this.render(state);
      this.setStatus("");
    }
  }

  async explore(): Promise<void> {
    const current = this.history.current;
    if (current === null || this.inFlight) return;
    this.inFlight = true;
    this.setStatus("exploring the mutation class…");
    try {
      const result = await exploreClass(this.api, current);
      const summary = document.createElement("div");
      summary.className = "exploration";
      summary.textContent = result.complete
        ? `${result.seeds} seeds, ${result.variables.length} distinct variables`
        : `stopped at ${result.seeds} seeds (class may be infinite)`;
      const list = document.createElement("ol");
      list.className = "all-variables";
      for (const expr of result.variables) {
        const item = document.createElement("li");
        item.textContent = expr;
        list.appendChild(item);
      }
      this.el.exploreResult.replaceChildren(summary, list);
      this.setStatus("");
    } catch (err) {
      this.setStatus("");
      renderError(
        this.el.error,
        err instanceof ApiError ? err.message : String(err),
      );
    } finally {
      this.inFlight = false;
    }
  }
}

/** Mount the app onto the ids used by index.html. */
export function mount(baseUrl: string): App {
  const byId = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
  };
  return new App(new SeedApi(baseUrl), {
    form: byId<HTMLFormElement>("spec-form"),
    quiver: byId("quiver"),
    counts: byId("counts"),
    variables: byId("variables"),
    warnings: byId("warnings"),
    error: byId("error"),
    status: byId("status"),
    undoButton: byId<HTMLButtonElement>("undo"),
    exploreButton: byId<HTMLButtonElement>("explore"),
    exploreResult: byId("explore-result"),
  });
}
