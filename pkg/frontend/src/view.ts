/** DOM rendering of a seed document: quiver picture plus variable panel.
 *
 * Frozen vertices are drawn as grey boxes and get no click handler;
 * mutable vertices are circles wired to the supplied callback.  All
 * mathematics stays server-side - this file only draws what the
 * document says.
 */

import type { SeedDocument } from "./api.js";
import { forceLayout, LAYOUT_SIZE } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ViewHandlers {
  onVertexClick?: (id: number) => void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function arrowHead(defs: SVGDefsElement): void {
  const marker = svgElement("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgElement("path", { d: "M 0 0 L 10 5 L 0 10 z" }));
  defs.appendChild(marker);
}

export function renderQuiver(
  container: HTMLElement,
  doc: SeedDocument,
  handlers: ViewHandlers = {},
): SVGSVGElement {
  const positions = forceLayout({
    ids: doc.vertices.map((v) => v.id),
    arrows: doc.arrows,
  });
  const svg = svgElement("svg", {
    class: "quiver",
    viewBox: `0 0 ${LAYOUT_SIZE.width} ${LAYOUT_SIZE.height}`,
    width: String(LAYOUT_SIZE.width),
    height: String(LAYOUT_SIZE.height),
  });
  const defs = svgElement("defs", {});
  arrowHead(defs);
  svg.appendChild(defs);

  for (const [source, target, mult] of doc.arrows) {
    const a = positions.get(source);
    const b = positions.get(target);
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const dist = Math.hypot(dx, dy) || 1;
    const trim = 26; // stop at the node boundary
    const line = svgElement("line", {
      class: "arrow",
      x1: String(a.x + (dx / dist) * trim),
      y1: String(a.y + (dy / dist) * trim),
      x2: String(b.x - (dx / dist) * trim),
      y2: String(b.y - (dy / dist) * trim),
      "marker-end": "url(#arrow)",
      "data-source": String(source),
      "data-target": String(target),
    });
    svg.appendChild(line);
    if (mult > 1) {
      const label = svgElement("text", {
        class: "arrow-mult",
        x: String((a.x + b.x) / 2),
        y: String((a.y + b.y) / 2 - 4),
      });
      label.textContent = String(mult);
      svg.appendChild(label);
    }
  }

  for (const vertex of doc.vertices) {
    const p = positions.get(vertex.id)!;
    const group = svgElement("g", {
      class: vertex.frozen ? "vertex frozen" : "vertex mutable",
      "data-id": String(vertex.id),
    });
    if (vertex.frozen) {
      group.appendChild(
        svgElement("rect", {
          x: String(p.x - 22),
          y: String(p.y - 16),
          width: "44",
          height: "32",
          rx: "4",
        }),
      );
    } else {
      group.appendChild(
        svgElement("circle", { cx: String(p.x), cy: String(p.y), r: "20" }),
      );
      if (handlers.onVertexClick) {
        const id = vertex.id;
        group.addEventListener("click", () => handlers.onVertexClick!(id));
      }
    }
    const text = svgElement("text", {
      x: String(p.x),
      y: String(p.y + 4),
      "text-anchor": "middle",
    });
    text.textContent = String(vertex.id);
    group.appendChild(text);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = vertex.label || `x${vertex.id}`;
    group.appendChild(title);
    svg.appendChild(group);
  }

  container.replaceChildren(svg);
  return svg;
}

export function renderCounts(container: HTMLElement, doc: SeedDocument): void {
  // the number of seed vertices equals the dimension l(w) - l(v)
  container.replaceChildren();
  const dim = document.createElement("span");
  dim.className = "dimension";
  dim.textContent = `dimension ${doc.counts.vertices}`;
  const frozen = document.createElement("span");
  frozen.className = "frozen-count";
  frozen.textContent = `${doc.counts.frozen} frozen`;
  const mutable = document.createElement("span");
  mutable.className = "mutable-count";
  mutable.textContent = `${doc.counts.mutable} mutable`;
  const type = document.createElement("span");
  type.className = "mutable-type";
  type.textContent = doc.meta.mutable_type
    ? `cluster type ${doc.meta.mutable_type}`
    : "cluster type -";
  container.append(dim, " · ", frozen, " · ", mutable, " · ", type);
}

export function renderVariables(container: HTMLElement, doc: SeedDocument): void {
  const list = document.createElement("ul");
  list.className = "variables";
  doc.vertices.forEach((vertex, i) => {
    const item = document.createElement("li");
    item.className = vertex.frozen ? "variable frozen" : "variable mutable";
    item.dataset.id = String(vertex.id);
    const name = document.createElement("code");
    name.className = "name";
    name.textContent = vertex.label || `x${vertex.id}`;
    const value = document.createElement("code");
    value.className = "laurent";
    value.textContent = doc.variables[i] ?? "";
    item.append(name, " = ", value);
    list.appendChild(item);
  });
  container.replaceChildren(list);
}

export function renderWarnings(container: HTMLElement, doc: SeedDocument): void {
  container.replaceChildren();
  for (const warning of doc.warnings) {
    const div = document.createElement("div");
    div.className = "warning";
    div.textContent = warning;
    container.appendChild(div);
  }
}

export function renderError(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  if (message !== null) {
    const div = document.createElement("div");
    div.className = "error";
    div.textContent = message;
    container.appendChild(div);
  }
}
