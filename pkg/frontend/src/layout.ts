/** Deterministic force-directed layout for the seed quiver.
 *
 * Positions are a pure function of the vertex ids and arrows: the
 * initial placement comes from a PRNG seeded by the vertex ids, and the
 * relaxation loop runs a fixed number of steps, so the same document
 * always renders the same picture.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutInput {
  ids: number[];
  arrows: [number, number, number][];
}

/** Small deterministic PRNG (mulberry32). */
function prng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const WIDTH = 640;
const HEIGHT = 420;
const ITERATIONS = 200;

export function forceLayout(input: LayoutInput): Map<number, Point> {
  const ids = [...input.ids];
  const seedValue = ids.reduce((acc, id) => (acc * 31 + id) >>> 0, 17);
  const rand = prng(seedValue);

  const pos = new Map<number, Point>();
  for (const id of ids) {
    pos.set(id, {
      x: WIDTH / 2 + (rand() - 0.5) * WIDTH * 0.6,
      y: HEIGHT / 2 + (rand() - 0.5) * HEIGHT * 0.6,
    });
  }

  const edges = input.arrows
    .filter(([s, t]) => pos.has(s) && pos.has(t))
    .map(([s, t]) => [s, t] as const);

  for (let iter = 0; iter < ITERATIONS; iter++) {
    const force = new Map<number, Point>();
    for (const id of ids) force.set(id, { x: 0, y: 0 });

    // repulsion between every pair
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = pos.get(ids[i]!)!;
        const b = pos.get(ids[j]!)!;
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const dist = Math.hypot(dx, dy) || 1;
        const push = 9000 / (dist * dist);
        const fx = (dx / dist) * push;
        const fy = (dy / dist) * push;
        const fa = force.get(ids[i]!)!;
        const fb = force.get(ids[j]!)!;
        fa.x -= fx;
        fa.y -= fy;
        fb.x += fx;
        fb.y += fy;
      }
    }

    // spring attraction along arrows
    for (const [s, t] of edges) {
      const a = pos.get(s)!;
      const b = pos.get(t)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.hypot(dx, dy) || 1;
      const pull = (dist - 110) * 0.02;
      const fx = (dx / dist) * pull;
      const fy = (dy / dist) * pull;
      const fa = force.get(s)!;
      const fb = force.get(t)!;
      fa.x += fx;
      fa.y += fy;
      fb.x -= fx;
      fb.y -= fy;
    }

    // gentle centering plus damped step
    const damping = 0.82;
    for (const id of ids) {
      const p = pos.get(id)!;
      const f = force.get(id)!;
      f.x += (WIDTH / 2 - p.x) * 0.005;
      f.y += (HEIGHT / 2 - p.y) * 0.005;
      p.x += f.x * damping;
      p.y += f.y * damping;
      p.x = Math.min(WIDTH - 30, Math.max(30, p.x));
      p.y = Math.min(HEIGHT - 30, Math.max(30, p.y));
    }
  }

  // round so serialized layouts are stable across float quirks
  for (const p of pos.values()) {
    p.x = Math.round(p.x * 100) / 100;
    p.y = Math.round(p.y * 100) / 100;
  }
  return pos;
}

export const LAYOUT_SIZE = { width: WIDTH, height: HEIGHT };
