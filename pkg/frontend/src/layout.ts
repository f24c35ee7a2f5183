import type { NetworkEdge, NetworkNode } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** Small fast PRNG (mulberry32); good enough to scatter node seeds. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** FNV-1a over the string, for turning a network hash into a layout seed. */
export function hashSeed(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed: number;
}

/**
 * Force-directed layout: pairwise repulsion, spring attraction along
 * edges (stiffer for higher alpha), mild centering, linear cooling.
 * Deterministic in (nodes, edges, seed), so a planner re-running
 * what-if scenarios on the same network sees the same picture.
 */
export function forceLayout(
  nodes: NetworkNode[],
  edges: NetworkEdge[],
  options: LayoutOptions,
): Map<string, Point> {
  const { width, height, seed } = options;
  const iterations = options.iterations ?? 250;
  const ids = nodes.map((n) => n.id);
  const rand = mulberry32(seed);
  const px = new Float64Array(ids.length);
  const py = new Float64Array(ids.length);
  const index = new Map(ids.map((id, i) => [id, i]));
  for (let i = 0; i < ids.length; i++) {
    px[i] = (rand() - 0.5) * width * 0.8;
    py[i] = (rand() - 0.5) * height * 0.8;
  }
  const springs: Array<[number, number, number]> = [];
  for (const edge of edges) {
    const a = index.get(edge.src);
    const b = index.get(edge.dst);
    if (a === undefined || b === undefined || a === b) continue;
    springs.push([Math.min(a, b), Math.max(a, b), edge.alpha_pct / 100]);
  }

  const area = width * height;
  const k = Math.sqrt(area / Math.max(1, ids.length));
  const dx = new Float64Array(ids.length);
  const dy = new Float64Array(ids.length);
  for (let step = 0; step < iterations; step++) {
    dx.fill(0);
    dy.fill(0);
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        let ax = px[i]! - px[j]!;
        let ay = py[i]! - py[j]!;
        let dist = Math.hypot(ax, ay);
        if (dist < 1e-6) {
          // coincident points still need to separate somewhere
          ax = rand() - 0.5;
          ay = rand() - 0.5;
          dist = Math.hypot(ax, ay);
        }
        const repulse = (k * k) / dist;
        dx[i]! += (ax / dist) * repulse;
        dy[i]! += (ay / dist) * repulse;
        dx[j]! -= (ax / dist) * repulse;
        dy[j]! -= (ay / dist) * repulse;
      }
    }
    for (const [a, b, alpha] of springs) {
      const ax = px[a]! - px[b]!;
      const ay = py[a]! - py[b]!;
      const dist = Math.max(1e-6, Math.hypot(ax, ay));
      const attract = ((dist * dist) / k) * (0.5 + alpha);
      dx[a]! -= (ax / dist) * attract;
      dy[a]! -= (ay / dist) * attract;
      dx[b]! += (ax / dist) * attract;
      dy[b]! += (ay / dist) * attract;
    }
    const temperature = (1 - step / iterations) * k * 0.5 + 0.5;
    for (let i = 0; i < ids.length; i++) {
      dx[i]! -= px[i]! * 0.02;
      dy[i]! -= py[i]! * 0.02;
      const size = Math.max(1e-6, Math.hypot(dx[i]!, dy[i]!));
      const capped = Math.min(size, temperature);
      px[i]! += (dx[i]! / size) * capped;
      py[i]! += (dy[i]! / size) * capped;
    }
  }

  // normalize into the viewport with a margin
  const margin = 30;
  const xs = Array.from(px);
  const ys = Array.from(py);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(1e-6, maxX - minX);
  const spanY = Math.max(1e-6, maxY - minY);
  const out = new Map<string, Point>();
  for (let i = 0; i < ids.length; i++) {
    out.set(ids[i]!, {
      x: margin + ((px[i]! - minX) / spanX) * (width - 2 * margin),
      y: margin + ((py[i]! - minY) / spanY) * (height - 2 * margin),
    });
  }
  return out;
}
