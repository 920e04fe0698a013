/**
 * Small deterministic force layout: seed-stable initial positions and a
 * fixed iteration budget, so the same graph renders the same way every
 * time and screenshots stay comparable.
 */
import type { NetworkEdge, NetworkNode } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) | 0;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const ITERATIONS = 120;

export function forceLayout(
  nodes: NetworkNode[],
  edges: NetworkEdge[],
  width: number,
  height: number,
  seed = 1337,
): Map<number, Point> {
  const positions = new Map<number, Point>();
  if (nodes.length === 0) return positions;

  // initial ring placement in node-id order, jittered by the seeded PRNG
  const rand = mulberry32(seed);
  const ordered = [...nodes].sort((a, b) => a.id - b.id);
  const cx = width / 2;
  const cy = height / 2;
  const ring = Math.min(width, height) * 0.35;
  ordered.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / ordered.length;
    positions.set(node.id, {
      x: cx + ring * Math.cos(angle) + (rand() - 0.5) * 20,
      y: cy + ring * Math.sin(angle) + (rand() - 0.5) * 20,
    });
  });

  const ids = ordered.map((n) => n.id);
  const springLength = Math.max(40, ring / Math.sqrt(nodes.length));
  const repulsion = springLength * springLength;

  for (let iter = 0; iter < ITERATIONS; iter++) {
    const cool = 1 - iter / ITERATIONS;
    const shift = new Map<number, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i])!;
        const b = positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        const dist2 = Math.max(dx * dx + dy * dy, 1);
        const force = repulsion / dist2;
        const dist = Math.sqrt(dist2);
        dx = (dx / dist) * force;
        dy = (dy / dist) * force;
        const sa = shift.get(ids[i])!;
        const sb = shift.get(ids[j])!;
        sa.x += dx;
        sa.y += dy;
        sb.x -= dx;
        sb.y -= dy;
      }
    }

    for (const edge of edges) {
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (dist - springLength) / dist / 8;
      const sa = shift.get(edge.source)!;
      const sb = shift.get(edge.target)!;
      sa.x += dx * pull;
      sa.y += dy * pull;
      sb.x -= dx * pull;
      sb.y -= dy * pull;
    }

    const cap = 14 * cool + 1;
    for (const id of ids) {
      const pos = positions.get(id)!;
      const delta = shift.get(id)!;
      const mag = Math.sqrt(delta.x * delta.x + delta.y * delta.y);
      const step = Math.min(mag, cap);
      if (mag > 0) {
        pos.x += (delta.x / mag) * step;
        pos.y += (delta.y / mag) * step;
      }
      pos.x = Math.min(width - 20, Math.max(20, pos.x));
      pos.y = Math.min(height - 20, Math.max(20, pos.y));
    }
  }
  return positions;
}
