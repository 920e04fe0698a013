import { describe, expect, it } from "vitest";

import { forceLayout } from "../src/layout.js";
import type { NetworkEdge, NetworkNode } from "../src/types.js";

function star(n: number): { nodes: NetworkNode[]; edges: NetworkEdge[] } {
  const nodes = Array.from({ length: n }, (_, i) => ({
    id: i + 1,
    name: `D${i + 1}`,
    total_overlap: 5,
  }));
  const edges = nodes.slice(1).map((node) => ({
    source: 1,
    target: node.id,
    avg_overlap: 2,
    companies: [10],
  }));
  return { nodes, edges };
}

describe("force layout", () => {
  it("is deterministic for a fixed seed and iteration budget", () => {
    const { nodes, edges } = star(9);
    const a = forceLayout(nodes, edges, 800, 600);
    const b = forceLayout(nodes, edges, 800, 600);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it("changes with the seed", () => {
    const { nodes, edges } = star(9);
    const a = forceLayout(nodes, edges, 800, 600, 1);
    const b = forceLayout(nodes, edges, 800, 600, 2);
    expect([...a.entries()]).not.toEqual([...b.entries()]);
  });

  it("keeps every node inside the canvas", () => {
    const { nodes, edges } = star(30);
    for (const { x, y } of forceLayout(nodes, edges, 640, 480).values()) {
      expect(x).toBeGreaterThanOrEqual(20);
      expect(x).toBeLessThanOrEqual(620);
      expect(y).toBeGreaterThanOrEqual(20);
      expect(y).toBeLessThanOrEqual(460);
    }
  });

  it("handles the empty graph", () => {
    expect(forceLayout([], [], 800, 600).size).toBe(0);
  });
});
