import { describe, expect, it } from "vitest";

import { companyColors, radiusScale, thicknessScale } from "../src/scale.js";
import type { NetworkNode } from "../src/types.js";

// 20-node fixture with deliberately unordered, partly duplicated weights.
const FIXTURE: NetworkNode[] = [
  45.2, 12.6, 17.3, 3.1, 88.4, 29.9, 15.3, 64.0, 7.7, 0.5,
  51.2, 33.3, 21.0, 9.9, 40.1, 5.4, 76.5, 18.8, 26.2, 11.1,
].map((total, i) => ({ id: 100 + i, name: `Director ${i}`, total_overlap: total }));

describe("visual encodings", () => {
  it("node radii order equals total_overlap order on the 20-node fixture", () => {
    const scale = radiusScale(FIXTURE.map((n) => n.total_overlap));
    const byRadius = [...FIXTURE].sort(
      (a, b) => scale(b.total_overlap) - scale(a.total_overlap) || a.id - b.id,
    );
    const byOverlap = [...FIXTURE].sort((a, b) => b.total_overlap - a.total_overlap || a.id - b.id);
    expect(byRadius.map((n) => n.id)).toEqual(byOverlap.map((n) => n.id));
  });

  it("radius is strictly monotone", () => {
    const values = FIXTURE.map((n) => n.total_overlap);
    const scale = radiusScale(values);
    const sorted = [...values].sort((a, b) => a - b);
    for (let i = 1; i < sorted.length; i++) {
      if (sorted[i] > sorted[i - 1]) expect(scale(sorted[i])).toBeGreaterThan(scale(sorted[i - 1]));
    }
  });

  it("edge thickness is monotone in average overlap", () => {
    const avgs = [0.5, 3.2, 3.2, 8.8, 17.3];
    const scale = thicknessScale(avgs);
    expect(scale(17.3)).toBeGreaterThan(scale(8.8));
    expect(scale(8.8)).toBeGreaterThan(scale(0.5));
    expect(scale(3.2)).toBe(scale(3.2));
  });

  it("degenerate inputs stay finite", () => {
    expect(radiusScale([])(5)).toBeGreaterThan(0);
    expect(radiusScale([7, 7, 7])(7)).toBeGreaterThan(0);
    expect(thicknessScale([2])(2)).toBeGreaterThan(0);
  });

  it("company colors are stable regardless of input order", () => {
    const forward = companyColors([5, 9, 1, 12]);
    const backward = companyColors([12, 1, 9, 5]);
    expect(forward).toEqual(backward);
    expect(new Set(forward.values()).size).toBe(4);
  });
});
