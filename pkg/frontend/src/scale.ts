/**
 * Visual encodings. Both scales are strictly monotone in their input, so
 * ordering nodes by rendered radius always equals ordering by total
 * overlap (and lines by average overlap).
 */

export interface Scale {
  (value: number): number;
}

const MIN_RADIUS = 4;
const MAX_RADIUS = 26;
const MIN_WIDTH = 0.75;
const MAX_WIDTH = 7;

/** Square-root scale from the data's own range onto pixel radii. */
export function radiusScale(totals: number[]): Scale {
  if (totals.length === 0) return () => MIN_RADIUS;
  const lo = Math.min(...totals);
  const hi = Math.max(...totals);
  if (hi === lo) return () => (MIN_RADIUS + MAX_RADIUS) / 2;
  const span = Math.sqrt(hi) - Math.sqrt(lo);
  return (value) => MIN_RADIUS + ((Math.sqrt(value) - Math.sqrt(lo)) / span) * (MAX_RADIUS - MIN_RADIUS);
}

export function thicknessScale(avgs: number[]): Scale {
  if (avgs.length === 0) return () => MIN_WIDTH;
  const lo = Math.min(...avgs);
  const hi = Math.max(...avgs);
  if (hi === lo) return () => (MIN_WIDTH + MAX_WIDTH) / 2;
  return (value) => MIN_WIDTH + ((value - lo) / (hi - lo)) * (MAX_WIDTH - MIN_WIDTH);
}

// Qualitative palette; assignment is keyed by ascending company id so the
// same company keeps its color across renders and filters.
const PALETTE = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951", "#ff8ab7",
  "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0", "#e05759", "#76b7b2",
];

export function companyColors(companyIds: Iterable<number>): Map<number, string> {
  const out = new Map<number, string>();
  const sorted = [...new Set(companyIds)].sort((a, b) => a - b);
  sorted.forEach((cid, i) => out.set(cid, PALETTE[i % PALETTE.length]));
  return out;
}
