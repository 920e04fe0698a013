/** DOM builders: network SVG, data tables, sparklines, panels, banners. */
import { forceLayout } from "./layout.js";
import { companyColors, radiusScale, thicknessScale } from "./scale.js";
import type { NetworkResponse, PathResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) node.append(child);
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function banner(kind: "error" | "notice", message: string): HTMLElement {
  return el("div", { class: `banner banner-${kind}` }, [message]);
}

export function emptyState(message: string): HTMLElement {
  return el("div", { class: "empty-state" }, [message]);
}

function fmt(value: string | number | boolean | null): string {
  if (value === null) return "";
  if (typeof value === "boolean") return value ? "T" : "";
  if (typeof value === "number" && !Number.isInteger(value)) return value.toFixed(2);
  return String(value);
}

export interface TableOptions {
  onRowClick?: (rowIndex: number) => void;
  rowTitle?: string;
}

export function renderTable(
  columns: string[],
  rows: (string | number | boolean | null)[][],
  options: TableOptions = {},
): HTMLTableElement {
  const table = el("table", { class: "data-table" });
  const head = el("tr");
  for (const column of columns) head.append(el("th", {}, [column]));
  table.append(el("thead", {}, [head]));
  const body = el("tbody");
  rows.forEach((row, index) => {
    const tr = el("tr", options.onRowClick ? { class: "clickable", title: options.rowTitle ?? "" } : {});
    for (const cell of row) {
      const td = el("td", {}, [fmt(cell)]);
      if (typeof cell === "number") td.classList.add("num");
      tr.append(td);
    }
    if (options.onRowClick) tr.addEventListener("click", () => options.onRowClick!(index));
    body.append(tr);
  });
  table.append(body);
  return table;
}

export function sparkline(trend: [number, number][], width = 110, height = 26): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "sparkline");
  if (trend.length === 0) return svg;
  const values = trend.map(([, v]) => v);
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  const step = trend.length > 1 ? (width - 8) / (trend.length - 1) : 0;
  const points = trend
    .map(([, v], i) => `${4 + i * step},${height - 4 - ((v - lo) / span) * (height - 8)}`)
    .join(" ");
  const line = document.createElementNS(SVG_NS, "polyline");
  line.setAttribute("points", points);
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", "#4269d0");
  line.setAttribute("stroke-width", "1.5");
  svg.append(line);
  const title = document.createElementNS(SVG_NS, "title");
  title.textContent = trend.map(([year, v]) => `${year}: ${v.toFixed(2)}`).join("  ");
  svg.append(title);
  return svg;
}

export interface NetworkCallbacks {
  onDirector: (id: number) => void;
}

export function renderNetwork(
  container: HTMLElement,
  data: NetworkResponse,
  colorByCompany: boolean,
  callbacks: NetworkCallbacks,
): void {
  clear(container);
  if (data.truncated) {
    container.append(
      banner(
        "notice",
        `Showing the ${data.nodes.length} strongest of ${data.node_count} directors — refine your filters to see everything.`,
      ),
    );
  }
  if (data.nodes.length === 0) {
    container.append(emptyState("No connections match the current filters."));
    return;
  }

  const width = Math.max(640, container.clientWidth || 900);
  const height = 560;
  const positions = forceLayout(data.nodes, data.edges, width, height);
  const radius = radiusScale(data.nodes.map((n) => n.total_overlap));
  const thickness = thicknessScale(data.edges.map((e) => e.avg_overlap));
  const colors = colorByCompany
    ? companyColors(data.edges.flatMap((e) => e.companies))
    : new Map<number, string>();

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "network-canvas");

  for (const edge of data.edges) {
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke-width", thickness(edge.avg_overlap).toFixed(2));
    line.setAttribute(
      "stroke",
      colorByCompany ? (colors.get(edge.companies[0]) ?? "#999") : "#b0b4bb",
    );
    line.setAttribute("stroke-opacity", "0.75");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `avg overlap ${edge.avg_overlap.toFixed(2)} yr over ${edge.companies.length} company(ies)`;
    line.append(title);
    svg.append(line);
  }

  for (const node of data.nodes) {
    const pos = positions.get(node.id);
    if (!pos) continue;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", pos.x.toFixed(1));
    circle.setAttribute("cy", pos.y.toFixed(1));
    circle.setAttribute("r", radius(node.total_overlap).toFixed(2));
    circle.setAttribute("class", "network-node");
    circle.setAttribute("data-node-id", String(node.id));
    circle.setAttribute("data-total-overlap", String(node.total_overlap));
    circle.addEventListener("click", () => callbacks.onDirector(node.id));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.name} — total overlap ${node.total_overlap.toFixed(2)} yr`;
    circle.append(title);
    svg.append(circle);
  }
  container.append(svg);
}

export function renderPathResult(container: HTMLElement, data: PathResponse): void {
  clear(container);
  if (!data.found) {
    container.append(emptyState("No connection found between these directors."));
    return;
  }
  if (data.hops.length === 0) {
    container.append(emptyState("Same director on both ends — zero hops."));
    return;
  }
  const list = el("ol", { class: "path-chain" });
  list.append(el("li", { class: "path-endpoint" }, [`${data.hops[0].from_name} (${data.hops[0].from})`]));
  for (const hop of data.hops) {
    list.append(
      el("li", {}, [
        el("span", { class: "path-via" }, [`via ${hop.company_name}, overlap ${hop.overlap.toFixed(2)} yr`]),
        el("span", { class: "path-endpoint" }, [` → ${hop.to_name} (${hop.to})`]),
      ]),
    );
  }
  container.append(el("p", {}, [`${data.hops.length} hop(s)`]), list);
}
