import { describe, expect, it } from "vitest";

import { buildRequests } from "../src/api.js";
import { decodeViewState, encodeViewState, initialViewState, type ViewState } from "../src/state.js";

const SAMPLE_STATES: ViewState[] = [
  initialViewState(),
  {
    ...initialViewState(),
    filters: {
      sector: ["Materials"],
      country: ["DE"],
      league: ["Large"],
      gender: [],
      family: null,
      company: [],
    },
  },
  { ...initialViewState(), tab: "influence", filters: { ...initialViewState().filters, country: ["KR"] } },
  { ...initialViewState(), tab: "tenure", selectedCompany: 7001 },
  { ...initialViewState(), tab: "gender", filters: { ...initialViewState().filters, family: false } },
  { ...initialViewState(), tab: "path", pathFrom: 100, pathTo: 103 },
  { ...initialViewState(), tab: "companies", selectedCompany: 9001 },
  { ...initialViewState(), selectedDirector: 100 },
];

describe("buildRequests", () => {
  it("URL round-trip restores identical API requests", () => {
    for (const state of SAMPLE_STATES) {
      const restored = decodeViewState(encodeViewState(state));
      expect(buildRequests(restored)).toEqual(buildRequests(state));
    }
  });

  it("network tab asks for the filtered network", () => {
    const state = SAMPLE_STATES[1];
    expect(buildRequests(state)).toEqual(["/api/network?sector=Materials&country=DE&league=Large"]);
  });

  it("drill-through adds exactly one detail request", () => {
    const director = buildRequests({ ...initialViewState(), selectedDirector: 42 });
    expect(director).toEqual(["/api/network", "/api/director/42"]);
    const company = buildRequests({ ...initialViewState(), tab: "companies", selectedCompany: 9 });
    expect(company).toEqual(["/api/interlocks?min=2&limit=200", "/api/company/9"]);
  });

  it("path tab requests nothing until both endpoints are set", () => {
    expect(buildRequests({ ...initialViewState(), tab: "path", pathFrom: 1 })).toEqual([]);
    expect(buildRequests({ ...initialViewState(), tab: "path", pathFrom: 1, pathTo: 2 })).toEqual([
      "/api/path?from=1&to=2",
    ]);
  });

  it("tenure peer comparison rides along with the summary", () => {
    expect(buildRequests({ ...initialViewState(), tab: "tenure", selectedCompany: 7001 })).toEqual([
      "/api/tenure/summary",
      "/api/tenure/peer/7001",
    ]);
  });
});
