/**
 * ViewState: everything the explorer shows is a function of this object,
 * and it round-trips losslessly through the URL query string so any view
 * is shareable. At most one drill-through target (director or company) is
 * active at a time.
 */

export const TABS = ["network", "companies", "influence", "tenure", "gender", "path"] as const;
export type Tab = (typeof TABS)[number];

export interface Filters {
  sector: string[];
  country: string[];
  league: string[];
  gender: string[];
  family: boolean | null;
  company: number[];
}

export interface ViewState {
  tab: Tab;
  filters: Filters;
  selectedDirector: number | null;
  selectedCompany: number | null;
  pathFrom: number | null;
  pathTo: number | null;
  colorByCompany: boolean;
}

export function emptyFilters(): Filters {
  return { sector: [], country: [], league: [], gender: [], family: null, company: [] };
}

export function initialViewState(): ViewState {
  return {
    tab: "network",
    filters: emptyFilters(),
    selectedDirector: null,
    selectedCompany: null,
    pathFrom: null,
    pathTo: null,
    colorByCompany: false,
  };
}

/** Select a drill-through target, clearing the other kind. */
export function withDirector(state: ViewState, id: number | null): ViewState {
  return { ...state, selectedDirector: id, selectedCompany: null };
}

export function withCompany(state: ViewState, id: number | null): ViewState {
  return { ...state, selectedCompany: id, selectedDirector: null };
}

export function encodeViewState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.tab !== "network") params.set("tab", state.tab);
  for (const sector of state.filters.sector) params.append("sector", sector);
  for (const country of state.filters.country) params.append("country", country);
  for (const league of state.filters.league) params.append("league", league);
  for (const gender of state.filters.gender) params.append("gender", gender);
  if (state.filters.family !== null) params.set("family", String(state.filters.family));
  for (const company of state.filters.company) params.append("company", String(company));
  if (state.selectedDirector !== null) params.set("director", String(state.selectedDirector));
  else if (state.selectedCompany !== null) params.set("companyDetail", String(state.selectedCompany));
  if (state.pathFrom !== null) params.set("from", String(state.pathFrom));
  if (state.pathTo !== null) params.set("to", String(state.pathTo));
  if (state.colorByCompany) params.set("colors", "company");
  return params.toString();
}

function intOrNull(raw: string | null): number | null {
  if (raw === null || raw === "") return null;
  const value = Number.parseInt(raw, 10);
  return Number.isFinite(value) ? value : null;
}

export function decodeViewState(query: string): ViewState {
  const params = new URLSearchParams(query);
  const state = initialViewState();
  const tab = params.get("tab");
  if (tab && (TABS as readonly string[]).includes(tab)) state.tab = tab as Tab;
  state.filters.sector = params.getAll("sector");
  state.filters.country = params.getAll("country");
  state.filters.league = params.getAll("league");
  state.filters.gender = params.getAll("gender");
  const family = params.get("family");
  if (family === "true") state.filters.family = true;
  else if (family === "false") state.filters.family = false;
  state.filters.company = params
    .getAll("company")
    .map((raw) => intOrNull(raw))
    .filter((value): value is number => value !== null);
  const director = intOrNull(params.get("director"));
  const company = intOrNull(params.get("companyDetail"));
  // one drill-through target at a time; a director wins over a company
  state.selectedDirector = director;
  state.selectedCompany = director === null ? company : null;
  state.pathFrom = intOrNull(params.get("from"));
  state.pathTo = intOrNull(params.get("to"));
  state.colorByCompany = params.get("colors") === "company";
  return state;
}
