/**
 * Request building and fetch plumbing. buildRequests is pure: the exact
 * API URLs a ViewState needs, in a stable order — the URL round-trip
 * invariant is checked against it.
 */
import type { Filters, ViewState } from "./state.js";

export const API_BASE = "";

export function filterParams(filters: Filters): URLSearchParams {
  const params = new URLSearchParams();
  for (const sector of filters.sector) params.append("sector", sector);
  for (const country of filters.country) params.append("country", country);
  for (const league of filters.league) params.append("league", league);
  for (const gender of filters.gender) params.append("gender", gender);
  if (filters.family !== null) params.set("family", String(filters.family));
  for (const company of filters.company) params.append("company", String(company));
  return params;
}

function withQuery(path: string, params: URLSearchParams): string {
  const query = params.toString();
  return query ? `${path}?${query}` : path;
}

/** Every API request the given view needs, in fetch order. */
export function buildRequests(state: ViewState): string[] {
  const filters = filterParams(state.filters);
  const urls: string[] = [];
  switch (state.tab) {
    case "network":
      urls.push(withQuery("/api/network", filters));
      break;
    case "companies":
      urls.push(withQuery("/api/interlocks", new URLSearchParams({ min: "2", limit: "200" })));
      break;
    case "influence":
      urls.push(withQuery("/api/influence/countries", filters));
      break;
    case "tenure":
      urls.push(withQuery("/api/tenure/summary", filters));
      if (state.selectedCompany !== null) urls.push(`/api/tenure/peer/${state.selectedCompany}`);
      break;
    case "gender":
      urls.push(withQuery("/api/gender/countries", filters));
      break;
    case "path":
      if (state.pathFrom !== null && state.pathTo !== null) {
        const params = new URLSearchParams();
        params.set("from", String(state.pathFrom));
        params.set("to", String(state.pathTo));
        for (const [key, value] of filterParams(state.filters)) params.append(key, value);
        urls.push(withQuery("/api/path", params));
      }
      break;
  }
  if (state.selectedDirector !== null) urls.push(`/api/director/${state.selectedDirector}`);
  else if (state.selectedCompany !== null && state.tab !== "tenure") {
    urls.push(`/api/company/${state.selectedCompany}`);
  }
  return urls;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export async function fetchJson<T>(url: string): Promise<T> {
  const resp = await fetch(API_BASE + url, { headers: { Accept: "application/json" } });
  if (!resp.ok) {
    let code = "http_error";
    let message = `${resp.status} ${resp.statusText}`;
    try {
      const body = (await resp.json()) as { code?: string; message?: string };
      if (body.code) code = body.code;
      if (body.message) message = body.message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, code, message);
  }
  return (await resp.json()) as T;
}
