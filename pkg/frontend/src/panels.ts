/**
 * Pure display models for the drill-through panels. Values pass through
 * from the API untouched (formatting only happens at render time), which
 * is what keeps every number on screen traceable to a response field.
 */
import type { CompanyResponse, DirectorResponse } from "./types.js";

export interface LabeledValue {
  label: string;
  value: string | number | boolean | null;
}

export interface DirectorPanelModel {
  title: string;
  header: LabeledValue[];
  seats: { columns: string[]; rows: (string | number | boolean | null)[][] };
  connections: { columns: string[]; rows: (string | number | null)[][] };
}

export function directorPanelModel(resp: DirectorResponse): DirectorPanelModel {
  return {
    title: resp.director.name,
    header: [
      { label: "Director ID", value: resp.director.id },
      { label: "Gender", value: resp.director.gender },
      { label: "Age", value: resp.director.age },
      { label: "Record Source", value: resp.director.source },
      { label: "# of Companies", value: resp.company_count },
    ],
    seats: {
      columns: [
        "Company Name",
        "Director Since",
        "CEO Since",
        "Chairman Since",
        "Lead Dir Since",
        "Family",
        "Founder",
        "Category",
        "INF Today",
        "INF Avg",
      ],
      rows: resp.seats.map((seat) => [
        seat.company_name,
        seat.director_since,
        seat.ceo_since,
        seat.chairman_since,
        seat.lead_dir_since,
        seat.family,
        seat.founder,
        seat.ownership_category,
        seat.inf_today,
        seat.inf_avg,
      ]),
    },
    connections: {
      columns: ["Company Name", "Connected Director", "Overlap (Yr)", "HQ Country"],
      rows: resp.connections.map((conn) => [
        conn.company_name,
        conn.director_name,
        conn.overlap,
        conn.hq_country,
      ]),
    },
  };
}

export interface CompanyPanelModel {
  title: string;
  header: LabeledValue[];
  directors: { columns: string[]; rows: (string | number | boolean | null)[][] };
}

export function companyPanelModel(resp: CompanyResponse): CompanyPanelModel {
  return {
    title: resp.company.name,
    header: [
      { label: "Company ID", value: resp.company.id },
      { label: "Sector", value: resp.company.sector },
      { label: "HQ Country", value: resp.company.hq_country },
      { label: "Market Cap League", value: resp.company.league },
      { label: "Category", value: resp.company.ownership_category },
    ],
    directors: {
      columns: [
        "Director Name",
        "Gender",
        "Age",
        "Tenure",
        "CEO",
        "INF",
        "# Companies",
        "Chairperson",
      ],
      rows: resp.directors.map((row) => [
        row.director_name,
        row.gender,
        row.age,
        row.tenure,
        row.is_ceo,
        row.inf_today,
        row.companies_count,
        row.is_chairperson,
      ]),
    },
  };
}
