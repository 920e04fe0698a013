/**
 * Response shapes of the boardgraph JSON API, mirrored field for field.
 * The UI never derives numbers of its own: everything rendered traces back
 * to one of these fields.
 */

export interface MetaResponse {
  version: number;
  reference_year: number;
  counts: {
    seats: number;
    directors: number;
    companies: number;
    edges: number;
    inf_long: number;
    countries: number;
    warnings: number;
  };
}

export interface NetworkNode {
  id: number;
  name: string;
  total_overlap: number;
}

export interface NetworkEdge {
  source: number;
  target: number;
  avg_overlap: number;
  companies: number[];
}

export interface NetworkResponse {
  version: number;
  truncated: boolean;
  node_count: number;
  edge_count: number;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export interface DirectorSeat {
  company_id: number;
  company_name: string;
  director_since: number | null;
  ceo_since: number | null;
  chairman_since: number | null;
  lead_dir_since: number | null;
  family: boolean;
  founder: boolean;
  ownership_category: string;
  inf_today: number | null;
  inf_avg: number | null;
}

export interface DirectorConnection {
  company_id: number;
  company_name: string;
  director_id: number;
  director_name: string;
  overlap: number;
  hq_country: string;
}

export interface DirectorResponse {
  version: number;
  director: {
    id: number;
    name: string;
    gender: string;
    age: number | null;
    co_served: boolean;
    activist: boolean;
    source: string;
  };
  company_count: number;
  seats: DirectorSeat[];
  connections: DirectorConnection[];
}

export interface CompanyDirectorRow {
  director_id: number;
  director_name: string;
  gender: string;
  age: number | null;
  tenure: number | null;
  is_ceo: boolean;
  inf_today: number | null;
  companies_count: number;
  is_chairperson: boolean;
}

export interface CompanyResponse {
  version: number;
  company: {
    id: number;
    name: string;
    sector: string;
    hq_country: string;
    league: string;
    ownership_category: string;
  };
  directors: CompanyDirectorRow[];
}

export interface PathHop {
  from: number;
  from_name: string;
  to: number;
  to_name: string;
  company_id: number;
  company_name: string;
  overlap: number;
}

export interface PathResponse {
  version: number;
  found: boolean;
  length: number | null;
  hops: PathHop[];
}

export interface InterlockEntry {
  company_a: number;
  company_a_name: string;
  company_b: number;
  company_b_name: string;
  count: number;
  shared_directors: { id: number; name: string }[];
}

export interface InterlocksResponse {
  version: number;
  interlocks: InterlockEntry[];
}

export interface CountryInfluenceEntry {
  code: string;
  name: string;
  mean_inf: number | null;
  seat_count: number;
  trend: [number, number][];
}

export interface InfluenceResponse {
  version: number;
  countries: CountryInfluenceEntry[];
}

export interface TenureResponse {
  version: number;
  per_league: { league: string; mean_tenure: number }[];
  per_league_sector: { league: string; sector: string; mean_tenure: number; seat_count: number }[];
}

export interface PeerResponse {
  version: number;
  company_id: number;
  company_mean: number;
  peer_mean: number | null;
  ratio: number | null;
  peer_companies: number;
}

export interface GenderCountryEntry {
  code: string;
  name: string;
  seat_share_female: number;
  inf_share_female: number;
  power_gap: number;
}

export interface GenderResponse {
  version: number;
  countries: GenderCountryEntry[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
