"""Dashboard queries: drill-through detail, country influence, tenure
summaries and peer comparison, and the gender power-disparity metric.

All aggregates exclude missing values instead of imputing zeros, and the
influence measure for shares and country means is the as-of-today score;
the per-year trend comes from the transposed long table.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .ingest import inf_prev4_avg
from .model import DirectorProfile, FilterSpec, Gender, Ownership, League, Snapshot


class SeatDetail(NamedTuple):
    company_id: int
    company_name: str
    director_since: Optional[int]
    ceo_since: Optional[int]
    chairman_since: Optional[int]
    lead_dir_since: Optional[int]
    family: bool
    founder: bool
    ownership_category: Ownership
    inf_today: Optional[float]
    inf_avg: Optional[float]


class ConnectionDetail(NamedTuple):
    company_id: int
    company_name: str
    director_id: int
    director_name: str
    overlap: float
    hq_country: str


@dataclass(frozen=True)
class DirectorDetail:
    profile: DirectorProfile
    seats: tuple[SeatDetail, ...]
    company_count: int
    connections: tuple[ConnectionDetail, ...]


def director_detail(snapshot: Snapshot, director_id: int) -> DirectorDetail:
    """Full drill-through for one director.

    Seats come from the factors file only; connections list every incident
    normalized edge regardless of any filter, strongest first, so an
    edges-only director still shows a complete network.
    """
    profile = snapshot.directors.get(director_id)
    if profile is None:
        raise KeyError(f"unknown director id {director_id}")

    seats = []
    for seat in snapshot.seats_by_director.get(director_id, ()):
        company = snapshot.companies[seat.company_id]
        seats.append(
            SeatDetail(
                company_id=seat.company_id,
                company_name=company.name,
                director_since=seat.director_since,
                ceo_since=seat.ceo_since,
                chairman_since=seat.chairman_since,
                lead_dir_since=seat.lead_dir_since,
                family=seat.family,
                founder=seat.founder,
                ownership_category=seat.ownership_category,
                inf_today=seat.inf_today,
                inf_avg=inf_prev4_avg(seat),
            )
        )
    seats.sort(key=lambda s: (s.company_name, s.company_id))

    connections = []
    for edge in snapshot.edges_by_director.get(director_id, ()):
        other = edge.b if edge.a == director_id else edge.a
        company = snapshot.companies[edge.company_id]
        other_profile = snapshot.directors[other]
        connections.append(
            ConnectionDetail(
                company_id=edge.company_id,
                company_name=company.name,
                director_id=other,
                director_name=other_profile.full_name,
                overlap=edge.overlap,
                hq_country=company.hq_country,
            )
        )
    connections.sort(key=lambda c: (-c.overlap, c.director_name, c.company_id, c.director_id))

    return DirectorDetail(
        profile=profile,
        seats=tuple(seats),
        company_count=len(seats),
        connections=tuple(connections),
    )


class CompanyDirectorRow(NamedTuple):
    director_id: int
    director_name: str
    gender: Gender
    age: Optional[int]
    tenure: Optional[float]
    is_ceo: bool
    inf_today: Optional[float]
    companies_count: int
    is_chairperson: bool


def company_directors(snapshot: Snapshot, company_id: int) -> list[CompanyDirectorRow]:
    """The board table for one company, one row per current seat, sorted by
    director name. ``companies_count`` is snapshot-wide."""
    if company_id not in snapshot.companies:
        raise KeyError(f"unknown company id {company_id}")
    rows = []
    for seat in snapshot.seats_by_company.get(company_id, ()):
        profile = snapshot.directors[seat.director_id]
        rows.append(
            CompanyDirectorRow(
                director_id=seat.director_id,
                director_name=profile.full_name,
                gender=profile.gender,
                age=profile.age,
                tenure=seat.tenure,
                is_ceo=seat.ceo_since is not None,
                inf_today=seat.inf_today,
                companies_count=len(snapshot.seats_by_director[seat.director_id]),
                is_chairperson=seat.chairman_since is not None,
            )
        )
    rows.sort(key=lambda r: (r.director_name, r.director_id))
    return rows


class CountryInfluence(NamedTuple):
    country: str
    name: str
    mean_inf: Optional[float]
    seat_count: int
    trend: tuple[tuple[int, float], ...]


def influence_by_country(snapshot: Snapshot, spec: FilterSpec = FilterSpec()) -> list[CountryInfluence]:
    """Per-country influence: the discrete number is the mean as-of-today
    score over matching seats (with a score present); the trend is the
    per-year mean over matching long-table rows. Countries appear only when
    they have at least one matching long-table row; nothing is padded in.
    """
    year_sums: dict[str, dict[int, list[float]]] = {}
    for row in snapshot.inf_long:
        if spec.sectors is not None and row.sector not in spec.sectors:
            continue
        if spec.countries is not None and row.hq_country not in spec.countries:
            continue
        if spec.leagues is not None and row.league not in spec.leagues:
            continue
        if spec.company_ids is not None and row.company_id not in spec.company_ids:
            continue
        if spec.genders is not None:
            prof = snapshot.directors.get(row.director_id)
            if prof is None or prof.gender not in spec.genders:
                continue
        if spec.family_firm is not None:
            seat = snapshot.seat_index[(row.director_id, row.company_id)]
            if seat.family != spec.family_firm:
                continue
        year_sums.setdefault(row.hq_country, {}).setdefault(row.year, []).append(row.inf)

    today: dict[str, list[float]] = {}
    for seat in snapshot.seats:
        if seat.inf_today is None or not spec.matches_seat(seat, snapshot):
            continue
        country = snapshot.companies[seat.company_id].hq_country
        today.setdefault(country, []).append(seat.inf_today)

    out = []
    for country, by_year in year_sums.items():
        trend = tuple((year, sum(vals) / len(vals)) for year, vals in sorted(by_year.items()))
        today_vals = today.get(country, [])
        mean_inf = sum(today_vals) / len(today_vals) if today_vals else None
        out.append(
            CountryInfluence(
                country=country,
                name=snapshot.country_name(country),
                mean_inf=mean_inf,
                seat_count=len(today_vals),
                trend=trend,
            )
        )
    out.sort(key=lambda c: (-(c.mean_inf if c.mean_inf is not None else float("-inf")), c.country))
    return out


@dataclass(frozen=True)
class TenureSummary:
    per_league: dict[League, float]
    per_league_sector: dict[tuple[League, str], tuple[float, int]]


def tenure_summary(snapshot: Snapshot, spec: FilterSpec = FilterSpec()) -> TenureSummary:
    """Mean board tenure by market-cap league and by league x sector, over
    matching seats with a tenure value. Cells with no seats are omitted."""
    cells: dict[tuple[League, str], list[float]] = {}
    for seat in snapshot.seats:
        if seat.tenure is None or not spec.matches_seat(seat, snapshot):
            continue
        company = snapshot.companies[seat.company_id]
        cells.setdefault((company.league, company.sector), []).append(seat.tenure)

    per_league_sector: dict[tuple[League, str], tuple[float, int]] = {}
    leagues: dict[League, list[float]] = {}
    for key in sorted(cells, key=lambda k: (k[0].value, k[1])):
        vals = cells[key]
        per_league_sector[key] = (sum(vals) / len(vals), len(vals))
        leagues.setdefault(key[0], []).extend(vals)
    per_league = {lg: sum(vals) / len(vals) for lg, vals in leagues.items()}
    return TenureSummary(per_league=per_league, per_league_sector=per_league_sector)


class PeerComparison(NamedTuple):
    company_id: int
    company_mean: float
    peer_mean: Optional[float]
    ratio: Optional[float]
    peer_companies: int


def tenure_vs_peers(snapshot: Snapshot, company_id: int) -> PeerComparison:
    """Board tenure of one company against its peer group: same league,
    same HQ country, same family-firm status, excluding the company itself.
    Peer seats pool across the whole group; the ratio is absent when there
    are no peers (or their pooled mean is zero).
    """
    company = snapshot.companies.get(company_id)
    if company is None:
        raise KeyError(f"unknown company id {company_id}")
    own = [s.tenure for s in snapshot.seats_by_company.get(company_id, ()) if s.tenure is not None]
    if not own:
        raise ValueError(f"company {company_id} has no seats with tenure")
    company_mean = sum(own) / len(own)

    family = snapshot.family_by_company
    own_family = family.get(company_id, False)
    peer_vals: list[float] = []
    peer_companies = 0
    for cid, prof in snapshot.companies.items():
        if cid == company_id:
            continue
        if prof.league is not company.league or prof.hq_country != company.hq_country:
            continue
        if family.get(cid, False) != own_family:
            continue
        vals = [s.tenure for s in snapshot.seats_by_company.get(cid, ()) if s.tenure is not None]
        if vals:
            peer_companies += 1
            peer_vals.extend(vals)

    if not peer_vals:
        return PeerComparison(company_id, company_mean, None, None, 0)
    peer_mean = sum(peer_vals) / len(peer_vals)
    ratio = company_mean / peer_mean if peer_mean > 0 else None
    return PeerComparison(company_id, company_mean, peer_mean, ratio, peer_companies)


class GenderPower(NamedTuple):
    country: str
    seat_share_female: float
    inf_share_female: float
    power_gap: float


def gender_power(snapshot: Snapshot, spec: FilterSpec = FilterSpec()) -> list[GenderPower]:
    """Seats held vs influence held by women, per country.

    Shares are computed over matching seats whose director has a known
    gender and whose as-of-today score is present; a positive gap means
    women hold board seats but not influence. Countries without such seats
    (or with zero total influence) are omitted.
    """
    buckets: dict[str, list[tuple[Gender, float]]] = {}
    for seat in snapshot.seats:
        if seat.inf_today is None:
            continue
        gender = snapshot.directors[seat.director_id].gender
        if gender is Gender.UNKNOWN:
            continue
        if not spec.matches_seat(seat, snapshot):
            continue
        country = snapshot.companies[seat.company_id].hq_country
        buckets.setdefault(country, []).append((gender, seat.inf_today))

    out = []
    for country, pairs in buckets.items():
        total_inf = sum(inf for _, inf in pairs)
        if total_inf <= 0:
            continue
        female = [inf for g, inf in pairs if g is Gender.FEMALE]
        seat_share = len(female) / len(pairs)
        inf_share = sum(female) / total_inf
        out.append(GenderPower(country, seat_share, inf_share, seat_share - inf_share))
    out.sort(key=lambda g: (-g.power_gap, g.country))
    return out
