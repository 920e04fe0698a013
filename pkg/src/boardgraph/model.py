"""Core domain types shared by every boardgraph module.

Everything downstream of ingest operates on an immutable :class:`Snapshot`.
Mutation after construction is forbidden by convention (frozen dataclasses,
tuple sequences); the server relies on this to swap snapshots atomically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Mapping, NamedTuple, Optional


class Gender(Enum):
    FEMALE = "Female"
    MALE = "Male"
    UNKNOWN = "Unknown"


class Ownership(Enum):
    CONTROLLED = "Controlled"
    PRINCIPAL_SHAREHOLDER = "PrincipalShareholder"
    WIDELY_HELD = "WidelyHeld"
    UNKNOWN = "Unknown"


class League(Enum):
    SMALL = "Small"
    MEDIUM = "Medium"
    LARGE = "Large"
    MEGA = "Mega"
    UNKNOWN = "Unknown"


class Source(Enum):
    FROM_FACTORS = "FromFactors"
    EDGES_ONLY = "EdgesOnly"


#: Year columns that participate in the long-form influence table and in the
#: trailing four-year average. The latest partial year (2022) is carried on
#: the seat but never transposed or averaged.
TRANSPOSED_YEARS = (2018, 2019, 2020, 2021)

#: All influence year columns accepted from the factors file.
INF_YEARS = (2018, 2019, 2020, 2021, 2022)


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One ingest/cleaning anomaly: where it happened and why.

    ``file`` is the source file label for parse-stage records or the cleaning
    stage name otherwise; ``line`` is the 1-based physical line (0 when not
    tied to a line).
    """

    file: str
    line: int
    code: str
    message: str

    def render(self) -> str:
        return f"{self.file}:{self.line}: [{self.code}] {self.message}"


@dataclass(frozen=True, slots=True)
class SeatRecord:
    """One director x company row of the factors file, post-cleaning."""

    director_id: int
    director_name: str
    company_id: int
    company_name: str
    gender: Gender = Gender.UNKNOWN
    age: Optional[int] = None
    tenure: Optional[float] = None
    director_since: Optional[int] = None
    ceo_since: Optional[int] = None
    chairman_since: Optional[int] = None
    lead_dir_since: Optional[int] = None
    founder: bool = False
    family: bool = False
    founder_firm: bool = False
    co_served: bool = False
    activist: bool = False
    ownership_category: Ownership = Ownership.UNKNOWN
    league_code: int = 0
    sector: str = ""
    hq_country: str = ""
    inf_today: Optional[float] = None
    inf_by_year: Mapping[int, float] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class DirectorProfile:
    """Unique per-director record folded out of the seat rows (or an
    edges-only stub when the director never appears in the factors file)."""

    director_id: int
    full_name: str
    gender: Gender = Gender.UNKNOWN
    age: Optional[int] = None
    co_served: bool = False
    activist: bool = False
    source: Source = Source.FROM_FACTORS


@dataclass(frozen=True, slots=True)
class CompanyProfile:
    company_id: int
    name: str
    sector: str = ""
    hq_country: str = ""
    league_code: int = 0
    league: League = League.UNKNOWN
    ownership_category: Ownership = Ownership.UNKNOWN


# The three high-volume row types are NamedTuples: creating millions of them
# during a full-scale ingest has to stay cheap.


class RawEdgeRow(NamedTuple):
    """One line of the connections file, exactly as parsed (N1/N2 order is
    arbitrary and carries no meaning)."""

    company_id: int
    company_name: str
    n1_id: int
    n1_name: str
    n2_id: int
    n2_name: str
    overlap: float


class ConnectionEdge(NamedTuple):
    """Normalized undirected co-service edge within one company; a < b."""

    company_id: int
    a: int
    b: int
    overlap: float


class InfLongRow(NamedTuple):
    """One (director, company, year) influence observation with the
    company-level slicing columns denormalized on."""

    company_id: int
    director_id: int
    year: int
    inf: float
    league: League
    sector: str
    hq_country: str


@dataclass(frozen=True)
class Snapshot:
    """The fully-cleaned world a server version answers queries against."""

    seats: tuple[SeatRecord, ...]
    directors: dict[int, DirectorProfile]
    companies: dict[int, CompanyProfile]
    edges: tuple[ConnectionEdge, ...]
    inf_long: tuple[InfLongRow, ...]
    country_names: dict[str, str]
    reference_year: int
    warnings: tuple[Diagnostic, ...] = ()

    @cached_property
    def seats_by_director(self) -> dict[int, tuple[SeatRecord, ...]]:
        out: dict[int, list[SeatRecord]] = {}
        for seat in self.seats:
            out.setdefault(seat.director_id, []).append(seat)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def seats_by_company(self) -> dict[int, tuple[SeatRecord, ...]]:
        out: dict[int, list[SeatRecord]] = {}
        for seat in self.seats:
            out.setdefault(seat.company_id, []).append(seat)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def seat_index(self) -> dict[tuple[int, int], SeatRecord]:
        return {(s.director_id, s.company_id): s for s in self.seats}

    @cached_property
    def edges_by_director(self) -> dict[int, tuple[ConnectionEdge, ...]]:
        out: dict[int, list[ConnectionEdge]] = {}
        for edge in self.edges:
            out.setdefault(edge.a, []).append(edge)
            out.setdefault(edge.b, []).append(edge)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def graph_cache(self) -> dict:
        """Memo for filtered DirectorGraph builds (see graph.build_graph).
        Entries are treated as immutable; bounded by the builder."""
        return {}

    @cached_property
    def family_by_company(self) -> dict[int, bool]:
        """Company-level family-firm status: true when any seat at the
        company carries the family flag (same fold as the lookup tables)."""
        out: dict[int, bool] = {cid: False for cid in self.companies}
        for seat in self.seats:
            if seat.family:
                out[seat.company_id] = True
        return out

    def country_name(self, code: str) -> str:
        return self.country_names.get(code, code)


@dataclass(frozen=True, slots=True)
class FilterSpec:
    """Query-side selection. An absent (None) field means no restriction;
    an empty set matches nothing."""

    sectors: Optional[frozenset[str]] = None
    countries: Optional[frozenset[str]] = None
    leagues: Optional[frozenset[League]] = None
    genders: Optional[frozenset[Gender]] = None
    family_firm: Optional[bool] = None
    company_ids: Optional[frozenset[int]] = None

    def is_empty(self) -> bool:
        return all(
            v is None
            for v in (
                self.sectors,
                self.countries,
                self.leagues,
                self.genders,
                self.family_firm,
                self.company_ids,
            )
        )

    def matches_company(self, company: CompanyProfile, family: bool) -> bool:
        """Company-level fields only (sector/country/league/family/ids)."""
        if self.company_ids is not None and company.company_id not in self.company_ids:
            return False
        if self.sectors is not None and company.sector not in self.sectors:
            return False
        if self.countries is not None and company.hq_country not in self.countries:
            return False
        if self.leagues is not None and company.league not in self.leagues:
            return False
        if self.family_firm is not None and family != self.family_firm:
            return False
        return True

    def matches_gender(self, gender: Gender) -> bool:
        return self.genders is None or gender in self.genders

    def matches_seat(self, seat: SeatRecord, snapshot: Snapshot) -> bool:
        """Full seat-level match: the seat's company passes the company
        fields, the seat's family flag passes family_firm, and the seated
        director's cleaned gender passes genders."""
        if self.company_ids is not None and seat.company_id not in self.company_ids:
            return False
        company = snapshot.companies.get(seat.company_id)
        if company is None:
            return False
        if self.sectors is not None and company.sector not in self.sectors:
            return False
        if self.countries is not None and company.hq_country not in self.countries:
            return False
        if self.leagues is not None and company.league not in self.leagues:
            return False
        if self.family_firm is not None and seat.family != self.family_firm:
            return False
        if self.genders is not None:
            profile = snapshot.directors.get(seat.director_id)
            gender = profile.gender if profile else Gender.UNKNOWN
            if gender not in self.genders:
                return False
        return True
