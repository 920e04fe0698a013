"""Parse the two source CSV files and fold them into an immutable Snapshot.

The cleaning rules are deliberately tolerant: at million-row scale the inputs
contain duplicated seats, mismatched spellings, arbitrary node order, and
directors that exist only in the connections file. Bad rows are skipped and
reported, never fatal; only a missing required header or an unreadable file
aborts the build.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import BinaryIO, Iterable, Optional, Sequence, TextIO, Union

from .countries import lookup_names
from .model import (
    INF_YEARS,
    TRANSPOSED_YEARS,
    CompanyProfile,
    Diagnostic,
    DirectorProfile,
    Gender,
    InfLongRow,
    League,
    Ownership,
    RawEdgeRow,
    SeatRecord,
    Snapshot,
    Source,
)

CsvSource = Union[str, Path, bytes, BinaryIO, TextIO]

DIF_REQUIRED = ("DIRECTOR_ID", "DIRECTOR_NAME", "ISSUER_ID", "ISSUER_NAME")
BCE_REQUIRED = (
    "ISSUER_ID",
    "ISSUER_NAME",
    "BM_N1_ID",
    "BM_N1_NAME",
    "BM_N2_ID",
    "BM_N2_NAME",
    "OVERLAP_YRS",
)

_BOOL_TRUE = {"t", "true", "yes", "y", "1"}
_BOOL_FALSE = {"f", "false", "no", "n", "0", ""}

_OWNERSHIP_TOKENS = {
    "controlled": Ownership.CONTROLLED,
    "principalshareholder": Ownership.PRINCIPAL_SHAREHOLDER,
    "widelyheld": Ownership.WIDELY_HELD,
}

_LEAGUE_BY_CODE = {1: League.SMALL, 2: League.MEDIUM, 3: League.LARGE, 4: League.MEGA}


class IngestError(Exception):
    """Fatal ingest failure: unreadable source or unusable header."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


def league_description(code: int) -> League:
    """Decode the numeric market-cap league code (1..4 ascending by cap)."""
    return _LEAGUE_BY_CODE.get(code, League.UNKNOWN)


def inf_prev4_avg(seat: SeatRecord) -> Optional[float]:
    """Mean influence over the completed years 2018-2021, skipping missing
    values; None when all four are absent. The partial latest year and the
    as-of-today score never participate."""
    vals = [seat.inf_by_year[y] for y in TRANSPOSED_YEARS if y in seat.inf_by_year]
    if not vals:
        return None
    return sum(vals) / len(vals)


def parse_header_map(text: str) -> dict[str, str]:
    """Parse a key=value header-mapping config: ``<file header>=<canonical>``
    per line, blank lines and ``#`` comments ignored."""
    mapping: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"header map line is not key=value: {line!r}")
        actual, canonical = line.split("=", 1)
        mapping[actual.strip()] = canonical.strip().upper()
    return mapping


def _open_text(source: CsvSource, label: str) -> TextIO:
    if isinstance(source, (str, Path)):
        try:
            return open(source, "r", encoding="utf-8-sig", newline="")
        except OSError as exc:
            raise IngestError(label, f"cannot read {source}: {exc}") from exc
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8-sig"))
    if isinstance(source, io.TextIOBase):
        return source
    # binary file object
    return io.TextIOWrapper(source, encoding="utf-8-sig", newline="")


def _resolve_header(
    header: Sequence[str],
    required: Sequence[str],
    header_map: Optional[dict[str, str]],
    label: str,
) -> dict[str, int]:
    """Map canonical column names to indexes, honoring the mapping config."""
    index: dict[str, int] = {}
    for i, cell in enumerate(header):
        name = cell.strip()
        if header_map and name in header_map:
            name = header_map[name]
        name = name.upper()
        if name not in index:
            index[name] = i
    for col in required:
        if col not in index:
            raise IngestError(label, f"header is missing required column {col}")
    return index


def _parse_opt_int(cell: str) -> Optional[int]:
    cell = cell.strip()
    if not cell:
        return None
    return int(cell)


def _parse_opt_float(cell: str) -> Optional[float]:
    cell = cell.strip()
    if not cell:
        return None
    return float(cell)


def _parse_gender(cell: str) -> Gender:
    token = cell.strip().lower()
    if token in ("female", "f"):
        return Gender.FEMALE
    if token in ("male", "m"):
        return Gender.MALE
    return Gender.UNKNOWN


def _parse_ownership(cell: str) -> Ownership:
    token = "".join(cell.strip().lower().split())
    return _OWNERSHIP_TOKENS.get(token, Ownership.UNKNOWN)


def parse_dif(
    source: CsvSource,
    reference_year: int,
    header_map: Optional[dict[str, str]] = None,
) -> tuple[list[SeatRecord], list[Diagnostic]]:
    """Parse the director-independence-factors file into seat records.

    Malformed rows (unparseable numerics, missing or non-positive ids,
    negative tenure, duplicate director x company pairs) are skipped with a
    diagnostic naming the physical line; a role "since" year later than
    ``reference_year`` is dropped from the row with a diagnostic. Parsing
    never aborts on a data row.
    """
    label = "dif"
    fh = _open_text(source, label)
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError(label, "file is empty (no header row)") from None
    idx = _resolve_header(header, DIF_REQUIRED, header_map, label)

    def col(name: str) -> Optional[int]:
        return idx.get(name)

    i_did, i_dname = idx["DIRECTOR_ID"], idx["DIRECTOR_NAME"]
    i_cid, i_cname = idx["ISSUER_ID"], idx["ISSUER_NAME"]
    opt_cols = {
        name: col(name)
        for name in (
            "GENDER",
            "AGE",
            "TENURE",
            "DIRECTOR_SINCE",
            "CEO_SINCE",
            "CHAIRMAN_SINCE",
            "LEAD_DIR_SINCE",
            "FOUNDER",
            "FAMILY",
            "FOUNDER_FIRM",
            "CO_SERVED",
            "ACTIVIST",
            "OWNERSHIP_CATEGORY",
            "MKTCAP_LEAGUE",
            "IND_SEC",
            "HQ_COUNTRY",
            "INF_TODAY",
        )
    }
    inf_cols = {year: col(f"INF_{year}") for year in INF_YEARS}

    seats: list[SeatRecord] = []
    diags: list[Diagnostic] = []
    seen: set[tuple[int, int]] = set()

    def cell(row: list[str], i: Optional[int]) -> str:
        return row[i] if i is not None and i < len(row) else ""

    for row in reader:
        if not row:
            continue
        line = reader.line_num
        try:
            director_id = int(row[i_did]) if i_did < len(row) else None
            company_id = int(row[i_cid]) if i_cid < len(row) else None
        except ValueError:
            diags.append(Diagnostic(label, line, "bad_id", "unparseable director or company id"))
            continue
        if director_id is None or company_id is None or director_id <= 0 or company_id <= 0:
            diags.append(Diagnostic(label, line, "bad_id", "missing or non-positive id"))
            continue

        try:
            age = _parse_opt_int(cell(row, opt_cols["AGE"]))
            tenure = _parse_opt_float(cell(row, opt_cols["TENURE"]))
            league_code = _parse_opt_int(cell(row, opt_cols["MKTCAP_LEAGUE"])) or 0
            inf_today = _parse_opt_float(cell(row, opt_cols["INF_TODAY"]))
            since = {
                name: _parse_opt_int(cell(row, opt_cols[name]))
                for name in ("DIRECTOR_SINCE", "CEO_SINCE", "CHAIRMAN_SINCE", "LEAD_DIR_SINCE")
            }
            inf_by_year = {}
            for year, i in inf_cols.items():
                v = _parse_opt_float(cell(row, i))
                if v is not None:
                    inf_by_year[year] = v
        except ValueError as exc:
            diags.append(Diagnostic(label, line, "bad_number", f"unparseable numeric field: {exc}"))
            continue

        if tenure is not None and tenure < 0:
            diags.append(Diagnostic(label, line, "negative_tenure", f"tenure {tenure} < 0"))
            continue
        if (director_id, company_id) in seen:
            diags.append(
                Diagnostic(
                    label,
                    line,
                    "duplicate_seat",
                    f"duplicate seat ({director_id}, {company_id}); first occurrence kept",
                )
            )
            continue

        for name, year in since.items():
            if year is not None and year > reference_year:
                diags.append(
                    Diagnostic(
                        label,
                        line,
                        "future_year",
                        f"{name}={year} is after reference year {reference_year}; dropped",
                    )
                )
                since[name] = None

        bools = {}
        for name in ("FOUNDER", "FAMILY", "FOUNDER_FIRM", "CO_SERVED", "ACTIVIST"):
            token = cell(row, opt_cols[name]).strip().lower()
            if token in _BOOL_TRUE:
                bools[name] = True
            elif token in _BOOL_FALSE:
                bools[name] = False
            else:
                bools[name] = False
                diags.append(
                    Diagnostic(label, line, "bad_bool", f"unrecognized {name} value {token!r}; treated as false")
                )

        seen.add((director_id, company_id))
        seats.append(
            SeatRecord(
                director_id=director_id,
                director_name=cell(row, i_dname).strip(),
                company_id=company_id,
                company_name=cell(row, i_cname).strip(),
                gender=_parse_gender(cell(row, opt_cols["GENDER"])),
                age=age,
                tenure=tenure,
                director_since=since["DIRECTOR_SINCE"],
                ceo_since=since["CEO_SINCE"],
                chairman_since=since["CHAIRMAN_SINCE"],
                lead_dir_since=since["LEAD_DIR_SINCE"],
                founder=bools["FOUNDER"],
                family=bools["FAMILY"],
                founder_firm=bools["FOUNDER_FIRM"],
                co_served=bools["CO_SERVED"],
                activist=bools["ACTIVIST"],
                ownership_category=_parse_ownership(cell(row, opt_cols["OWNERSHIP_CATEGORY"])),
                league_code=league_code,
                sector=cell(row, opt_cols["IND_SEC"]).strip(),
                hq_country=cell(row, opt_cols["HQ_COUNTRY"]).strip().upper(),
                inf_today=inf_today,
                inf_by_year=inf_by_year,
            )
        )
    return seats, diags


def parse_bce(
    source: CsvSource,
    header_map: Optional[dict[str, str]] = None,
) -> tuple[list[RawEdgeRow], list[Diagnostic]]:
    """Parse the board-connections-edges file. Rows with bad ids, an
    unparseable overlap, or a negative overlap are skipped with a
    diagnostic."""
    label = "bce"
    fh = _open_text(source, label)
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError(label, "file is empty (no header row)") from None
    idx = _resolve_header(header, BCE_REQUIRED, header_map, label)
    i_cid = idx["ISSUER_ID"]
    i_cname = idx["ISSUER_NAME"]
    i_n1 = idx["BM_N1_ID"]
    i_n1name = idx["BM_N1_NAME"]
    i_n2 = idx["BM_N2_ID"]
    i_n2name = idx["BM_N2_NAME"]
    i_ov = idx["OVERLAP_YRS"]
    width = max(i_cid, i_cname, i_n1, i_n1name, i_n2, i_n2name, i_ov) + 1

    rows: list[RawEdgeRow] = []
    diags: list[Diagnostic] = []
    append = rows.append
    for row in reader:
        if not row:
            continue
        if len(row) < width:
            diags.append(Diagnostic(label, reader.line_num, "bad_row", "too few fields"))
            continue
        try:
            company_id = int(row[i_cid])
            n1 = int(row[i_n1])
            n2 = int(row[i_n2])
        except ValueError:
            diags.append(Diagnostic(label, reader.line_num, "bad_id", "unparseable id field"))
            continue
        if company_id <= 0 or n1 <= 0 or n2 <= 0:
            diags.append(Diagnostic(label, reader.line_num, "bad_id", "missing or non-positive id"))
            continue
        try:
            overlap = float(row[i_ov])
        except ValueError:
            diags.append(Diagnostic(label, reader.line_num, "bad_number", "unparseable overlap"))
            continue
        if overlap < 0:
            diags.append(Diagnostic(label, reader.line_num, "negative_overlap", f"overlap {overlap} < 0"))
            continue
        append(
            RawEdgeRow(
                company_id,
                row[i_cname].strip(),
                n1,
                row[i_n1name].strip(),
                n2,
                row[i_n2name].strip(),
                overlap,
            )
        )
    return rows, diags


def _fold_text(values: Iterable[str]) -> tuple[str, set[str]]:
    """Lexicographic max over non-empty values; also reports the distinct
    non-empty values so callers can flag mismatches."""
    distinct = {v for v in values if v}
    return (max(distinct) if distinct else ""), distinct


def build_unique_directors(
    seats: Sequence[SeatRecord],
    edges: Sequence[RawEdgeRow],
) -> tuple[dict[int, DirectorProfile], list[Diagnostic]]:
    """One profile per director id across both files.

    Fields fold with max semantics: numeric max, lexicographic text max,
    true-dominates-false, known-gender-dominates-Unknown (a Female/Male
    conflict resolves to Male, matching text max, and is flagged). Directors
    present only in the edges file get an EdgesOnly stub named by the
    lexicographic max of their edge-row spellings.
    """
    stage = "build_unique_directors"
    diags: list[Diagnostic] = []
    by_id: dict[int, list[SeatRecord]] = {}
    for seat in seats:
        by_id.setdefault(seat.director_id, []).append(seat)

    edge_names: dict[int, str] = {}
    for row in edges:
        for did, name in ((row.n1_id, row.n1_name), (row.n2_id, row.n2_name)):
            prev = edge_names.get(did)
            if prev is None or name > prev:
                edge_names[did] = name

    profiles: dict[int, DirectorProfile] = {}
    for did in sorted(set(by_id) | set(edge_names)):
        group = by_id.get(did)
        if group is None:
            profiles[did] = DirectorProfile(
                director_id=did,
                full_name=edge_names.get(did, ""),
                source=Source.EDGES_ONLY,
            )
            continue

        name, names = _fold_text(s.director_name for s in group)
        if len(names) > 1:
            diags.append(
                Diagnostic(stage, 0, "field_mismatch", f"director {did}: name spellings {sorted(names)}")
            )

        known = {s.gender for s in group if s.gender is not Gender.UNKNOWN}
        if known == {Gender.FEMALE, Gender.MALE}:
            gender = Gender.MALE
            diags.append(
                Diagnostic(
                    stage, 0, "gender_conflict", f"director {did}: Female vs Male conflict, resolved to Male"
                )
            )
        elif known:
            gender = next(iter(known))
        else:
            gender = Gender.UNKNOWN

        ages = {s.age for s in group if s.age is not None}
        if len(ages) > 1:
            diags.append(Diagnostic(stage, 0, "field_mismatch", f"director {did}: age values {sorted(ages)}"))
        for flag in ("co_served", "activist"):
            if len({getattr(s, flag) for s in group}) > 1:
                diags.append(
                    Diagnostic(stage, 0, "field_mismatch", f"director {did}: inconsistent {flag} flag")
                )

        profiles[did] = DirectorProfile(
            director_id=did,
            full_name=name,
            gender=gender,
            age=max(ages) if ages else None,
            co_served=any(s.co_served for s in group),
            activist=any(s.activist for s in group),
            source=Source.FROM_FACTORS,
        )
    return profiles, diags


def build_companies(
    seats: Sequence[SeatRecord],
    edges: Sequence[RawEdgeRow],
) -> tuple[dict[int, CompanyProfile], list[Diagnostic]]:
    """One profile per company id, folded with the same max semantics.
    Companies seen only in the edges file get a stub with unknown league,
    sector, and country."""
    stage = "build_companies"
    diags: list[Diagnostic] = []
    by_id: dict[int, list[SeatRecord]] = {}
    for seat in seats:
        by_id.setdefault(seat.company_id, []).append(seat)

    edge_names: dict[int, str] = {}
    for row in edges:
        prev = edge_names.get(row.company_id)
        if prev is None or row.company_name > prev:
            edge_names[row.company_id] = row.company_name

    profiles: dict[int, CompanyProfile] = {}
    for cid in sorted(set(by_id) | set(edge_names)):
        group = by_id.get(cid)
        if group is None:
            profiles[cid] = CompanyProfile(company_id=cid, name=edge_names.get(cid, ""))
            continue

        name, names = _fold_text(s.company_name for s in group)
        if len(names) > 1:
            diags.append(
                Diagnostic(stage, 0, "field_mismatch", f"company {cid}: name spellings {sorted(names)}")
            )
        sector, sectors = _fold_text(s.sector for s in group)
        if len(sectors) > 1:
            diags.append(Diagnostic(stage, 0, "field_mismatch", f"company {cid}: sectors {sorted(sectors)}"))
        country, countries = _fold_text(s.hq_country for s in group)
        if len(countries) > 1:
            diags.append(
                Diagnostic(stage, 0, "field_mismatch", f"company {cid}: countries {sorted(countries)}")
            )

        codes = {s.league_code for s in group if s.league_code}
        if len(codes) > 1:
            diags.append(
                Diagnostic(stage, 0, "field_mismatch", f"company {cid}: league codes {sorted(codes)}")
            )
        league_code = max((s.league_code for s in group), default=0)

        owners = {s.ownership_category for s in group if s.ownership_category is not Ownership.UNKNOWN}
        if len(owners) > 1:
            diags.append(
                Diagnostic(
                    stage,
                    0,
                    "field_mismatch",
                    f"company {cid}: ownership categories {sorted(o.value for o in owners)}",
                )
            )
        ownership = max(owners, key=lambda o: o.value) if owners else Ownership.UNKNOWN

        profiles[cid] = CompanyProfile(
            company_id=cid,
            name=name,
            sector=sector,
            hq_country=country,
            league_code=league_code,
            league=league_description(league_code),
            ownership_category=ownership,
        )
    return profiles, diags


def transpose_inf_long(
    seats: Sequence[SeatRecord],
    companies: dict[int, CompanyProfile],
) -> list[InfLongRow]:
    """Long-form influence table: one row per seat per non-missing completed
    year, carrying the company's league/sector/country for slicing."""
    rows: list[InfLongRow] = []
    for seat in seats:
        company = companies[seat.company_id]
        for year in TRANSPOSED_YEARS:
            v = seat.inf_by_year.get(year)
            if v is not None:
                rows.append(
                    InfLongRow(
                        company_id=seat.company_id,
                        director_id=seat.director_id,
                        year=year,
                        inf=v,
                        league=company.league,
                        sector=company.sector,
                        hq_country=company.hq_country,
                    )
                )
    return rows


def build_snapshot(
    dif_source: CsvSource,
    bce_source: CsvSource,
    reference_year: int,
    dif_header_map: Optional[dict[str, str]] = None,
    bce_header_map: Optional[dict[str, str]] = None,
) -> Snapshot:
    """Run the full pipeline: parse both files, fold the lookup tables,
    normalize edges, transpose influence, and assemble the Snapshot.

    Deterministic: identical inputs produce an identical Snapshot (stable
    ID-based ordering throughout). Diagnostics from every stage accumulate
    into ``snapshot.warnings``.
    """
    from .graph import normalize_edges

    seats, warnings = parse_dif(dif_source, reference_year, dif_header_map)
    raw_edges, bce_diags = parse_bce(bce_source, bce_header_map)
    warnings.extend(bce_diags)

    directors, d_diags = build_unique_directors(seats, raw_edges)
    warnings.extend(d_diags)
    companies, c_diags = build_companies(seats, raw_edges)
    warnings.extend(c_diags)
    edges, e_diags = normalize_edges(raw_edges)
    warnings.extend(e_diags)

    seats.sort(key=lambda s: (s.director_id, s.company_id))
    inf_long = transpose_inf_long(seats, companies)

    country_names, unknown = lookup_names(c.hq_country for c in companies.values())
    for code in unknown:
        warnings.append(
            Diagnostic("countries", 0, "unknown_country", f"observed code {code!r} is not ISO 3166 alpha-2")
        )

    return Snapshot(
        seats=tuple(seats),
        directors=directors,
        companies=companies,
        edges=tuple(edges),
        inf_long=tuple(inf_long),
        country_names=country_names,
        reference_year=reference_year,
        warnings=tuple(warnings),
    )
