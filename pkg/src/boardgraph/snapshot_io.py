"""Snapshot persistence: a directory of typed column files plus a manifest.

The layout is deliberately boring (one CSV per table, schema recorded in
manifest.json) but the encoding is canonical: stable row order, shortest
round-trip float repr, LF newlines, sorted JSON keys. Saving a loaded
snapshot reproduces the original directory byte for byte, which is what
makes ingest idempotence checkable.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Callable, Optional, Union

from .countries import ISO_3166_ALPHA2
from .ingest import league_description
from .model import (
    INF_YEARS,
    TRANSPOSED_YEARS,
    CompanyProfile,
    ConnectionEdge,
    Diagnostic,
    DirectorProfile,
    Gender,
    InfLongRow,
    League,
    Ownership,
    SeatRecord,
    Snapshot,
    Source,
)

FORMAT_NAME = "boardgraph-snapshot"
FORMAT_VERSION = 1


class SnapshotError(Exception):
    """Unreadable or structurally invalid snapshot directory."""


def _enc_opt(v: Union[int, float, None]) -> str:
    return "" if v is None else repr(v) if isinstance(v, float) else str(v)


def _enc_bool(v: bool) -> str:
    return "true" if v else "false"


def _dec_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise ValueError(f"bad boolean cell {s!r}")


def _dec_opt_int(s: str) -> Optional[int]:
    return None if s == "" else int(s)


def _dec_opt_float(s: str) -> Optional[float]:
    return None if s == "" else float(s)


SEAT_COLUMNS = [
    ("director_id", "int"),
    ("director_name", "str"),
    ("company_id", "int"),
    ("company_name", "str"),
    ("gender", "enum:gender"),
    ("age", "int?"),
    ("tenure", "float?"),
    ("director_since", "int?"),
    ("ceo_since", "int?"),
    ("chairman_since", "int?"),
    ("lead_dir_since", "int?"),
    ("founder", "bool"),
    ("family", "bool"),
    ("founder_firm", "bool"),
    ("co_served", "bool"),
    ("activist", "bool"),
    ("ownership_category", "enum:ownership"),
    ("league_code", "int"),
    ("sector", "str"),
    ("hq_country", "str"),
    ("inf_today", "float?"),
] + [(f"inf_{y}", "float?") for y in INF_YEARS]

DIRECTOR_COLUMNS = [
    ("director_id", "int"),
    ("full_name", "str"),
    ("gender", "enum:gender"),
    ("age", "int?"),
    ("co_served", "bool"),
    ("activist", "bool"),
    ("source", "enum:source"),
]

COMPANY_COLUMNS = [
    ("company_id", "int"),
    ("name", "str"),
    ("sector", "str"),
    ("hq_country", "str"),
    ("league_code", "int"),
    ("league", "enum:league"),
    ("ownership_category", "enum:ownership"),
]

EDGE_COLUMNS = [("company_id", "int"), ("a", "int"), ("b", "int"), ("overlap", "float")]

INF_LONG_COLUMNS = [
    ("company_id", "int"),
    ("director_id", "int"),
    ("year", "int"),
    ("inf", "float"),
    ("league", "enum:league"),
    ("sector", "str"),
    ("hq_country", "str"),
]

COUNTRY_COLUMNS = [("code", "str"), ("name", "str")]

WARNING_COLUMNS = [("file", "str"), ("line", "int"), ("code", "str"), ("message", "str")]

TABLES = {
    "seats": SEAT_COLUMNS,
    "directors": DIRECTOR_COLUMNS,
    "companies": COMPANY_COLUMNS,
    "edges": EDGE_COLUMNS,
    "inf_long": INF_LONG_COLUMNS,
    "countries": COUNTRY_COLUMNS,
    "warnings": WARNING_COLUMNS,
}


def _seat_row(s: SeatRecord) -> list[str]:
    return [
        str(s.director_id),
        s.director_name,
        str(s.company_id),
        s.company_name,
        s.gender.value,
        _enc_opt(s.age),
        _enc_opt(s.tenure),
        _enc_opt(s.director_since),
        _enc_opt(s.ceo_since),
        _enc_opt(s.chairman_since),
        _enc_opt(s.lead_dir_since),
        _enc_bool(s.founder),
        _enc_bool(s.family),
        _enc_bool(s.founder_firm),
        _enc_bool(s.co_served),
        _enc_bool(s.activist),
        s.ownership_category.value,
        str(s.league_code),
        s.sector,
        s.hq_country,
        _enc_opt(s.inf_today),
    ] + [_enc_opt(s.inf_by_year.get(y)) for y in INF_YEARS]


def _write_table(path: Path, columns: list[tuple[str, str]], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([name for name, _ in columns])
        writer.writerows(rows)


def save_snapshot(snapshot: Snapshot, out_dir: Union[str, Path]) -> Path:
    """Write the snapshot directory; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_table(out / "seats.csv", SEAT_COLUMNS, [_seat_row(s) for s in snapshot.seats])
    _write_table(
        out / "directors.csv",
        DIRECTOR_COLUMNS,
        [
            [
                str(d.director_id),
                d.full_name,
                d.gender.value,
                _enc_opt(d.age),
                _enc_bool(d.co_served),
                _enc_bool(d.activist),
                d.source.value,
            ]
            for d in snapshot.directors.values()
        ],
    )
    _write_table(
        out / "companies.csv",
        COMPANY_COLUMNS,
        [
            [
                str(c.company_id),
                c.name,
                c.sector,
                c.hq_country,
                str(c.league_code),
                c.league.value,
                c.ownership_category.value,
            ]
            for c in snapshot.companies.values()
        ],
    )
    _write_table(
        out / "edges.csv",
        EDGE_COLUMNS,
        [[str(e.company_id), str(e.a), str(e.b), repr(e.overlap)] for e in snapshot.edges],
    )
    _write_table(
        out / "inf_long.csv",
        INF_LONG_COLUMNS,
        [
            [
                str(r.company_id),
                str(r.director_id),
                str(r.year),
                repr(r.inf),
                r.league.value,
                r.sector,
                r.hq_country,
            ]
            for r in snapshot.inf_long
        ],
    )
    _write_table(
        out / "countries.csv",
        COUNTRY_COLUMNS,
        [[code, name] for code, name in snapshot.country_names.items()],
    )
    _write_table(
        out / "warnings.csv",
        WARNING_COLUMNS,
        [[w.file, str(w.line), w.code, w.message] for w in snapshot.warnings],
    )

    manifest = {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "reference_year": snapshot.reference_year,
        "counts": {
            "seats": len(snapshot.seats),
            "directors": len(snapshot.directors),
            "companies": len(snapshot.companies),
            "edges": len(snapshot.edges),
            "inf_long": len(snapshot.inf_long),
            "countries": len(snapshot.country_names),
            "warnings": len(snapshot.warnings),
        },
        "tables": {
            name: {"file": f"{name}.csv", "columns": [[c, t] for c, t in cols]}
            for name, cols in TABLES.items()
        },
    }
    manifest_path = out / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest_path


def _read_table(path: Path, columns: list[tuple[str, str]]) -> list[list[str]]:
    if not path.exists():
        raise SnapshotError(f"missing table file {path.name}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SnapshotError(f"{path.name}: empty table file") from None
        expected = [name for name, _ in columns]
        if header != expected:
            raise SnapshotError(f"{path.name}: header mismatch, expected {expected}")
        rows = list(reader)
    width = len(columns)
    for i, row in enumerate(rows, start=2):
        if len(row) != width:
            raise SnapshotError(f"{path.name}:{i}: expected {width} fields, got {len(row)}")
    return rows


def load_snapshot(snapshot_dir: Union[str, Path]) -> Snapshot:
    """Load a snapshot directory; raises SnapshotError when the directory is
    missing, the manifest is unusable, or any cell fails to decode."""
    src = Path(snapshot_dir)
    manifest_path = src / "manifest.json"
    if not manifest_path.exists():
        raise SnapshotError(f"no manifest.json in {src}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SnapshotError(f"unreadable manifest: {exc}") from exc
    if manifest.get("format") != FORMAT_NAME:
        raise SnapshotError(f"not a {FORMAT_NAME} directory")
    if manifest.get("format_version") != FORMAT_VERSION:
        raise SnapshotError(f"unsupported format_version {manifest.get('format_version')}")
    try:
        reference_year = int(manifest["reference_year"])
        counts = manifest["counts"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotError(f"manifest missing required fields: {exc}") from exc

    def decode(table: str, build: Callable[[list[str]], object]) -> list:
        rows = _read_table(src / f"{table}.csv", TABLES[table])
        out = []
        for i, row in enumerate(rows, start=2):
            try:
                out.append(build(row))
            except (ValueError, KeyError) as exc:
                raise SnapshotError(f"{table}.csv:{i}: {exc}") from exc
        if table in counts and counts[table] != len(out):
            raise SnapshotError(
                f"{table}.csv: manifest declares {counts[table]} rows, found {len(out)}"
            )
        return out

    def build_seat(row: list[str]) -> SeatRecord:
        inf_by_year = {}
        for j, year in enumerate(INF_YEARS):
            v = _dec_opt_float(row[21 + j])
            if v is not None:
                inf_by_year[year] = v
        return SeatRecord(
            director_id=int(row[0]),
            director_name=row[1],
            company_id=int(row[2]),
            company_name=row[3],
            gender=Gender(row[4]),
            age=_dec_opt_int(row[5]),
            tenure=_dec_opt_float(row[6]),
            director_since=_dec_opt_int(row[7]),
            ceo_since=_dec_opt_int(row[8]),
            chairman_since=_dec_opt_int(row[9]),
            lead_dir_since=_dec_opt_int(row[10]),
            founder=_dec_bool(row[11]),
            family=_dec_bool(row[12]),
            founder_firm=_dec_bool(row[13]),
            co_served=_dec_bool(row[14]),
            activist=_dec_bool(row[15]),
            ownership_category=Ownership(row[16]),
            league_code=int(row[17]),
            sector=row[18],
            hq_country=row[19],
            inf_today=_dec_opt_float(row[20]),
            inf_by_year=inf_by_year,
        )

    seats = decode("seats", build_seat)
    directors = decode(
        "directors",
        lambda r: DirectorProfile(
            director_id=int(r[0]),
            full_name=r[1],
            gender=Gender(r[2]),
            age=_dec_opt_int(r[3]),
            co_served=_dec_bool(r[4]),
            activist=_dec_bool(r[5]),
            source=Source(r[6]),
        ),
    )
    companies = decode(
        "companies",
        lambda r: CompanyProfile(
            company_id=int(r[0]),
            name=r[1],
            sector=r[2],
            hq_country=r[3],
            league_code=int(r[4]),
            league=League(r[5]),
            ownership_category=Ownership(r[6]),
        ),
    )
    edges = decode("edges", lambda r: ConnectionEdge(int(r[0]), int(r[1]), int(r[2]), float(r[3])))
    inf_long = decode(
        "inf_long",
        lambda r: InfLongRow(int(r[0]), int(r[1]), int(r[2]), float(r[3]), League(r[4]), r[5], r[6]),
    )
    countries = decode("countries", lambda r: (r[0], r[1]))
    warnings = decode("warnings", lambda r: Diagnostic(r[0], int(r[1]), r[2], r[3]))

    return Snapshot(
        seats=tuple(seats),
        directors={d.director_id: d for d in directors},
        companies={c.company_id: c for c in companies},
        edges=tuple(edges),
        inf_long=tuple(inf_long),
        country_names=dict(countries),
        reference_year=reference_year,
        warnings=tuple(warnings),
    )


def validate_snapshot(snapshot: Snapshot) -> list[str]:
    """Re-check every structural invariant; returns the violations found
    (empty list = valid)."""
    problems: list[str] = []

    seen_seats: set[tuple[int, int]] = set()
    for seat in snapshot.seats:
        key = (seat.director_id, seat.company_id)
        if key in seen_seats:
            problems.append(f"duplicate seat {key}")
        seen_seats.add(key)
        if seat.director_id <= 0 or seat.company_id <= 0:
            problems.append(f"seat {key}: non-positive id")
        if seat.director_id not in snapshot.directors:
            problems.append(f"seat {key}: director not in directors table")
        if seat.company_id not in snapshot.companies:
            problems.append(f"seat {key}: company not in companies table")
        if seat.tenure is not None and seat.tenure < 0:
            problems.append(f"seat {key}: negative tenure {seat.tenure}")
        for name in ("director_since", "ceo_since", "chairman_since", "lead_dir_since"):
            year = getattr(seat, name)
            if year is not None and year > snapshot.reference_year:
                problems.append(f"seat {key}: {name}={year} after reference year")

    for d in snapshot.directors.values():
        if d.source is Source.EDGES_ONLY and (d.gender is not Gender.UNKNOWN or d.age is not None):
            problems.append(f"director {d.director_id}: edges-only stub carries factors data")

    for c in snapshot.companies.values():
        if c.league is not league_description(c.league_code):
            problems.append(f"company {c.company_id}: league does not decode from code {c.league_code}")

    seen_edges: set[tuple[int, int, int]] = set()
    for e in snapshot.edges:
        if e.a >= e.b:
            problems.append(f"edge {e}: endpoints not in canonical order")
        if e.overlap < 0:
            problems.append(f"edge {e}: negative overlap")
        key = (e.company_id, e.a, e.b)
        if key in seen_edges:
            problems.append(f"edge {key}: duplicate")
        seen_edges.add(key)
        for end in (e.a, e.b):
            if end not in snapshot.directors:
                problems.append(f"edge {key}: endpoint {end} not in directors table")
        if e.company_id not in snapshot.companies:
            problems.append(f"edge {key}: company not in companies table")

    expected_rows = sum(
        sum(1 for y in TRANSPOSED_YEARS if y in s.inf_by_year) for s in snapshot.seats
    )
    if expected_rows != len(snapshot.inf_long):
        problems.append(
            f"inf_long holds {len(snapshot.inf_long)} rows, seats imply exactly {expected_rows}"
        )
    seat_keys = {(s.director_id, s.company_id) for s in snapshot.seats}
    for r in snapshot.inf_long:
        if (r.director_id, r.company_id) not in seat_keys:
            problems.append(f"inf_long row {(r.director_id, r.company_id, r.year)}: no matching seat")
            break

    for code in snapshot.country_names:
        if code not in ISO_3166_ALPHA2:
            problems.append(f"country_names contains non-ISO code {code!r}")

    return problems
