"""Deterministic generator for schema-compatible factors/edges corpora.

Every defect the real pipeline has to tolerate can be injected at a
configured rate: duplicated edge rows, arbitrary node order, directors that
exist only in the edges file, mismatched company fields, and self-loops.
The accompanying truth manifest states the exact post-clean counts and the
injected line numbers, so ingest can be scored without the proprietary data.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from random import Random
from typing import Union

DIF_HEADER = [
    "DIRECTOR_ID",
    "DIRECTOR_NAME",
    "ISSUER_ID",
    "ISSUER_NAME",
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
    "INF_2018",
    "INF_2019",
    "INF_2020",
    "INF_2021",
    "INF_2022",
]

BCE_HEADER = ["ISSUER_ID", "ISSUER_NAME", "BM_N1_ID", "BM_N1_NAME", "BM_N2_ID", "BM_N2_NAME", "OVERLAP_YRS"]

# Fixed syllable tables keep generated names human-readable and diff-stable.
_FIRST = ["An", "Bel", "Cor", "Dra", "El", "Fen", "Gal", "Hode", "Ira", "Jole", "Kata", "Lem", "Mira", "Nor", "Osa", "Pell", "Quin", "Rosa", "Sten", "Tuva", "Ulf", "Vera", "Wil", "Xen", "Yara", "Zol"]
_LAST1 = ["Ald", "Brent", "Cald", "Dorn", "Ekl", "Farn", "Grim", "Hall", "Ing", "Jarl", "Kros", "Lund", "Mor", "Nyg", "Ost", "Pram", "Quist", "Rud", "Sand", "Thorn", "Ulv", "Vang", "West", "Yng", "Zett"]
_LAST2 = ["berg", "dahl", "er", "ford", "gren", "holm", "lind", "mark", "ness", "quist", "rup", "sen", "stad", "strom", "son", "vik", "wald"]
_COMPANY1 = ["Apex", "Boreal", "Cinder", "Delta", "Ember", "Fjord", "Granite", "Harbor", "Iron", "Juniper", "Keystone", "Lumen", "Meridian", "North", "Onyx", "Pinnacle", "Quarry", "Ridge", "Summit", "Tidal", "Umber", "Vantage", "Wicker", "Zenith"]
_COMPANY2 = ["Atlantic", "Basin", "Crest", "Dynamics", "Edge", "Fields", "Global", "Heavy", "Integrated", "Junction", "Kinetic", "Light", "Marine", "National", "Orbital", "Pacific", "Rail", "Solar", "Thermal", "United", "Valley", "Works"]
_COMPANY_SUFFIX = ["INC.", "CORP.", "HOLDINGS", "GROUP", "PLC", "AG", "LTD."]

_SECTORS = ["Materials", "Industrials", "Financials", "Energy", "Technology", "Utilities", "Healthcare", "Consumer Staples"]
_COUNTRIES = ["US", "US", "US", "US", "GB", "DE", "FR", "JP", "KR", "CA", "AU", "NO", "IN", "BR", "CH", "SE"]
_OWNERSHIP = ["Widely Held", "Widely Held", "Widely Held", "Controlled", "Principal Shareholder"]

ANOMALY_NAMES = ("duplicate_edge", "swapped_nodes", "edges_only_director", "mismatched_company_fields", "self_loop")


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 1
    companies: int = 10
    directors_per_board: tuple[int, int] = (4, 8)
    multi_seat_fraction: float = 0.15
    female_fraction: float = 0.3
    duplicate_edge: float = 0.0
    swapped_nodes: float = 0.5
    edges_only_director: float = 0.0
    mismatched_company_fields: float = 0.0
    self_loop: float = 0.0
    inf_normalized_per_company: bool = True
    reference_year: int = 2023

    def validate(self) -> None:
        if self.companies < 1:
            raise ValueError("companies must be >= 1")
        lo, hi = self.directors_per_board
        if lo < 1 or hi < lo:
            raise ValueError("directors_per_board must satisfy 1 <= min <= max")
        for name in ("multi_seat_fraction", "female_fraction") + ANOMALY_NAMES:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")

    def with_anomalies(self, rates: dict[str, float]) -> "SynthConfig":
        unknown = set(rates) - set(ANOMALY_NAMES)
        if unknown:
            raise ValueError(f"unknown anomaly rate(s): {sorted(unknown)}")
        return replace(self, **rates)


def _full_name(rng: Random) -> str:
    return f"{rng.choice(_FIRST)}{rng.choice(_LAST2)} {rng.choice(_LAST1)}{rng.choice(_LAST2)}"


def _company_name(rng: Random) -> str:
    return f"{rng.choice(_COMPANY1)} {rng.choice(_COMPANY2)} {rng.choice(_COMPANY_SUFFIX)}"


def _influence_columns(rng: Random, board_size: int, normalized: bool) -> list[list[float]]:
    """Per-member influence values for (today, 2018..2022): heavy-tailed
    bases so most boards hold one or two linchpin outliers, optionally
    scaled so each column sums to 100 within a cent."""
    bases = [rng.lognormvariate(1.6, 1.1) for _ in range(board_size)]
    columns: list[list[float]] = []
    for _ in range(6):
        col = [b * rng.uniform(0.85, 1.15) for b in bases]
        if normalized:
            scale = 100.0 / sum(col)
            col = [round(v * scale, 2) for v in col]
            residual = round(100.0 - sum(col), 2)
            top = max(range(board_size), key=lambda i: col[i])
            col[top] = round(col[top] + residual, 2)
        else:
            col = [round(v, 2) for v in col]
        columns.append(col)
    return columns


def generate(config: SynthConfig) -> tuple[bytes, bytes, dict]:
    """Produce (dif_csv, bce_csv, truth). Byte-identical for equal configs."""
    config.validate()
    rng = Random(config.seed)
    ref = config.reference_year

    dif_buf = io.StringIO()
    dif = csv.writer(dif_buf, lineterminator="\n")
    dif.writerow(DIF_HEADER)
    bce_buf = io.StringIO()
    bce = csv.writer(bce_buf, lineterminator="\n")
    bce.writerow(BCE_HEADER)

    pool: list[tuple[int, str, str, int]] = []  # (id, name, gender, age)
    next_director = 10_000
    next_phantom = 9_000_000
    dif_rows = 0
    bce_lines = 1  # header occupies line 1
    base_edges = 0
    phantom_edges = 0
    dup_lines: list[int] = []
    loop_lines: list[int] = []
    swapped_lines: list[int] = []
    mismatched_companies: list[int] = []
    phantom_ids: list[int] = []

    def bce_row(cid: int, cname: str, d1: tuple[int, str], d2: tuple[int, str], overlap: float) -> int:
        nonlocal bce_lines
        bce.writerow([cid, cname, d1[0], d1[1], d2[0], d2[1], f"{overlap:.1f}"])
        bce_lines += 1
        return bce_lines

    for ci in range(config.companies):
        cid = 1_000 + ci
        cname = _company_name(rng)
        sector = rng.choice(_SECTORS)
        country = rng.choice(_COUNTRIES)
        league_code = rng.randint(1, 4)
        ownership = rng.choice(_OWNERSHIP)
        is_family = rng.random() < 0.2
        board_size = rng.randint(*config.directors_per_board)

        board: list[tuple[int, str, str, int]] = []
        on_board: set[int] = set()
        for _ in range(board_size):
            member = None
            if pool and rng.random() < config.multi_seat_fraction:
                candidate = rng.choice(pool)
                if candidate[0] not in on_board:
                    member = candidate
            if member is None:
                name = _full_name(rng)
                gender = "Female" if rng.random() < config.female_fraction else "Male"
                member = (next_director, name, gender, rng.randint(38, 82))
                next_director += 1
                pool.append(member)
            board.append(member)
            on_board.add(member[0])

        inf_cols = _influence_columns(rng, board_size, config.inf_normalized_per_company)
        mismatch_here = (
            board_size >= 2 and rng.random() < config.mismatched_company_fields
        )
        if mismatch_here:
            mismatched_companies.append(cid)

        tenures: list[float] = []
        family_seats = {rng.randrange(board_size)} if is_family else set()
        for mi, (did, name, gender, age) in enumerate(board):
            tenure = round(rng.uniform(0.0, min(28.0, age - 30)), 1)
            tenures.append(tenure)
            director_since = ref - int(tenure)
            chairman_since = min(director_since + rng.randint(0, 2), ref) if mi == 0 else ""
            ceo_since = director_since if mi == 0 and rng.random() < 0.4 else ""
            lead_since = director_since + 1 if mi == 1 and rng.random() < 0.3 and tenure >= 1 else ""
            founder = mi == 0 and is_family and rng.random() < 0.6
            row_sector = sector
            row_league = league_code
            if mismatch_here and mi == 1:
                row_sector = sector + " Div"
                row_league = league_code % 4 + 1
            dif.writerow(
                [
                    did,
                    name,
                    cid,
                    cname,
                    gender,
                    age,
                    f"{tenure:.1f}",
                    director_since,
                    ceo_since,
                    chairman_since,
                    lead_since,
                    "T" if founder else "",
                    "Yes" if mi in family_seats else "No",
                    "Yes" if is_family else "No",
                    "T" if rng.random() < 0.25 else "F",
                    "T" if rng.random() < 0.05 else "F",
                    ownership,
                    row_league,
                    row_sector,
                    country,
                    f"{inf_cols[0][mi]:.2f}",
                    f"{inf_cols[1][mi]:.2f}",
                    f"{inf_cols[2][mi]:.2f}",
                    f"{inf_cols[3][mi]:.2f}",
                    f"{inf_cols[4][mi]:.2f}",
                    f"{inf_cols[5][mi]:.2f}",
                ]
            )
            dif_rows += 1

        id_name = [(did, name) for did, name, _, _ in board]
        for i in range(board_size):
            for j in range(i + 1, board_size):
                lo, hi = sorted((id_name[i], id_name[j]))
                overlap = round(min(tenures[i], tenures[j]), 1)
                swapped = rng.random() < config.swapped_nodes
                line = bce_row(cid, cname, hi if swapped else lo, lo if swapped else hi, overlap)
                if swapped:
                    swapped_lines.append(line)
                base_edges += 1
                if rng.random() < config.duplicate_edge:
                    dup_overlap = round(max(0.0, overlap - rng.uniform(0.0, 2.0)), 1)
                    swapped = rng.random() < config.swapped_nodes
                    line = bce_row(cid, cname, hi if swapped else lo, lo if swapped else hi, dup_overlap)
                    dup_lines.append(line)
                    if swapped:
                        swapped_lines.append(line)

        for mi, member in enumerate(id_name):
            if rng.random() < config.self_loop:
                loop_lines.append(bce_row(cid, cname, member, member, round(tenures[mi], 1)))

        for mi, member in enumerate(id_name):
            if rng.random() < config.edges_only_director:
                phantom = (next_phantom, _full_name(rng))
                next_phantom += 1
                phantom_ids.append(phantom[0])
                k = rng.randint(1, board_size)
                for target in rng.sample(id_name, k):
                    overlap = round(rng.uniform(0.5, 12.0), 1)
                    swapped = rng.random() < config.swapped_nodes
                    line = bce_row(cid, cname, target if swapped else phantom, phantom if swapped else target, overlap)
                    if swapped:
                        swapped_lines.append(line)
                    phantom_edges += 1
                    if rng.random() < config.duplicate_edge:
                        dup_overlap = round(max(0.0, overlap - rng.uniform(0.0, 2.0)), 1)
                        swapped = rng.random() < config.swapped_nodes
                        line = bce_row(
                            cid, cname, target if swapped else phantom, phantom if swapped else target, dup_overlap
                        )
                        dup_lines.append(line)
                        if swapped:
                            swapped_lines.append(line)

    cfg = asdict(config)
    cfg["directors_per_board"] = list(config.directors_per_board)
    truth = {
        "config": cfg,
        "reference_year": ref,
        "counts": {
            "dif_rows": dif_rows,
            "bce_rows": bce_lines - 1,
            "seats": dif_rows,
            "factors_directors": len(pool),
            "edges_only_directors": len(phantom_ids),
            "unique_directors": len(pool) + len(phantom_ids),
            "companies": config.companies,
            "normalized_edges": base_edges + phantom_edges,
            "inf_long_rows": 4 * dif_rows,
        },
        "anomalies": {
            "duplicate_edge_lines": dup_lines,
            "self_loop_lines": loop_lines,
            "swapped_node_lines": swapped_lines,
            "mismatched_company_ids": mismatched_companies,
            "edges_only_director_ids": phantom_ids,
        },
    }
    return dif_buf.getvalue().encode("utf-8"), bce_buf.getvalue().encode("utf-8"), truth


def write_corpus(config: SynthConfig, out_dir: Union[str, Path]) -> dict:
    """Generate and write dif.csv, bce.csv, and truth.json; returns truth."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dif_csv, bce_csv, truth = generate(config)
    (out / "dif.csv").write_bytes(dif_csv)
    (out / "bce.csv").write_bytes(bce_csv)
    with open(out / "truth.json", "w", encoding="utf-8") as fh:
        json.dump(truth, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return truth
