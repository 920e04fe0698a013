"""Generator determinism, combinatorial truth, and anomaly bookkeeping."""
from __future__ import annotations

import csv
import io
import random

import pytest

from boardgraph.ingest import build_snapshot, parse_bce, parse_dif
from boardgraph.model import Source
from boardgraph.synth import SynthConfig, generate, write_corpus

REF = 2023


def clean_config(**kw) -> SynthConfig:
    base = dict(
        seed=1,
        companies=3,
        directors_per_board=(4, 4),
        multi_seat_fraction=0.0,
        swapped_nodes=0.0,
    )
    base.update(kw)
    return SynthConfig(**base)


def test_determinism_byte_identical():
    cfg = SynthConfig(seed=99, companies=8, duplicate_edge=0.3, self_loop=0.2, edges_only_director=0.4)
    assert generate(cfg) == generate(cfg)


def test_seed_changes_output():
    a = generate(SynthConfig(seed=1, companies=3))
    b = generate(SynthConfig(seed=2, companies=3))
    assert a[0] != b[0]


def test_combinatorial_truth_counts():
    _, _, truth = generate(clean_config())
    counts = truth["counts"]
    assert counts["unique_directors"] == 12
    assert counts["companies"] == 3
    assert counts["normalized_edges"] == 3 * 6  # 3 boards x C(4,2)
    assert counts["dif_rows"] == 12
    assert counts["inf_long_rows"] == 48


def test_swapped_nodes_all_reversed_but_edges_survive():
    dif, bce, truth = generate(clean_config(swapped_nodes=1.0))
    rows, diags = parse_bce(bce)
    assert diags == []
    assert all(r.n1_id > r.n2_id for r in rows)
    snapshot = build_snapshot(dif, bce, REF)
    assert len(snapshot.edges) == truth["counts"]["normalized_edges"] == 18


def test_duplicate_lines_recorded_exactly():
    dif, bce, truth = generate(clean_config(duplicate_edge=0.5))
    lines = bce.decode().splitlines()
    dup_lines = truth["anomalies"]["duplicate_edge_lines"]
    assert dup_lines, "rate 0.5 on 18 edges should inject some duplicates"
    reader = list(csv.reader(io.StringIO(bce.decode())))
    for line_no in dup_lines:
        dup = reader[line_no - 1]
        prev = reader[line_no - 2]
        # the duplicate restates the previous row's pair within the company
        assert dup[0] == prev[0]
        assert {dup[2], dup[4]} == {prev[2], prev[4]}
    assert len(lines) - 1 == truth["counts"]["bce_rows"]
    snapshot = build_snapshot(dif, bce, REF)
    assert len(snapshot.edges) == 18


def test_self_loop_lines_dropped_by_normalization():
    dif, bce, truth = generate(clean_config(self_loop=1.0))
    loops = truth["anomalies"]["self_loop_lines"]
    assert len(loops) == 12  # one per board member at rate 1.0
    snapshot = build_snapshot(dif, bce, REF)
    assert len(snapshot.edges) == truth["counts"]["normalized_edges"]
    assert sum(1 for w in snapshot.warnings if w.code == "self_loop") == len(loops)


def test_edges_only_directors_become_stubs():
    dif, bce, truth = generate(clean_config(edges_only_director=1.0))
    snapshot = build_snapshot(dif, bce, REF)
    stub_ids = truth["anomalies"]["edges_only_director_ids"]
    assert len(stub_ids) == 12
    for did in stub_ids:
        assert snapshot.directors[did].source is Source.EDGES_ONLY
    assert len(snapshot.directors) == truth["counts"]["unique_directors"]


def test_mismatched_company_fields_flagged_not_fatal():
    dif, bce, truth = generate(clean_config(mismatched_company_fields=1.0))
    snapshot = build_snapshot(dif, bce, REF)
    assert truth["anomalies"]["mismatched_company_ids"] == [1000, 1001, 1002]
    assert len(snapshot.companies) == 3
    assert any(w.code == "field_mismatch" for w in snapshot.warnings)


def test_overlap_is_min_of_pair_tenures():
    dif, bce, _ = generate(clean_config())
    seats, _ = parse_dif(dif, REF)
    tenure = {(s.director_id, s.company_id): s.tenure for s in seats}
    rows, _ = parse_bce(bce)
    for r in rows:
        expected = round(min(tenure[(r.n1_id, r.company_id)], tenure[(r.n2_id, r.company_id)]), 1)
        assert r.overlap == pytest.approx(expected)


def test_normalized_influence_sums_to_100_per_board():
    dif, _, _ = generate(clean_config(inf_normalized_per_company=True, companies=6))
    seats, _ = parse_dif(dif, REF)
    by_company: dict[int, list[float]] = {}
    for s in seats:
        by_company.setdefault(s.company_id, []).append(s.inf_today)
    for vals in by_company.values():
        assert sum(vals) == pytest.approx(100.0, abs=0.01)


def test_invalid_config_names_field():
    with pytest.raises(ValueError, match="companies"):
        SynthConfig(companies=0).validate()
    with pytest.raises(ValueError, match="duplicate_edge"):
        SynthConfig(duplicate_edge=1.5).validate()
    with pytest.raises(ValueError, match="directors_per_board"):
        SynthConfig(directors_per_board=(3, 2)).validate()
    with pytest.raises(ValueError, match="unknown anomaly"):
        SynthConfig().with_anomalies({"bogus": 0.1})


def test_round_trip_sample_of_random_configs():
    # the acceptance suite runs the full 100; keep a fast sample here
    meta = random.Random(7)
    for _ in range(10):
        cfg = SynthConfig(
            seed=meta.randrange(2**32),
            companies=meta.randint(1, 50),
            directors_per_board=(2, meta.randint(3, 8)),
            multi_seat_fraction=meta.random() * 0.5,
            duplicate_edge=meta.random() * 0.5,
            swapped_nodes=meta.random(),
            edges_only_director=meta.random() * 0.4,
            mismatched_company_fields=meta.random() * 0.3,
            self_loop=meta.random() * 0.2,
        )
        dif, bce, truth = generate(cfg)
        snapshot = build_snapshot(dif, bce, REF)
        counts = truth["counts"]
        assert len(snapshot.seats) == counts["seats"]
        assert len(snapshot.directors) == counts["unique_directors"]
        assert len(snapshot.companies) == counts["companies"]
        assert len(snapshot.edges) == counts["normalized_edges"]
        assert len(snapshot.inf_long) == counts["inf_long_rows"]


def test_anomalies_never_break_csv_well_formedness():
    # defects are semantic, not syntactic: parsing skips nothing
    _, _, _ = generate(clean_config())
    dif, bce, truth = generate(
        clean_config(
            duplicate_edge=1.0,
            swapped_nodes=1.0,
            edges_only_director=1.0,
            mismatched_company_fields=1.0,
            self_loop=1.0,
            multi_seat_fraction=0.5,
            companies=12,
            directors_per_board=(3, 6),
        )
    )
    seats, dif_diags = parse_dif(dif, REF)
    assert dif_diags == []
    assert len(seats) == truth["counts"]["dif_rows"]
    rows, bce_diags = parse_bce(bce)
    assert bce_diags == []
    assert len(rows) == truth["counts"]["bce_rows"]


def test_write_corpus_files(tmp_path):
    truth = write_corpus(clean_config(), tmp_path / "corpus")
    assert (tmp_path / "corpus" / "dif.csv").exists()
    assert (tmp_path / "corpus" / "bce.csv").exists()
    assert (tmp_path / "corpus" / "truth.json").exists()
    assert truth["counts"]["companies"] == 3
