"""Operator command line: build snapshots, generate fixtures, run reports,
trace paths, validate, and serve.

Exit codes: 0 success, 1 usage error, 2 data error. Results go to stdout,
diagnostics to stderr. BOARDGRAPH_SNAPSHOT supplies the default snapshot
directory for query commands.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import analytics
from .graph import company_interlocks, shortest_path
from .ingest import IngestError, build_snapshot, parse_header_map
from .model import FilterSpec, Gender, League, Snapshot
from .snapshot_io import SnapshotError, load_snapshot, save_snapshot, validate_snapshot
from .synth import ANOMALY_NAMES, SynthConfig, write_corpus

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract here is 1."""

    def error(self, message: str):  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_EXIT)


def _build_cli() -> _Parser:
    parser = _Parser(prog="boardgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("ingest", help="build a snapshot from the two source CSVs")
    p.add_argument("--dif", required=True, help="director factors CSV")
    p.add_argument("--bce", required=True, help="board connection edges CSV")
    p.add_argument("--out", required=True, help="snapshot output directory")
    p.add_argument("--ref-year", type=int, default=None, help="reference year (default: current)")
    p.add_argument("--dif-header-map", help="key=value header mapping file for the factors CSV")
    p.add_argument("--bce-header-map", help="key=value header mapping file for the edges CSV")

    p = sub.add_parser("synth", help="generate a synthetic corpus with a truth manifest")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--companies", type=int, default=10)
    p.add_argument("--out", required=True)
    p.add_argument("--board", default="4:8", metavar="MIN:MAX", help="directors per board range")
    p.add_argument("--multi-seat", type=float, default=0.15, help="fraction of seats reusing a director")
    p.add_argument("--female", type=float, default=0.3, help="female fraction of new directors")
    p.add_argument("--raw-inf", action="store_true", help="skip per-company influence normalization")
    p.add_argument(
        "--anomaly",
        action="append",
        default=[],
        metavar="NAME=RATE",
        help=f"injection rate; names: {', '.join(ANOMALY_NAMES)}",
    )

    p = sub.add_parser("report", help="run an aggregate report against a snapshot")
    p.add_argument("--snapshot", default=None)
    p.add_argument("--kind", required=True, choices=("tenure", "influence", "gender", "interlocks"))
    p.add_argument("--filter", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--min-shared", type=int, default=1, help="interlocks: minimum shared directors")

    p = sub.add_parser("path", help="shortest connection between two directors")
    p.add_argument("--snapshot", default=None)
    p.add_argument("--from", dest="from_id", type=int, required=True)
    p.add_argument("--to", dest="to_id", type=int, required=True)
    p.add_argument("--filter", action="append", default=[], metavar="KEY=VALUE")

    p = sub.add_parser("validate", help="re-check all snapshot invariants")
    p.add_argument("--snapshot", default=None)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--snapshot", default=None)
    p.add_argument("--listen", default="127.0.0.1:8000", metavar="HOST:PORT")
    p.add_argument("--reload-token", default=None)
    p.add_argument("--max-nodes", type=int, default=2000)
    p.add_argument("--max-edges", type=int, default=5000)

    return parser


def _snapshot_dir(arg: Optional[str]) -> str:
    path = arg or os.environ.get("BOARDGRAPH_SNAPSHOT")
    if not path:
        raise _usage_error("no snapshot directory: pass --snapshot or set BOARDGRAPH_SNAPSHOT")
    return path


def _usage_error(message: str) -> SystemExit:
    sys.stderr.write(f"boardgraph: error: {message}\n")
    return SystemExit(USAGE_EXIT)


def _parse_filters(pairs: Sequence[str]) -> FilterSpec:
    sectors: set[str] = set()
    countries: set[str] = set()
    leagues: set[League] = set()
    genders: set[Gender] = set()
    company_ids: set[int] = set()
    family: Optional[bool] = None
    for pair in pairs:
        if "=" not in pair:
            raise _usage_error(f"bad --filter {pair!r}, expected key=value")
        key, value = pair.split("=", 1)
        key = key.strip().lower()
        value = value.strip()
        try:
            if key == "sector":
                sectors.add(value)
            elif key == "country":
                countries.add(value.upper())
            elif key == "league":
                leagues.add(League(value.capitalize()))
            elif key == "gender":
                genders.add(Gender(value.capitalize()))
            elif key == "family":
                family = value.lower() in ("true", "t", "yes", "1")
            elif key == "company":
                company_ids.add(int(value))
            else:
                raise _usage_error(f"unknown filter key {key!r}")
        except ValueError:
            raise _usage_error(f"bad filter value {value!r} for {key}") from None
    return FilterSpec(
        sectors=frozenset(sectors) if sectors else None,
        countries=frozenset(countries) if countries else None,
        leagues=frozenset(leagues) if leagues else None,
        genders=frozenset(genders) if genders else None,
        family_firm=family,
        company_ids=frozenset(company_ids) if company_ids else None,
    )


def _emit_table(header: list[str], rows: list[list[str]], fmt: str) -> None:
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    print("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip())
    print("  ".join("-" * w for w in widths))
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.4f}"


def _cmd_ingest(args: argparse.Namespace) -> int:
    ref_year = args.ref_year
    if ref_year is None:
        from datetime import date

        ref_year = date.today().year
    dif_map = parse_header_map(Path(args.dif_header_map).read_text()) if args.dif_header_map else None
    bce_map = parse_header_map(Path(args.bce_header_map).read_text()) if args.bce_header_map else None
    snapshot = build_snapshot(args.dif, args.bce, ref_year, dif_map, bce_map)
    out = Path(args.out)
    save_snapshot(snapshot, out)
    with open(out / "diagnostics.txt", "w", encoding="utf-8") as fh:
        for w in snapshot.warnings:
            fh.write(w.render() + "\n")
    sys.stderr.write(f"{len(snapshot.warnings)} diagnostics -> {out / 'diagnostics.txt'}\n")
    print(
        f"snapshot written to {out}: {len(snapshot.seats)} seats, "
        f"{len(snapshot.directors)} directors, {len(snapshot.companies)} companies, "
        f"{len(snapshot.edges)} edges, {len(snapshot.inf_long)} influence rows"
    )
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    try:
        lo, _, hi = args.board.partition(":")
        board = (int(lo), int(hi or lo))
    except ValueError:
        raise _usage_error(f"bad --board {args.board!r}, expected MIN:MAX") from None
    rates: dict[str, float] = {}
    for pair in args.anomaly:
        if "=" not in pair:
            raise _usage_error(f"bad --anomaly {pair!r}, expected name=rate")
        name, value = pair.split("=", 1)
        try:
            rates[name.strip()] = float(value)
        except ValueError:
            raise _usage_error(f"bad anomaly rate {value!r}") from None
    try:
        config = SynthConfig(
            seed=args.seed,
            companies=args.companies,
            directors_per_board=board,
            multi_seat_fraction=args.multi_seat,
            female_fraction=args.female,
            inf_normalized_per_company=not args.raw_inf,
        ).with_anomalies(rates)
        truth = write_corpus(config, args.out)
    except ValueError as exc:
        raise _usage_error(str(exc)) from None
    counts = truth["counts"]
    print(
        f"corpus written to {args.out}: {counts['dif_rows']} factor rows, "
        f"{counts['bce_rows']} edge rows, truth.json alongside"
    )
    return 0


def _load(args: argparse.Namespace) -> Snapshot:
    return load_snapshot(_snapshot_dir(args.snapshot))


def _cmd_report(args: argparse.Namespace) -> int:
    snapshot = _load(args)
    spec = _parse_filters(args.filter)
    if args.kind == "tenure":
        summary = analytics.tenure_summary(snapshot, spec)
        rows = [[lg.value, "(all)", f"{mean:.4f}", ""] for lg, mean in summary.per_league.items()]
        rows += [
            [lg.value, sector, f"{mean:.4f}", str(n)]
            for (lg, sector), (mean, n) in summary.per_league_sector.items()
        ]
        _emit_table(["league", "sector", "mean_tenure", "seat_count"], rows, args.format)
    elif args.kind == "influence":
        rows = [
            [
                r.country,
                r.name,
                _fmt(r.mean_inf),
                str(r.seat_count),
                ";".join(f"{year}:{mean:.4f}" for year, mean in r.trend),
            ]
            for r in analytics.influence_by_country(snapshot, spec)
        ]
        _emit_table(["country", "name", "mean_inf", "seat_count", "trend"], rows, args.format)
    elif args.kind == "gender":
        rows = [
            [r.country, _fmt(r.seat_share_female), _fmt(r.inf_share_female), _fmt(r.power_gap)]
            for r in analytics.gender_power(snapshot, spec)
        ]
        _emit_table(["country", "seat_share_female", "inf_share_female", "power_gap"], rows, args.format)
    else:  # interlocks
        if args.min_shared < 1:
            raise _usage_error("--min-shared must be >= 1")
        rows = [
            [
                str(il.company_a),
                snapshot.companies[il.company_a].name,
                str(il.company_b),
                snapshot.companies[il.company_b].name,
                str(il.count),
                ";".join(snapshot.directors[d].full_name for d in sorted(il.shared_directors)),
            ]
            for il in company_interlocks(snapshot, args.min_shared)
        ]
        _emit_table(
            ["company_a", "company_a_name", "company_b", "company_b_name", "count", "shared"],
            rows,
            args.format,
        )
    return 0


def _cmd_path(args: argparse.Namespace) -> int:
    snapshot = _load(args)
    spec = _parse_filters(args.filter)
    hops = shortest_path(snapshot, args.from_id, args.to_id, spec)
    start = snapshot.directors[args.from_id]
    if hops is None:
        print(f"no connection found between {args.from_id} and {args.to_id}")
        return 0
    if not hops:
        print(f"{start.director_id} {start.full_name} (single-node path, 0 hops)")
        return 0
    print(f"{start.director_id} {start.full_name}")
    for hop in hops:
        nxt = snapshot.directors[hop.next_director_id]
        company = snapshot.companies[hop.company_id]
        print(f"  -> {nxt.director_id} {nxt.full_name}  via {company.name} (overlap {hop.overlap:.1f})")
    print(f"{len(hops)} hops")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    snapshot = _load(args)
    problems = validate_snapshot(snapshot)
    if problems:
        for problem in problems:
            sys.stderr.write(f"invalid: {problem}\n")
        return DATA_EXIT
    print(
        f"snapshot valid: {len(snapshot.seats)} seats, {len(snapshot.directors)} directors, "
        f"{len(snapshot.edges)} edges"
    )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import ServerConfig, serve

    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        raise _usage_error(f"bad --listen {args.listen!r}, expected HOST:PORT")
    serve(
        ServerConfig(
            snapshot_path=_snapshot_dir(args.snapshot),
            host=host,
            port=int(port),
            max_nodes=args.max_nodes,
            max_edges=args.max_edges,
            reload_token=args.reload_token,
        )
    )
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "synth": _cmd_synth,
    "report": _cmd_report,
    "path": _cmd_path,
    "validate": _cmd_validate,
    "serve": _cmd_serve,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_cli()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (IngestError, SnapshotError) as exc:
        sys.stderr.write(f"boardgraph: {exc}\n")
        return DATA_EXIT
    except KeyError as exc:
        sys.stderr.write(f"boardgraph: {exc.args[0]}\n")
        return DATA_EXIT
    except ValueError as exc:
        sys.stderr.write(f"boardgraph: {exc}\n")
        return DATA_EXIT
    except OSError as exc:
        sys.stderr.write(f"boardgraph: {exc}\n")
        return DATA_EXIT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
