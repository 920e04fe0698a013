"""HTTP+JSON query API over an immutable snapshot, with atomic reload.

Readers never lock: each request captures one SnapshotVersion reference up
front and serves entirely from it, so a concurrent reload can never leak a
mixed view. Reload is the only state transition and is serialized by a
mutex. Every response body carries the snapshot version it was computed
from, and floats are rounded to at most four decimal places.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

from fastapi import Depends, FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import analytics
from .graph import build_graph, company_interlocks, shortest_path
from .model import FilterSpec, Gender, League, Snapshot
from .snapshot_io import SnapshotError, load_snapshot, validate_snapshot


@dataclass(frozen=True)
class ServerConfig:
    snapshot_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    max_nodes: int = 2000
    max_edges: int = 5000
    reload_token: Optional[str] = None
    cors_origins: tuple[str, ...] = ("*",)

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_edges < 1:
            raise ValueError("render caps must be >= 1")


@dataclass(frozen=True)
class SnapshotVersion:
    version: int
    snapshot: Snapshot


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


class SnapshotStore:
    """Holds the current snapshot version; swap is a single atomic rebind."""

    def __init__(self, snapshot: Snapshot, version: int = 1):
        self._current = SnapshotVersion(version, snapshot)
        self._reload_lock = threading.Lock()

    @property
    def current(self) -> SnapshotVersion:
        return self._current

    def reload(self, path: str) -> int:
        """Load and validate a new snapshot directory, then swap it in.
        In-flight requests keep serving the version they captured. A bad
        snapshot leaves the current one untouched."""
        with self._reload_lock:
            snapshot = load_snapshot(path)
            problems = validate_snapshot(snapshot)
            if problems:
                raise SnapshotError(f"snapshot fails validation: {problems[0]} (+{len(problems) - 1} more)"
                                    if len(problems) > 1 else f"snapshot fails validation: {problems[0]}")
            new_version = self._current.version + 1
            self._current = SnapshotVersion(new_version, snapshot)
            return new_version


def _r4(v: Optional[float]) -> Optional[float]:
    return None if v is None else round(v, 4)


def _parse_filter(
    sector: Optional[list[str]],
    country: Optional[list[str]],
    league: Optional[list[str]],
    gender: Optional[list[str]],
    family: Optional[bool],
    company: Optional[list[int]],
) -> FilterSpec:
    leagues = None
    if league is not None:
        leagues = set()
        for name in league:
            try:
                leagues.add(League(name.capitalize()))
            except ValueError:
                raise ApiError(400, "bad_filter", f"unknown league {name!r}") from None
    genders = None
    if gender is not None:
        genders = set()
        for name in gender:
            try:
                genders.add(Gender(name.capitalize()))
            except ValueError:
                raise ApiError(400, "bad_filter", f"unknown gender {name!r}") from None
    return FilterSpec(
        sectors=frozenset(sector) if sector is not None else None,
        countries=frozenset(c.upper() for c in country) if country is not None else None,
        leagues=frozenset(leagues) if leagues is not None else None,
        genders=frozenset(genders) if genders is not None else None,
        family_firm=family,
        company_ids=frozenset(company) if company is not None else None,
    )


class ReloadRequest(BaseModel):
    path: str
    token: Optional[str] = None


def create_app(store: SnapshotStore, config: ServerConfig) -> FastAPI:
    app = FastAPI(title="boardgraph", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    def filter_dep(
        sector: Optional[list[str]] = Query(default=None),
        country: Optional[list[str]] = Query(default=None),
        league: Optional[list[str]] = Query(default=None),
        gender: Optional[list[str]] = Query(default=None),
        family: Optional[bool] = Query(default=None),
        company: Optional[list[int]] = Query(default=None),
    ) -> FilterSpec:
        return _parse_filter(sector, country, league, gender, family, company)

    @app.get("/api/meta")
    def meta() -> dict:
        sv = store.current
        s = sv.snapshot
        return {
            "version": sv.version,
            "reference_year": s.reference_year,
            "counts": {
                "seats": len(s.seats),
                "directors": len(s.directors),
                "companies": len(s.companies),
                "edges": len(s.edges),
                "inf_long": len(s.inf_long),
                "countries": len(s.country_names),
                "warnings": len(s.warnings),
            },
        }

    @app.get("/api/network")
    def network(spec: FilterSpec = Depends(filter_dep)) -> dict:
        sv = store.current
        graph = build_graph(sv.snapshot, spec)
        node_count, edge_count = graph.node_count, graph.edge_count

        # Degrade gracefully past the render cap: highest-total-overlap
        # nodes first, then their induced pair edges.
        ranked = sorted(graph.nodes.items(), key=lambda kv: (-kv[1], kv[0]))
        truncated = False
        if len(ranked) > config.max_nodes:
            ranked = ranked[: config.max_nodes]
            truncated = True
        kept = {nid for nid, _ in ranked}
        pairs = [
            (a, b, pe)
            for (a, b), pe in graph.pair_edges.items()
            if a in kept and b in kept
        ]
        pairs.sort(key=lambda t: (-t[2].avg_overlap, t[0], t[1]))
        if len(pairs) > config.max_edges:
            pairs = pairs[: config.max_edges]
            truncated = True

        directors = sv.snapshot.directors
        return {
            "version": sv.version,
            "truncated": truncated,
            "node_count": node_count,
            "edge_count": edge_count,
            "nodes": [
                {
                    "id": nid,
                    "name": directors[nid].full_name if nid in directors else "",
                    "total_overlap": _r4(total),
                }
                for nid, total in ranked
            ],
            "edges": [
                {
                    "source": a,
                    "target": b,
                    "avg_overlap": _r4(pe.avg_overlap),
                    "companies": list(pe.companies),
                }
                for a, b, pe in pairs
            ],
        }

    @app.get("/api/director/{director_id}")
    def director(director_id: int) -> dict:
        sv = store.current
        try:
            detail = analytics.director_detail(sv.snapshot, director_id)
        except KeyError as exc:
            raise ApiError(404, "unknown_director", str(exc.args[0])) from None
        p = detail.profile
        return {
            "version": sv.version,
            "director": {
                "id": p.director_id,
                "name": p.full_name,
                "gender": p.gender.value,
                "age": p.age,
                "co_served": p.co_served,
                "activist": p.activist,
                "source": p.source.value,
            },
            "company_count": detail.company_count,
            "seats": [
                {
                    "company_id": s.company_id,
                    "company_name": s.company_name,
                    "director_since": s.director_since,
                    "ceo_since": s.ceo_since,
                    "chairman_since": s.chairman_since,
                    "lead_dir_since": s.lead_dir_since,
                    "family": s.family,
                    "founder": s.founder,
                    "ownership_category": s.ownership_category.value,
                    "inf_today": _r4(s.inf_today),
                    "inf_avg": _r4(s.inf_avg),
                }
                for s in detail.seats
            ],
            "connections": [
                {
                    "company_id": c.company_id,
                    "company_name": c.company_name,
                    "director_id": c.director_id,
                    "director_name": c.director_name,
                    "overlap": _r4(c.overlap),
                    "hq_country": c.hq_country,
                }
                for c in detail.connections
            ],
        }

    @app.get("/api/company/{company_id}")
    def company(company_id: int) -> dict:
        sv = store.current
        try:
            rows = analytics.company_directors(sv.snapshot, company_id)
        except KeyError as exc:
            raise ApiError(404, "unknown_company", str(exc.args[0])) from None
        prof = sv.snapshot.companies[company_id]
        return {
            "version": sv.version,
            "company": {
                "id": prof.company_id,
                "name": prof.name,
                "sector": prof.sector,
                "hq_country": prof.hq_country,
                "league": prof.league.value,
                "ownership_category": prof.ownership_category.value,
            },
            "directors": [
                {
                    "director_id": r.director_id,
                    "director_name": r.director_name,
                    "gender": r.gender.value,
                    "age": r.age,
                    "tenure": _r4(r.tenure),
                    "is_ceo": r.is_ceo,
                    "inf_today": _r4(r.inf_today),
                    "companies_count": r.companies_count,
                    "is_chairperson": r.is_chairperson,
                }
                for r in rows
            ],
        }

    @app.get("/api/path")
    def path(
        from_id: int = Query(alias="from"),
        to_id: int = Query(alias="to"),
        spec: FilterSpec = Depends(filter_dep),
    ) -> dict:
        sv = store.current
        s = sv.snapshot
        try:
            hops = shortest_path(s, from_id, to_id, spec)
        except KeyError as exc:
            raise ApiError(404, "unknown_director", str(exc.args[0])) from None
        if hops is None:
            return {"version": sv.version, "found": False, "hops": [], "length": None}
        directors = s.directors
        return {
            "version": sv.version,
            "found": True,
            "length": len(hops),
            "hops": [
                {
                    "from": h.director_id,
                    "from_name": directors[h.director_id].full_name,
                    "to": h.next_director_id,
                    "to_name": directors[h.next_director_id].full_name,
                    "company_id": h.company_id,
                    "company_name": s.companies[h.company_id].name,
                    "overlap": _r4(h.overlap),
                }
                for h in hops
            ],
        }

    @app.get("/api/interlocks")
    def interlocks(min: int = Query(default=1), limit: Optional[int] = Query(default=None)) -> dict:
        sv = store.current
        s = sv.snapshot
        try:
            pairs = company_interlocks(s, min)
        except ValueError as exc:
            raise ApiError(400, "bad_request", str(exc)) from None
        if limit is not None:
            pairs = pairs[: max(limit, 0)]
        return {
            "version": sv.version,
            "interlocks": [
                {
                    "company_a": il.company_a,
                    "company_a_name": s.companies[il.company_a].name,
                    "company_b": il.company_b,
                    "company_b_name": s.companies[il.company_b].name,
                    "count": il.count,
                    "shared_directors": [
                        {"id": did, "name": s.directors[did].full_name}
                        for did in sorted(il.shared_directors)
                    ],
                }
                for il in pairs
            ],
        }

    @app.get("/api/influence/countries")
    def influence(spec: FilterSpec = Depends(filter_dep)) -> dict:
        sv = store.current
        rows = analytics.influence_by_country(sv.snapshot, spec)
        return {
            "version": sv.version,
            "countries": [
                {
                    "code": r.country,
                    "name": r.name,
                    "mean_inf": _r4(r.mean_inf),
                    "seat_count": r.seat_count,
                    "trend": [[year, _r4(mean)] for year, mean in r.trend],
                }
                for r in rows
            ],
        }

    @app.get("/api/tenure/summary")
    def tenure(spec: FilterSpec = Depends(filter_dep)) -> dict:
        sv = store.current
        summary = analytics.tenure_summary(sv.snapshot, spec)
        return {
            "version": sv.version,
            "per_league": [
                {"league": lg.value, "mean_tenure": _r4(mean)}
                for lg, mean in summary.per_league.items()
            ],
            "per_league_sector": [
                {"league": lg.value, "sector": sector, "mean_tenure": _r4(mean), "seat_count": n}
                for (lg, sector), (mean, n) in summary.per_league_sector.items()
            ],
        }

    @app.get("/api/tenure/peer/{company_id}")
    def tenure_peer(company_id: int) -> dict:
        sv = store.current
        try:
            cmp = analytics.tenure_vs_peers(sv.snapshot, company_id)
        except KeyError as exc:
            raise ApiError(404, "unknown_company", str(exc.args[0])) from None
        except ValueError as exc:
            raise ApiError(422, "no_tenure_data", str(exc)) from None
        return {
            "version": sv.version,
            "company_id": cmp.company_id,
            "company_mean": _r4(cmp.company_mean),
            "peer_mean": _r4(cmp.peer_mean),
            "ratio": _r4(cmp.ratio),
            "peer_companies": cmp.peer_companies,
        }

    @app.get("/api/gender/countries")
    def gender(spec: FilterSpec = Depends(filter_dep)) -> dict:
        sv = store.current
        s = sv.snapshot
        rows = analytics.gender_power(s, spec)
        return {
            "version": sv.version,
            "countries": [
                {
                    "code": r.country,
                    "name": s.country_name(r.country),
                    "seat_share_female": _r4(r.seat_share_female),
                    "inf_share_female": _r4(r.inf_share_female),
                    "power_gap": _r4(r.power_gap),
                }
                for r in rows
            ],
        }

    @app.post("/api/reload")
    def reload(body: ReloadRequest) -> dict:
        if config.reload_token is not None and body.token != config.reload_token:
            raise ApiError(403, "bad_token", "reload token mismatch")
        try:
            version = store.reload(body.path)
        except SnapshotError as exc:
            raise ApiError(422, "bad_snapshot", str(exc)) from None
        return {"version": version}

    return app


def serve(config: ServerConfig) -> None:
    """Load the snapshot and run the API until interrupted."""
    import uvicorn

    snapshot = load_snapshot(config.snapshot_path)
    problems = validate_snapshot(snapshot)
    if problems:
        raise SnapshotError(f"snapshot fails validation: {problems[0]}")
    store = SnapshotStore(snapshot)
    app = create_app(store, config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
