"""Undirected co-service graph: normalization, filtered views, components,
shortest paths, and company interlocks.

Every operation here is a pure read over an immutable Snapshot, so all of it
is safe under unlimited concurrency.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .model import (
    ConnectionEdge,
    Diagnostic,
    FilterSpec,
    Gender,
    RawEdgeRow,
    Snapshot,
)


def normalize_edges(
    raw: Sequence[RawEdgeRow],
) -> tuple[list[ConnectionEdge], list[Diagnostic]]:
    """Canonicalize raw edge rows into unique undirected edges.

    N1/N2 carry no meaning, so each pair is reordered to a < b. Self-loops
    are dropped; duplicate (company, a, b) rows merge keeping the max
    overlap. Output is sorted by (company_id, a, b). Permuting the input or
    swapping any row's nodes cannot change the result.
    """
    stage = "normalize_edges"
    merged: dict[tuple[int, int, int], float] = {}
    diags: list[Diagnostic] = []
    for row in raw:
        n1, n2 = row.n1_id, row.n2_id
        if n1 == n2:
            diags.append(
                Diagnostic(stage, 0, "self_loop", f"company {row.company_id}: self-loop on director {n1} dropped")
            )
            continue
        key = (row.company_id, n1, n2) if n1 < n2 else (row.company_id, n2, n1)
        prev = merged.get(key)
        if prev is None:
            merged[key] = row.overlap
        else:
            if row.overlap > prev:
                merged[key] = row.overlap
            diags.append(
                Diagnostic(
                    stage,
                    0,
                    "duplicate_edge",
                    f"company {key[0]}: duplicate pair ({key[1]}, {key[2]}) merged, max overlap kept",
                )
            )
    edges = [ConnectionEdge(c, a, b, ov) for (c, a, b), ov in sorted(merged.items())]
    return edges, diags


class PairEdge(NamedTuple):
    """Aggregated view of all per-company edges between one director pair."""

    avg_overlap: float
    companies: tuple[int, ...]
    per_company: tuple[tuple[int, float], ...]  # (company_id, overlap), sorted by id


@dataclass(frozen=True)
class DirectorGraph:
    """Adjacency view over the edges surviving a FilterSpec.

    ``nodes`` maps director_id to total overlap (sum across incident
    surviving edges); ``pair_edges`` is keyed by the canonical (a, b) with
    a < b and answers queries in either order via :meth:`get_pair`.
    """

    nodes: dict[int, float]
    pair_edges: dict[tuple[int, int], PairEdge]
    provenance: FilterSpec

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.pair_edges)

    def get_pair(self, a: int, b: int) -> Optional[PairEdge]:
        return self.pair_edges.get((a, b) if a < b else (b, a))

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        """Adjacency lists, each sorted ascending."""
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in self.pair_edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj.values():
            lst.sort()
        return adj


def build_graph(snapshot: Snapshot, spec: FilterSpec) -> DirectorGraph:
    """Filtered director network.

    An edge survives when its company passes the company-level filter fields
    and both endpoint directors pass the gender field. Node weight is the
    sum of surviving incident overlaps; pair weight is the mean overlap over
    the pair's surviving per-company edges.

    Results are memoized per snapshot (snapshots are immutable, so a given
    filter always yields the same graph); callers must not mutate them.
    """
    cache = snapshot.graph_cache
    cached = cache.get(spec)
    if cached is not None:
        return cached

    family = snapshot.family_by_company
    company_filtered = (
        spec.sectors is not None
        or spec.countries is not None
        or spec.leagues is not None
        or spec.family_firm is not None
        or spec.company_ids is not None
    )
    if company_filtered:
        allowed = {
            cid
            for cid, prof in snapshot.companies.items()
            if spec.matches_company(prof, family.get(cid, False))
        }
    else:
        allowed = None

    genders = spec.genders
    directors = snapshot.directors

    def gender_ok(did: int) -> bool:
        prof = directors.get(did)
        return (prof.gender if prof else Gender.UNKNOWN) in genders

    totals: dict[int, float] = {}
    pairs: dict[tuple[int, int], list[tuple[int, float]]] = {}
    for edge in snapshot.edges:
        if allowed is not None and edge.company_id not in allowed:
            continue
        if genders is not None and not (gender_ok(edge.a) and gender_ok(edge.b)):
            continue
        totals[edge.a] = totals.get(edge.a, 0.0) + edge.overlap
        totals[edge.b] = totals.get(edge.b, 0.0) + edge.overlap
        pairs.setdefault((edge.a, edge.b), []).append((edge.company_id, edge.overlap))

    pair_edges = {
        key: PairEdge(
            avg_overlap=sum(ov for _, ov in lst) / len(lst),
            companies=tuple(c for c, _ in lst),
            per_company=tuple(lst),
        )
        for key, lst in sorted(pairs.items())
    }
    graph = DirectorGraph(
        nodes=dict(sorted(totals.items())),
        pair_edges=pair_edges,
        provenance=spec,
    )
    if len(cache) < 64:
        cache[spec] = graph
    return graph


class ComponentStat(NamedTuple):
    component_id: int
    node_count: int
    edge_count: int


def clusters(graph: DirectorGraph) -> list[ComponentStat]:
    """Connected components, largest first.

    Ties break by edge count descending, then smallest member id, and
    component ids are assigned in that final order.
    """
    adj = graph.adjacency
    seen: set[int] = set()
    comps: list[tuple[int, int, int]] = []  # (node_count, edge_count, min_id)
    comp_of: dict[int, int] = {}
    raw: list[set[int]] = []
    for start in graph.nodes:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members: set[int] = {start}
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    members.add(nxt)
                    queue.append(nxt)
        raw.append(members)
    for i, members in enumerate(raw):
        for n in members:
            comp_of[n] = i
    edge_counts = [0] * len(raw)
    for a, _b in graph.pair_edges:
        edge_counts[comp_of[a]] += 1
    for i, members in enumerate(raw):
        comps.append((len(members), edge_counts[i], min(members)))
    comps.sort(key=lambda t: (-t[0], -t[1], t[2]))
    return [ComponentStat(i, nc, ec) for i, (nc, ec, _) in enumerate(comps)]


class Hop(NamedTuple):
    """One step of a director-to-director trace; the company shown is the
    strongest (max overlap, then smallest id) of the edges joining the pair."""

    director_id: int
    next_director_id: int
    company_id: int
    overlap: float


def shortest_path(
    snapshot: Snapshot,
    from_id: int,
    to_id: int,
    spec: FilterSpec = FilterSpec(),
) -> Optional[list[Hop]]:
    """Minimum-hop trace between two directors over the filtered graph.

    Among equal-length paths the lexicographically smallest director-id
    sequence wins, so results are deterministic. Returns an empty list when
    from == to and None when the pair is disconnected.
    """
    for label, did in (("from", from_id), ("to", to_id)):
        if did not in snapshot.directors:
            raise KeyError(f"unknown director id {did} ({label})")
    if from_id == to_id:
        return []

    graph = build_graph(snapshot, spec)
    if from_id not in graph.nodes or to_id not in graph.nodes:
        return None
    adj = graph.adjacency

    # BFS from the target gives distance-to-target; a greedy smallest-id
    # walk from the source then yields the lexicographically smallest
    # shortest path.
    dist: dict[int, int] = {to_id: 0}
    queue = deque([to_id])
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = d
                queue.append(nxt)
    if from_id not in dist:
        return None

    hops: list[Hop] = []
    cur = from_id
    while cur != to_id:
        remaining = dist[cur] - 1
        nxt = next(n for n in adj[cur] if dist.get(n) == remaining)  # adj sorted
        pair = graph.get_pair(cur, nxt)
        assert pair is not None
        company_id, overlap = max(pair.per_company, key=lambda co: (co[1], -co[0]))
        hops.append(Hop(cur, nxt, company_id, overlap))
        cur = nxt
    return hops


class Interlock(NamedTuple):
    company_a: int
    company_b: int
    shared_directors: frozenset[int]
    count: int


def company_interlocks(snapshot: Snapshot, min_shared: int = 1) -> list[Interlock]:
    """Unordered company pairs whose current boards (factors-file seats)
    share at least ``min_shared`` directors; strongest overlaps first."""
    if min_shared < 1:
        raise ValueError(f"min_shared must be >= 1, got {min_shared}")
    shared: dict[tuple[int, int], set[int]] = {}
    for did, seats in snapshot.seats_by_director.items():
        if len(seats) < 2:
            continue
        cids = sorted({s.company_id for s in seats})
        for i, ca in enumerate(cids):
            for cb in cids[i + 1 :]:
                shared.setdefault((ca, cb), set()).add(did)
    out = [
        Interlock(ca, cb, frozenset(dids), len(dids))
        for (ca, cb), dids in shared.items()
        if len(dids) >= min_shared
    ]
    out.sort(key=lambda il: (-il.count, il.company_a, il.company_b))
    return out
