"""Independent brute-force oracles the tests check the real code against.

Everything here is written the dumbest correct way (explicit folds, plain
BFS, union-find) and shares no code path with the package.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from boardgraph.model import Gender, SeatRecord


def mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def fold_director_group(rows: Sequence[SeatRecord]) -> dict:
    """Field-by-field max over one director's seat rows, spelled out."""
    names = sorted({r.director_name for r in rows if r.director_name})
    genders = {r.gender for r in rows} - {Gender.UNKNOWN}
    if genders == {Gender.FEMALE, Gender.MALE}:
        gender = Gender.MALE
    elif len(genders) == 1:
        gender = genders.pop()
    else:
        gender = Gender.UNKNOWN
    ages = [r.age for r in rows if r.age is not None]
    return {
        "full_name": names[-1] if names else "",
        "gender": gender,
        "age": max(ages) if ages else None,
        "co_served": any(r.co_served for r in rows),
        "activist": any(r.activist for r in rows),
    }


def bfs_hops(
    pairs: Iterable[tuple[int, int]],
    src: int,
    dst: int,
) -> Optional[int]:
    """Hop distance between two nodes over an undirected pair set."""
    if src == dst:
        return 0
    adj: dict[int, set[int]] = {}
    for a, b in pairs:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if src not in adj or dst not in adj:
        return None
    dist = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                if nxt == dst:
                    return dist[nxt]
                queue.append(nxt)
    return None


def bfs_all_dists(pairs: Iterable[tuple[int, int]], src: int) -> dict[int, int]:
    adj: dict[int, set[int]] = {}
    for a, b in pairs:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    dist = {src: 0}
    if src not in adj:
        return dist
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


class UnionFind:
    """Classic disjoint-set with path compression; the clusters oracle."""

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return out


def _seat_passes(snapshot, seat, countries, leagues, sectors, genders, family) -> bool:
    company = snapshot.companies[seat.company_id]
    if countries is not None and company.hq_country not in countries:
        return False
    if leagues is not None and company.league not in leagues:
        return False
    if sectors is not None and company.sector not in sectors:
        return False
    if family is not None and seat.family != family:
        return False
    if genders is not None and snapshot.directors[seat.director_id].gender not in genders:
        return False
    return True


def oracle_tenure(snapshot, countries=None, leagues=None, sectors=None, genders=None, family=None):
    """Naive filter-then-fold tenure means: {(league, sector): (mean, n)}."""
    cells: dict[tuple, list[float]] = {}
    for seat in snapshot.seats:
        if seat.tenure is None:
            continue
        if not _seat_passes(snapshot, seat, countries, leagues, sectors, genders, family):
            continue
        company = snapshot.companies[seat.company_id]
        cells.setdefault((company.league, company.sector), []).append(seat.tenure)
    return {key: (mean(vals), len(vals)) for key, vals in cells.items()}


def oracle_gender(snapshot, countries=None, leagues=None, sectors=None, genders=None, family=None):
    """Naive per-country gender shares: {country: (seat_share_f, inf_share_f)}."""
    buckets: dict[str, list[tuple[Gender, float]]] = {}
    for seat in snapshot.seats:
        if seat.inf_today is None:
            continue
        g = snapshot.directors[seat.director_id].gender
        if g is Gender.UNKNOWN:
            continue
        if not _seat_passes(snapshot, seat, countries, leagues, sectors, genders, family):
            continue
        country = snapshot.companies[seat.company_id].hq_country
        buckets.setdefault(country, []).append((g, seat.inf_today))
    out = {}
    for country, pairs in buckets.items():
        total = sum(v for _, v in pairs)
        if total <= 0:
            continue
        fem = [v for g, v in pairs if g is Gender.FEMALE]
        out[country] = (len(fem) / len(pairs), sum(fem) / total)
    return out


def oracle_influence(snapshot, countries=None, leagues=None, sectors=None, genders=None, family=None):
    """Naive per-country influence: {country: (mean_today, {year: mean})}."""
    seats_by_key = {(s.director_id, s.company_id): s for s in snapshot.seats}
    trend: dict[str, dict[int, list[float]]] = {}
    for row in snapshot.inf_long:
        seat = seats_by_key[(row.director_id, row.company_id)]
        if not _seat_passes(snapshot, seat, countries, leagues, sectors, genders, family):
            continue
        trend.setdefault(row.hq_country, {}).setdefault(row.year, []).append(row.inf)
    today: dict[str, list[float]] = {}
    for seat in snapshot.seats:
        if seat.inf_today is None:
            continue
        if not _seat_passes(snapshot, seat, countries, leagues, sectors, genders, family):
            continue
        today.setdefault(snapshot.companies[seat.company_id].hq_country, []).append(seat.inf_today)
    return {
        country: (
            mean(today[country]) if country in today else None,
            {year: mean(vals) for year, vals in by_year.items()},
        )
        for country, by_year in trend.items()
    }


def component_sizes(pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """(node_count, edge_count) per component via union-find, largest first."""
    uf = UnionFind()
    pair_list = list(pairs)
    for a, b in pair_list:
        uf.union(a, b)
    edge_counts: dict[int, int] = {}
    for a, _b in pair_list:
        root = uf.find(a)
        edge_counts[root] = edge_counts.get(root, 0) + 1
    sizes = [
        (len(members), edge_counts.get(root, 0))
        for root, members in uf.groups().items()
    ]
    sizes.sort(key=lambda t: (-t[0], -t[1]))
    return sizes
