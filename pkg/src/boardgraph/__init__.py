"""boardgraph: board-of-directors co-service network engine.

Ingests the director-factors and board-connection-edges files, cleans them
into an immutable snapshot, and answers governance queries: filtered
director networks, influence and tenure aggregates, gender power gaps,
company interlocks, and shortest connection traces.
"""
from .ingest import build_snapshot, inf_prev4_avg, league_description, parse_bce, parse_dif
from .graph import build_graph, clusters, company_interlocks, normalize_edges, shortest_path
from .model import FilterSpec, Gender, League, Ownership, Snapshot
from .snapshot_io import load_snapshot, save_snapshot, validate_snapshot
from .synth import SynthConfig, generate

__version__ = "0.1.0"

__all__ = [
    "FilterSpec",
    "Gender",
    "League",
    "Ownership",
    "Snapshot",
    "SynthConfig",
    "build_graph",
    "build_snapshot",
    "clusters",
    "company_interlocks",
    "generate",
    "inf_prev4_avg",
    "league_description",
    "load_snapshot",
    "normalize_edges",
    "parse_bce",
    "parse_dif",
    "save_snapshot",
    "shortest_path",
    "validate_snapshot",
    "__version__",
]
