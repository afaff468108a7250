"""Analytic continuation around the torus cycles."""
from .core import (
    MONODROMY_REPORT_SCHEMA,
    Classification,
    MonodromyReport,
    PairResult,
    Tag,
    canonical_pair,
    classify,
    lame_monodromy,
    match_pairs,
    monodromy_pair,
    reduced_eigenvalue_check,
    reduced_monodromy,
    transfer_matrix,
)
from .integrate import IntegrationStats, PathSpec, polyline, transport
from .paths import cycle_pair, cycle_path, min_clearance
from .systems import ODESystem, build_system

__all__ = [
    "MONODROMY_REPORT_SCHEMA",
    "Classification",
    "MonodromyReport",
    "PairResult",
    "Tag",
    "canonical_pair",
    "classify",
    "lame_monodromy",
    "match_pairs",
    "monodromy_pair",
    "reduced_eigenvalue_check",
    "reduced_monodromy",
    "transfer_matrix",
    "IntegrationStats",
    "PathSpec",
    "polyline",
    "transport",
    "cycle_pair",
    "cycle_path",
    "min_clearance",
    "ODESystem",
    "build_system",
]

from .search import NOT_FOUND, GridSpec, SearchResult, unitarity_search  # noqa: E402

__all__ += ["NOT_FOUND", "GridSpec", "SearchResult", "unitarity_search"]
