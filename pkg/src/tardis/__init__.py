"""Minimum temporal reachability dominating sets and MaxMinTaRDiS."""
from .core import (GraphClass, Semantics, StaticGraph, TemporalGraph, classify, parse_temporal_graph,
                   serialize_temporal_graph, weakly_locally_earliest_edges)
from .errors import (BudgetExceededError, InfeasibleError, ParseError, PreconditionError, SizeLimitError,
                     TardisError)
from .exact import (TardisResult, canonicalize_tardis, min_tardis_bruteforce, min_tardis_setcover,
                    min_tardis_special)
from .maxmin import MaxMinResult, max_d3is, maxmin_value, min_dominating_set
from .reach import closure, foremost_arrivals, is_tardis, reach_set
from .tree import min_tardis_tree
from .treewidth import min_tardis_treewidth

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "GraphClass", "InfeasibleError", "MaxMinResult", "ParseError",
    "PreconditionError", "Semantics", "SizeLimitError", "StaticGraph", "TardisError", "TardisResult",
    "TemporalGraph", "canonicalize_tardis", "classify", "closure", "foremost_arrivals", "is_tardis",
    "max_d3is", "maxmin_value", "min_dominating_set", "min_tardis_bruteforce", "min_tardis_setcover",
    "min_tardis_special", "min_tardis_tree", "min_tardis_treewidth", "parse_temporal_graph",
    "reach_set", "serialize_temporal_graph", "weakly_locally_earliest_edges",
]
