"""c2 invariants of decompletions of 4-regular graphs.

Point counting over prime fields by three mutually checking routes, plus
machine-checked sweeps of the completion-symmetry involutions and orbit
arguments.  See the README for the library map; the `c2lab` console script
exposes the compute / verify-completion / sweep-involutions /
check-identities commands.
"""

__version__ = "0.1.0"

from .errors import (BudgetExceededError, C2LabError, GraphParseError,
                     InputError, InternalInconsistencyError,
                     StructuralAssumptionError)
from .graph import (Graph, circulant, classify_adjacent_pair, complete_graph,
                    cycle_graph, decomplete, octahedron, parse_edge_list,
                    parse_graph6)
from .point_count import (c2_denom, c2_direct, c2_partition, compute_routes,
                          count_zeros)

__all__ = [
    "__version__",
    "BudgetExceededError", "C2LabError", "GraphParseError", "InputError",
    "InternalInconsistencyError", "StructuralAssumptionError",
    "Graph", "circulant", "classify_adjacent_pair", "complete_graph",
    "cycle_graph", "decomplete", "octahedron", "parse_edge_list",
    "parse_graph6",
    "c2_denom", "c2_direct", "c2_partition", "compute_routes", "count_zeros",
]
