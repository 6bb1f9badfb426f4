"""Exact Max Partial H-Coloring on hereditary graph classes."""

from .branching import (
    BranchPair,
    GuessCapExceeded,
    StarPartition,
    branch_full,
    branch_simplified,
    derived_revenue,
    disallowed_pairs,
    enumerate_guesses,
    partition_around,
    ramsey_bound,
    strip_cross_edges,
)
from .decomposition import MDNode, modular_decomposition
from .graph import Graph, clique_number, contains_induced, find_induced
from .hardness import ListInstance, build_H0, reduce_3col_to_cobipartite, reduce_3col_to_split
from .model import (
    Instance,
    MulticolorInstance,
    Pattern,
    from_list_instance,
    hat,
    is_valid,
    pattern,
    revenue,
    solve_edgeless,
    strip_negative,
    to_multicolor,
)
from .modular import (
    PatternCapExceeded,
    combine_modules,
    restrict_revenue,
    solve_bullfree,
    solve_bullfree_c5free_prime,
    solve_multicolor_dp,
    solve_via_prime_reduction,
)
from .monitor import MonitorBase, NoMonitorBase, find_monitor_base, is_monitor
from .oracle import CapExceeded, oracle_3coloring, oracle_list_hcolor, oracle_solve, oracle_solve_multicolor
from .recognition import ClassViolation, StructureViolation, recognize
from .sampling import SamplingError, random_instance, sample_in_class
from .solvers import (
    NotCograph,
    SolveReport,
    SolverConfig,
    solve_cograph,
    solve_recursive,
    solve_subexponential,
    solve_threshold_excluded,
)

__all__ = [
    "BranchPair",
    "GuessCapExceeded",
    "StarPartition",
    "branch_full",
    "branch_simplified",
    "derived_revenue",
    "disallowed_pairs",
    "enumerate_guesses",
    "partition_around",
    "ramsey_bound",
    "strip_cross_edges",
    "MDNode",
    "modular_decomposition",
    "Graph",
    "clique_number",
    "contains_induced",
    "find_induced",
    "ListInstance",
    "build_H0",
    "reduce_3col_to_cobipartite",
    "reduce_3col_to_split",
    "Instance",
    "MulticolorInstance",
    "Pattern",
    "from_list_instance",
    "hat",
    "is_valid",
    "pattern",
    "revenue",
    "solve_edgeless",
    "strip_negative",
    "to_multicolor",
    "PatternCapExceeded",
    "combine_modules",
    "restrict_revenue",
    "solve_bullfree",
    "solve_bullfree_c5free_prime",
    "solve_multicolor_dp",
    "solve_via_prime_reduction",
    "MonitorBase",
    "NoMonitorBase",
    "find_monitor_base",
    "is_monitor",
    "CapExceeded",
    "oracle_3coloring",
    "oracle_list_hcolor",
    "oracle_solve",
    "oracle_solve_multicolor",
    "ClassViolation",
    "StructureViolation",
    "recognize",
    "SamplingError",
    "random_instance",
    "sample_in_class",
    "NotCograph",
    "SolveReport",
    "SolverConfig",
    "solve_cograph",
    "solve_recursive",
    "solve_subexponential",
    "solve_threshold_excluded",
]

__version__ = "0.1.0"
