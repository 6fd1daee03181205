"""Critical node cut toolkit.

Decide whether deleting at most k vertices of an undirected simple graph can
leave at most x ordered connected pairs (equivalently, remove at least y).
Exact engines: subset oracle, bounded search tree in x+k, per-component
dynamic program in y, and a tree-decomposition dynamic program in width + x.
"""

from .branching import BranchDecision, BranchStats, solve_branch_kx
from .component_dp import RemovalTable, YDecision, solve_y
from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decomposition,
    make_nice,
    parse_td,
    serialize_td,
    validate_decomposition,
    validate_nice,
)
from .graph import (
    Cut,
    Graph,
    InputError,
    Refusal,
    VerifyReport,
    connected_components,
    connected_pairs,
    pairs_removed,
    remove_isolated,
    remove_vertices,
    verify_solution,
)
from .harness import HarnessConfig, RunReport, run_instance, select_algorithm
from .instance_io import CncInstance, ParseError, parse_instance, serialize_instance
from .kernel import KernelTrace, kernel_bound_holds, kernelize_kx
from .oracle import (
    CapExceeded,
    OracleResult,
    oracle_decides,
    oracle_max_removed_exact,
    oracle_min_pairs,
)
from .reductions import (
    CliqueInstance,
    GadgetSizes,
    MccLayout,
    ReductionOutput,
    build_mcc_instance,
    cross_compose,
    forward_solution_cut,
    mcc_parameters,
    reduce_clique_bipartite,
    reduce_clique_split,
    reduce_clique_to_cnc,
)
from .treewidth_dp import WxDecision, solve_wx

__version__ = "0.1.0"

__all__ = [
    "BranchDecision",
    "BranchStats",
    "CapExceeded",
    "CliqueInstance",
    "CncInstance",
    "Cut",
    "GadgetSizes",
    "Graph",
    "HarnessConfig",
    "InputError",
    "KernelTrace",
    "MccLayout",
    "NiceTreeDecomposition",
    "OracleResult",
    "ParseError",
    "ReductionOutput",
    "Refusal",
    "RemovalTable",
    "RunReport",
    "TreeDecomposition",
    "VerifyReport",
    "WxDecision",
    "YDecision",
    "build_mcc_instance",
    "connected_components",
    "connected_pairs",
    "cross_compose",
    "forward_solution_cut",
    "heuristic_decomposition",
    "kernel_bound_holds",
    "kernelize_kx",
    "make_nice",
    "mcc_parameters",
    "oracle_decides",
    "oracle_max_removed_exact",
    "oracle_min_pairs",
    "pairs_removed",
    "parse_instance",
    "parse_td",
    "reduce_clique_bipartite",
    "reduce_clique_split",
    "reduce_clique_to_cnc",
    "remove_isolated",
    "remove_vertices",
    "run_instance",
    "select_algorithm",
    "serialize_instance",
    "serialize_td",
    "solve_branch_kx",
    "solve_wx",
    "solve_y",
    "validate_decomposition",
    "validate_nice",
    "verify_solution",
]
