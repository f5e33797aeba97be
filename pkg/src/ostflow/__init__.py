"""ostflow: minimum-cost multicast flow with heterogeneous rate demands.

Exact dynamic-programming solver, brute-force oracle, feasibility and
structure validators, five comparison baselines, a seeded instance
generator, and a benchmark sweep harness with a CLI.
"""

from .baselines import (
    MetaheuristicParams,
    decode_node_subset,
    solve_aco,
    solve_bco,
    solve_ga,
    solve_mst_prune,
    solve_sp_union,
)
from .bench import (
    ResultRow,
    SummaryRow,
    SweepConfig,
    SweepKind,
    emit_csv,
    run_sweep,
    summarize,
)
from .generator import (
    DEFAULT_DEMAND_SET,
    GenConfig,
    generate_instance,
    generate_regular_instance,
)
from .model import (
    FlowSolution,
    Graph,
    InfeasibleInstanceError,
    Instance,
    InstanceError,
    make_solution,
    validate_instance,
)
from .oracle import OracleLimits, brute_force_optimum
from .serialize import (
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .solver import DpTable, dp_grow, dp_init, dp_merge, reconstruct, solve_ost
from .validation import (
    Code,
    Violation,
    check_constraints,
    check_flow_law,
    check_tree,
    total_cost,
)

__version__ = "0.1.0"

__all__ = [
    "Code",
    "DEFAULT_DEMAND_SET",
    "DpTable",
    "FlowSolution",
    "GenConfig",
    "Graph",
    "InfeasibleInstanceError",
    "Instance",
    "InstanceError",
    "MetaheuristicParams",
    "OracleLimits",
    "ResultRow",
    "SummaryRow",
    "SweepConfig",
    "SweepKind",
    "Violation",
    "brute_force_optimum",
    "check_constraints",
    "check_flow_law",
    "check_tree",
    "decode_node_subset",
    "dp_grow",
    "dp_init",
    "dp_merge",
    "emit_csv",
    "generate_instance",
    "generate_regular_instance",
    "make_solution",
    "parse_instance",
    "parse_solution",
    "reconstruct",
    "run_sweep",
    "serialize_instance",
    "serialize_solution",
    "solve_aco",
    "solve_bco",
    "solve_ga",
    "solve_mst_prune",
    "solve_ost",
    "solve_sp_union",
    "summarize",
    "total_cost",
    "validate_instance",
]
