"""Benchmark sweeps: generate instances, run algorithms, emit CSV tables.

A sweep varies one generator parameter over a list of values, runs every
(value, seed) cell through the configured algorithms, validates each
output, and collects rows. Cells are independent jobs; the table is
assembled in canonical (value, seed, algorithm) order so output does not
depend on scheduling. Runtime measurement is off by default because the
CSV contract is byte-identical reruns; pass measure_runtime (or --timing
on the CLI) to record wall-clock times instead of zeros.
"""

from __future__ import annotations

import enum
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .baselines import (
    MetaheuristicParams,
    solve_aco,
    solve_bco,
    solve_ga,
    solve_mst_prune,
    solve_sp_union,
)
from .generator import GenConfig, generate_instance, generate_regular_instance
from .model import FlowSolution, Instance
from .oracle import brute_force_optimum
from .solver import solve_ost
from .validation import check_constraints


class SweepKind(enum.Enum):
    NODE_COUNT = "node-count"
    NODE_COUNT_SMALL = "node-count-small"
    AVG_DEGREE = "avg-degree"
    REGULAR_DEGREE = "regular-degree"
    USER_COUNT = "user-count"
    DEMAND_VARIANCE = "demand-variance"


ALGORITHM_NAMES = ("ost", "oracle", "mst", "spt", "ga", "aco", "bco")

DEFAULT_BASE = GenConfig(node_count=100, avg_degree=4.0, terminal_count=8)


@dataclass(frozen=True)
class SweepConfig:
    sweep_kind: SweepKind
    values: tuple[float, ...]
    trials: int = 30
    base: GenConfig = DEFAULT_BASE
    algorithms: tuple[str, ...] = ("ost", "mst", "spt", "ga", "aco", "bco")
    params: MetaheuristicParams = MetaheuristicParams()
    ost_terminal_cap: int = 16
    measure_runtime: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.values:
            raise ValueError("values must be nonempty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be strictly increasing")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        unknown = [a for a in self.algorithms if a not in ALGORITHM_NAMES]
        if unknown:
            raise ValueError(f"unknown algorithm(s): {unknown}")
        if not self.algorithms:
            raise ValueError("algorithms must be nonempty")


@dataclass(frozen=True)
class ResultRow:
    sweep_kind: str
    sweep_value: float
    seed: int
    algorithm: str
    cost: float
    runtime_ms: float
    feasible: bool


@dataclass(frozen=True)
class SummaryRow:
    sweep_value: float
    algorithm: str
    mean_cost: float
    std_cost: float
    improvement_pct: float


def _cell_instance(cfg: SweepConfig, value: float, seed: int) -> Instance:
    base = cfg.base
    kind = cfg.sweep_kind
    if kind in (SweepKind.NODE_COUNT, SweepKind.NODE_COUNT_SMALL):
        return generate_instance(replace(base, node_count=int(value), seed=seed))
    if kind is SweepKind.AVG_DEGREE:
        return generate_instance(replace(base, avg_degree=float(value), seed=seed))
    if kind is SweepKind.REGULAR_DEGREE:
        return generate_regular_instance(replace(base, seed=seed), int(value))
    if kind is SweepKind.USER_COUNT:
        return generate_instance(replace(base, terminal_count=int(value), seed=seed))
    if kind is SweepKind.DEMAND_VARIANCE:
        delta = float(value)
        spread = ((0.5 - delta, 1 / 3), (0.5, 1 / 3), (0.5 + delta, 1 / 3))
        return generate_instance(replace(base, demand_set=spread, seed=seed))
    raise ValueError(f"unhandled sweep kind {kind}")


def _solve_named(inst: Instance, name: str, params: MetaheuristicParams) -> FlowSolution:
    if name == "ost":
        return solve_ost(inst)
    if name == "oracle":
        return brute_force_optimum(inst)
    if name == "mst":
        return solve_mst_prune(inst)
    if name == "spt":
        return solve_sp_union(inst)
    if name == "ga":
        return solve_ga(inst, params)
    if name == "aco":
        return solve_aco(inst, params)
    if name == "bco":
        return solve_bco(inst, params)
    raise ValueError(f"unknown algorithm {name}")


def _run_cell(cfg: SweepConfig, value: float, seed: int) -> list[ResultRow]:
    inst = _cell_instance(cfg, value, seed)
    params = replace(cfg.params, seed=seed)
    rows = []
    for name in cfg.algorithms:
        if name == "ost" and inst.terminal_count > cfg.ost_terminal_cap:
            print(
                f"warning: skipping ost at value {value} seed {seed}: "
                f"{inst.terminal_count} terminals exceed cap {cfg.ost_terminal_cap}",
                file=sys.stderr,
            )
            continue
        sol = _solve_named(inst, name, params)
        feasible = not check_constraints(inst, sol)
        rows.append(
            ResultRow(
                sweep_kind=cfg.sweep_kind.value,
                sweep_value=value,
                seed=seed,
                algorithm=name,
                cost=sol.cost,
                runtime_ms=sol.runtime_ms if cfg.measure_runtime else 0.0,
                feasible=feasible,
            )
        )
    return rows


def _worker(job: tuple[SweepConfig, float, int]) -> list[ResultRow]:
    return _run_cell(*job)


def worker_count() -> int:
    """Worker cap from OST_THREADS; 0 or unset means all cores."""
    raw = os.environ.get("OST_THREADS", "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        return os.cpu_count() or 1
    return os.cpu_count() or 1 if n <= 0 else n


def run_sweep(cfg: SweepConfig) -> list[ResultRow]:
    """Run every (value, seed) cell; deterministic for a given config."""
    jobs = [(cfg, value, seed) for value in cfg.values for seed in range(cfg.trials)]
    workers = worker_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(_worker, jobs, chunksize=1))
    else:
        per_cell = [_run_cell(*job) for job in jobs]
    rows = [row for cell in per_cell for row in cell]
    rows.sort(key=lambda r: (r.sweep_value, r.seed, r.algorithm))
    return rows


def summarize(table: list[ResultRow]) -> list[SummaryRow]:
    """Per (value, algorithm) means and the improvement of ost over each
    algorithm: 100 * (mean_alg - mean_ost) / mean_alg."""
    groups: dict[tuple[float, str], list[float]] = {}
    for row in table:
        groups.setdefault((row.sweep_value, row.algorithm), []).append(row.cost)
    values = sorted({v for v, _ in groups})
    missing = [v for v in values if (v, "ost") not in groups]
    if missing:
        raise ValueError(f"missing ost rows for sweep value(s) {missing}")
    summary = []
    for value, algorithm in sorted(groups):
        costs = groups[(value, algorithm)]
        mean = sum(costs) / len(costs)
        var = sum((c - mean) ** 2 for c in costs) / len(costs)
        mean_ost = sum(groups[(value, "ost")]) / len(groups[(value, "ost")])
        improvement = 0.0 if mean == 0 else 100.0 * (mean - mean_ost) / mean
        summary.append(
            SummaryRow(
                sweep_value=value,
                algorithm=algorithm,
                mean_cost=mean,
                std_cost=math.sqrt(var),
                improvement_pct=improvement,
            )
        )
    return summary


_RESULT_HEADER = "sweep_kind,sweep_value,seed,algorithm,cost,runtime_ms,feasible"
_SUMMARY_HEADER = "sweep_value,algorithm,mean_cost,std_cost,improvement_pct"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def emit_csv(table: list[ResultRow] | list[SummaryRow]) -> str:
    """Canonical CSV text; an empty table emits the result header only."""
    if table and isinstance(table[0], SummaryRow):
        lines = [_SUMMARY_HEADER]
        for row in sorted(table, key=lambda r: (r.sweep_value, r.algorithm)):
            lines.append(
                ",".join(
                    _fmt(x)
                    for x in (
                        row.sweep_value,
                        row.algorithm,
                        row.mean_cost,
                        row.std_cost,
                        row.improvement_pct,
                    )
                )
            )
    else:
        lines = [_RESULT_HEADER]
        for row in sorted(table, key=lambda r: (r.sweep_value, r.seed, r.algorithm)):
            lines.append(
                ",".join(
                    _fmt(x)
                    for x in (
                        row.sweep_kind,
                        row.sweep_value,
                        row.seed,
                        row.algorithm,
                        row.cost,
                        row.runtime_ms,
                        row.feasible,
                    )
                )
            )
    return "\n".join(lines) + "\n"
