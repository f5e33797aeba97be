"""Data model: weighted graphs, problem instances, and flow solutions.

A problem instance is an undirected weighted graph, a single source node,
and a set of terminal nodes each with a positive rate demand. A solution
assigns positive flows to directed edges so that every terminal receives
at least its demanded rate from the source.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace


class InstanceError(ValueError):
    """Raised when a graph or instance violates a structural invariant."""


class InfeasibleInstanceError(ValueError):
    """Raised when a solver is handed an instance with no feasible solution.

    Carries the validation report that explains why.
    """

    def __init__(self, report: list[str]):
        super().__init__("infeasible instance: " + "; ".join(report))
        self.report = report


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph on nodes 0..node_count-1.

    Edge weights are nonnegative unit transmission costs. Edges are stored
    normalized (u < v) and sorted; ``adjacency`` and the weight lookup are
    derived at construction. Instances are treated as immutable.
    """

    node_count: int
    edges: tuple[tuple[int, int, float], ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.node_count < 1:
            raise InstanceError(f"node_count must be positive, got {self.node_count}")
        normalized = []
        seen = set()
        for edge in self.edges:
            try:
                u, v, w = edge
            except (TypeError, ValueError):
                raise InstanceError(f"edge {edge!r} is not a (u, v, weight) triple")
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InstanceError(f"edge ({u}, {v}) has node id outside [0, {self.node_count})")
            if u == v:
                raise InstanceError(f"self-loop at node {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            if w < 0:
                raise InstanceError(f"edge ({u}, {v}) has negative weight {w}")
            seen.add((u, v))
            normalized.append((u, v, w))
        normalized.sort()
        object.__setattr__(self, "edges", tuple(normalized))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.node_count)]
        for u, v, w in normalized:
            adj[u].append((v, w))
            adj[v].append((u, w))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._weights

    def weight(self, u: int, v: int) -> float:
        """Weight of the undirected edge {u, v}; KeyError if absent."""
        return self._weights[(min(u, v), max(u, v))]

    @property
    def _weights(self) -> dict[tuple[int, int], float]:
        cached = self.__dict__.get("_weights_cache")
        if cached is None:
            cached = {(u, v): w for u, v, w in self.edges}
            object.__setattr__(self, "_weights_cache", cached)
        return cached

    def reachable_from(self, start: int) -> set[int]:
        """Nodes reachable from ``start`` by BFS."""
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


@dataclass(frozen=True)
class Instance:
    """A routing problem: graph, source node, and per-terminal demands.

    ``terminals`` maps terminal node id to its positive demand. The source
    is never a terminal. Reachability of terminals is a semantic check
    done by :func:`validate_instance`, not a construction invariant.
    """

    graph: Graph
    source: int
    terminals: dict[int, float]

    def __post_init__(self):
        object.__setattr__(self, "terminals", dict(self.terminals))
        for problem in _instance_problems(self):
            raise InstanceError(problem)

    @property
    def terminal_count(self) -> int:
        return len(self.terminals)

    def max_demand(self) -> float:
        return max(self.terminals.values())

    def with_demands(self, terminals: dict[int, float]) -> "Instance":
        return replace(self, terminals=terminals)


def _instance_problems(inst: Instance) -> list[str]:
    problems = []
    n = inst.graph.node_count
    if not (0 <= inst.source < n):
        problems.append(f"source {inst.source} outside [0, {n})")
    if inst.source in inst.terminals:
        problems.append("source in terminal set")
    if not inst.terminals:
        problems.append("terminal set is empty")
    if len(inst.terminals) > n - 1:
        problems.append(f"{len(inst.terminals)} terminals exceed node_count - 1 = {n - 1}")
    for t, demand in sorted(inst.terminals.items()):
        if not (0 <= t < n):
            problems.append(f"terminal {t} outside [0, {n})")
        if demand <= 0:
            problems.append(f"terminal {t} has nonpositive demand {demand}")
    return problems


def validate_instance(inst: Instance) -> list[str]:
    """Check an instance for feasibility; returns violations, empty = valid.

    Re-runs the structural invariants defensively, then checks that every
    terminal is reachable from the source (the only way a structurally
    well-formed instance can lack a feasible solution).
    """
    problems = _instance_problems(inst)
    if problems:
        return problems
    reachable = inst.graph.reachable_from(inst.source)
    for t in sorted(inst.terminals):
        if t not in reachable:
            problems.append(f"terminal {t} unreachable from source")
    return problems


@dataclass(frozen=True)
class FlowSolution:
    """Directed edge flows with their total weighted cost.

    Keys of ``flows`` are (parent, child) pairs oriented away from the
    source; every flow is positive and every keyed edge exists undirected
    in the instance graph. ``cost`` is the sum of weight * flow.
    """

    flows: dict[tuple[int, int], float]
    cost: float
    algorithm: str
    runtime_ms: float = 0.0

    def sorted_flows(self) -> list[tuple[int, int, float]]:
        return [(u, v, f) for (u, v), f in sorted(self.flows.items())]


def make_solution(
    inst: Instance,
    flows: dict[tuple[int, int], float],
    algorithm: str,
    runtime_ms: float = 0.0,
) -> FlowSolution:
    """Build a FlowSolution, computing cost from the flows.

    Zero flows are dropped; negative flows or flows on absent edges are
    construction bugs and raise.
    """
    kept: dict[tuple[int, int], float] = {}
    cost = 0.0
    for (u, v), f in sorted(flows.items()):
        if f < 0:
            raise ValueError(f"negative flow {f} on edge ({u}, {v})")
        if f == 0:
            continue
        if not inst.graph.has_edge(u, v):
            raise ValueError(f"flow on edge ({u}, {v}) absent from graph")
        kept[(u, v)] = f
        cost += inst.graph.weight(u, v) * f
    return FlowSolution(flows=kept, cost=cost, algorithm=algorithm, runtime_ms=runtime_ms)
