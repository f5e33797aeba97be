"""Feasibility and structure checks for flow solutions.

Three independent batteries:

* ``check_constraints``: the feasibility constraints every solution must
  satisfy (positive flows on real edges, relay nodes never push more than
  they receive, source supply covers the largest demand, every terminal
  receives its demand). Streams replicate at relays, so conservation is
  max-out <= max-in rather than sum conservation.
* ``check_tree``: structural shape of minimal solutions (flow support is
  a tree rooted at the source, oriented away from it, every leaf required).
* ``check_flow_law``: on a tree, each edge must carry exactly the largest
  demand among the terminals below it. A test oracle for minimal solver
  outputs, not a feasibility requirement.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .model import FlowSolution, Instance

TOL = 1e-9


class Code(enum.Enum):
    NEG_FLOW = "NEG_FLOW"
    NONEDGE_FLOW = "NONEDGE_FLOW"
    RELAY_CONSERVATION = "RELAY_CONSERVATION"
    SOURCE_SUPPLY = "SOURCE_SUPPLY"
    TERMINAL_DEMAND = "TERMINAL_DEMAND"
    NOT_TREE = "NOT_TREE"
    LEAF_NOT_TERMINAL = "LEAF_NOT_TERMINAL"
    BAD_ORIENTATION = "BAD_ORIENTATION"
    FLOW_LAW = "FLOW_LAW"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Violation:
    code: Code
    location: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code} {self.location} {self.detail}"


def total_cost(inst: Instance, sol: FlowSolution) -> float:
    """Objective value sum(weight * flow); raises on flow over a non-edge."""
    cost = 0.0
    for (u, v), f in sorted(sol.flows.items()):
        if not inst.graph.has_edge(u, v):
            raise ValueError(f"flow on edge ({u}, {v}) absent from graph")
        cost += inst.graph.weight(u, v) * f
    return cost


def check_constraints(inst: Instance, sol: FlowSolution) -> list[Violation]:
    """Feasibility constraints; violations are data, the list may be empty."""
    violations = []
    max_in = [0.0] * inst.graph.node_count
    max_out = [0.0] * inst.graph.node_count
    for (u, v), f in sorted(sol.flows.items()):
        loc = f"({u},{v})"
        if f <= 0:
            violations.append(Violation(Code.NEG_FLOW, loc, f"flow {f} is not positive"))
            continue
        if not (
            0 <= u < inst.graph.node_count
            and 0 <= v < inst.graph.node_count
            and inst.graph.has_edge(u, v)
        ):
            violations.append(Violation(Code.NONEDGE_FLOW, loc, "edge absent from graph"))
            continue
        max_out[u] = max(max_out[u], f)
        max_in[v] = max(max_in[v], f)
    for i in range(inst.graph.node_count):
        if i == inst.source:
            continue
        if max_out[i] > max_in[i] + TOL:
            violations.append(
                Violation(
                    Code.RELAY_CONSERVATION,
                    f"node {i}",
                    f"max outflow {max_out[i]} exceeds max inflow {max_in[i]}",
                )
            )
    top_demand = inst.max_demand()
    if max_out[inst.source] + TOL < top_demand:
        violations.append(
            Violation(
                Code.SOURCE_SUPPLY,
                f"node {inst.source}",
                f"max outflow {max_out[inst.source]} below max demand {top_demand}",
            )
        )
    for t, demand in sorted(inst.terminals.items()):
        if max_in[t] + TOL < demand:
            violations.append(
                Violation(
                    Code.TERMINAL_DEMAND,
                    f"node {t}",
                    f"max inflow {max_in[t]} below demand {demand}",
                )
            )
    return violations


def _support_tree(inst: Instance, sol: FlowSolution):
    """Rooted-tree view of the flow support, or a NOT_TREE violation.

    Returns (parent, children, order) with parent/children from a BFS
    rooted at the source, or (None, None, violation) when the support is
    not a tree containing source and terminals.
    """
    nodes = set()
    undirected = set()
    for u, v in sol.flows:
        nodes.add(u)
        nodes.add(v)
        key = (min(u, v), max(u, v))
        if key in undirected:
            return None, None, Violation(
                Code.NOT_TREE, f"({u},{v})", "edge carries flow in both directions"
            )
        undirected.add(key)
    if inst.source not in nodes:
        return None, None, Violation(
            Code.NOT_TREE, f"node {inst.source}", "source not in support"
        )
    missing = [t for t in sorted(inst.terminals) if t not in nodes]
    if missing:
        return None, None, Violation(
            Code.NOT_TREE, f"node {missing[0]}", "terminal not in support"
        )
    neighbors: dict[int, list[int]] = {n: [] for n in nodes}
    for a, b in sorted(undirected):
        neighbors[a].append(b)
        neighbors[b].append(a)
    parent: dict[int, int] = {inst.source: -1}
    order = [inst.source]
    queue = deque([inst.source])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
                queue.append(v)
    if len(parent) != len(nodes):
        stranded = min(n for n in nodes if n not in parent)
        return None, None, Violation(
            Code.NOT_TREE, f"node {stranded}", "support is disconnected from the source"
        )
    if len(undirected) != len(nodes) - 1:
        return None, None, Violation(Code.NOT_TREE, "support", "support contains a cycle")
    children: dict[int, list[int]] = {n: [] for n in nodes}
    for v, p in parent.items():
        if p != -1:
            children[p].append(v)
    return parent, children, None


def check_tree(inst: Instance, sol: FlowSolution) -> list[Violation]:
    """Rooted-tree shape of minimal solutions (support, orientation, leaves)."""
    parent, children, problem = _support_tree(inst, sol)
    if problem is not None:
        return [problem]
    violations = []
    for u, v in sorted(sol.flows):
        if parent[v] != u:
            violations.append(
                Violation(Code.BAD_ORIENTATION, f"({u},{v})", "flow points toward the source")
            )
    for node in sorted(children):
        if not children[node] and node != inst.source and node not in inst.terminals:
            violations.append(
                Violation(Code.LEAF_NOT_TERMINAL, f"node {node}", "leaf is not a terminal")
            )
    return violations


def check_flow_law(inst: Instance, sol: FlowSolution) -> list[Violation]:
    """Each tree edge must carry the max demand among terminals below it.

    Precondition: ``check_tree`` passes; raises ValueError otherwise.
    """
    if check_tree(inst, sol):
        raise ValueError("not a tree")
    parent, children, _ = _support_tree(inst, sol)
    # Bottom-up max demand per subtree, in reverse BFS order.
    order = [inst.source]
    queue = deque([inst.source])
    while queue:
        u = queue.popleft()
        for v in children[u]:
            order.append(v)
            queue.append(v)
    submax: dict[int, float] = {}
    for node in reversed(order):
        best = inst.terminals.get(node, 0.0)
        for child in children[node]:
            best = max(best, submax[child])
        submax[node] = best
    violations = []
    for (u, v), f in sorted(sol.flows.items()):
        required = submax[v]
        if abs(f - required) > TOL:
            violations.append(
                Violation(
                    Code.FLOW_LAW,
                    f"({u},{v})",
                    f"flow {f} but max demand below is {required}",
                )
            )
    return violations
