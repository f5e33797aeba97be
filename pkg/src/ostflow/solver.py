"""Exact minimum-cost multicast flow via dynamic programming over terminal subsets.

State H(v, S) is the cheapest flow network delivering every terminal in
subset S its demanded rate from node v. Boundaries: H(d, {d}) = 0 for a
terminal d, H(v, {}) = +inf. Two transitions drive the table, processed
per subset in increasing population count:

* merge: combine the stored solutions of a split {F, S - F} at a common
  node, unioning their edge sets with per-edge flow = max of the two
  (shared edges are paid once, at the larger rate);
* grow: extend a solution for S across one edge, which carries the
  subset's maximum demand; computed as a best-first relaxation seeded
  with all finite entries (same fixed point as exhaustive relaxation
  since weights are nonnegative, but one pass per subset).

The optimum for the full terminal set at the source is exact; flows are
reconstructed on demand from per-state decision records instead of
storing per-state edge sets. A bounded cache of per-state flow vectors
accelerates merge candidate costing; evicted entries are rebuilt from
the decisions, so memory stays capped.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .model import (
    FlowSolution,
    InfeasibleInstanceError,
    Instance,
    make_solution,
    validate_instance,
)

# Decision codes: how cost[v, S] was last improved.
UNSET, LEAF, MERGE, EXTEND = 0, 1, 2, 3

_VECTOR_BUDGET_BYTES = 192 * 1024 * 1024


class _VectorCache:
    """Per-state flow networks as dense vectors over directed edge slots.

    Slot 2e is edge e traversed as stored (u -> v), slot 2e+1 the reverse.
    Vectors are built lazily by following decision records and dropped
    oldest-subset-first when the budget is exceeded (they can always be
    rebuilt). Cached vectors are never mutated in place.
    """

    def __init__(self, inst: Instance, table: "DpTable"):
        edges = inst.graph.edges
        self._kind = table.kind
        self._arg = table.arg
        self._xmax = table.xmax
        self.slot: dict[tuple[int, int], int] = {}
        w2 = np.empty(2 * len(edges))
        for e, (u, v, w) in enumerate(edges):
            self.slot[(u, v)] = 2 * e
            self.slot[(v, u)] = 2 * e + 1
            w2[2 * e] = w
            w2[2 * e + 1] = w
        self.w2 = w2
        self.zero = np.zeros(2 * len(edges))
        self.zero.flags.writeable = False
        self.buckets: dict[int, dict[int, np.ndarray]] = {}
        self.count = 0
        self.budget = max(
            4 * inst.graph.node_count,
            _VECTOR_BUDGET_BYTES // max(1, self.zero.nbytes),
        )

    def purge(self, mask: int) -> None:
        bucket = self.buckets.pop(mask, None)
        if bucket is not None:
            self.count -= len(bucket)

    def _evict(self, keep_mask: int) -> None:
        if self.count <= self.budget:
            return
        for mask in list(self.buckets):
            if self.count <= self.budget:
                break
            if mask != keep_mask:
                self.purge(mask)

    def get(self, v: int, mask: int) -> np.ndarray:
        bucket = self.buckets.get(mask)
        if bucket is not None:
            vec = bucket.get(v)
            if vec is not None:
                return vec
        kind = self._kind
        arg = self._arg
        stack = [(v, mask)]
        while stack:
            node, m = stack[-1]
            bucket = self.buckets.get(m)
            if bucket is not None and node in bucket:
                stack.pop()
                continue
            k = kind[node, m]
            if k == LEAF:
                self._store(m, node, self.zero)
                stack.pop()
            elif k == EXTEND:
                nxt = int(arg[node, m])
                dep = self.buckets.get(m, {}).get(nxt)
                if dep is None:
                    stack.append((nxt, m))
                    continue
                vec = dep.copy()
                s = self.slot[(node, nxt)]
                f = self._xmax[m]
                if vec[s] < f:
                    vec[s] = f
                vec.flags.writeable = False
                self._store(m, node, vec)
                stack.pop()
            elif k == MERGE:
                f_mask = int(arg[node, m])
                g_mask = m ^ f_mask
                a = self.buckets.get(f_mask, {}).get(node)
                b = self.buckets.get(g_mask, {}).get(node)
                if a is None:
                    stack.append((node, f_mask))
                if b is None:
                    stack.append((node, g_mask))
                if a is None or b is None:
                    continue
                vec = np.maximum(a, b)
                vec.flags.writeable = False
                self._store(m, node, vec)
                stack.pop()
            else:
                raise ValueError(f"unreachable state (node {node}, subset {m:#x})")
        self._evict(mask)
        return self.buckets[mask][v]

    def _store(self, mask: int, node: int, vec: np.ndarray) -> None:
        bucket = self.buckets.get(mask)
        if bucket is None:
            bucket = self.buckets[mask] = {}
        if node not in bucket:
            self.count += 1
        bucket[node] = vec


@dataclass
class DpTable:
    """Dense DP state over (node, terminal-subset) pairs.

    Subsets are bitmasks; bit i stands for the i-th terminal in ascending
    node-id order (``terminal_index`` maps node id -> bit). ``kind`` and
    ``arg`` together encode the reconstruction decision per state: a MERGE
    stores the chosen submask, an EXTEND stores the neighbor extended to.
    ``vectors`` is a rebuildable cache, not part of the table's state.
    """

    terminal_index: dict[int, int]
    xmax: list[float]   # per-subset max demand; xmax[0] = 0.0
    cost: np.ndarray    # (M, 2^K) float64, +inf where unreached
    kind: np.ndarray    # (M, 2^K) int8
    arg: np.ndarray     # (M, 2^K) int32
    vectors: _VectorCache = field(repr=False, compare=False, default=None)

    def bit_of(self, terminal: int) -> int:
        return 1 << self.terminal_index[terminal]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.terminal_index)) - 1


def dp_init(inst: Instance) -> DpTable:
    """Table with boundary states only: each terminal costs 0 to itself."""
    terms = sorted(inst.terminals)
    terminal_index = {t: i for i, t in enumerate(terms)}
    demands = [inst.terminals[t] for t in terms]
    k = len(terms)
    m = inst.graph.node_count
    xmax = [0.0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        xmax[mask] = max(xmax[mask ^ low], demands[low.bit_length() - 1])
    cost = np.full((m, 1 << k), math.inf)
    kind = np.zeros((m, 1 << k), dtype=np.int8)
    arg = np.zeros((m, 1 << k), dtype=np.int32)
    for t, i in terminal_index.items():
        cost[t, 1 << i] = 0.0
        kind[t, 1 << i] = LEAF
    table = DpTable(
        terminal_index=terminal_index, xmax=xmax, cost=cost, kind=kind, arg=arg
    )
    table.vectors = _VectorCache(inst, table)
    return table


def _state_flows(table: DpTable, roots: list[tuple[int, int]]) -> dict[tuple[int, int], float]:
    """Union the flow networks of the given (node, subset) states.

    Follows decision records; edges shared between branches keep the
    maximum of their flows. All referenced states must be reachable.
    """
    kind = table.kind
    arg = table.arg
    xmax = table.xmax
    flows: dict[tuple[int, int], float] = {}
    stack = list(roots)
    while stack:
        node, mask = stack.pop()
        k = kind[node, mask]
        if k == LEAF:
            continue
        if k == MERGE:
            sub = int(arg[node, mask])
            stack.append((node, sub))
            stack.append((node, mask ^ sub))
        elif k == EXTEND:
            nxt = int(arg[node, mask])
            f = xmax[mask]
            key = (node, nxt)
            if flows.get(key, 0.0) < f:
                flows[key] = f
            stack.append((nxt, mask))
        else:
            raise ValueError(f"unreachable state (node {node}, subset {mask:#x})")
    return flows


def dp_merge(table: DpTable, inst: Instance, subset: int) -> None:
    """Merge phase for one subset: try every unordered split at every node.

    Splits are enumerated with the half containing the subset's lowest bit,
    in increasing numeric order, so each unordered pair is tried once and
    tie-breaking (strict improvement only) is deterministic. A split whose
    dearer half already matches the incumbent cannot win (union flows are
    at least each half's flows) and is skipped without costing the union.
    """
    cost = table.cost
    kind = table.kind
    arg = table.arg
    vectors = table.vectors
    vectors.purge(subset)
    low = subset & -subset
    splits = []
    sub = (subset - 1) & subset
    while sub:
        if sub & low:
            splits.append(sub)
        sub = (sub - 1) & subset
    splits.reverse()
    current = cost[:, subset]
    w2 = vectors.w2
    for f_mask in splits:
        g_mask = subset ^ f_mask
        floor = np.maximum(cost[:, f_mask], cost[:, g_mask])
        candidates = np.nonzero(floor < current)[0]
        if candidates.size == 0:
            continue
        if candidates.size == 1:
            nodes = [int(candidates[0])]
            merged = np.maximum(
                vectors.get(nodes[0], f_mask), vectors.get(nodes[0], g_mask)
            )
            costs = [float(w2 @ merged)]
        else:
            nodes = [int(v) for v in candidates]
            a = np.stack([vectors.get(v, f_mask) for v in nodes])
            b = np.stack([vectors.get(v, g_mask) for v in nodes])
            costs = np.maximum(a, b) @ w2
        for v, c in zip(nodes, costs):
            c = float(c)
            if c < current[v]:
                current[v] = c
                kind[v, subset] = MERGE
                arg[v, subset] = f_mask


def dp_grow(table: DpTable, inst: Instance, subset: int) -> None:
    """Grow phase: settle the subset's column to its least fixed point.

    One multi-source best-first pass seeded with every finite entry; each
    relaxation pays the subset's maximum demand times the edge weight.
    Ties settle lower node ids first and never displace a decision.
    """
    table.vectors.purge(subset)
    xm = table.xmax[subset]
    column = table.cost[:, subset]
    dist = column.tolist()
    adjacency = inst.graph.adjacency
    heap = [(d, v) for v, d in enumerate(dist) if d < math.inf]
    heapq.heapify(heap)
    settled = [False] * len(dist)
    improved: dict[int, int] = {}
    while heap:
        d, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        for u, w in adjacency[v]:
            nd = d + xm * w
            if nd < dist[u]:
                dist[u] = nd
                improved[u] = v
                heapq.heappush(heap, (nd, u))
    column[:] = dist
    for v, u in improved.items():
        table.kind[v, subset] = EXTEND
        table.arg[v, subset] = u


def reconstruct(table: DpTable, inst: Instance, v: int, subset: int) -> FlowSolution:
    """Flow network behind cost[v, subset]; error if the state is unreached."""
    if not math.isfinite(table.cost[v, subset]):
        raise ValueError(f"unreachable state (node {v}, subset {subset:#x})")
    flows = _state_flows(table, [(v, subset)])
    return make_solution(inst, flows, algorithm="ost")


def solve_ost(inst: Instance) -> FlowSolution:
    """Exact minimum-cost solution for the full terminal set at the source.

    Deterministic for a given instance. Raises InfeasibleInstanceError when
    some terminal is unreachable.
    """
    started = time.perf_counter()
    report = validate_instance(inst)
    if report:
        raise InfeasibleInstanceError(report)
    table = dp_init(inst)
    k = len(table.terminal_index)
    masks = sorted(range(1, 1 << k), key=lambda s: (s.bit_count(), s))
    for subset in masks:
        if subset & (subset - 1):
            dp_merge(table, inst, subset)
        dp_grow(table, inst, subset)
    solution = reconstruct(table, inst, inst.source, table.full_mask)
    runtime_ms = (time.perf_counter() - started) * 1e3
    return replace(solution, runtime_ms=runtime_ms)
