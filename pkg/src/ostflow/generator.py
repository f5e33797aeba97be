"""Seeded random instance generation.

Topology: a uniform random spanning tree (decoded from a random Pruefer
sequence) plus extra edges drawn uniformly among the absent node pairs,
so the graph is always connected. Weights are i.i.d. uniform on (0, 1).
All randomness flows from a single PCG64 generator seeded by the config,
so identical configs produce bit-identical instances.

Source and terminals come from one random node permutation: the source is
the first entry and terminals the next ``terminal_count`` entries, with
demands drawn in permutation order. For a fixed seed this makes terminal
sets (and their demands) nested across increasing ``terminal_count``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Graph, Instance, InstanceError

DEFAULT_DEMAND_SET: tuple[tuple[float, float], ...] = (
    (1.0, 1 / 3),
    (0.5, 1 / 3),
    (0.25, 1 / 3),
)


@dataclass(frozen=True)
class GenConfig:
    """Parameters for random instance generation.

    ``demand_set`` is a discrete distribution given as (value, probability)
    pairs; the default models three stream resolutions at rates 1, 0.5 and
    0.25 with equal probability.
    """

    node_count: int
    avg_degree: float
    terminal_count: int
    demand_set: tuple[tuple[float, float], ...] = DEFAULT_DEMAND_SET
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "demand_set", tuple((float(v), float(p)) for v, p in self.demand_set))
        if self.node_count < 1:
            raise InstanceError("node_count must be positive")
        if self.avg_degree <= 0:
            raise InstanceError("avg_degree must be positive")
        if not (1 <= self.terminal_count <= self.node_count - 1):
            raise InstanceError(
                f"terminal_count {self.terminal_count} outside [1, {self.node_count - 1}]"
            )
        if self.edge_count > self.node_count * (self.node_count - 1) // 2:
            raise InstanceError(
                f"requested {self.edge_count} edges exceed the complete graph"
            )
        for value, prob in self.demand_set:
            if value <= 0:
                raise InstanceError(f"demand value {value} must be positive")
            if not (0 <= prob <= 1):
                raise InstanceError(f"demand probability {prob} outside [0, 1]")
        total = sum(p for _, p in self.demand_set)
        if abs(total - 1.0) > 1e-9:
            raise InstanceError(f"demand probabilities sum to {total}, expected 1")
        if not (0 <= self.seed < 2**64):
            raise InstanceError("seed must be a 64-bit unsigned integer")

    @property
    def edge_count(self) -> int:
        return round(self.node_count * self.avg_degree / 2)


def _pruefer_tree(rng: np.random.Generator, n: int) -> list[tuple[int, int]]:
    """Uniform random labeled tree on n nodes via Pruefer decoding."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    # Classic O(n) decode: sweep a pointer over ascending leaves.
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def _positive_uniform(rng: np.random.Generator) -> float:
    # U(0,1) open at 0: redraw the (measure-zero) exact zero.
    w = float(rng.random())
    while w == 0.0:
        w = float(rng.random())
    return w


def _finish_instance(
    rng: np.random.Generator, cfg: GenConfig, pairs: list[tuple[int, int]]
) -> Instance:
    """Draw weights, source, terminals and demands for a fixed topology."""
    n = cfg.node_count
    edges = [(u, v, _positive_uniform(rng)) for u, v in sorted(pairs)]
    graph = Graph(node_count=n, edges=tuple(edges))
    perm = [int(x) for x in rng.permutation(n)]
    source = perm[0]
    chosen = perm[1 : cfg.terminal_count + 1]
    values = [v for v, _ in cfg.demand_set]
    probs = [p for _, p in cfg.demand_set]
    # Draw a demand for every non-source node so that, for a fixed seed,
    # each terminal keeps its demand as terminal_count grows.
    picks = rng.choice(len(values), size=n - 1, p=probs)
    terminals = {t: values[int(k)] for t, k in zip(chosen, picks)}
    return Instance(graph=graph, source=source, terminals=terminals)


def generate_instance(cfg: GenConfig) -> Instance:
    """Generate a connected random instance; deterministic per config."""
    n = cfg.node_count
    m = cfg.edge_count
    if m < n - 1:
        raise InstanceError(
            f"cannot guarantee connectivity: {m} edges < {n - 1} required for {n} nodes"
        )
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    tree = {(min(u, v), max(u, v)) for u, v in _pruefer_tree(rng, n)}
    extra = m - len(tree)
    pairs = list(tree)
    if extra > 0:
        absent = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in tree
        ]
        picked = rng.choice(len(absent), size=extra, replace=False)
        pairs.extend(absent[int(i)] for i in picked)
    return _finish_instance(rng, cfg, pairs)


def generate_regular_instance(cfg: GenConfig, degree: int, max_attempts: int = 2000) -> Instance:
    """Generate a connected random d-regular instance; deterministic per config.

    Uses the pairing model: shuffle d copies of every node, pair them up,
    and retry whenever the pairing has self-loops or duplicates or the
    graph is disconnected. ``cfg.avg_degree`` is ignored.
    """
    n = cfg.node_count
    if degree < 1 or degree >= n:
        raise InstanceError(f"regular degree {degree} outside [1, {n - 1}]")
    if n * degree % 2 != 0:
        raise InstanceError(f"node_count * degree = {n * degree} must be even")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(max_attempts):
        order = rng.permutation(len(stubs))
        shuffled = stubs[order]
        pairs = set()
        ok = True
        for i in range(0, len(shuffled), 2):
            u, v = int(shuffled[i]), int(shuffled[i + 1])
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in pairs:
                ok = False
                break
            pairs.add(key)
        if not ok:
            continue
        graph = Graph(node_count=n, edges=tuple((u, v, 1.0) for u, v in pairs))
        if len(graph.reachable_from(0)) != n:
            continue
        return _finish_instance(rng, cfg, sorted(pairs))
    raise InstanceError(
        f"no simple connected {degree}-regular graph found in {max_attempts} attempts"
    )
