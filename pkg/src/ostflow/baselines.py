"""Comparison solvers: spanning-tree, shortest-path union, and three
metaheuristics (genetic, ant colony, bee colony).

All emit FlowSolution and are pure functions of (instance, params); the
metaheuristics draw every random number from one seeded PCG64 stream, so
a fixed seed reproduces the run bit for bit.

GA and BCO share a genotype: one inclusion bit per free node (nodes in
the source's component that are neither source nor terminal). A genome
decodes to the minimum spanning tree of the induced subgraph, pruned of
non-required leaves, with each edge carrying the largest demand below it.
ACO builds one guided path per terminal and merges the paths instead.
"""

from __future__ import annotations

import heapq
import math
import time
from collections import deque
from dataclasses import dataclass

import numpy as np

from .model import (
    FlowSolution,
    InfeasibleInstanceError,
    Instance,
    make_solution,
    validate_instance,
)


@dataclass(frozen=True)
class MetaheuristicParams:
    """Knobs for the randomized baselines; defaults are standard textbook
    settings, exposed so benchmark claims never hinge on hidden tuning."""

    population: int = 50
    iterations: int = 100
    seed: int = 0
    # genetic algorithm
    crossover_rate: float = 0.8
    mutation_rate: float = 0.02
    tournament_size: int = 3
    # ant colony
    ant_count: int = 20
    evaporation: float = 0.1
    pheromone_weight: float = 1.0
    heuristic_weight: float = 2.0
    # bee colony
    scout_fraction: float = 0.1
    abandonment_limit: int = 10

    def __post_init__(self):
        if self.population < 1 or self.iterations < 1 or self.ant_count < 1:
            raise ValueError("population, iterations and ant_count must be positive")
        if not (0 <= self.crossover_rate <= 1 and 0 <= self.mutation_rate <= 1):
            raise ValueError("GA rates must lie in [0, 1]")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be positive")
        if not (0 < self.evaporation < 1):
            raise ValueError("evaporation must lie in (0, 1)")
        if not (0 <= self.scout_fraction <= 1):
            raise ValueError("scout_fraction must lie in [0, 1]")
        if self.abandonment_limit < 1:
            raise ValueError("abandonment_limit must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


def _validated(inst: Instance) -> None:
    report = validate_instance(inst)
    if report:
        raise InfeasibleInstanceError(report)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _kruskal(node_count: int, edges: list[tuple[float, int, int]]) -> list[tuple[int, int, float]]:
    """Minimum spanning forest from (weight, u, v) entries already sorted."""
    uf = _UnionFind(node_count)
    tree = []
    for w, u, v in edges:
        if uf.union(u, v):
            tree.append((u, v, w))
    return tree


def _prune_leaves(
    tree: list[tuple[int, int, float]], required: set[int]
) -> list[tuple[int, int, float]]:
    """Iteratively delete leaves that are not required nodes."""
    degree: dict[int, int] = {}
    incident: dict[int, list[int]] = {}
    alive = [True] * len(tree)
    for i, (u, v, _) in enumerate(tree):
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
        incident.setdefault(u, []).append(i)
        incident.setdefault(v, []).append(i)
    queue = deque(n for n, d in degree.items() if d == 1 and n not in required)
    while queue:
        leaf = queue.popleft()
        if degree.get(leaf, 0) != 1:
            continue
        for i in incident[leaf]:
            if not alive[i]:
                continue
            alive[i] = False
            u, v, _ = tree[i]
            other = v if u == leaf else u
            degree[leaf] -= 1
            degree[other] -= 1
            if degree[other] == 1 and other not in required:
                queue.append(other)
    return [e for i, e in enumerate(tree) if alive[i]]


def _rooted_demand_flows(
    tree: list[tuple[int, int, float]], source: int, terminals: dict[int, float]
) -> dict[tuple[int, int], float]:
    """Orient a tree away from the source; each edge carries the maximum
    demand among terminals in the subtree below it."""
    neighbors: dict[int, list[int]] = {source: []}
    for u, v, _ in tree:
        neighbors.setdefault(u, []).append(v)
        neighbors.setdefault(v, []).append(u)
    parent = {source: -1}
    order = [source]
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in neighbors[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    submax = {x: terminals.get(x, 0.0) for x in order}
    for x in reversed(order):
        p = parent[x]
        if p != -1 and submax[x] > submax[p]:
            submax[p] = submax[x]
    return {(parent[x], x): submax[x] for x in order if parent[x] != -1}


def solve_mst_prune(inst: Instance) -> FlowSolution:
    """Spanning-tree baseline: MST of the whole graph, pruned of unused
    leaves, every remaining edge carrying the overall maximum demand.

    Deliberately wasteful on purpose: the flow is not differentiated per
    subtree, which is exactly what this baseline models.
    """
    started = time.perf_counter()
    _validated(inst)
    n = inst.graph.node_count
    ordered = sorted((w, u, v) for u, v, w in inst.graph.edges)
    tree = _kruskal(n, ordered)
    if len(tree) != n - 1:
        raise ValueError("graph is disconnected; spanning tree does not exist")
    required = {inst.source} | set(inst.terminals)
    tree = _prune_leaves(tree, required)
    top = inst.max_demand()
    flows = {
        key: top for key in _rooted_demand_flows(tree, inst.source, inst.terminals)
    }
    return make_solution(
        inst, flows, "mst", runtime_ms=(time.perf_counter() - started) * 1e3
    )


def _lexmin_shortest_paths(
    inst: Instance, targets: set[int]
) -> dict[int, tuple[int, ...]]:
    """Lexicographically smallest shortest path from the source to each
    target, as node sequences. Paths are prefix-consistent (each settled
    node has one final path reused by everything routed through it), so
    their union is always a tree."""
    adjacency = inst.graph.adjacency
    settled: dict[int, tuple[int, ...]] = {}
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (inst.source,))]
    while heap and len(settled) < inst.graph.node_count:
        d, path = heapq.heappop(heap)
        v = path[-1]
        if v in settled:
            continue
        settled[v] = path
        for u, w in adjacency[v]:
            if u not in settled:
                heapq.heappush(heap, (d + w, path + (u,)))
    missing = sorted(t for t in targets if t not in settled)
    if missing:
        raise InfeasibleInstanceError(
            [f"terminal {t} unreachable from source" for t in missing]
        )
    return {t: settled[t] for t in targets}


def solve_sp_union(inst: Instance) -> FlowSolution:
    """Shortest-path baseline: union the per-terminal shortest paths and
    deduplicate flows per edge at the maximum demand among its users."""
    started = time.perf_counter()
    _validated(inst)
    paths = _lexmin_shortest_paths(inst, set(inst.terminals))
    flows: dict[tuple[int, int], float] = {}
    for t in sorted(inst.terminals):
        demand = inst.terminals[t]
        path = paths[t]
        for a, b in zip(path, path[1:]):
            if flows.get((a, b), 0.0) < demand:
                flows[(a, b)] = demand
    return make_solution(
        inst, flows, "spt", runtime_ms=(time.perf_counter() - started) * 1e3
    )


class _SubsetDecoder:
    """Decode node subsets into flow solutions, caching by genome.

    The decoded solution is the pruned MST of the induced subgraph with
    demand-law flows, or None when the induced subgraph is disconnected.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.required = {inst.source} | set(inst.terminals)
        reachable = inst.graph.reachable_from(inst.source)
        self.free = sorted(reachable - self.required)
        self.ordered_edges = sorted((w, u, v) for u, v, w in inst.graph.edges)
        # Any feasible cost is below this: the whole graph at max demand.
        self.penalty = (
            sum(w for _, _, w in inst.graph.edges) * inst.max_demand() + 1.0
        )
        self._cache: dict[tuple[int, ...], tuple[float, dict[tuple[int, int], float] | None]] = {}

    def nodes_of(self, genome: tuple[int, ...]) -> set[int]:
        return self.required | {n for n, bit in zip(self.free, genome) if bit}

    def decode(self, genome: tuple[int, ...]) -> tuple[float, dict[tuple[int, int], float] | None]:
        """(cost, flows) for a genome; (penalty, None) when infeasible."""
        hit = self._cache.get(genome)
        if hit is not None:
            return hit
        selected = self.nodes_of(genome)
        edges = [
            (w, u, v) for w, u, v in self.ordered_edges if u in selected and v in selected
        ]
        tree = _kruskal(self.inst.graph.node_count, edges)
        if len(tree) != len(selected) - 1:
            result = (self.penalty, None)
        else:
            tree = _prune_leaves(tree, self.required)
            flows = _rooted_demand_flows(tree, self.inst.source, self.inst.terminals)
            cost = sum(self.inst.graph.weight(u, v) * f for (u, v), f in sorted(flows.items()))
            result = (cost, flows)
        self._cache[genome] = result
        return result


def decode_node_subset(
    inst: Instance, selected: set[int]
) -> FlowSolution | None:
    """Decode an explicit node subset; None marks an infeasible subset."""
    selected = set(selected)
    required = {inst.source} | set(inst.terminals)
    if not required <= selected:
        raise ValueError("selected nodes must include the source and all terminals")
    edges = sorted(
        (w, u, v) for u, v, w in inst.graph.edges if u in selected and v in selected
    )
    tree = _kruskal(inst.graph.node_count, edges)
    if len(tree) != len(selected) - 1:
        return None
    tree = _prune_leaves(tree, required)
    flows = _rooted_demand_flows(tree, inst.source, inst.terminals)
    return make_solution(inst, flows, "decode")


def _tournament(
    rng: np.random.Generator, fits: list[float], size: int
) -> int:
    picks = rng.integers(0, len(fits), size=size)
    best = int(picks[0])
    for p in picks[1:]:
        p = int(p)
        if fits[p] < fits[best] or (fits[p] == fits[best] and p < best):
            best = p
    return best


def solve_ga(inst: Instance, p: MetaheuristicParams | None = None) -> FlowSolution:
    """Genetic algorithm over node-inclusion genomes.

    The all-ones genome (every free node selected) is injected into the
    initial population; it always decodes feasibly on a valid instance,
    so the best-ever solution exists. Elitism keeps the incumbent alive.
    """
    started = time.perf_counter()
    _validated(inst)
    p = p or MetaheuristicParams()
    decoder = _SubsetDecoder(inst)
    rng = np.random.Generator(np.random.PCG64(p.seed))
    length = len(decoder.free)
    all_ones = (1,) * length
    population = [all_ones]
    for _ in range(p.population - 1):
        population.append(tuple(int(b) for b in rng.integers(0, 2, size=length)))
    best_cost, best_flows = decoder.decode(all_ones)
    for _ in range(p.iterations):
        fits = []
        for genome in population:
            cost, flows = decoder.decode(genome)
            fits.append(cost)
            if flows is not None and cost < best_cost:
                best_cost, best_flows = cost, flows
        elite = min(range(len(population)), key=lambda i: (fits[i], i))
        children = [population[elite]]
        while len(children) < p.population:
            a = population[_tournament(rng, fits, p.tournament_size)]
            b = population[_tournament(rng, fits, p.tournament_size)]
            if length and rng.random() < p.crossover_rate:
                mix = rng.random(length) < 0.5
                child = tuple(x if m else y for x, y, m in zip(a, b, mix))
            else:
                child = a
            if length:
                flips = rng.random(length) < p.mutation_rate
                child = tuple(x ^ 1 if f else x for x, f in zip(child, flips))
            children.append(child)
        population = children
    return make_solution(
        inst, best_flows, "ga", runtime_ms=(time.perf_counter() - started) * 1e3
    )


def solve_bco(inst: Instance, p: MetaheuristicParams | None = None) -> FlowSolution:
    """Bee colony over node-inclusion sites.

    Employed bees flip one bit of their site, onlookers sample sites in
    proportion to inverse cost, and scouts reinitialize the stalest sites
    once they exceed the abandonment limit (at most a scout_fraction of
    the population per iteration). The all-ones site is seeded."""
    started = time.perf_counter()
    _validated(inst)
    p = p or MetaheuristicParams()
    decoder = _SubsetDecoder(inst)
    rng = np.random.Generator(np.random.PCG64(p.seed))
    length = len(decoder.free)
    all_ones = (1,) * length
    sites = [all_ones]
    for _ in range(p.population - 1):
        sites.append(tuple(int(b) for b in rng.integers(0, 2, size=length)))
    stale = [0] * p.population
    best_cost, best_flows = decoder.decode(all_ones)

    def consider(cost: float, flows) -> None:
        nonlocal best_cost, best_flows
        if flows is not None and cost < best_cost:
            best_cost, best_flows = cost, flows

    def flip_one(genome: tuple[int, ...]) -> tuple[int, ...]:
        if not length:
            return genome
        i = int(rng.integers(0, length))
        return genome[:i] + (genome[i] ^ 1,) + genome[i + 1 :]

    max_scouts = max(1, math.ceil(p.scout_fraction * p.population))
    for _ in range(p.iterations):
        for i in range(p.population):
            cost, flows = decoder.decode(sites[i])
            consider(cost, flows)
            trial = flip_one(sites[i])
            t_cost, t_flows = decoder.decode(trial)
            consider(t_cost, t_flows)
            if t_cost < cost:
                sites[i] = trial
                stale[i] = 0
            else:
                stale[i] += 1
        costs = [decoder.decode(s)[0] for s in sites]
        weights = [1.0 / (1.0 + c) for c in costs]
        total = sum(weights)
        for _ in range(p.population):
            r = rng.random() * total
            j = 0
            acc = weights[0]
            while acc < r and j + 1 < len(weights):
                j += 1
                acc += weights[j]
            trial = flip_one(sites[j])
            t_cost, t_flows = decoder.decode(trial)
            consider(t_cost, t_flows)
            if t_cost < costs[j]:
                sites[j] = trial
                costs[j] = t_cost
                weights[j] = 1.0 / (1.0 + t_cost)
                total = sum(weights)
                stale[j] = 0
            else:
                stale[j] += 1
        stuck = sorted(
            (i for i in range(p.population) if stale[i] > p.abandonment_limit),
            key=lambda i: (-stale[i], i),
        )
        for i in stuck[:max_scouts]:
            sites[i] = tuple(int(b) for b in rng.integers(0, 2, size=length))
            stale[i] = 0
    return make_solution(
        inst, best_flows, "bco", runtime_ms=(time.perf_counter() - started) * 1e3
    )


def _ant_walk(
    rng: np.random.Generator,
    source: int,
    target: int,
    guided: list[list[tuple[int, tuple[int, int], float]]],
    pheromone: dict[tuple[int, int], float],
    alpha: float,
) -> list[int]:
    """Randomized depth-first walk from the source to the target, choosing
    next hops in proportion to pheromone^alpha * desirability. Complete:
    dead ends backtrack, so any reachable target is found."""
    plain = alpha == 1.0
    path = [source]
    visited = {source}
    while True:
        u = path[-1]
        if u == target:
            return path
        options = [entry for entry in guided[u] if entry[0] not in visited]
        if not options:
            path.pop()
            continue
        if plain:
            weights = [pheromone[key] * desir for _, key, desir in options]
        else:
            weights = [pheromone[key] ** alpha * desir for _, key, desir in options]
        total = sum(weights)
        r = rng.random() * total
        j = 0
        acc = weights[0]
        while acc < r and j + 1 < len(options):
            j += 1
            acc += weights[j]
        v = options[j][0]
        visited.add(v)
        path.append(v)


def _paths_to_tree_flows(
    inst: Instance, support: set[tuple[int, int]]
) -> dict[tuple[int, int], float]:
    """Merge a set of undirected support edges into a flow tree.

    Cycles are resolved by taking the minimum spanning tree of the support
    (repeatedly dropping the dearest removable cycle edge), then pruning
    non-required leaves and assigning demand-law flows."""
    required = {inst.source} | set(inst.terminals)
    edges = sorted((inst.graph.weight(u, v), u, v) for u, v in support)
    tree = _kruskal(inst.graph.node_count, edges)
    tree = _prune_leaves(tree, required)
    return _rooted_demand_flows(tree, inst.source, inst.terminals)


def solve_aco(inst: Instance, p: MetaheuristicParams | None = None) -> FlowSolution:
    """Ant colony over per-terminal path construction.

    Each ant routes every terminal with a pheromone-guided walk; the walks
    are merged like the shortest-path union (shared edges carry one stream
    at the larger demand). The global best deposits pheromone each
    iteration after evaporation."""
    started = time.perf_counter()
    _validated(inst)
    p = p or MetaheuristicParams()
    rng = np.random.Generator(np.random.PCG64(p.seed))
    pheromone = {(u, v): 1.0 for u, v, _ in inst.graph.edges}
    guided: list[list[tuple[int, tuple[int, int], float]]] = [
        [] for _ in range(inst.graph.node_count)
    ]
    for u, v, w in inst.graph.edges:
        desir = (1.0 / max(w, 1e-12)) ** p.heuristic_weight
        guided[u].append((v, (u, v), desir))
        guided[v].append((u, (u, v), desir))
    for entries in guided:
        entries.sort()
    best_cost = math.inf
    best_flows: dict[tuple[int, int], float] | None = None
    best_support: set[tuple[int, int]] = set()
    for _ in range(p.iterations):
        for _ in range(p.ant_count):
            support: set[tuple[int, int]] = set()
            for t in sorted(inst.terminals):
                path = _ant_walk(
                    rng, inst.source, t, guided, pheromone, p.pheromone_weight
                )
                for a, b in zip(path, path[1:]):
                    support.add((min(a, b), max(a, b)))
            flows = _paths_to_tree_flows(inst, support)
            cost = sum(
                inst.graph.weight(u, v) * f for (u, v), f in sorted(flows.items())
            )
            if cost < best_cost:
                best_cost = cost
                best_flows = flows
                best_support = {(min(u, v), max(u, v)) for u, v in flows}
        for key in pheromone:
            pheromone[key] *= 1.0 - p.evaporation
        deposit = 1.0 / max(best_cost, 1e-12)
        for key in sorted(best_support):
            pheromone[key] += deposit
    return make_solution(
        inst, best_flows, "aco", runtime_ms=(time.perf_counter() - started) * 1e3
    )
