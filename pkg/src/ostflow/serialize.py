"""Canonical JSON documents for instances and solutions.

Instance documents carry ``nodes``, ``edges``, ``source``, ``terminals``;
solution documents carry ``algorithm``, ``cost``, ``flows``, ``runtime_ms``.
Serialization is canonical: edges sorted by (min(u,v), max(u,v)), terminals
by node id, flows by (from, to). Floats are written with Python's shortest
round-tripping repr, so parse(serialize(x)) == x holds exactly.
"""

from __future__ import annotations

import json
from typing import Any

from .model import FlowSolution, Graph, Instance, InstanceError

_INSTANCE_KEYS = {"nodes", "edges", "source", "terminals"}
_TERMINAL_KEYS = {"node", "demand"}
_SOLUTION_KEYS = {"algorithm", "cost", "flows", "runtime_ms"}
_FLOW_KEYS = {"from", "to", "flow"}


def _load_object(text: str, what: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed {what} document: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError(f"{what} document must be a JSON object")
    return doc


def _reject_unknown(doc: dict[str, Any], allowed: set[str], where: str) -> None:
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise InstanceError(f"unknown field(s) {unknown} in {where}")
    missing = sorted(allowed - set(doc))
    if missing:
        raise InstanceError(f"missing field(s) {missing} in {where}")


def parse_instance(text: str) -> Instance:
    """Parse an instance document; raises InstanceError on any defect."""
    doc = _load_object(text, "instance")
    _reject_unknown(doc, _INSTANCE_KEYS, "instance document")
    nodes = doc["nodes"]
    if not isinstance(nodes, int) or isinstance(nodes, bool):
        raise InstanceError(f"nodes: expected integer, got {nodes!r}")
    edges_raw = doc["edges"]
    if not isinstance(edges_raw, list):
        raise InstanceError("edges: expected an array of [u, v, weight] triples")
    edges = []
    for i, entry in enumerate(edges_raw):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InstanceError(f"edges[{i}]: expected [u, v, weight] triple, got {entry!r}")
        u, v, w = entry
        if not isinstance(u, int) or not isinstance(v, int):
            raise InstanceError(f"edges[{i}]: node ids must be integers")
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise InstanceError(f"edges[{i}]: weight must be a number")
        edges.append((u, v, float(w)))
    source = doc["source"]
    if not isinstance(source, int) or isinstance(source, bool):
        raise InstanceError(f"source: expected integer, got {source!r}")
    terminals_raw = doc["terminals"]
    if not isinstance(terminals_raw, list):
        raise InstanceError("terminals: expected an array of {node, demand} objects")
    terminals: dict[int, float] = {}
    for i, entry in enumerate(terminals_raw):
        if not isinstance(entry, dict):
            raise InstanceError(f"terminals[{i}]: expected an object")
        _reject_unknown(entry, _TERMINAL_KEYS, f"terminals[{i}]")
        node, demand = entry["node"], entry["demand"]
        if not isinstance(node, int) or isinstance(node, bool):
            raise InstanceError(f"terminals[{i}].node: expected integer")
        if not isinstance(demand, (int, float)) or isinstance(demand, bool):
            raise InstanceError(f"terminals[{i}].demand: expected number")
        if node in terminals:
            raise InstanceError(f"terminals[{i}]: duplicate terminal node {node}")
        terminals[node] = float(demand)
    graph = Graph(node_count=nodes, edges=tuple(edges))
    return Instance(graph=graph, source=source, terminals=terminals)


def _join_block(entries: list[str]) -> str:
    if not entries:
        return "[]"
    body = ",\n    ".join(entries)
    return f"[\n    {body}\n  ]"


def serialize_instance(inst: Instance) -> str:
    num = json.dumps
    edges = _join_block(
        [f"[{u}, {v}, {num(w)}]" for u, v, w in inst.graph.edges]
    )
    terminals = _join_block(
        [
            f'{{"node": {t}, "demand": {num(d)}}}'
            for t, d in sorted(inst.terminals.items())
        ]
    )
    return (
        "{\n"
        f'  "nodes": {inst.graph.node_count},\n'
        f'  "edges": {edges},\n'
        f'  "source": {inst.source},\n'
        f'  "terminals": {terminals}\n'
        "}\n"
    )


def parse_solution(text: str) -> FlowSolution:
    """Parse a solution document; raises InstanceError on any defect."""
    doc = _load_object(text, "solution")
    _reject_unknown(doc, _SOLUTION_KEYS, "solution document")
    if not isinstance(doc["algorithm"], str):
        raise InstanceError("algorithm: expected string")
    for key in ("cost", "runtime_ms"):
        if not isinstance(doc[key], (int, float)) or isinstance(doc[key], bool):
            raise InstanceError(f"{key}: expected number")
    flows_raw = doc["flows"]
    if not isinstance(flows_raw, list):
        raise InstanceError("flows: expected an array of {from, to, flow} objects")
    flows: dict[tuple[int, int], float] = {}
    for i, entry in enumerate(flows_raw):
        if not isinstance(entry, dict):
            raise InstanceError(f"flows[{i}]: expected an object")
        _reject_unknown(entry, _FLOW_KEYS, f"flows[{i}]")
        u, v, f = entry["from"], entry["to"], entry["flow"]
        if not isinstance(u, int) or not isinstance(v, int):
            raise InstanceError(f"flows[{i}]: node ids must be integers")
        if not isinstance(f, (int, float)) or isinstance(f, bool):
            raise InstanceError(f"flows[{i}]: flow must be a number")
        if (u, v) in flows:
            raise InstanceError(f"flows[{i}]: duplicate flow edge ({u}, {v})")
        flows[(u, v)] = float(f)
    return FlowSolution(
        flows=flows,
        cost=float(doc["cost"]),
        algorithm=doc["algorithm"],
        runtime_ms=float(doc["runtime_ms"]),
    )


def serialize_solution(sol: FlowSolution) -> str:
    num = json.dumps
    flows = _join_block(
        [
            f'{{"from": {u}, "to": {v}, "flow": {num(f)}}}'
            for u, v, f in sol.sorted_flows()
        ]
    )
    return (
        "{\n"
        f'  "algorithm": {json.dumps(sol.algorithm)},\n'
        f'  "cost": {num(sol.cost)},\n'
        f'  "flows": {flows},\n'
        f'  "runtime_ms": {num(sol.runtime_ms)}\n'
        "}\n"
    )
