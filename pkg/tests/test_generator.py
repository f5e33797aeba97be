import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostflow import (
    GenConfig,
    InstanceError,
    generate_instance,
    generate_regular_instance,
    serialize_instance,
)


def test_complete_graph_forced_by_edge_count():
    inst = generate_instance(GenConfig(node_count=4, avg_degree=3, terminal_count=1, seed=9))
    assert inst.graph.edge_count == 6
    assert {(u, v) for u, v, _ in inst.graph.edges} == {
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)
    }


def test_identical_config_bit_identical_instance():
    cfg = GenConfig(node_count=50, avg_degree=4, terminal_count=8, seed=7)
    a, b = generate_instance(cfg), generate_instance(cfg)
    assert a == b
    assert serialize_instance(a) == serialize_instance(b)


def test_different_seeds_differ():
    a = generate_instance(GenConfig(node_count=30, avg_degree=3, terminal_count=4, seed=0))
    b = generate_instance(GenConfig(node_count=30, avg_degree=3, terminal_count=4, seed=1))
    assert a != b


def test_demands_come_from_demand_set():
    inst = generate_instance(GenConfig(node_count=50, avg_degree=4, terminal_count=8, seed=7))
    assert set(inst.terminals.values()) <= {1.0, 0.5, 0.25}


def test_edge_count_formula_uses_round():
    cfg = GenConfig(node_count=5, avg_degree=2.5, terminal_count=1, seed=0)
    assert cfg.edge_count == round(5 * 2.5 / 2)
    assert generate_instance(cfg).graph.edge_count == cfg.edge_count


def test_error_when_connectivity_impossible():
    with pytest.raises(InstanceError, match="cannot guarantee connectivity"):
        generate_instance(GenConfig(node_count=4, avg_degree=0.5, terminal_count=1, seed=0))


def test_config_rejects_overfull_graph():
    with pytest.raises(InstanceError, match="complete graph"):
        GenConfig(node_count=4, avg_degree=4, terminal_count=1, seed=0)


def test_config_rejects_bad_probabilities():
    with pytest.raises(InstanceError, match="sum"):
        GenConfig(
            node_count=4, avg_degree=3, terminal_count=1,
            demand_set=((1.0, 0.5), (0.5, 0.4)), seed=0,
        )


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**63),
    nodes=st.integers(2, 40),
    degree=st.floats(2.0, 5.0),
)
def test_generated_graphs_are_connected(seed, nodes, degree):
    degree = min(degree, nodes - 1)
    edge_count = round(nodes * degree / 2)
    if not nodes - 1 <= edge_count <= nodes * (nodes - 1) // 2:
        return
    cfg = GenConfig(node_count=nodes, avg_degree=degree, terminal_count=1, seed=seed)
    inst = generate_instance(cfg)
    assert len(inst.graph.reachable_from(0)) == nodes


def test_weights_open_unit_interval_and_mean():
    total, count = 0.0, 0
    for seed in range(10):
        inst = generate_instance(
            GenConfig(node_count=100, avg_degree=25, terminal_count=5, seed=seed)
        )
        for _, _, w in inst.graph.edges:
            assert 0.0 < w < 1.0
            total += w
            count += 1
    assert count >= 10_000
    assert abs(total / count - 0.5) < 0.02


def test_terminal_sets_nested_across_terminal_count():
    base = dict(node_count=40, avg_degree=4, seed=11)
    small = generate_instance(GenConfig(terminal_count=3, **base))
    big = generate_instance(GenConfig(terminal_count=6, **base))
    assert small.graph == big.graph
    assert small.source == big.source
    assert set(small.terminals) <= set(big.terminals)
    for t, d in small.terminals.items():
        assert big.terminals[t] == d


def test_regular_instance_degrees_and_determinism():
    cfg = GenConfig(node_count=20, avg_degree=4, terminal_count=3, seed=2)
    a = generate_regular_instance(cfg, 4)
    b = generate_regular_instance(cfg, 4)
    assert a == b
    degree = [0] * 20
    for u, v, w in a.graph.edges:
        degree[u] += 1
        degree[v] += 1
        assert 0.0 < w < 1.0
    assert degree == [4] * 20
    assert len(a.graph.reachable_from(0)) == 20


def test_regular_instance_rejects_odd_total():
    cfg = GenConfig(node_count=5, avg_degree=3, terminal_count=1, seed=0)
    with pytest.raises(InstanceError, match="even"):
        generate_regular_instance(cfg, 3)
