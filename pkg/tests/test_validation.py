import pytest

from ostflow import (
    Code,
    FlowSolution,
    Graph,
    Instance,
    check_constraints,
    check_flow_law,
    check_tree,
    total_cost,
)

from helpers import W1_OPT_FLOWS, close


def _sol(flows, algorithm="test"):
    return FlowSolution(flows=dict(flows), cost=0.0, algorithm=algorithm)


def codes(violations):
    return {v.code for v in violations}


def test_total_cost_empty_flow_map(w1):
    assert total_cost(w1, _sol({})) == 0.0


def test_total_cost_w1_optimum(w1):
    assert close(total_cost(w1, _sol(W1_OPT_FLOWS)), 0.35)


def test_total_cost_single_edge():
    inst = Instance(graph=Graph(2, ((0, 1, 0.5),)), source=0, terminals={1: 0.5})
    assert close(total_cost(inst, _sol({(0, 1): 0.5})), 0.25)


def test_total_cost_rejects_nonedge(w1):
    with pytest.raises(ValueError, match="absent"):
        total_cost(w1, _sol({(0, 2): 1.0}))


def test_constraints_w1_optimum_clean(w1):
    assert check_constraints(w1, _sol(W1_OPT_FLOWS)) == []


def test_constraints_flag_starved_terminal(w1):
    flows = dict(W1_OPT_FLOWS)
    flows[(1, 2)] = 0.1
    report = check_constraints(w1, _sol(flows))
    assert codes(report) == {Code.TERMINAL_DEMAND}
    assert any("node 2" in v.location for v in report)


def test_constraints_flag_undersupply(w1):
    report = check_constraints(w1, _sol({(0, 3): 0.5}))
    assert Code.SOURCE_SUPPLY in codes(report)
    assert Code.TERMINAL_DEMAND in codes(report)


def test_constraints_flag_nonpositive_flow(w1):
    report = check_constraints(w1, _sol({(0, 3): -1.0, (3, 1): 0.0}))
    assert sum(1 for v in report if v.code is Code.NEG_FLOW) == 2


def test_constraints_flag_nonedge_flow(w1):
    report = check_constraints(w1, _sol({(0, 2): 1.0, (0, 3): 1.0}))
    assert Code.NONEDGE_FLOW in codes(report)


def test_constraints_flag_relay_overdraw(w1):
    # node 3 pushes 1.0 while receiving only 0.5
    report = check_constraints(w1, _sol({(0, 3): 0.5, (3, 1): 1.0, (1, 2): 1.0}))
    assert Code.RELAY_CONSERVATION in codes(report)
    assert any("node 3" in v.location for v in report)


def test_constraints_accept_exact_equality(w1):
    # weak inequalities: supplying exactly the demands is feasible
    assert check_constraints(w1, _sol(W1_OPT_FLOWS)) == []


def test_tree_w1_optimum_clean_with_interior_terminal(w1):
    # node 3 is a terminal and an interior node; that is accepted
    assert check_tree(w1, _sol(W1_OPT_FLOWS)) == []


def test_tree_flags_cycle(w1):
    flows = dict(W1_OPT_FLOWS)
    flows[(0, 1)] = 0.25
    report = check_tree(w1, _sol(flows))
    assert codes(report) == {Code.NOT_TREE}


def test_tree_flags_missing_source(w1):
    report = check_tree(w1, _sol({(1, 2): 0.25}))
    assert codes(report) == {Code.NOT_TREE}
    assert "source" in report[0].detail


def test_tree_flags_missing_terminal(w1):
    report = check_tree(w1, _sol({(0, 3): 1.0}))
    assert codes(report) == {Code.NOT_TREE}
    assert "terminal" in report[0].detail


def test_tree_flags_bad_orientation(w1):
    flows = {(0, 3): 1.0, (1, 3): 0.25, (1, 2): 0.25}  # 1->3 points rootward
    report = check_tree(w1, _sol(flows))
    assert Code.BAD_ORIENTATION in codes(report)


def test_tree_flags_antiparallel_flows(w1):
    flows = dict(W1_OPT_FLOWS)
    flows[(3, 0)] = 0.5
    report = check_tree(w1, _sol(flows))
    assert codes(report) == {Code.NOT_TREE}
    assert "both directions" in report[0].detail


def test_tree_flags_non_terminal_leaf():
    inst = Instance(
        graph=Graph(4, ((0, 1, 0.2), (1, 2, 0.3), (1, 3, 0.4))),
        source=0,
        terminals={2: 1.0},
    )
    flows = {(0, 1): 1.0, (1, 2): 1.0, (1, 3): 1.0}
    report = check_tree(inst, _sol(flows))
    assert codes(report) == {Code.LEAF_NOT_TERMINAL}
    assert any("node 3" in v.location for v in report)


def test_flow_law_w1_optimum_clean(w1):
    assert check_flow_law(w1, _sol(W1_OPT_FLOWS)) == []


def test_flow_law_flags_excess_flow(w1):
    flows = dict(W1_OPT_FLOWS)
    flows[(3, 1)] = 1.0
    report = check_flow_law(w1, _sol(flows))
    assert codes(report) == {Code.FLOW_LAW}
    assert any("(3,1)" in v.location for v in report)


def test_flow_law_requires_tree(w1):
    with pytest.raises(ValueError, match="not a tree"):
        check_flow_law(w1, _sol({(1, 2): 0.25}))


def test_violation_rendering(w1):
    report = check_constraints(w1, _sol({(0, 2): 1.0}))
    line = str(report[0])
    assert line.startswith("NONEDGE_FLOW")
    assert "(0,2)" in line
