import pytest

from ostflow import Graph, Instance


@pytest.fixture
def w1() -> Instance:
    """Four-node worked instance used across the suite.

    Optimum: cost 0.35 via flows {0->3: 1.0, 3->1: 0.25, 1->2: 0.25}.
    """
    return Instance(
        graph=Graph(4, ((0, 1, 1.0), (1, 2, 0.1), (1, 3, 0.1), (0, 3, 0.3))),
        source=0,
        terminals={2: 0.25, 3: 1.0},
    )


@pytest.fixture
def chain() -> Instance:
    """0 - 1 - 2 with weights 0.4, 0.6; one terminal demanding 0.5."""
    return Instance(
        graph=Graph(3, ((0, 1, 0.4), (1, 2, 0.6))),
        source=0,
        terminals={2: 0.5},
    )
