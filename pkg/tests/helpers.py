"""Shared assertions and reference values for the suite."""

W1_OPT_COST = 0.35
W1_OPT_FLOWS = {(0, 3): 1.0, (3, 1): 0.25, (1, 2): 0.25}


def close(a: float, b: float, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol


def flows_close(actual: dict, expected: dict, tol: float = 1e-9) -> bool:
    if set(actual) != set(expected):
        return False
    return all(abs(actual[k] - expected[k]) <= tol for k in expected)
