import random
from fractions import Fraction

import pytest

from eqdesign.errors import ResourceLimitExceeded
from eqdesign.oracle import brute_force_lp_feasible
from eqdesign.simplex import find_feasible_point


def satisfies(x, rows):
    for coeffs, rel, rhs in rows:
        lhs = sum(Fraction(c) * v for c, v in zip(coeffs, x))
        if {">=": lhs < rhs, "<=": lhs > rhs, "=": lhs != rhs}[rel]:
            return False
    return all(v >= 0 for v in x)


def test_simple_feasible():
    rows = [((1, 1), ">=", 2), ((1, -1), "=", 0)]
    x = find_feasible_point(rows, 2)
    assert x == [1, 1]


def test_infeasible():
    assert find_feasible_point([((1, 1), "<=", 1), ((1, 1), ">=", 2)], 2) is None
    assert find_feasible_point([((1,), "=", -1)], 1) is None


def test_no_rows():
    assert find_feasible_point([], 3) == [0, 0, 0]


def test_fractional_vertex():
    x = find_feasible_point([((3, 0), "=", 1), ((0, 2), ">=", 1)], 2)
    assert x[0] == Fraction(1, 3) and satisfies(x, [((0, 2), ">=", 1)])


def test_unknown_relation():
    with pytest.raises(ValueError):
        find_feasible_point([((1,), "<", 1)], 1)


def test_pivot_cap():
    rows = [((1, 1, 1), ">=", 1), ((1, -1, 0), "=", 0), ((0, 1, -1), "=", 0)]
    with pytest.raises(ResourceLimitExceeded):
        find_feasible_point(rows, 3, max_pivots=0)


def test_random_against_basis_enumeration():
    rng = random.Random(13)
    for _ in range(300):
        nvars = rng.randint(1, 4)
        rows = [(tuple(rng.randint(-2, 2) for _ in range(nvars)), rng.choice([">=", "<=", "="]),
                 rng.randint(-2, 2)) for _ in range(rng.randint(1, 4))]
        x = find_feasible_point(rows, nvars)
        assert (x is not None) == brute_force_lp_feasible(rows, nvars)
        if x is not None:
            assert satisfies(x, rows)
