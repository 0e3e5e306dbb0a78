"""Tests for the exact transportation simplex."""

import random
from fractions import Fraction
from itertools import product

import pytest

from partialot._simplex import solve_transportation


def _check_exact_optimality(supply, demand, cost, flows, u, v):
    m, n = len(supply), len(demand)
    # conservation, exactly
    for i in range(m):
        assert sum(f for (a, _), f in flows.items() if a == i) == supply[i]
    for j in range(n):
        assert sum(f for (_, b), f in flows.items() if b == j) == demand[j]
    # dual feasibility everywhere, complementary slackness on flows, exactly
    for i in range(m):
        for j in range(n):
            assert u[i] + v[j] <= cost[i][j]
    for (i, j), f in flows.items():
        assert f > 0
        assert u[i] + v[j] == cost[i][j]


def _objective(flows, cost):
    return sum(f * cost[i][j] for (i, j), f in flows.items())


def test_single_cell():
    flows, u, v, alt = solve_transportation(
        [Fraction(3)], [Fraction(3)], [[Fraction(7)]]
    )
    assert flows == {(0, 0): Fraction(3)}
    assert u[0] + v[0] == Fraction(7)


def test_two_by_two_diagonal():
    supply = [Fraction(1), Fraction(1)]
    demand = [Fraction(1), Fraction(1)]
    cost = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    flows, u, v, alt = solve_transportation(supply, demand, cost)
    assert _objective(flows, cost) == 0
    assert flows == {(0, 0): Fraction(1), (1, 1): Fraction(1)}
    _check_exact_optimality(supply, demand, cost, flows, u, v)


def test_textbook_instance():
    supply = [Fraction(2), Fraction(3)]
    demand = [Fraction(1), Fraction(4)]
    cost = [[Fraction(4), Fraction(1)], [Fraction(2), Fraction(6)]]
    flows, u, v, alt = solve_transportation(supply, demand, cost)
    # optimum: route supply 0 to column 1 (cost 1), supply 1 covers the rest
    assert _objective(flows, cost) == 2 * 1 + 1 * 2 + 2 * 6
    _check_exact_optimality(supply, demand, cost, flows, u, v)


def test_unbalanced_rejected():
    with pytest.raises(ValueError, match="balanced"):
        solve_transportation([Fraction(1)], [Fraction(2)], [[Fraction(0)]])


def test_zero_problem():
    flows, u, v, alt = solve_transportation([Fraction(0)], [Fraction(0)], [[Fraction(5)]])
    assert flows == {}
    assert u[0] + v[0] <= Fraction(5)


def test_degenerate_supplies():
    supply = [Fraction(0), Fraction(2)]
    demand = [Fraction(1), Fraction(1), Fraction(0)]
    cost = [[Fraction(1)] * 3, [Fraction(2), Fraction(3), Fraction(9)]]
    flows, u, v, alt = solve_transportation(supply, demand, cost)
    assert _objective(flows, cost) == 2 + 3
    _check_exact_optimality(supply, demand, cost, flows, u, v)


def _brute_force_min(supply, demand, cost):
    """Exhaustive integer enumeration (tiny instances, integral data)."""
    m, n = len(supply), len(demand)
    best = None

    def rec(i, rows, cols):
        nonlocal best
        if i == m * n:
            if all(r == 0 for r in rows) and all(c == 0 for c in cols):
                value = sum(
                    grid[a][b] * cost[a][b] for a in range(m) for b in range(n)
                )
                best = value if best is None else min(best, value)
            return
        a, b = divmod(i, n)
        for f in range(min(rows[a], cols[b]) + 1):
            grid[a][b] = f
            rows[a] -= f
            cols[b] -= f
            rec(i + 1, rows, cols)
            rows[a] += f
            cols[b] += f
        grid[a][b] = 0

    grid = [[0] * n for _ in range(m)]
    rec(0, list(supply), list(demand))
    return best


def test_random_integer_instances_match_enumeration():
    rng = random.Random(4)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3)
        supply = [rng.randint(0, 3) for _ in range(m)]
        total = sum(supply)
        # random composition of the total over the demands
        demand = [0] * n
        for _ in range(total):
            demand[rng.randrange(n)] += 1
        cost = [[rng.randint(0, 9) for _ in range(n)] for _ in range(m)]
        flows, u, v, alt = solve_transportation(
            [Fraction(s) for s in supply],
            [Fraction(d) for d in demand],
            [[Fraction(c) for c in row] for row in cost],
        )
        want = _brute_force_min(supply, demand, cost)
        assert _objective(flows, cost) == want
        _check_exact_optimality(
            [Fraction(s) for s in supply],
            [Fraction(d) for d in demand],
            [[Fraction(c) for c in row] for row in cost],
            flows,
            u,
            v,
        )


def test_fractional_masses_exact():
    supply = [Fraction(1, 3), Fraction(2, 3)]
    demand = [Fraction(1, 2), Fraction(1, 2)]
    cost = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(1)]]
    flows, u, v, alt = solve_transportation(supply, demand, cost)
    _check_exact_optimality(supply, demand, cost, flows, u, v)
    # optimum: X00 = 1/3, X10 = 1/6, X11 = 1/2
    assert _objective(flows, cost) == Fraction(1, 3) + Fraction(1, 2) + Fraction(1, 2)


def test_alternate_optimum_flagged():
    # all costs equal: any vertex is optimal, ties everywhere
    supply = [Fraction(1), Fraction(1)]
    demand = [Fraction(1), Fraction(1)]
    cost = [[Fraction(1)] * 2 for _ in range(2)]
    _, _, _, alt = solve_transportation(supply, demand, cost)
    assert alt > 0
    # strictly better diagonal: unique optimum, no ties
    cost2 = [[Fraction(0), Fraction(5)], [Fraction(5), Fraction(0)]]
    _, _, _, alt2 = solve_transportation(supply, demand, cost2)
    assert alt2 == 0
