import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from curvachay.simplex import Infeasible, Unbounded, solve_lp

F = Fraction


def test_textbook_problem():
    # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    res = solve_lp([-3, -5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.value == -36
    assert res.x == (2, 6)


def test_negative_rhs_needs_phase_one():
    # min x + y s.t. x + y >= 2, x <= 5
    res = solve_lp([1, 1], [[-1, -1], [1, 0]], [-2, 5])
    assert res.value == 2


def test_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        solve_lp([1], [[1], [-1]], [1, -2])
    with pytest.raises(Unbounded):
        solve_lp([-1], [[-1]], [0])


def test_degenerate_cycling_example_terminates():
    # Beale's example cycles under the textbook rule; Bland's rule does not
    c = [F(-3, 4), 150, F(-1, 50), 6]
    a = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    res = solve_lp(c, a, [0, 0, 1])
    assert res.value == F(-1, 20)


def _vertex_enumeration(c, a, b):
    """Optimum over all basic feasible points of {Ax <= b, x >= 0}."""
    n = len(c)
    rows = [list(map(float, r)) for r in a] + [[-1.0 if j == i else 0.0 for j in range(n)] for i in range(n)]
    rhs = list(map(float, b)) + [0.0] * n
    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        m = np.array([rows[i] for i in idx])
        if abs(np.linalg.det(m)) < 1e-12:
            continue
        x = np.linalg.solve(m, np.array([rhs[i] for i in idx]))
        if all(np.dot(r, x) <= v + 1e-9 for r, v in zip(rows, rhs)):
            val = float(np.dot(c, x))
            best = val if best is None else min(best, val)
    return best


def test_random_bounded_programs_match_vertex_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        c = [rng.randint(-5, 5) for _ in range(n)]
        a = [[rng.randint(-3, 5) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-2, 10) for _ in range(m)]
        a.append([1] * n)
        b.append(20)  # keeps the feasible set bounded
        try:
            res = solve_lp(c, a, b)
        except Infeasible:
            assert _vertex_enumeration(c, a, b) is None
            continue
        assert abs(float(res.value) - _vertex_enumeration(c, a, b)) < 1e-9


def test_agrees_with_scipy_when_available():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(2, 5)
        c = [rng.randint(-4, 4) for _ in range(n)]
        a = [[rng.randint(0, 4) for _ in range(n)] for _ in range(3)]
        b = [rng.randint(1, 9) for _ in range(3)]
        ref = scipy_opt.linprog(c, A_ub=a, b_ub=b, bounds=[(0, None)] * n, method="highs")
        if ref.status == 0:
            assert abs(float(solve_lp(c, a, b).value) - ref.fun) < 1e-7
