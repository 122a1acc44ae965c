"""A small exact simplex solver.

Solves ``min c·x`` subject to ``A x <= b`` and ``x >= 0`` over the
rationals with a dense two-phase tableau and Bland's rule, so it always
terminates and the optimum is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LPResult", "Infeasible", "Unbounded", "solve_lp"]


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def _pivot(t, basis, r, c):
    row = t[r]
    pv = row[c]
    if pv != 1:
        row[:] = [v / pv for v in row]
    for i, other in enumerate(t):
        if i != r:
            f = other[c]
            if f:
                other[:] = [u - f * v for u, v in zip(other, row)]
    basis[r] = c


def _run(t, basis, ncols, allowed) -> int:
    """Primal simplex on tableau ``t`` whose last row is the objective.

    Bland's rule: entering column is the lowest index with a negative
    reduced cost, leaving row the lowest basic index among ratio ties.
    """
    obj = t[-1]
    pivots = 0
    while True:
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return pivots
        best = None
        for i in range(len(t) - 1):
            a = t[i][enter]
            if a > 0:
                ratio = t[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective is unbounded below")
        _pivot(t, basis, best[1], enter)
        pivots += 1


def solve_lp(c, a_rows, b) -> LPResult:
    """Minimise ``c·x`` over ``{x >= 0 : a_rows x <= b}`` exactly."""
    n = len(c)
    m = len(a_rows)
    c = [Fraction(v) for v in c]
    rows = []
    # columns: x (n), slack (m), artificial (one per negative rhs), rhs
    neg = [i for i in range(m) if Fraction(b[i]) < 0]
    art_col = {i: n + m + k for k, i in enumerate(neg)}
    ncols = n + m + len(neg)
    basis = []
    for i in range(m):
        sign = -1 if i in art_col else 1
        row = [Fraction(0)] * (ncols + 1)
        for j, v in enumerate(a_rows[i]):
            row[j] = sign * Fraction(v)
        row[n + i] = Fraction(sign)
        row[-1] = sign * Fraction(b[i])
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        rows.append(row)
    pivots = 0
    if neg:
        obj = [Fraction(0)] * (ncols + 1)
        for i in neg:
            obj = [o - v for o, v in zip(obj, rows[i])]
        for i in neg:
            obj[art_col[i]] = Fraction(0)
        t = rows + [obj]
        pivots += _run(t, basis, ncols, [True] * ncols)
        if t[-1][-1] != 0:
            raise Infeasible("linear program has no feasible point")
        # drive remaining artificials out of the basis where possible
        for r, bc in enumerate(basis):
            if bc >= n + m:
                col = next((j for j in range(n + m) if t[r][j] != 0), None)
                if col is not None:
                    _pivot(t, basis, r, col)
                    pivots += 1
        rows = t[:-1]
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = c[j]
    for r, bc in enumerate(basis):
        if bc < n and obj[bc]:
            f = obj[bc]
            obj = [o - f * v for o, v in zip(obj, rows[r])]
    t = rows + [obj]
    allowed = [j < n + m for j in range(ncols)]
    pivots += _run(t, basis, ncols, allowed)
    x = [Fraction(0)] * n
    for r, bc in enumerate(basis):
        if bc < n:
            x[bc] = t[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    if value != -t[-1][-1]:
        raise AssertionError("objective bookkeeping mismatch")
    return LPResult(value, tuple(x), pivots)
