"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: LCS by exhaustive
subsequence enumeration, surjections by composition enumeration, LP optima by
vertex enumeration.  They are slow and only usable at tiny sizes, which is
the point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from insdel.combinat import multinomial, positive_compositions


def is_subsequence(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    it = iter(y)
    return all(s in it for s in x)


def brute_lcs(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Longest common subsequence by enumerating all subsequences of a."""
    best = 0
    for r in range(len(a), 0, -1):
        for keep in itertools.combinations(range(len(a)), r):
            sub = tuple(a[i] for i in keep)
            if is_subsequence(sub, b):
                return r
    return best


def surjections_by_composition(m: int, j: int) -> int:
    """Sum of multinomials over positive compositions of m into j parts."""
    return sum(multinomial(m, comp) for comp in positive_compositions(m, j))


def lp_max_by_vertex_enumeration(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> Fraction:
    """Maximize sum(x) over {rows . x <= rhs, x >= 0} by enumerating basic points.

    Tries every choice of n active constraints among the rows and the
    nonnegativity bounds, solves the square system exactly, and keeps the
    best feasible solution.  Only for tiny models.
    """
    n = len(rows[0]) if rows else 0
    constraints = [(row, b) for row, b in zip(rows, rhs)]
    for i in range(n):
        unit = [Fraction(int(j == i)) for j in range(n)]
        constraints.append((unit, Fraction(0)))
    best: Fraction | None = None
    for active in itertools.combinations(range(len(constraints)), n):
        mat = [list(constraints[i][0]) + [constraints[i][1]] for i in active]
        x = _solve_square(mat, n)
        if x is None:
            continue
        if any(xi < 0 for xi in x):
            continue
        if any(
            sum(c * xi for c, xi in zip(row, x)) > b for row, b in zip(rows, rhs)
        ):
            continue
        value = sum(x)
        if best is None or value > best:
            best = value
    assert best is not None, "feasible region should contain the origin"
    return best


def _solve_square(mat: list[list[Fraction]], n: int) -> list[Fraction] | None:
    """Gaussian elimination over Fractions; None if singular."""
    m = [row[:] for row in mat]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pr = m[col]
        pr[:] = [v / pr[col] for v in pr]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], pr)]
    return [m[r][n] for r in range(n)]
