"""Exact rational linear programming.

Two independent routes:

* :func:`simplex_min` -- two-phase simplex on ``min c·x, A x = b, x ≥ 0`` with
  Bland's rule, all arithmetic in :class:`~fractions.Fraction`;
* :func:`vertex_max` -- brute-force vertex enumeration of a bounded polytope
  ``{x : A x ≤ b}`` in small dimension.

Both return the lexicographically smallest optimal point when asked to
(``lexicographic=True`` / always for vertex enumeration).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "LPError",
    "Infeasible",
    "Unbounded",
    "solve_linear",
    "rank",
    "simplex_min",
    "vertex_max",
]


class LPError(ArithmeticError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by Gaussian elimination."""
    M = [[_F(v) for v in r] for r in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [[_F(v) for v in row] + [_F(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# simplex


class _Tableau:
    # rows: constraint rows [coeffs..., rhs]; basis[i] = basic column of row i
    def __init__(self, rows, basis):
        self.rows = rows
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [v * inv for v in row]
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def reduced_costs(self, cost, allowed):
        ncols = len(self.rows[0]) - 1
        red = list(cost[:ncols]) + [Fraction(0)] * (ncols - len(cost))
        for i, bc in enumerate(self.basis):
            cb = cost[bc] if bc < len(cost) else Fraction(0)
            if cb:
                red = [a - cb * b for a, b in zip(red, self.rows[i][:ncols])]
        return [red[j] if allowed[j] else Fraction(0) for j in range(ncols)]

    def optimize(self, cost, allowed):
        """Minimize ``cost`` over the current basic feasible solution (Bland's rule)."""
        while True:
            red = self.reduced_costs(cost, allowed)
            entering = next((j for j, v in enumerate(red) if v < 0 and j not in self.basis), None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    cand = (ratio, self.basis[i], i)
                    if best is None or cand < best:
                        best = cand
            if best is None:
                raise Unbounded("objective unbounded below")
            self.pivot(best[2], entering)

    def solution(self, n):
        x = [Fraction(0)] * n
        for i, bc in enumerate(self.basis):
            if bc < n:
                x[bc] = self.rows[i][-1]
        return x


def _phase_one(A, b):
    m, n = len(A), len(A[0]) if A else 0
    rows = []
    for i in range(m):
        row = [_F(v) for v in A[i]]
        rhs = _F(b[i])
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    tab = _Tableau(rows, [n + i for i in range(m)])
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    tab.optimize(cost, [True] * (n + m))
    if sum(tab.rows[i][-1] for i, bc in enumerate(tab.basis) if bc >= n) != 0:
        raise Infeasible("no feasible point")
    # drive artificial columns out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            c = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if c is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, c)
        i += 1
    tab.rows = [r[:n] + [r[-1]] for r in tab.rows]
    return tab


def simplex_min(c, A_eq, b_eq, *, lexicographic: bool = False):
    """Solve ``min c·x  s.t.  A_eq x = b_eq, x ≥ 0`` exactly.

    Returns ``(value, x)``.  With ``lexicographic=True`` the returned optimum is
    the lexicographically smallest optimal vertex (coordinates minimized in
    index order with the earlier ones and the objective held fixed).
    """
    c = [_F(v) for v in c]
    n = len(c)
    if not A_eq:
        if any(v < 0 for v in c):
            raise Unbounded("objective unbounded below")
        return Fraction(0), [Fraction(0)] * n
    tab = _phase_one(A_eq, b_eq)
    if not tab.rows:
        if any(v < 0 for v in c):
            raise Unbounded("objective unbounded below")
        return Fraction(0), [Fraction(0)] * n
    allowed = [True] * n
    tab.optimize(c, allowed)
    x = tab.solution(n)
    value = sum(ci * xi for ci, xi in zip(c, x))
    if lexicographic:
        # restrict to the optimal face: columns with positive reduced cost are fixed at 0
        red = tab.reduced_costs(c, allowed)
        allowed = [red[j] == 0 for j in range(n)]
        for j in range(n):
            if not allowed[j]:
                continue
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            tab.optimize(e, allowed)
            red = tab.reduced_costs(e, allowed)
            allowed = [allowed[k] and red[k] == 0 for k in range(n)]
        x = tab.solution(n)
    return value, x


# ---------------------------------------------------------------------------
# vertex enumeration


def vertex_max(c, A_ub, b_ub):
    """Maximize ``c·x`` over the bounded polytope ``{x : A_ub x ≤ b_ub}``.

    Enumerates every basis of ``len(c)`` tight constraints; intended for
    dimension at most 4.  Returns ``(value, x)`` with ``x`` the
    lexicographically smallest optimal vertex.
    """
    d = len(c)
    c = [_F(v) for v in c]
    A = [[_F(v) for v in row] for row in A_ub]
    b = [_F(v) for v in b_ub]
    if d == 0:
        return Fraction(0), []
    best = None
    seen = set()
    for combo in itertools.combinations(range(len(A)), d):
        x = solve_linear([A[i] for i in combo], [b[i] for i in combo])
        if x is None:
            continue
        tx = tuple(x)
        if tx in seen:
            continue
        seen.add(tx)
        if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            if best is None or val > best[0] or (val == best[0] and tx < best[1]):
                best = (val, tx)
    if best is None:
        raise Infeasible("polytope has no vertex")
    return best[0], list(best[1])
