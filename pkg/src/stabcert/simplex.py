"""Dense two-phase simplex for the tiny linear programs behind the cone tests.

Solves   minimize c.x   subject to   A x <= b,  x >= 0
with Bland's smallest-index rule for both the entering and the leaving
variable, so the iteration terminates without cycling.  Problem sizes here
are a few dozen variables, dense tableaus are the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_TOL = 1e-11
_FEAS_TOL = 1e-9


class SimplexStall(RuntimeError):
    """Iteration cap reached; the caller must treat the run as unresolved."""


@dataclass
class LpResult:
    status: str
    x: np.ndarray | None
    objective: float | None


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for i in range(tableau.shape[0]):
        if i != row and tableau[i, col] != 0.0:
            tableau[i] -= tableau[i, col] * tableau[row]


def _iterate(tableau: np.ndarray, basis: list[int], cost: np.ndarray,
             ncols: int, max_iter: int) -> str:
    """Run simplex pivots until optimal or unbounded.  Bland's rule throughout."""
    z = cost[:ncols].astype(float).copy()
    for i, bi in enumerate(basis):
        if cost[bi] != 0.0:
            z -= cost[bi] * tableau[i, :ncols]
    for _ in range(max_iter):
        entering = -1
        for j in range(ncols):
            if z[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        col = tableau[:, entering]
        leave = -1
        best = np.inf
        for i in range(tableau.shape[0]):
            if col[i] > _PIVOT_TOL:
                ratio = tableau[i, -1] / col[i]
                if ratio < best - _PIVOT_TOL or (
                        abs(ratio - best) <= _PIVOT_TOL and (leave < 0 or basis[i] < basis[leave])):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tableau, leave, entering)
        basis[leave] = entering
        z -= z[entering] * tableau[leave, :ncols]
        z[entering] = 0.0
    raise SimplexStall("simplex hit its iteration cap")


def solve_lp(c, A, b, max_iter: int = 20000) -> LpResult:
    """Two-phase simplex for  min c.x  s.t.  A x <= b,  x >= 0."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent LP dimensions")

    flip = b < 0.0
    art_rows = np.nonzero(flip)[0]
    n_art = art_rows.size
    ncols = n + m + n_art

    tableau = np.zeros((m, ncols + 1))
    tableau[:, :n] = A
    tableau[:, n:n + m] = np.eye(m)
    tableau[:, -1] = b
    tableau[flip] *= -1.0
    basis: list[int] = [n + i for i in range(m)]
    for j, i in enumerate(art_rows):
        tableau[i, n + m + j] = 1.0
        basis[i] = n + m + j

    if n_art:
        phase1_cost = np.zeros(ncols)
        phase1_cost[n + m:] = 1.0
        status = _iterate(tableau, basis, phase1_cost, ncols, max_iter)
        if status != OPTIMAL:
            raise SimplexStall("phase 1 did not reach an optimum")
        infeas = sum(tableau[i, -1] for i, bi in enumerate(basis) if bi >= n + m)
        if infeas > _FEAS_TOL:
            return LpResult(INFEASIBLE, None, None)
        # Drive leftover (degenerate) artificials out of the basis.
        drop_rows = []
        for i, bi in enumerate(basis):
            if bi >= n + m:
                pivot_col = -1
                for j in range(n + m):
                    if abs(tableau[i, j]) > _PIVOT_TOL:
                        pivot_col = j
                        break
                if pivot_col >= 0:
                    _pivot(tableau, i, pivot_col)
                    basis[i] = pivot_col
                else:
                    drop_rows.append(i)
        if drop_rows:
            keep = [i for i in range(m) if i not in drop_rows]
            tableau = tableau[keep]
            basis = [basis[i] for i in keep]

    tableau = np.hstack([tableau[:, :n + m], tableau[:, -1:]])
    ncols = n + m
    phase2_cost = np.zeros(ncols)
    phase2_cost[:n] = c
    status = _iterate(tableau, basis, phase2_cost, ncols, max_iter)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, None, None)

    x = np.zeros(n)
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tableau[i, -1]
    return LpResult(OPTIMAL, x, float(c @ x))
