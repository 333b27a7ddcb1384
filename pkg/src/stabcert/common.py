"""Shared tolerances, golden constants and quadrature plumbing."""

from __future__ import annotations

import numpy as np

# Decision tolerance for feasibility / positivity verdicts.
TOL = 1e-9
# Tolerance for closed-form (golden-ratio) values.
EXACT_TOL = 1e-12

# Golden ratio conjugate (sqrt(5) - 1) / 2, the extremal dual weight on Z_5.
GAMMA = (np.sqrt(5.0) - 1.0) / 2.0


class InternalInconsistencyError(RuntimeError):
    """Two independent evaluation paths disagree beyond tolerance."""


class UnresolvedError(RuntimeError):
    """A solver gave up before producing a trustworthy certificate."""


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached per order."""
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def panel_nodes(breakpoints, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for Gauss-Legendre panels between consecutive breakpoints."""
    x, w = gauss_nodes(order)
    bps = np.asarray(breakpoints, dtype=float)
    if bps.size < 2:
        return np.empty(0), np.empty(0)
    los, his = bps[:-1], bps[1:]
    half = 0.5 * (his - los)
    mid = 0.5 * (his + los)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_panels(fn, breakpoints, order: int = 16) -> float:
    """Integrate a vectorized callable over panels split at the breakpoints.

    Splitting at every kink of the integrand keeps each panel smooth, so the
    fixed-order rule is accurate to roundoff for the piecewise-analytic
    integrands used here.
    """
    nodes, weights = panel_nodes(breakpoints, order)
    if nodes.size == 0:
        return 0.0
    return float(np.dot(weights, fn(nodes)))


def format_float(x: float) -> str:
    """Render a float with 15 significant digits, the reporting convention."""
    return f"{float(x):.15g}"
