"""Continuum lift of the chain potential.

A positive bump supported on (-h, h) smooths the alternating lattice kernel
into a continuous potential on R:

    W(x) = sum_n V(n) A(n - x),      A(t) = integral f(y) f(y+t) dy.

Energies of atomic measures get two independent evaluation paths (the double
sum over W, and quadrature of the smoothed-density reduction); the witness
pairing against the golden five-periodic delta comb is the continuum
indecomposability certificate.
"""

from __future__ import annotations

import numpy as np

from .chain import alternating_potential, witness_measure
from .common import InternalInconsistencyError, integrate_panels
from .lattice import LatticePotential


class BumpFunction:
    """Positive continuous bump on (-h, h), zero outside.

    kind "cosine" is f(y) = cos(pi y / (2h)) with a closed-form
    autocorrelation; kind "tabulated" interpolates samples linearly and
    integrates the autocorrelation exactly panel by panel.
    """

    def __init__(self, kind: str = "cosine", halfwidth: float = 0.5,
                 table: np.ndarray | None = None) -> None:
        if halfwidth <= 0.0:
            raise ValueError("halfwidth must be positive")
        if kind == "cosine":
            if table is not None:
                raise ValueError("cosine bumps take no table")
        elif kind == "tabulated":
            if table is None:
                raise ValueError("tabulated bumps need samples")
            table = np.asarray(table, dtype=float)
            if table.ndim != 1 or table.size < 3:
                raise ValueError("tabulated bumps need at least three samples")
            if np.min(table) < 0.0 or np.max(table) <= 0.0:
                raise ValueError("tabulated bumps must be nonnegative with positive mass")
        else:
            raise ValueError(f"unknown bump kind {kind!r}")
        self.kind = kind
        self.halfwidth = float(halfwidth)
        self.table = table
        if kind == "tabulated":
            self._grid = np.linspace(-halfwidth, halfwidth, table.size)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "cosine":
            out = np.where(np.abs(y) < self.halfwidth,
                           np.cos(np.pi * y / (2.0 * self.halfwidth)), 0.0)
        else:
            out = np.interp(y, self._grid, self.table, left=0.0, right=0.0)
            out = np.where(np.abs(y) < self.halfwidth, out, 0.0)
        return float(out) if out.ndim == 0 else out

    def autocorr(self, t):
        """A(t) = integral f(y) f(y+t) dy; even, supported on (-2h, 2h).

        Cosine kind, with tau = |t| / (2h):
            A(t) = h (1 - tau) cos(pi tau) + (h / pi) sin(pi tau).
        Tabulated kind integrates the piecewise-linear product exactly.
        """
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        h = self.halfwidth
        if self.kind == "cosine":
            tau = np.minimum(np.abs(t) / (2.0 * h), 1.0)
            out = h * (1.0 - tau) * np.cos(np.pi * tau) + (h / np.pi) * np.sin(np.pi * tau)
            out = np.where(np.abs(t) < 2.0 * h, out, 0.0)
        else:
            out = np.array([self._autocorr_tabulated(abs(ti)) for ti in t])
        return float(out[0]) if scalar else out

    def _autocorr_tabulated(self, t: float) -> float:
        h = self.halfwidth
        if t >= 2.0 * h:
            return 0.0
        lo, hi = -h, h - t
        bps = np.concatenate([self._grid, self._grid - t])
        bps = np.unique(np.clip(bps, lo, hi))
        if bps.size < 2:
            return 0.0
        return integrate_panels(lambda y: self(y) * self(y + t), bps, order=6)

    @property
    def l2_norm_sq(self) -> float:
        """integral f^2 = A(0)."""
        return float(self.autocorr(0.0))


class ContinuumPotential:
    """W(x) = sum_n kernel(n) A(n - x) for an even lattice kernel and bump autocorrelation.

    With the default alternating kernel and a bump of half-width 1/2 the
    support is |x| < 3, W is continuous, and W(m) = kernel(m) A(0) at every
    integer m because A vanishes at nonzero integers.
    """

    def __init__(self, bump: BumpFunction | None = None,
                 kernel: LatticePotential | None = None) -> None:
        self.bump = bump if bump is not None else BumpFunction("cosine", 0.5)
        self.kernel = kernel if kernel is not None else alternating_potential()
        if self.kernel.domain != "line":
            raise ValueError("the lattice kernel must live on the line")
        self.support_radius = self.kernel.halfwidth + 2.0 * self.bump.halfwidth

    def autocorr(self, t):
        return self.bump.autocorr(t)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros_like(x)
        h = self.kernel.halfwidth
        for n in range(-h, h + 1):
            vn = self.kernel.value(n)
            if vn != 0.0:
                out += vn * self.bump.autocorr(n - x)
        return float(out[0]) if scalar else out


class AtomicMeasure:
    """Finitely many atoms with strictly positive weights."""

    def __init__(self, points, weights) -> None:
        points = np.asarray(points, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if points.ndim != 1 or points.shape != weights.shape or points.size == 0:
            raise ValueError("points and weights must be matching nonempty 1-d arrays")
        if not (np.all(np.isfinite(points)) and np.all(np.isfinite(weights))):
            raise ValueError("points and weights must be finite")
        if np.min(weights) <= 0.0:
            raise ValueError("atomic weights must be strictly positive")
        self.points = points
        self.weights = weights

    def to_json(self) -> dict:
        return {"points": self.points.tolist(), "weights": self.weights.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "AtomicMeasure":
        return cls(obj["points"], obj["weights"])


def _smoothed_density(measure: AtomicMeasure, bump: BumpFunction):
    def rho_f(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return bump(x[:, None] - measure.points[None, :]) @ measure.weights
    return rho_f


def _energy_by_reduction(measure: AtomicMeasure, potential: ContinuumPotential) -> float:
    """Second evaluation path: sum_n V(n) integral rho_f(x+n) rho_f(x) dx.

    rho_f is the bump-smoothed measure; panels split at every bump edge so
    the quadrature sees only smooth integrands.
    """
    bump = potential.bump
    h = bump.halfwidth
    rho_f = _smoothed_density(measure, bump)
    pts = measure.points
    kernel = potential.kernel
    total = 0.0
    for n in range(0, kernel.halfwidth + 1):
        vn = kernel.value(n)
        if vn == 0.0:
            continue
        lo = float(np.min(pts) - h)
        hi = float(np.max(pts) + h)
        edges = np.concatenate([pts - h, pts + h, pts - h - n, pts + h - n])
        bps = np.unique(np.clip(edges, lo, hi))
        if bps.size < 2:
            continue
        value = integrate_panels(lambda x: rho_f(x) * rho_f(x + n), bps, order=16)
        total += vn * value * (1.0 if n == 0 else 2.0)
    return total


def energy_atomic(measure: AtomicMeasure, potential: ContinuumPotential,
                  check: bool = True, check_tol: float = 1e-6) -> float:
    """Energy sum_{i,j} w_i w_j W(x_i - x_j), self-interactions included.

    With check=True the value is recomputed through the smoothed-density
    reduction and the two paths must agree to check_tol (scaled by the
    energy's magnitude); disagreement raises InternalInconsistencyError.
    """
    diffs = measure.points[:, None] - measure.points[None, :]
    direct = float(measure.weights @ potential(diffs) @ measure.weights)
    if check:
        reduced = _energy_by_reduction(measure, potential)
        if abs(direct - reduced) > check_tol * max(1.0, abs(direct)):
            raise InternalInconsistencyError(
                f"energy paths disagree: direct {direct} vs reduction {reduced}")
    return direct


def witness_pairing(potential: ContinuumPotential, periods: int = 0) -> float:
    """Pair W against the golden delta comb, truncated to |m| <= 5 periods + 2.

    W vanishes at |x| >= 3, so every period beyond the central one
    contributes nothing and the value equals
    (sum_n V(n) mu(n)) * A(0) = (2 - sqrt 5) * A(0) independent of the
    truncation.
    """
    mu = witness_measure(periods)
    h = mu.halfwidth
    m = np.arange(-h, h + 1)
    return float(np.dot(mu.values, potential(m.astype(float))))
