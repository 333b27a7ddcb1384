"""Numerical realization of the rotationally symmetric construction in R^2.

Pipeline: take the continuum potential W built from a bump of half-width 1/4
(so W vanishes at |x| >= 5/2), periodize it with a damped comb of spacing 5,
divide by radius to make it a radial profile, and mollify twice with a
radial bump g supported on [0, 1/4):

    W1(x)   = sum_s  e^{-5 eps |s|} W(x - 5 s)
    W2(|x|) = integral integral g(|x-y|) W1(|y-z|)/|y-z| g(|z|) d2y d2z

The damped periodization uses the two-sided geometric weight per shift.
That weight sequence has a strictly positive Fourier transform, hence it is
the self-convolution of a positive summable comb, and the mollification
sandwich argument keeps the quadratic form of W1 (and then W2) nonnegative.
The geometric weight is also what makes the large-radius behaviour

    W2(|5 nu + n|) ~ K e^{-5 eps nu} V(n) / (5 nu + n)

hold with a shift-independent constant K, which the asymptotic fast mode
uses for the tail of the witness series

    S(eps) = W2(0) + 2 gamma W2(1)
           + 2 sum_nu [ W2(5 nu) + gamma (W2(5 nu - 1) + W2(5 nu + 1)) ].

S(eps) grows negatively like log(1/eps); the scan fits that slope.

All W2 quadratures run in polar coordinates centered on the singular factor,
so the 1/|y-z| weight cancels against the polar Jacobian and every panel
sees a smooth integrand.  Every quadrature value carries an error estimate
obtained by doubling the subdivision depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .common import GAMMA, gauss_nodes
from .continuum import BumpFunction, ContinuumPotential


class QuadratureError(RuntimeError):
    """A value's error estimate exceeded the requested bound."""


@dataclass(frozen=True)
class CombParams:
    """Damped comb: spacing 5, shift s weighted e^{-spacing * eps * |s|}.

    nu_max truncates at the first shift whose weight drops below ``tail``;
    the dropped geometric tail is below 1e-9 for the defaults.
    """

    eps: float
    spacing: float = 5.0
    tail: float = 1e-10

    def __post_init__(self) -> None:
        if self.eps <= 0.0:
            raise ValueError("comb damping eps must be positive")
        if self.spacing <= 0.0 or self.tail <= 0.0:
            raise ValueError("comb spacing and tail must be positive")

    @property
    def nu_max(self) -> int:
        return int(math.floor(math.log(1.0 / self.tail) / (self.spacing * self.eps)))

    def weight(self, s) -> np.ndarray | float:
        s = np.asarray(s, dtype=float)
        out = np.exp(-self.spacing * self.eps * np.abs(s))
        return float(out) if out.ndim == 0 else out

    def to_json(self) -> dict:
        return {"eps": self.eps, "spacing": self.spacing, "tail": self.tail,
                "nu_max": self.nu_max}


@dataclass(frozen=True)
class QuadratureSpec:
    """Orders and refinement depth for the polar-centered W2 quadrature."""

    radial_order: int = 10
    angular_order: int = 12
    depth: int = 0
    mode: str = "polar-centered"
    max_error: float | None = None

    def __post_init__(self) -> None:
        if self.radial_order < 8 or self.angular_order < 8:
            raise ValueError("quadrature orders must be >= 8")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.mode != "polar-centered":
            raise ValueError("only the polar-centered singularity mode is implemented")

    def to_json(self) -> dict:
        return {"radial_order": self.radial_order, "angular_order": self.angular_order,
                "depth": self.depth, "mode": self.mode, "max_error": self.max_error}


class PeriodizedPotential:
    """W1: the damped 5-periodic extension of a compactly supported potential.

    The base potential must vanish by |x| = spacing/2, so for any x at most
    the single shift s = round(x / spacing) contributes.
    """

    def __init__(self, base: ContinuumPotential, comb: CombParams) -> None:
        if base.support_radius > comb.spacing / 2.0 + 1e-12:
            raise ValueError("base support exceeds half the comb spacing; "
                             "use a bump of half-width <= 1/4")
        self.base = base
        self.comb = comb

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        s = np.rint(x / self.comb.spacing)
        w = np.where(np.abs(s) <= self.comb.nu_max, self.comb.weight(s), 0.0)
        out = w * self.base(x - self.comb.spacing * s)
        return float(out[0]) if scalar else out


class PlanePotential:
    """The radial 2D potential W2 with quadrature and asymptotic evaluators."""

    def __init__(self, eps: float, quad: QuadratureSpec | None = None,
                 comb_tail: float = 1e-10) -> None:
        self.comb = CombParams(eps, tail=comb_tail)
        self.quad = quad if quad is not None else QuadratureSpec()
        self.bump_f = BumpFunction("cosine", 0.25)
        self.bump_g = BumpFunction("cosine", 0.25)
        self.base = ContinuumPotential(self.bump_f)
        self.w1 = PeriodizedPotential(self.base, self.comb)
        self._asymptotic_k: float | None = None

    # -- quadrature mode ----------------------------------------------------

    def value(self, r: float) -> tuple[float, float]:
        """W2(r) with an error estimate from doubling the subdivision depth."""
        if r < 0.0:
            raise ValueError("radial argument must be >= 0")
        reach = self.base.support_radius + 2.0 * self.bump_g.halfwidth
        smax = self.comb.spacing * self.comb.nu_max
        if r > smax + reach:
            return 0.0, 0.0
        coarse = self._integrate(r, self.quad.depth)
        fine = self._integrate(r, self.quad.depth + 1)
        err = abs(fine - coarse)
        if self.quad.max_error is not None and err > self.quad.max_error:
            raise QuadratureError(f"W2({r}) error estimate {err:.3e} above requested "
                                  f"{self.quad.max_error:.3e}")
        return fine, err

    def _integrate(self, r: float, depth: int) -> float:
        splits = 2 ** depth
        nr, na = self.quad.radial_order, self.quad.angular_order
        gh = self.bump_g.halfwidth
        xr, wr = gauss_nodes(nr)
        xa, wa = gauss_nodes(na)

        def panels(lo, hi, x, w, nsplit):
            edges = np.linspace(lo, hi, nsplit + 1)
            half = 0.5 * np.diff(edges)
            mid = 0.5 * (edges[:-1] + edges[1:])
            nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
            weights = (half[:, None] * w[None, :]).ravel()
            return nodes, weights

        s_nodes, s_weights = panels(0.0, gh, xr, wr, splits)
        psi_nodes, psi_weights = panels(0.0, np.pi, xa, wa, splits)
        g_s = self.bump_g(s_nodes)

        total = 0.0
        for s, ws, gs in zip(s_nodes, s_weights, g_s):
            v1 = r - s * np.cos(psi_nodes)
            v2 = -s * np.sin(psi_nodes)
            vnorm = np.hypot(v1, v2)
            inner = self._inner(vnorm, gh, xr, wr, xa, wa, splits)
            total += ws * s * gs * float(np.dot(psi_weights, inner))
        return 2.0 * total  # psi-symmetry of the z integral

    def _inner(self, vnorm: np.ndarray, gh: float, xr, wr, xa, wa, splits: int) -> np.ndarray:
        """integral over u = y - z in polar form, for a batch of |x - z| values.

        The radial window is |v| +- gh; panels split at the half-integer
        kinks of W1.  The angular window is where the outer bump g reaches,
        and the 1/|u| weight has already cancelled against the Jacobian.
        """
        m = vnorm.size
        t_lo = np.maximum(vnorm - gh, 0.0)
        t_hi = vnorm + gh
        # Up to two half-integer kinks can fall inside a window of width 2*gh.
        k0 = np.ceil(2.0 * t_lo) / 2.0
        cuts = np.stack([np.clip(k0, t_lo, t_hi),
                         np.clip(k0 + 0.5, t_lo, t_hi),
                         np.clip(k0 + 1.0, t_lo, t_hi)], axis=1)
        edges = np.sort(np.concatenate(
            [t_lo[:, None], cuts, t_hi[:, None]], axis=1), axis=1)  # (m, 5)

        base_t = np.repeat(edges[:, :-1], splits, axis=1)
        steps = np.repeat(np.diff(edges, axis=1), splits, axis=1) / splits
        offs = np.tile(np.arange(splits), edges.shape[1] - 1)
        panel_lo = base_t + steps * offs[None, :]          # (m, 4*splits)
        half = 0.5 * steps
        mid = panel_lo + half
        t = mid[:, :, None] + half[:, :, None] * xr[None, None, :]      # (m, p, nr)
        t_w = half[:, :, None] * wr[None, None, :]

        w1_vals = self.w1(t.ravel()).reshape(t.shape)

        v = vnorm[:, None, None]
        arg = v * v + t * t - gh * gh
        denom = 2.0 * t * v
        with np.errstate(divide="ignore", invalid="ignore"):
            cosphi = np.where(denom > 1e-300, arg / denom, np.where(arg < 0.0, -2.0, 2.0))
        delta = np.arccos(np.clip(cosphi, -1.0, 1.0))      # angular half-window

        phi_half = 0.5 * delta[..., None]
        phi = phi_half * (xa[None, None, None, :] + 1.0)   # nodes on (0, delta)
        phi_w = phi_half * wa[None, None, None, :]
        dist_sq = v[..., None] ** 2 + t[..., None] ** 2 \
            - 2.0 * t[..., None] * v[..., None] * np.cos(phi)
        g_vals = self.bump_g(np.sqrt(np.maximum(dist_sq, 0.0)))
        angular = 2.0 * np.sum(phi_w * g_vals, axis=-1)    # symmetric window

        return np.sum(t_w * w1_vals * angular, axis=(1, 2))

    # -- asymptotic fast mode -----------------------------------------------

    def asymptotic_constant(self) -> float:
        """K = integral (G * G)(a) A(a) da with G the 1D marginal of the radial g.

        Computed once by Gauss-Legendre; together with the comb weight and
        the 1/r spreading this pins the large-radius surrogate for W2.
        """
        if self._asymptotic_k is None:
            gh = self.bump_g.halfwidth
            x64, w64 = gauss_nodes(64)

            def marginal(a: np.ndarray) -> np.ndarray:
                bmax = np.sqrt(np.maximum(gh * gh - a * a, 0.0))
                b = bmax[:, None] * x64[None, :]
                vals = self.bump_g(np.sqrt(a[:, None] ** 2 + b ** 2))
                return bmax * (vals @ w64)

            a_nodes = gh * x64
            ga = marginal(np.abs(a_nodes))
            aa = self.bump_f.autocorr(a_nodes[:, None] + a_nodes[None, :])
            self._asymptotic_k = float(gh * gh * (w64 @ (aa * np.outer(ga, ga)) @ w64))
        return self._asymptotic_k

    def asymptotic_value(self, nu: int, n: int) -> float:
        """Surrogate W2(|5 nu + n|) = K e^{-5 eps nu} V(n) / (5 nu + n)."""
        if nu < 1:
            raise ValueError("the asymptotic surrogate applies to nu >= 1")
        vn = self.base.kernel.value(n)
        return self.asymptotic_constant() * float(self.comb.weight(nu)) * vn \
            / (self.comb.spacing * nu + n)

    # -- witness series -----------------------------------------------------

    def witness_series(self, mode: str = "asymptotic") -> tuple[float, float]:
        """S(eps): the pairing of W2 against the golden comb along an axis.

        Head terms (radii 0, 1 and the nu = 1 shell) are always quadrature;
        shells nu >= 2 use the asymptotic surrogate unless mode is
        "quadrature".  Terms accumulate sorted by magnitude for
        reproducibility.  Returns (value, quadrature error budget).
        """
        if mode not in ("asymptotic", "quadrature"):
            raise ValueError(f"unknown series mode {mode!r}")
        terms: list[float] = []
        budget = 0.0

        def quad_term(radius: float, factor: float) -> None:
            nonlocal budget
            val, err = self.value(radius)
            terms.append(factor * val)
            budget += abs(factor) * err

        quad_term(0.0, 1.0)
        quad_term(1.0, 2.0 * GAMMA)
        # nu = 1 shell, explicitly: mu(0) = 1, mu(+-1) = gamma, mu(+-2) = 0.
        quad_term(self.comb.spacing, 2.0)
        quad_term(self.comb.spacing - 1.0, 2.0 * GAMMA)
        quad_term(self.comb.spacing + 1.0, 2.0 * GAMMA)

        head_scale = max(abs(sum(terms)), 1e-30)
        for nu in range(2, self.comb.nu_max + 1):
            if mode == "quadrature":
                val0, err0 = self.value(self.comb.spacing * nu)
                valm, errm = self.value(self.comb.spacing * nu - 1.0)
                valp, errp = self.value(self.comb.spacing * nu + 1.0)
                shell = 2.0 * (val0 + GAMMA * (valm + valp))
                budget += 2.0 * (err0 + GAMMA * (errm + errp))
            else:
                shell = 2.0 * (self.asymptotic_value(nu, 0)
                               + GAMMA * (self.asymptotic_value(nu, -1)
                                          + self.asymptotic_value(nu, 1)))
            terms.append(shell)
            if abs(shell) < 1e-10 * head_scale:
                break

        total = float(sum(sorted(terms, key=abs)))
        return total, budget


@dataclass
class ScanResult:
    """(eps, S) rows with the fitted slope of S against log(1/eps)."""

    rows: list[tuple[float, float]]
    slope: float | None
    residual: float | None
    mode: str
    error_budgets: list[float]

    @property
    def slope_defined(self) -> bool:
        return self.slope is not None

    def to_json(self) -> dict:
        return {
            "rows": [[e, s] for e, s in self.rows],
            "slope": self.slope,
            "residual": self.residual,
            "mode": self.mode,
            "error_budgets": self.error_budgets,
        }


def divergence_scan(eps_list, quad: QuadratureSpec | None = None,
                    mode: str = "asymptotic") -> ScanResult:
    """Evaluate the witness series on a decreasing eps grid and fit its slope.

    A strictly decreasing grid is required.  With fewer than two points the
    slope is undefined and flagged as None.
    """
    eps_values = [float(e) for e in eps_list]
    if not eps_values:
        raise ValueError("eps list must not be empty")
    if any(e <= 0.0 for e in eps_values):
        raise ValueError("eps values must be positive")
    if any(b >= a for a, b in zip(eps_values, eps_values[1:])):
        raise ValueError("eps values must be strictly decreasing")

    rows: list[tuple[float, float]] = []
    budgets: list[float] = []
    for eps in eps_values:
        plane = PlanePotential(eps, quad=quad)
        s_val, budget = plane.witness_series(mode=mode)
        rows.append((eps, s_val))
        budgets.append(budget)

    if len(rows) >= 2:
        x = np.log(1.0 / np.array([e for e, _ in rows]))
        y = np.array([s for _, s in rows])
        slope, intercept = np.polyfit(x, y, 1)
        fit = slope * x + intercept
        residual = float(np.sqrt(np.mean((fit - y) ** 2)))
        slope = float(slope)
    else:
        slope = None
        residual = None
    return ScanResult(rows=rows, slope=slope, residual=residual,
                      mode=mode, error_budgets=budgets)
