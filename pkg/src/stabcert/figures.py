"""Matplotlib rendering for the report commands.

Figures are written straight to files (Agg backend, no display); the CSV
remains the primary machine-readable output and these plots sit next to it.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def save_threshold_figure(result, path: str) -> None:
    """Probe trace of a threshold scan: feasibility flags and the flip point."""
    probes = sorted(result.probes, key=lambda p: p.a)
    a = [p.a for p in probes]
    feas = [1 if p.feasible else 0 for p in probes]
    norm = [p.certificate_norm for p in probes]

    fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(6.0, 4.5))
    ax0.step(a, feas, where="mid", color="tab:blue")
    ax0.axvline(result.a_star, color="tab:red", ls="--",
                label=f"flip at {result.a_star:.6f}")
    ax0.set_ylabel("decomposable")
    ax0.set_yticks([0, 1])
    ax0.legend(loc="center right", fontsize=8)
    ax1.plot(a, norm, "o-", ms=3, color="tab:gray")
    ax1.axvline(result.a_star, color="tab:red", ls="--")
    ax1.set_xlabel("family parameter a")
    ax1.set_ylabel("certificate norm")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_divergence_figure(result, path: str) -> None:
    """Witness series against log(1/eps) with the fitted slope."""
    eps = np.array([e for e, _ in result.rows])
    s = np.array([v for _, v in result.rows])
    x = np.log(1.0 / eps)

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(x, s, "o", color="tab:blue", label=f"series ({result.mode} mode)")
    if result.slope is not None:
        xs = np.linspace(x.min(), x.max(), 50)
        intercept = np.mean(s - result.slope * x)
        ax.plot(xs, result.slope * xs + intercept, "-", color="tab:red",
                label=f"slope {result.slope:.3e}")
    ax.set_xlabel("log(1/eps)")
    ax.set_ylabel("pairing series")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_figure(xs, values, path: str, ylabel: str = "value") -> None:
    """Line plot of a sampled potential profile."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, values, "-", color="tab:blue")
    ax.axhline(0.0, color="0.7", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
