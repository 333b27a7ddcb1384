"""Acceptance gate: every criterion runs at its stated tolerance and prints
one pass/fail line.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import json
import time

import numpy as np
import pytest

from stabcert import (
    GAMMA,
    AtomicMeasure,
    ContinuumPotential,
    Density,
    DecompositionCertificate,
    LatticePotential,
    PlanePotential,
    QuadratureSpec,
    alternating_potential,
    autocorrelate,
    copositivity_verdict,
    correlation_bound_holds,
    cut_certificate,
    divergence_scan,
    dual_slice_vertices_z5,
    energy,
    energy_atomic,
    threshold_scan,
    witness_pairing,
)
from stabcert.cli import main
from stabcert.cones import quadratic_matrix
from stabcert.continuum import _energy_by_reduction

SQRT5 = np.sqrt(5.0)
V5_JSON = '{"domain":"cyclic","n":5,"values":[1,-1,1,1,-1]}'


def report(number, name, elapsed, budget, **details):
    extras = " ".join(f"{k}={v}" for k, v in details.items())
    print(f"[acceptance] {number} {name} PASS ({elapsed:.2f}s < {budget:.0f}s) {extras}")
    assert elapsed < budget


def test_criterion_1_golden_pairing(tmp_path):
    t0 = time.perf_counter()
    out = tmp_path / "cert.json"
    code = main(["decompose", "--input", V5_JSON, "--out", str(out)])
    elapsed = time.perf_counter() - t0
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["type"] == "separating"
    pairing_err = abs(payload["pairing"] - (2 - SQRT5))
    assert pairing_err < 1e-12
    mu = np.array(payload["values"])
    assert abs(mu[0] - 1.0) < 1e-12
    mu_err = float(np.max(np.abs(mu - np.array([1, GAMMA, 0, 0, GAMMA]))))
    assert mu_err < 1e-9
    report(1, "golden-pairing", elapsed, 1.0,
           pairing_err=f"{pairing_err:.1e}", mu_err=f"{mu_err:.1e}")


def test_criterion_2_spectrum_golden_values():
    t0 = time.perf_counter()
    mu = Density("cyclic", [1.0, GAMMA, 0.0, 0.0, GAMMA])
    from stabcert import dft
    coeffs = dft(mu).coefficients
    expected = np.array([SQRT5, (5 - SQRT5) / 2, 0.0, 0.0, (5 - SQRT5) / 2])
    err = float(np.max(np.abs(coeffs - expected)))
    elapsed = time.perf_counter() - t0
    assert err < 1e-12
    report(2, "spectrum-golden", elapsed, 1.0, max_err=f"{err:.1e}")


def test_criterion_3_dual_vertices():
    t0 = time.perf_counter()
    vertices = dual_slice_vertices_z5().vertices
    expected = [(0.0, 0.0), (0.0, GAMMA), (GAMMA, 0.0), (1.0, 1.0)]
    assert len(vertices) == 4
    worst = 0.0
    for target in expected:
        best = min(abs(a - target[0]) + abs(b - target[1]) for a, b in vertices)
        worst = max(worst, best)
    elapsed = time.perf_counter() - t0
    assert worst < 1e-9
    report(3, "dual-vertices", elapsed, 1.0, worst=f"{worst:.1e}")


def test_criterion_4_threshold():
    t0 = time.perf_counter()
    result = threshold_scan(-1.0, -0.5, tol=1e-6)
    err = abs(result.a_star - (-(1 + SQRT5) / 4))
    elapsed = time.perf_counter() - t0
    assert err < 1e-6
    report(4, "threshold", elapsed, 10.0, a_star=f"{result.a_star:.7f}",
           err=f"{err:.1e}")


def test_criterion_5_stability_certificates():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    kernel = alternating_potential()
    worst_gap = 0.0
    for _ in range(1000):
        length = int(rng.integers(1, 21))
        weights = rng.uniform(0.0, 10.0, length)
        weights[rng.integers(0, length)] += 1e-3
        if length % 2 == 0:
            weights = np.append(weights, 0.0)
        rho = Density("line", weights)
        e = energy(rho, kernel)
        cert = cut_certificate(rho, kernel)
        cert.validate(e, tol=1e-9)
        worst_gap = max(worst_gap, abs(cert.total - e))
        assert e >= -1e-9
    for window in range(2, 13):
        verdict = copositivity_verdict(kernel, window=window)
        assert verdict.copositive
    elapsed = time.perf_counter() - t0
    report(5, "stability-certificates", elapsed, 60.0,
           certificates=1000, worst_gap=f"{worst_gap:.1e}", windows="2..12")


def test_criterion_6_small_moduli_equality():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    separators = 0
    for n in (2, 3, 4):
        accepted = 0
        while accepted < 100:
            v = rng.uniform(-1.0, 1.0, n)
            kernel = LatticePotential("cyclic", 0.5 * (v + np.roll(v[::-1], 1)))
            if not copositivity_verdict(kernel, cross_check=False).copositive:
                continue
            accepted += 1
            cert = decompose_checked(kernel)
            if not isinstance(cert, DecompositionCertificate):
                separators += 1
    elapsed = time.perf_counter() - t0
    assert separators == 0
    report(6, "small-moduli-equality", elapsed, 60.0,
           kernels=300, separators=separators)


def decompose_checked(kernel):
    from stabcert import decompose
    cert = decompose(kernel)
    cert.validate(kernel)
    return cert


def test_criterion_7_correlation_bound():
    t0 = time.perf_counter()
    rng = np.random.default_rng(77)
    count = 100_000
    weights = rng.uniform(0.0, 10.0, (count, 5))
    weights[:, 2] += 1e-9
    for row in weights:
        rho = Density("line", row)
        mu = autocorrelate(rho)
        assert correlation_bound_holds(mu, rho, tol=1e-12)
    elapsed = time.perf_counter() - t0
    report(7, "correlation-bound", elapsed, 30.0, samples=count)


def test_criterion_8_continuum():
    t0 = time.perf_counter()
    potential = ContinuumPotential()
    expected = (2 - SQRT5) / 2
    worst_pair = 0.0
    for periods in (0, 1, 3):
        worst_pair = max(worst_pair,
                         abs(witness_pairing(potential, periods) - expected))
    assert worst_pair < 1e-10
    rng = np.random.default_rng(8)
    min_energy = np.inf
    worst_gap = 0.0
    for _ in range(500):
        count = int(rng.integers(1, 21))
        measure = AtomicMeasure(rng.uniform(0.0, 10.0, count),
                                rng.uniform(0.05, 2.0, count))
        direct = energy_atomic(measure, potential, check=True, check_tol=1e-6)
        reduced = _energy_by_reduction(measure, potential)
        worst_gap = max(worst_gap, abs(direct - reduced))
        min_energy = min(min_energy, direct)
    elapsed = time.perf_counter() - t0
    assert min_energy >= -1e-9
    assert worst_gap < 1e-6
    report(8, "continuum", elapsed, 120.0, pairing_err=f"{worst_pair:.1e}",
           min_energy=f"{min_energy:.2e}", path_gap=f"{worst_gap:.1e}")


def test_criterion_9_plane_scan():
    t0 = time.perf_counter()
    scan = divergence_scan([0.2, 0.1, 0.05], mode="asymptotic")
    values = [s for _, s in scan.rows]
    assert values[0] > values[1] > values[2]
    assert scan.slope is not None and scan.slope < 0.0
    plane = PlanePotential(0.1, quad=QuadratureSpec(10, 12, depth=0))
    worst_rel = 0.0
    for nu in (2, 3, 4):
        for n in (-2, -1, 0, 1, 2):
            quad_value, _ = plane.value(5.0 * nu + n)
            asym = plane.asymptotic_value(nu, n)
            rel = abs(quad_value - asym) / max(abs(quad_value), abs(asym))
            worst_rel = max(worst_rel, rel)
    elapsed = time.perf_counter() - t0
    assert worst_rel < 0.25
    report(9, "plane-scan", elapsed, 600.0,
           S=[f"{v:.6f}" for v in values], slope=f"{scan.slope:.2e}",
           mode_gap=f"{worst_rel:.3f}")
