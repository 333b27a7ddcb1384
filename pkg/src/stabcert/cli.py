"""Batch command-line front end.

Commands wrap the library analyses one-to-one, read kernels as JSON (a file
path or an inline JSON literal), and emit JSON or CSV with every float at 15
significant digits.  Verdicts are data: an infeasible decomposition is a
successful analysis.  Exit codes: 0 success, 2 input or usage error, 3
internal inconsistency (a cross-check failed or a solver gave up).

The scan and sample commands optionally render a matplotlib figure next to
the delimited output (--fig PATH).
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import cones, plane2d
from .common import InternalInconsistencyError, UnresolvedError, format_float
from .continuum import ContinuumPotential, witness_pairing
from .lattice import LatticePotential, dft

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


def _load_json(source: str) -> dict:
    text = source.strip()
    if text.startswith("{"):
        return json.loads(text)
    with open(source, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_kernel(source: str) -> LatticePotential:
    return LatticePotential.from_json(_load_json(source))


def _round_floats(obj):
    if isinstance(obj, float):
        return float(format_float(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(_round_floats(payload), indent=2) + "\n", out)


def _emit_csv(meta: dict, header: list[str], rows: list[list], out: str | None) -> None:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={value}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_float(v) if isinstance(v, float) else str(v)
                           for v in row) + "\n")
    _emit(buf.getvalue(), out)


def _cmd_spectrum(args) -> int:
    kernel = _load_kernel(args.input)
    spectrum = dft(kernel)
    verdict = cones.is_positive_definite(kernel, tol=args.tol)
    if args.format == "json":
        _emit_json({
            "command": "spectrum",
            "seed": args.seed,
            "tol": args.tol,
            "n": spectrum.n,
            "coefficients": spectrum.coefficients.tolist(),
            "min_coefficient": spectrum.min_coefficient,
            "positive_definite": verdict,
            "even_input": spectrum.even_input,
        }, args.out)
    else:
        meta = {"command": "spectrum", "seed": args.seed, "tol": format_float(args.tol),
                "min_coefficient": format_float(spectrum.min_coefficient),
                "positive_definite": verdict}
        rows = [[k, float(c)] for k, c in enumerate(spectrum.coefficients)]
        _emit_csv(meta, ["k", "coefficient"], rows, args.out)
    return EXIT_OK


def _cmd_check_stable(args) -> int:
    kernel = _load_kernel(args.input)
    window = args.window
    if kernel.domain == "line" and window is None:
        raise ValueError("line kernels need --window")
    verdict = cones.copositivity_verdict(kernel, window=window, tol=args.tol, seed=args.seed)
    payload = {"command": "check-stable", "seed": args.seed, "tol": args.tol}
    payload.update(verdict.to_json())
    if args.format == "json":
        _emit_json(payload, args.out)
    else:
        meta = {"command": "check-stable", "seed": args.seed,
                "verdict": payload["type"],
                "min_value": format_float(verdict.min_value)}
        rows = [[list(r.support), float(r.value)] for r in verdict.proof]
        _emit_csv(meta, ["support", "critical_value"],
                  [[";".join(map(str, s)), v] for s, v in rows], args.out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    kernel = _load_kernel(args.input)
    certificate = cones.decompose(kernel, tol=args.tol)
    payload = {"command": "decompose", "seed": args.seed, "tol": args.tol}
    payload.update(certificate.to_json())
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    if args.kind == "threshold":
        result = cones.threshold_scan(lo=args.a_min, hi=args.a_max, tol=args.tol)
        meta = {"command": "scan threshold", "seed": args.seed,
                "tol": format_float(args.tol), "a_star": format_float(result.a_star)}
        rows = [[p.a, int(p.feasible), p.certificate_norm] for p in result.probes]
        _emit_csv(meta, ["a", "feasible", "certificate_norm"], rows, args.out)
        if args.fig:
            from . import figures
            figures.save_threshold_figure(result, args.fig)
        return EXIT_OK

    if not args.eps_list:
        raise ValueError("epsilon scan needs --eps-list")
    eps_values = [float(tok) for tok in args.eps_list.split(",") if tok.strip()]
    if not eps_values:
        raise ValueError("--eps-list is empty")
    result = plane2d.divergence_scan(eps_values, mode=args.mode)
    meta = {"command": "scan epsilon", "seed": args.seed, "mode": args.mode,
            "slope_defined": result.slope is not None}
    slope = result.slope if result.slope is not None else float("nan")
    residual = result.residual if result.residual is not None else float("nan")
    rows = [[e, s, slope, residual] for e, s in result.rows]
    _emit_csv(meta, ["eps", "S", "slope", "residual"], rows, args.out)
    if args.fig:
        from . import figures
        figures.save_divergence_figure(result, args.fig)
    return EXIT_OK


def _cmd_sample_w(args) -> int:
    if args.points < 2:
        raise ValueError("need at least two grid points")
    xs = np.linspace(args.x_min, args.x_max, args.points)
    if args.which == "w":
        potential = ContinuumPotential()
        values = potential(xs)
        label = "W"
    else:
        if args.eps is None:
            raise ValueError("sampling the periodized potential needs --eps")
        plane = plane2d.PlanePotential(args.eps)
        values = plane.w1(xs)
        label = "W1"
    meta = {"command": "sample-w", "seed": args.seed, "which": label}
    rows = [[float(x), float(v)] for x, v in zip(xs, values)]
    _emit_csv(meta, ["x", label], rows, args.out)
    if args.fig:
        from . import figures
        figures.save_profile_figure(xs, values, args.fig, ylabel=label)
    return EXIT_OK


def _cmd_pair_witness(args) -> int:
    potential = ContinuumPotential()
    values = {p: witness_pairing(potential, periods=p) for p in
              sorted({0, args.periods})}
    _emit_json({
        "command": "pair-witness",
        "seed": args.seed,
        "periods": args.periods,
        "pairing": values[args.periods],
        "pairing_by_periods": {str(p): v for p, v in values.items()},
        "golden_reference": (2.0 - np.sqrt(5.0)) * potential.autocorr(0.0),
    }, args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabcert",
        description="Stability and positivity-decomposition certificates for "
                    "even pair potentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True,
                           help="kernel JSON: file path or inline literal")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("spectrum", help="cosine spectrum and the Bochner verdict")
    common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("check-stable", help="copositivity of the energy form")
    common(p)
    p.add_argument("--window", type=int, default=None,
                   help="Toeplitz window size for line kernels (<= 16)")
    p.set_defaults(func=_cmd_check_stable)

    p = sub.add_parser("decompose",
                       help="split into nonnegative + positive definite, or separate")
    common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("scan", help="threshold or epsilon scan, CSV output")
    p.add_argument("kind", choices=["threshold", "epsilon"])
    p.add_argument("--a-min", type=float, default=-1.0)
    p.add_argument("--a-max", type=float, default=-0.5)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--eps-list", default=None, help="comma-separated, decreasing")
    p.add_argument("--mode", choices=["asymptotic", "quadrature"], default="asymptotic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--fig", default=None, help="render a figure to this path")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("sample-w", help="sample the continuum or periodized potential")
    p.add_argument("--which", choices=["w", "w1"], default="w")
    p.add_argument("--x-min", type=float, default=-4.0)
    p.add_argument("--x-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=161)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--fig", default=None, help="render a figure to this path")
    p.set_defaults(func=_cmd_sample_w)

    p = sub.add_parser("pair-witness",
                       help="continuum pairing against the golden comb")
    p.add_argument("--periods", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pair_witness)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InternalInconsistencyError, UnresolvedError) as exc:
        print(f"stabcert: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"stabcert: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
