"""Command-line front end: formats, exit codes, determinism, figures."""

import json

import numpy as np
import pytest

from stabcert.cli import main

SQRT5 = np.sqrt(5.0)
GAMMA = (SQRT5 - 1.0) / 2.0

V5_JSON = '{"domain":"cyclic","n":5,"values":[1,-1,1,1,-1]}'
MU_JSON = json.dumps({"domain": "cyclic", "n": 5,
                      "values": [1.0, GAMMA, 0.0, 0.0, GAMMA]})
DELTA_JSON = '{"domain":"cyclic","n":5,"values":[1,0,0,0,0]}'


def run(args, tmp_path, name="out"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


# -- spectrum ------------------------------------------------------------------

def test_spectrum_golden_measure(tmp_path):
    code, text = run(["spectrum", "--input", MU_JSON], tmp_path)
    assert code == 0
    payload = json.loads(text)
    assert payload["positive_definite"] is True
    assert abs(payload["min_coefficient"]) < 1e-9
    assert abs(payload["coefficients"][0] - SQRT5) < 1e-12


def test_spectrum_delta_all_ones(tmp_path):
    code, text = run(["spectrum", "--input", DELTA_JSON], tmp_path)
    payload = json.loads(text)
    assert code == 0
    assert payload["coefficients"] == [1.0] * 5


def test_spectrum_alternating_not_pdf_csv(tmp_path):
    code, text = run(["spectrum", "--input", V5_JSON, "--format", "csv"], tmp_path)
    assert code == 0
    assert "# positive_definite=False" in text
    assert text.splitlines()[-1].startswith("4,")


def test_spectrum_file_input(tmp_path):
    path = tmp_path / "kernel.json"
    path.write_text(V5_JSON)
    code, text = run(["spectrum", "--input", str(path)], tmp_path)
    assert code == 0
    assert json.loads(text)["positive_definite"] is False


def test_spectrum_parse_failure_exits_2(tmp_path, capsys):
    assert main(["spectrum", "--input", '{"domain":"cyclic","n":5}']) == 2
    assert main(["spectrum", "--input", str(tmp_path / "missing.json")]) == 2


# -- check-stable -----------------------------------------------------------------

def test_check_stable_wrapped_alternating(tmp_path):
    code, text = run(["check-stable", "--input", V5_JSON], tmp_path)
    assert code == 0
    assert json.loads(text)["type"] == "copositive"


def test_check_stable_negative_delta_witness(tmp_path):
    kernel = '{"domain":"cyclic","n":5,"values":[-1,0,0,0,0]}'
    code, text = run(["check-stable", "--input", kernel], tmp_path)
    payload = json.loads(text)
    assert code == 0
    assert payload["type"] == "not-copositive"
    assert payload["values"] == [1.0, 0.0, 0.0, 0.0, 0.0]


def test_check_stable_line_window(tmp_path):
    kernel = '{"domain":"line","halfwidth":2,"values":[1,-1,1,-1,1]}'
    code, text = run(["check-stable", "--input", kernel, "--window", "12"], tmp_path)
    assert code == 0
    assert json.loads(text)["type"] == "copositive"


def test_check_stable_oversize_exits_2(tmp_path):
    kernel = '{"domain":"line","halfwidth":2,"values":[1,-1,1,-1,1]}'
    assert main(["check-stable", "--input", kernel, "--window", "17"]) == 2
    assert main(["check-stable", "--input", kernel]) == 2


def test_check_stable_cross_check_failure_exits_3(monkeypatch):
    import stabcert.cones as cones_mod
    monkeypatch.setattr(cones_mod, "_projected_gradient_min",
                        lambda A, seed, **kw: -1e9)
    assert main(["check-stable", "--input", V5_JSON]) == 3


# -- decompose ---------------------------------------------------------------------

def test_decompose_separator(tmp_path):
    code, text = run(["decompose", "--input", V5_JSON], tmp_path)
    payload = json.loads(text)
    assert code == 0
    assert payload["type"] == "separating"
    assert abs(payload["pairing"] - (2 - SQRT5)) < 1e-12
    mu = np.array(payload["values"])
    assert abs(mu[0] - 1.0) < 1e-12
    assert np.max(np.abs(mu - [1, GAMMA, 0, 0, GAMMA])) < 1e-9


def test_decompose_pdf_kernel_zero_f(tmp_path):
    code, text = run(["decompose", "--input", MU_JSON], tmp_path)
    payload = json.loads(text)
    assert code == 0
    assert payload["type"] == "decomposition"
    assert payload["values"] == [0.0] * 5


def test_decompose_family_member(tmp_path):
    kernel = '{"domain":"cyclic","n":5,"values":[1,-0.5,1,1,-0.5]}'
    code, text = run(["decompose", "--input", kernel], tmp_path)
    assert code == 0
    assert json.loads(text)["type"] == "decomposition"


# -- scans --------------------------------------------------------------------------

def test_threshold_scan_csv_and_figure(tmp_path):
    fig = tmp_path / "scan.png"
    code, text = run(["scan", "threshold", "--tol", "1e-4", "--fig", str(fig)],
                     tmp_path)
    assert code == 0
    lines = text.splitlines()
    star = [ln for ln in lines if ln.startswith("# a_star=")]
    assert star and abs(float(star[0].split("=")[1]) + (1 + SQRT5) / 4) < 1e-3
    assert "a,feasible,certificate_norm" in lines
    assert fig.exists() and fig.stat().st_size > 0


def test_epsilon_scan_csv_and_figure(tmp_path):
    fig = tmp_path / "eps.png"
    code, text = run(["scan", "epsilon", "--eps-list", "0.3,0.2",
                      "--mode", "asymptotic", "--fig", str(fig)], tmp_path)
    assert code == 0
    lines = text.splitlines()
    assert "eps,S,slope,residual" in lines
    data = [ln for ln in lines if ln and not ln.startswith("#")][1:]
    assert len(data) == 2
    s_values = [float(row.split(",")[1]) for row in data]
    assert s_values[0] > s_values[1]
    assert fig.exists() and fig.stat().st_size > 0


def test_epsilon_scan_requires_list():
    assert main(["scan", "epsilon"]) == 2
    assert main(["scan", "epsilon", "--eps-list", " , "]) == 2


def test_scan_kind_required(capsys):
    with pytest.raises(SystemExit) as err:
        main(["scan", "nonsense"])
    assert err.value.code == 2


# -- sample-w -----------------------------------------------------------------------

def test_sample_w_integer_grid(tmp_path):
    code, text = run(["sample-w", "--x-min", "-4", "--x-max", "4",
                      "--points", "9"], tmp_path)
    assert code == 0
    rows = [ln.split(",") for ln in text.splitlines()
            if ln and not ln.startswith("#") and not ln.startswith("x,")]
    values = {float(x): float(v) for x, v in rows}
    for m, expected in ((-4, 0.0), (-3, 0.0), (-2, 0.5), (-1, -0.5), (0, 0.5),
                        (1, -0.5), (2, 0.5), (3, 0.0), (4, 0.0)):
        assert abs(values[m] - expected) < 1e-12
    xs = sorted(values)
    assert all(abs(values[x] - values[-x]) < 1e-12 for x in xs)


def test_sample_w1_needs_eps(tmp_path):
    assert main(["sample-w", "--which", "w1"]) == 2
    code, text = run(["sample-w", "--which", "w1", "--eps", "0.5",
                      "--x-min", "4", "--x-max", "6", "--points", "3"], tmp_path)
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert rows[0] == "x,W1"
    values = {float(r.split(",")[0]): float(r.split(",")[1]) for r in rows[1:]}
    assert abs(values[5.0] - np.exp(-2.5) * 0.25) < 1e-12


def test_sample_w_figure(tmp_path):
    fig = tmp_path / "w.png"
    code, _ = run(["sample-w", "--points", "33", "--fig", str(fig)], tmp_path)
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_sample_w_bad_grid():
    assert main(["sample-w", "--points", "1"]) == 2


# -- pair-witness -------------------------------------------------------------------

def test_pair_witness_value(tmp_path):
    code, text = run(["pair-witness", "--periods", "3"], tmp_path)
    payload = json.loads(text)
    assert code == 0
    expected = (2 - SQRT5) / 2
    assert abs(payload["pairing"] - expected) < 1e-10
    assert abs(payload["pairing_by_periods"]["0"] - expected) < 1e-10


# -- determinism ----------------------------------------------------------------------

def test_reruns_byte_identical(tmp_path):
    _, first = run(["decompose", "--input", V5_JSON], tmp_path, "a.json")
    _, second = run(["decompose", "--input", V5_JSON], tmp_path, "b.json")
    assert first == second
    _, csv_a = run(["scan", "threshold", "--tol", "1e-4"], tmp_path, "a.csv")
    _, csv_b = run(["scan", "threshold", "--tol", "1e-4"], tmp_path, "b.csv")
    assert csv_a == csv_b


def test_stdout_output(capsys):
    assert main(["spectrum", "--input", DELTA_JSON]) == 0
    captured = capsys.readouterr()
    assert '"positive_definite": true' in captured.out
