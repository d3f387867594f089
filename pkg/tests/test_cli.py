import json
import subprocess
import sys

import numpy as np
import pytest

from siegeljacobi import cli


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "siegeljacobi.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_scalar_complex_parsing():
    assert cli.parse_scalar_complex("i") == 1j
    assert cli.parse_scalar_complex("2i") == 2j
    assert cli.parse_scalar_complex("-i") == -1j
    assert cli.parse_scalar_complex("1.5,2.0") == 1.5 + 2.0j
    assert cli.parse_scalar_complex("3.25") == 3.25
    with pytest.raises(ValueError):
        cli.parse_scalar_complex("abc")


def test_distance_command():
    code, out, _ = run_cli(["distance", "--p0", '{"omega": "i"}', "--p1", '{"omega": "2i"}'])
    assert code == 0
    assert abs(json.loads(out)["distance"] - np.log(2.0)) < 1e-12


def test_distance_emit_eigs():
    code, out, _ = run_cli(["distance", "--p0", "i", "--p1", "2i", "--emit-eigs"])
    assert code == 0
    assert out.splitlines()[0] == "eigenvalue"


def test_theta_command_value():
    code, out, _ = run_cli(["theta", "--M", "1", "--tau", "0,1", "--phi", "0",
                            "--lam", "[[0.0]]", "--mu", "[[0.0]]", "--kappa", "[[0.0]]"])
    assert code == 0
    direct = sum(np.exp(-np.pi * w * w) for w in range(-8, 9))
    assert abs(json.loads(out)["re"] - direct) < 1e-10


def test_reduce_command_identity_certificate(tmp_path):
    cert = tmp_path / "cert.json"
    code, out, _ = run_cli(["reduce", "--space", "hn",
                            "--point", '{"omega": "0.2,1.5"}', "--cert", str(cert)])
    assert code == 0
    payload = json.loads(cert.read_text())
    assert payload["iterations"] >= 1
    gamma = payload["gamma"]["mat"]["data"]
    assert [entry[0] for entry in gamma] == [1.0, 0.0, 0.0, 1.0]


def test_cayley_command_round_trip():
    code, out, _ = run_cli(["cayley", "--dir", "inv", "--point", '{"omega": "i"}'])
    assert code == 0
    w = json.loads(out)["w"]["data"][0]
    assert abs(w[0]) < 1e-14 and abs(w[1]) < 1e-14


def test_metric_command():
    code, out, _ = run_cli(["metric", "--space", "hn", "--A", "1", "--point", "i",
                            "--t1", "1", "--t2", "1"])
    assert code == 0
    assert abs(json.loads(out)["re"] - 1.0) < 1e-12
    code2, out2, _ = run_cli(["metric", "--space", "hnm", "--point",
                              '{"omega": "i", "z": "0,0"}',
                              "--t1", '{"domega": "1", "dz": "0,0"}',
                              "--t2", '{"domega": "1", "dz": "0,0"}'])
    assert code2 == 0
    assert abs(json.loads(out2)["re"] - 1.0) < 1e-12


def test_element_command():
    code, out, _ = run_cli(["element", "--word", "t(0.5);s", "--n", "1"])
    assert code == 0
    data = json.loads(out)["mat"]["data"]
    assert [e[0] for e in data] == [0.5, -1.0, 1.0, 0.0]


def test_laplacian_command():
    code, out, _ = run_cli(["laplacian", "--space", "hnm", "--field", "y^s", "--s", "1.7",
                            "--point", '{"omega": "0.3,1.2", "z": "0.1,0.4"}'])
    assert code == 0
    value = json.loads(out)
    expected = 1.7 * 0.7 * 1.2 ** 1.7
    assert abs(value["re"] - expected) < 1e-6


def test_check_suite_deterministic_and_exit_codes():
    code1, out1, _ = run_cli(["check", "--suite", "cayley", "--seed", "11"])
    code2, out2, _ = run_cli(["check", "--suite", "cayley", "--seed", "11"])
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[0] == "case,lhs,rhs,residual,tol,pass"
    code3, _, err = run_cli(["check", "--suite", "nope"])
    assert code3 == 2 and "unknown suite" in err


def test_malformed_json_is_usage_error():
    code, _, err = run_cli(["distance", "--p0", "{bad json", "--p1", "i"])
    assert code == 2
    assert "input error" in err


def test_invalid_point_is_usage_error():
    code, _, _ = run_cli(["distance", "--p0", '{"omega": "0,-1"}', "--p1", "i"])
    assert code == 2


def test_check_out_file(tmp_path):
    out_file = tmp_path / "rows.csv"
    code, out, _ = run_cli(["check", "--suite", "distance", "--seed", "3",
                            "--out", str(out_file)])
    assert code == 0
    text = out_file.read_text()
    assert text.startswith("case,lhs,rhs,residual,tol,pass")
    assert all(line.endswith(("true", "false")) or line.startswith("case")
               for line in text.strip().splitlines())
