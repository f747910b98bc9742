import json
import math
import subprocess
import sys

import numpy as np
import pytest

from entangler_forge.cli import main
from entangler_forge.gates import CATALOG, named_gate
from entangler_forge.linalg import check_unitary

PI = math.pi


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def write_matrix(path, m):
    path.write_text(json.dumps(np.stack([m.real, m.imag], axis=-1).tolist()))
    return str(path)


def test_analyze_cnot(capsys):
    code, rep, _ = run_json(capsys, "analyze", "--gate", "cnot")
    assert code == 0
    assert rep["omega_radians"] == pytest.approx(PI, abs=1e-9)
    assert rep["n_runs"] == 1
    assert rep["is_perfect_entangler"] is True
    assert len(rep["alphas"]) == 3
    assert len(rep["lambdas"]) == 4


def test_analyze_swap(capsys):
    code, rep, _ = run_json(capsys, "analyze", "--gate", "swap")
    assert code == 0
    assert rep["omega_radians"] <= 1e-9
    assert rep["n_runs"] is None
    assert rep["reason"] == "not_entangling"


def test_analyze_cp_quarter(capsys):
    code, rep, _ = run_json(capsys, "analyze", "--gate", "cp", "--param", "0.7853981633974483")
    assert code == 0
    assert rep["omega_radians"] == pytest.approx(PI / 4, abs=1e-9)
    assert rep["n_runs"] == 4


def test_analyze_is_byte_stable(capsys):
    a = run(capsys, "analyze", "--gate", "canonical", "--param", "0.3", "--param", "0.2",
            "--param", "-0.1")
    b = run(capsys, "analyze", "--gate", "canonical", "--param", "0.3", "--param", "0.2",
            "--param", "-0.1")
    assert a == b
    assert a[1].endswith("\n")


@pytest.mark.parametrize("name, params", [
    ("cnot", []), ("cz", []), ("sqrt_swap", []), ("cp", [1.1]), ("xx", [0.3]),
    ("canonical", [0.5, 0.25, -0.125]),
])
def test_named_matches_matrix(capsys, tmp_path, name, params):
    argv = ["analyze", "--gate", name]
    for p in params:
        argv += ["--param", repr(p)]
    _, named, _ = run_json(capsys, *argv)
    path = write_matrix(tmp_path / "m.json", named_gate(name, params))
    _, explicit, _ = run_json(capsys, "analyze", "--matrix", path)
    for key in ("omega_radians", "n_runs", "is_perfect_entangler", "reason"):
        assert named[key] == explicit[key] or named[key] == pytest.approx(explicit[key], abs=1e-12)
    assert np.allclose(named["alphas"], explicit["alphas"], atol=1e-9)


def test_matrix_file_with_gate_spec(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"name": "cp", "params": [PI / 2]}))
    code, rep, _ = run_json(capsys, "analyze", "--matrix", str(path))
    assert code == 0 and rep["n_runs"] == 2


def test_catalog_gates_are_unitary():
    defaults = {"cp": [0.4], "xx": [0.3], "canonical": [0.3, 0.2, 0.1]}
    for name in CATALOG:
        check_unitary(named_gate(name, defaults.get(name, [])), 1e-10)


def test_not_unitary_exit(capsys, tmp_path):
    path = write_matrix(tmp_path / "m.json", 1.1 * np.eye(4))
    code, _, err = run_json(capsys, "analyze", "--matrix", path)
    assert code == 3
    assert err["error"] == "not_unitary"


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--gate", "nonsense"],
    ["analyze", "--gate", "cp"],
    ["analyze", "--gate", "cnot", "--param", "x"],
    ["analyze", "--param", "1.0"],
    ["frobnicate"],
    ["oracle", "--gate", "cnot", "--k", "-1"],
    ["oracle", "--gate", "cnot", "--k", "one"],
    ["analyze", "--gate", "cnot", "--tol", "0"],
])
def test_parse_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(err)["error"] == "parse_error"


def test_synthesize_and_verify(capsys, tmp_path):
    for name, params, uses in [("cp", [PI / 2], 2), ("cnot", [], 1)]:
        out = tmp_path / f"{name}.json"
        argv = ["synthesize", "--gate", name, "--out", str(out)]
        for p in params:
            argv += ["--param", repr(p)]
        code, _, _ = run(capsys, *argv)
        assert code == 0
        data = json.loads(out.read_text())
        assert data["version"] == "1"
        assert data["uses"] == uses
        assert len(data["locals"]) == uses + 1
        code, rep, _ = run_json(capsys, "verify", str(out))
        assert code == 0
        assert rep["ok"] is True
        assert rep["output_concurrence"] >= 1 - 1e-8


def test_synthesize_identity_exit_4(capsys, tmp_path):
    code, _, err = run_json(capsys, "synthesize", "--gate", "identity", "--out",
                            str(tmp_path / "c.json"))
    assert code == 4
    assert err["error"] == "not_entangling"


def test_synthesize_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "synthesize", "--gate", "cp", "--param", "0.6", "--out", str(a))
    run(capsys, "synthesize", "--gate", "cp", "--param", "0.6", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def _synth(capsys, tmp_path, phi):
    out = tmp_path / "c.json"
    run(capsys, "synthesize", "--gate", "cp", "--param", repr(phi), "--out", str(out))
    return out, json.loads(out.read_text())


def test_verify_deleted_layer(capsys, tmp_path):
    out, data = _synth(capsys, tmp_path, PI / 4)
    del data["locals"][2]
    out.write_text(json.dumps(data))
    code, rep, _ = run_json(capsys, "verify", str(out))
    assert code == 1
    assert rep["ok"] is False


def test_verify_truncated_uses(capsys, tmp_path):
    out, data = _synth(capsys, tmp_path, PI / 4)
    data["uses"] -= 1
    data["locals"] = data["locals"][:-1]
    out.write_text(json.dumps(data))
    code, rep, _ = run_json(capsys, "verify", str(out))
    assert code == 1
    assert rep["ok"] is False
    assert rep["omega_of_total"] <= 3 * PI / 4 + 1e-6


def test_verify_roundtrip_is_bit_identical(capsys, tmp_path):
    from entangler_forge.serialize import circuit_from_dict, circuit_to_dict, dumps
    out, data = _synth(capsys, tmp_path, 0.9)
    c = circuit_from_dict(data, 1e-8)
    assert dumps(circuit_to_dict(c, data["gate"])) + "\n" == out.read_text()


@pytest.mark.parametrize("text", ["", "{", "[]", '{"version": "1"}', '{"version": "1", "gate": {"name": "cnot", "params": []}, "uses": 1, "locals": "x", "product_input": [1, 0, 0, 0]}'])
def test_verify_malformed(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert json.loads(err)["error"] == "parse_error"


def test_verify_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2


@pytest.mark.parametrize("u, v, expected", [
    (("cp", PI / 4), ("cp", 3 * PI / 4), 3),
    (("cp", PI / 2), ("cp", PI / 2), 1),
])
def test_bound(capsys, u, v, expected):
    code, out, _ = run(capsys, "bound", "--gate", u[0], "--param", repr(u[1]),
                       "--gate", v[0], "--param", repr(v[1]))
    assert code == 0
    assert out == f"{expected}\n"


def test_bound_perfect_entangler_exit_4(capsys):
    code, _, err = run_json(capsys, "bound", "--gate", "cnot", "--gate", "cp", "--param",
                            repr(PI / 2))
    assert code == 4
    assert err["error"] == "out_of_regime"


def test_bound_needs_two_gates(capsys):
    code, _, _ = run(capsys, "bound", "--gate", "cnot")
    assert code == 2


def test_oracle_cp_half(capsys):
    code, rep, _ = run_json(capsys, "oracle", "--gate", "cp", "--param", repr(PI / 2),
                            "--k", "1", "--seed", "7")
    assert code == 0
    assert rep["best_concurrence"] == pytest.approx(0.70711, abs=1e-3)
    assert rep["analytic_ceiling"] == pytest.approx(math.sin(PI / 4), abs=1e-12)


def test_oracle_cnot_and_zero_uses(capsys):
    _, rep, _ = run_json(capsys, "oracle", "--gate", "cnot", "--k", "1", "--restarts", "4")
    assert rep["best_concurrence"] >= 1 - 1e-6
    code, rep, _ = run_json(capsys, "oracle", "--gate", "cz", "--k", "0")
    assert code == 0
    assert rep["best_concurrence"] == 0


def test_oracle_is_deterministic(capsys):
    argv = ["oracle", "--gate", "cp", "--param", "1.0", "--k", "2", "--seed", "3",
            "--restarts", "4", "--max-iterations", "500"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "entangler_forge", "analyze", "--gate", "cz"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["is_perfect_entangler"] is True
