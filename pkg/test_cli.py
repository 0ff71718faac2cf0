"""
End-to-end tests for the mubcoh command line.
"""

import json
from pathlib import Path

import numpy as np
import pytest

import mubcoh
from mub_coherence.coherence import bell_closed_form
from mub_coherence.states import CorrelationTriple


def run(*argv):
    return mubcoh.main(list(argv))


def load(path):
    with open(path) as f:
        return json.load(f)


def test_verify_qubit_to_stdout(capsys):
    assert run("verify", "qubit", "--samples", "2000") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is True
    report = data["reports"][0]
    assert report["claim_id"] == "qubit-bound"
    assert report["samples"] == 2000
    assert report["seed"] == 42


def test_verify_all_self_test(tmp_path):
    out = tmp_path / "controls.json"
    assert run("verify", "all", "--self-test", "--samples", "500", "--out", str(out)) == 0
    data = load(out)
    assert data["self_test"] is True
    assert data["passed"] is True
    assert all(r["control_caught"] and not r["passed"] for r in data["reports"])
    assert len(data["reports"]) == 4


def test_verify_fails_below_any_deviation(tmp_path):
    out = tmp_path / "bell.json"
    code = run("verify", "bell", "--samples", "200", "--tol=-1", "--out", str(out))
    assert code == 1
    data = load(out)
    assert data["passed"] is False
    assert data["reports"][0]["passed"] is False


def test_state_werner(tmp_path):
    out = tmp_path / "w.json"
    assert run("state", "werner", "--p", "0.75", "--out", str(out)) == 0
    data = load(out)
    assert data["dim"] == 4
    assert data["physical"] is True
    entries = np.array(data["entries"])
    np.testing.assert_allclose(entries[..., 0] + 1j * entries[..., 1], np.eye(4) / 4, atol=1e-15)


def test_state_parameter_out_of_range(tmp_path):
    assert run("state", "werner", "--p", "2", "--out", str(tmp_path / "w.json")) == 2


def test_non_physical_bell_state(tmp_path):
    out = tmp_path / "b.json"
    args = ["state", "bell", "--c1", "1", "--c2", "1", "--c3", "1", "--out", str(out)]
    assert run(*args) == 2
    assert run(*args, "--no-require-physical") == 0
    assert load(out)["physical"] is False


def test_bell_coherence_round_trip(tmp_path):
    state = tmp_path / "bell.json"
    report = tmp_path / "coh.json"
    assert run("state", "bell", "--c1", "0.3", "--c2", "-0.2", "--c3", "0.1", "--out", str(state)) == 0
    assert run("coherence", "--state", str(state), "--set", "pauli-tensor", "--out", str(report)) == 0
    rows = load(report)["reports"]
    assert [r["basis"] for r in rows] == ["pauli_zz", "pauli_xx", "pauli_yy"]
    c = CorrelationTriple(0.3, -0.2, 0.1)
    for r, which in zip(rows, ("zz", "xx", "yy")):
        assert r["l1"] == pytest.approx(bell_closed_form(c, which), abs=1e-12)
        assert r["relative_entropy"] >= 0.0


def test_coherence_with_missing_basis(tmp_path):
    state = tmp_path / "q.json"
    assert run("state", "bloch", "--x", "0.6", "--z", "0.8", "--out", str(state)) == 0
    assert run("coherence", "--state", str(state), "--basis", str(tmp_path / "missing.json")) == 2


def test_coherence_with_basis_files(tmp_path):
    state = tmp_path / "q.json"
    basis = tmp_path / "x.json"
    report = tmp_path / "coh.json"
    assert run("state", "bloch", "--x", "0.6", "--z", "0.8", "--out", str(state)) == 0
    assert run("basis", "gen", "--set", "pauli", "--label", "pauli_x", "--out", str(basis)) == 0
    assert run("coherence", "--state", str(state), "--basis", str(basis), "--out", str(report)) == 0
    assert load(report)["reports"][0]["l1"] == pytest.approx(0.8, abs=1e-13)


def test_basis_gen_and_check(tmp_path):
    files = []
    for label in ("qutrit_computational", "qutrit_fourier", "qutrit_fourier_w1"):
        path = tmp_path / f"{label}.json"
        assert run("basis", "gen", "--set", "qutrit", "--label", label, "--out", str(path)) == 0
        files.append(str(path))
    out = tmp_path / "check.json"
    assert run("basis", "check", *files, "--out", str(out)) == 0
    data = load(out)
    assert data["passed"] is True
    assert len(data["pairs"]) == 3


def test_basis_check_detects_repeated_basis(tmp_path):
    path = tmp_path / "z.json"
    assert run("basis", "gen", "--set", "pauli", "--out", str(path)) == 0
    assert run("basis", "check", str(path), str(path), "--out", str(tmp_path / "c.json")) == 1


def test_basis_check_tensor_dim(tmp_path):
    files = []
    for label in ("pauli_zz", "pauli_xx", "pauli_yy"):
        path = tmp_path / f"{label}.json"
        assert run("basis", "gen", "--set", "pauli-tensor", "--label", label, "--out", str(path)) == 0
        files.append(str(path))
    assert run("basis", "check", *files, "--tensor-dim", "2", "--out", str(tmp_path / "c.json")) == 0


def test_basis_gen_unknown_label(tmp_path):
    assert run("basis", "gen", "--set", "pauli", "--label", "pauli_w", "--out", str(tmp_path / "b.json")) == 2


def test_heightmap_csv(tmp_path):
    out = tmp_path / "hm.csv"
    assert run("surface", "heightmap", "--n", "11", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "c1,c2,value"
    assert len(lines) == 1 + 121


def test_isosurface_single_level(tmp_path):
    out = tmp_path / "one.obj"
    assert run("surface", "isosurface", "--n", "21", "--levels", "1", "--out", str(out)) == 0
    text = out.read_text()
    assert text.startswith("# summed l1 coherence = 1")
    assert "\nf " in text


def test_isosurface_several_levels(tmp_path):
    out = tmp_path / "s.obj"
    field = tmp_path / "field.csv"
    args = ["surface", "isosurface", "--n", "21", "--levels", "0.5", "2",
            "--field-csv", str(field), "--out", str(out)]
    assert run(*args) == 0
    assert (tmp_path / "s_level0.5.obj").is_file()
    assert (tmp_path / "s_level2.obj").is_file()
    assert not out.exists()
    assert len(field.read_text().splitlines()) == 1 + 21 ** 3


def test_isosurface_needs_out():
    assert run("surface", "isosurface", "--n", "21", "--levels", "1") == 2


def test_isosurface_empty_level(tmp_path):
    assert run("surface", "isosurface", "--n", "21", "--levels", "3.5", "--out", str(tmp_path / "s.obj")) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        run("frobnicate")
    assert excinfo.value.code == 2


def test_bundled_basis_file(tmp_path):
    state = tmp_path / "plus.json"
    report = tmp_path / "coh.json"
    assert run("state", "bloch", "--x", "1", "--out", str(state)) == 0
    bundled = str(Path(__file__).parent / "pauli_x_basis.json")
    assert run("coherence", "--state", str(state), "--basis", bundled, "--out", str(report)) == 0
    row = load(report)["reports"][0]
    assert row["basis"] == "pauli_x"
    assert row["l1"] == pytest.approx(0.0, abs=1e-12)


def test_state_x3_alias(tmp_path):
    out = tmp_path / "x.json"
    assert run("state", "x3", "--x", ".3", "--y", ".4", "--z", ".2", "--out", str(out)) == 0
    data = load(out)
    assert data["dim"] == 3
    assert data["physical"] is True


def test_surface_figure_aliases(tmp_path):
    csv_out = tmp_path / "hm.csv"
    assert run("surface", "fig1", "--n", "11", "--out", str(csv_out)) == 0
    assert csv_out.read_text().splitlines()[0] == "c1,c2,value"
    obj_out = tmp_path / "level.obj"
    assert run("surface", "fig2", "--n", "21", "--levels", "1", "--out", str(obj_out)) == 0
    assert any(line.startswith("f ") for line in obj_out.read_text().splitlines())


def test_coherence_of_non_physical_operator(tmp_path):
    state = tmp_path / "op.json"
    report = tmp_path / "coh.json"
    assert run("state", "bell", "--c1", "1", "--c2", "1", "--c3", "1",
               "--no-require-physical", "--out", str(state)) == 0
    assert run("coherence", "--state", str(state), "--set", "pauli-tensor", "--out", str(report)) == 2
    assert run("coherence", "--state", str(state), "--set", "pauli-tensor",
               "--no-require-physical", "--out", str(report)) == 0
    rows = load(report)["reports"]
    assert len(rows) == 3
    for r in rows:
        assert r["relative_entropy"] is None
        assert r["l1"] == pytest.approx(1.0, abs=1e-12)
