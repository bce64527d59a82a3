import json

import numpy as np
import pytest

from adiapower.cli import main


def pairs(m):
    m = np.asarray(m, dtype=complex)
    return [[[z.real, z.imag] for z in row] for row in m]


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def specs(tmp_path):
    return {
        "example0": write_json(tmp_path / "e0.json", {"kind": "builtin:example0"}),
        "example1": write_json(tmp_path / "e1.json", {"kind": "builtin:example1"}),
        "example2": write_json(tmp_path / "e2.json", {"kind": "builtin:example2"}),
        "dir": tmp_path,
    }


def test_connectible_exit_codes(tmp_path, capsys):
    ha = write_json(tmp_path / "ha.json", pairs(np.diag([0.0, 1, 1, 1])))
    hb = write_json(tmp_path / "hb.json", pairs(np.diag([0.0, 0, 0, 1])))
    assert main(["connectible", ha, ha]) == 0
    out = capsys.readouterr().out
    assert "connectible" in out and "min gap" in out

    assert main(["connectible", ha, hb]) == 2
    assert "degeneracy order mismatch" in capsys.readouterr().out

    assert main(["connectible", ha, str(tmp_path / "missing.json")]) == 1

    bad = write_json(tmp_path / "bad.json", pairs(np.array([[0, 1], [0, 0]])))
    assert main(["connectible", ha, bad]) == 1


def test_connectible_random_pair_report(tmp_path, capsys):
    rng = np.random.default_rng(0)
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h0 = write_json(tmp_path / "h0.json", pairs((x + x.conj().T) / 2))
    y = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h1 = write_json(tmp_path / "h1.json", pairs((y + y.conj().T) / 2))
    out_file = tmp_path / "report.json"
    assert main(["connectible", h0, h1, "--out", str(out_file)]) == 0
    report = json.loads(out_file.read_text())
    assert report["connectible"] is True
    assert report["min_gap"] > 0
    assert report["manifest"]["command"] == "connectible"


def test_power_builtins(specs, capsys):
    assert main(["power", specs["example1"], "--grid", "15", "--refine"]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[0].split(":")[1])
    assert abs(value - 1.0) < 1e-6

    assert main(["power", specs["example0"], "--grid", "7"]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[0].split(":")[1])
    assert value < 1e-9


def test_power_csv_output(specs, tmp_path):
    out_file = tmp_path / "power.csv"
    assert main(["power", specs["example2"], "--grid", "5",
                 "--out", str(out_file)]) == 0
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("# manifest ")
    assert lines[1] == "lam1,lam2,level,entropy"
    assert len(lines) == 2 + 5 * 5 * 4


def test_sweep_example1_max_at_quarter_angle(tmp_path, capsys):
    spec = write_json(tmp_path / "slice.json", {
        "kind": "builtin:example1",
        "bounds": [[0.0, np.pi / 8], [0.0, 0.0], [0.0, 0.0]],
    })
    out_file = tmp_path / "slice.csv"
    assert main(["sweep", spec, "--input-state", "01", "--grid", "9",
                 "--out", str(out_file)]) == 0
    rows = [line.split(",") for line in out_file.read_text().splitlines()[2:]]
    data = {float(r[0]): float(r[3]) for r in rows}
    assert abs(data[np.pi / 16] - 1.0) < 1e-9
    assert data[0.0] < 1e-12


def test_sweep_example2_quarter_offset_contour(tmp_path):
    spec = write_json(tmp_path / "fig2.json", {
        "kind": "builtin:example2",
        "bounds": [[0.0, np.pi], [0.0, np.pi]],
    })
    out_file = tmp_path / "fig2.csv"
    assert main(["sweep", spec, "--input-state", "00", "--grid", "9",
                 "--out", str(out_file)]) == 0
    on_contour = []
    for line in out_file.read_text().splitlines()[2:]:
        l2, l3, e = map(float, line.split(","))
        if abs((l3 - l2) - np.pi / 4) < 1e-9:
            on_contour.append(e)
    assert on_contour and max(abs(e - 1.0) for e in on_contour) < 1e-9


def test_sweep_byte_determinism(specs, tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep", specs["example1"], "--input-state", "01",
                     "--grid", "7", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "1700000000" not in a.read_text()  # timestamp is ISO, not epoch
    assert "2023-11-14" in a.read_text().splitlines()[0]


def test_sweep_json_output_and_state_parsing(specs, tmp_path):
    out_file = tmp_path / "sweep.json"
    amp = json.dumps([[0, 0], [1, 0], [0, 0], [0, 0]])
    assert main(["sweep", specs["example1"], "--input-state", amp,
                 "--grid", "5", "--out-format", "json",
                 "--out", str(out_file)]) == 0
    payload = json.loads(out_file.read_text())
    assert payload["columns"] == ["lam1", "lam2", "lam3", "E"]
    assert len(payload["rows"]) == 5 * 1 * 5

    assert main(["sweep", specs["example1"], "--input-state", "bogus",
                 "--grid", "5"]) == 1


def test_evolve_constant_and_driven(specs, tmp_path, capsys):
    out_file = tmp_path / "run.json"
    assert main(["evolve", specs["example1"], "--path", "[[0.1,0,0.3]]",
                 "--T", "5", "--steps", "200", "--out", str(out_file)]) == 0
    payload = json.loads(out_file.read_text())
    assert max(abs(f - 1.0) for f in payload["fidelity"]) < 1e-10
    capsys.readouterr()

    target = json.dumps([[np.pi / 16, 0.0, 0.0]])
    assert main(["evolve", specs["example1"], "--path",
                 f"[[0,0,0],{target[1:-1]}]", "--T", "60",
                 "--steps", "2400", "--level", "2"]) == 0
    out = capsys.readouterr().out
    final_entropy = float(out.splitlines()[0].split(":")[1])
    assert abs(final_entropy - 1.0) < 1e-3


def test_gate_circle_and_retrace(tmp_path):
    out_file = tmp_path / "gate.json"
    theta0 = str(np.pi / 3)
    assert main(["gate", "--loop", "circle", theta0, "1.0",
                 "--T", "60", "--steps", "1200", "--out", str(out_file)]) == 0
    payload = json.loads(out_file.read_text())
    g = payload["geometric"]
    assert abs(g["01"] + g["10"]) < 1e-5
    assert abs(g["00"]) < 1e-5 and abs(g["11"]) < 1e-5

    assert main(["gate", "--loop", "retrace", theta0, "1.0",
                 "--T", "40", "--steps", "800", "--out", str(out_file)]) == 0
    payload = json.loads(out_file.read_text())
    assert max(abs(v) for v in payload["geometric"].values()) < 1e-6

    assert main(["gate", "--loop", "square", theta0, "1.0"]) == 1


def test_custom_spec_power(tmp_path, capsys):
    from adiapower.linalg import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, tensor
    h = 2 * tensor(SIGMA_Z, ID2) + tensor(ID2, SIGMA_Z)
    spec = write_json(tmp_path / "custom.json", {
        "kind": "custom",
        "base_hamiltonian": pairs(h),
        "generators": [pairs(tensor(SIGMA_X, SIGMA_X)), pairs(tensor(SIGMA_Y, SIGMA_Y))],
        "bounds": [[0.0, np.pi], [0.0, np.pi]],
        "split": [2, 2],
    })
    assert main(["power", spec, "--grid", "15", "--refine"]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[0].split(":")[1])
    assert abs(value - 1.0) < 1e-6


def test_invalid_specs_are_input_errors(tmp_path):
    bad_kind = write_json(tmp_path / "k.json", {"kind": "builtin:example9"})
    assert main(["power", bad_kind]) == 1
    bad_matrix = write_json(tmp_path / "m.json", {
        "kind": "custom",
        "base_hamiltonian": pairs(np.array([[0, 1], [0, 0]])),
        "generators": [pairs(np.eye(2))],
        "bounds": [[0, 1]],
        "split": [1, 2],
    })
    assert main(["power", bad_matrix]) == 1


def test_degeneracy_abort_exit_code(tmp_path):
    # a family whose spectrum collapses inside the box aborts with code 3
    spec = write_json(tmp_path / "deg.json", {
        "kind": "builtin:example0",
        "bounds": [[0.0, 1.0], [0.0, 1.0], [0.0, 1.0]],
    })
    assert main(["power", spec, "--grid", "5"]) == 3
