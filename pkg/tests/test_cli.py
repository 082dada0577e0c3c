import json
import math

import numpy as np
import pytest

from opineq.cli import main
from opineq.linalg import save_matrix

NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mu_subcommand(capsys):
    code, out, _ = run(capsys, "mu", "--theta", "1.5707963267948966")
    assert code == 0
    assert out.strip() == "0.5"


def test_mu_degrees_flag(capsys):
    code, out, _ = run(capsys, "mu", "--theta", "90", "--degrees")
    assert code == 0
    assert out.strip() == "0.5"


def test_mu_json(capsys):
    code, out, _ = run(capsys, "mu", "--theta", "1.0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mu"] == pytest.approx(0.7126976470501074, rel=1e-15)


def test_gamma_subcommand(capsys):
    code, out, _ = run(capsys, "gamma", "--t", "0.5", "--theta", str(math.pi / 3.0))
    assert code == 0
    assert float(out.strip()) == pytest.approx(0.5, abs=1e-15)


def test_segment_with_quadrature(capsys):
    code, out, _ = run(capsys, "segment", "--c", "3,4", "--d", "1,-2",
                       "--quadrature", "64", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["closed"] == pytest.approx(2.688107285858488, rel=1e-13)
    assert payload["quadrature"] == pytest.approx(payload["closed"], rel=1e-10)


def test_triangle_chain_and_exit_code(capsys):
    code, out, _ = run(capsys, "triangle", "--c", "1,0", "--d", "-1,0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lhs"] == 0.0
    assert payload["mid"] == pytest.approx(0.5, abs=1e-15)
    assert payload["rhs"] == 1.0
    assert payload["holds"] is True


def test_reverse_triangle(capsys):
    code, out, _ = run(capsys, "reverse-triangle", "--c", "1,0", "--d", "-1,0",
                       "--t", "0.5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lhs"] == pytest.approx(0.0, abs=1e-14)
    assert payload["holds"] is True


def test_reverse_triangle_bad_weight_is_usage_error(capsys):
    code, _, err = run(capsys, "reverse-triangle", "--c", "1,0", "--d", "-1,0",
                       "--t", "0")
    assert code == 2
    assert "error:" in err


def test_radius_subcommand(capsys, tmp_path):
    path = tmp_path / "m.json"
    save_matrix(NILPOTENT, path)
    code, out, _ = run(capsys, "radius", "--input", str(path))
    assert code == 0
    assert float(out.strip()) == pytest.approx(0.5, abs=1e-8)


def test_bounds_subcommand(capsys, tmp_path):
    path = tmp_path / "m.json"
    save_matrix(NILPOTENT, path)
    code, out, _ = run(capsys, "bounds", "--input", str(path), "--v", "0.5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["spectral_norm"] == pytest.approx(1.0, abs=1e-12)
    assert payload["numerical_radius"] == pytest.approx(0.5, abs=1e-8)
    assert payload["kittaneh_bound"] == pytest.approx(0.5, abs=1e-12)
    # theta_ref defaults to 0: the refined bound equals the kittaneh bound
    assert payload["refined_bound"] == pytest.approx(payload["kittaneh_bound"], rel=1e-12)


def test_angle_profile_subcommand(capsys, tmp_path):
    path = tmp_path / "m.json"
    save_matrix(NILPOTENT, path)
    code, out, _ = run(capsys, "angle-profile", "--input", str(path), "--v", "0",
                       "--samples", "500", "--seed", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["samples"] == 500
    assert payload["theta_max"] - payload["theta_min"] > 1.0
    assert len(payload["histogram"]) == 36


def test_check_subcommand_writes_reports(capsys, tmp_path):
    jpath = tmp_path / "report.json"
    cpath = tmp_path / "report.csv"
    code, out, _ = run(capsys, "check", "--suite", "scalar", "--trials", "50",
                       "--seed", "7", "--out", str(jpath), "--csv", str(cpath))
    assert code == 0
    assert "total failures: 0" in out
    report = json.loads(jpath.read_text())
    assert report["config"]["seed"] == 7
    assert cpath.read_text().startswith("name,pass,fail")


def test_check_reports_are_reproducible(capsys, tmp_path):
    p1 = tmp_path / "r1.json"
    p2 = tmp_path / "r2.json"
    for path in (p1, p2):
        code, _, _ = run(capsys, "check", "--suite", "all", "--trials", "100",
                         "--operator-trials", "4", "--seed", "7", "--out", str(path))
        assert code == 0
    r1 = json.loads(p1.read_text())
    r2 = json.loads(p2.read_text())
    r1.pop("wall_ms")
    r2.pop("wall_ms")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_usage_errors_exit_2(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["mu", "--theta", "abc"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["segment", "--c", "1", "--d", "0,0"])
    assert exc.value.code == 2

    code, _, err = run(capsys, "radius", "--input", str(tmp_path / "missing.json"))
    assert code == 2 and "error:" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _, err = run(capsys, "radius", "--input", str(bad))
    assert code == 2 and "error:" in err

    code, _, err = run(capsys, "mu", "--theta", "nan")
    assert code == 2 and "error:" in err
