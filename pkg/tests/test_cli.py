import json
import random

import pytest

from fockvoa.cli import main
from fockvoa.tauhirota import GrassmannFrame, TauPolynomial, random_frame, schur_tau, tau_from_frame


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return _write


# -- verify --------------------------------------------------------------------


def test_verify_small_heisenberg(capsys):
    code, out, _ = run(capsys, "verify", "heisenberg", "--mode-cap", "3", "--degree-cap", "4")
    assert code == 0
    assert out.startswith("heisenberg: PASS")
    assert out.rstrip().endswith("all suites passed")


def test_verify_suite_flag_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "virasoro", "--mode-cap", "2", "--degree-cap", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    (report,) = data["reports"]
    assert report["suite"] == "virasoro" and report["failures"] == []
    assert "wall_time" not in report
    assert any("1/2" in n for n in report["notes"])


def test_verify_timing_adds_wall_time(capsys):
    code, out, _ = run(capsys, "verify", "virasoro", "--mode-cap", "1", "--degree-cap", "2", "--format", "json", "--timing")
    assert code == 0
    assert "wall_time" in json.loads(out)["reports"][0]


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_verify_is_deterministic(capsys):
    argv = ["verify", "hirota", "--weight-cap", "5", "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


# -- sigma ---------------------------------------------------------------------


def test_sigma_charge_zero_degree_two(capsys):
    code, out, _ = run(capsys, "sigma", "0", "2")
    assert code == 0
    lines = out.strip().splitlines()
    rows = [line.split("  ->")[0] for line in lines]
    assert rows[:2] == ["|0>", "psi_-1psi*_0|0>"]
    assert sorted(rows[2:]) == ["psi_-1psi*_-1|0>", "psi_-2psi*_0|0>"]
    assert lines[0].endswith("tau = 1")


def test_sigma_negative_charge(capsys):
    code, out, _ = run(capsys, "sigma", "-1", "0")
    assert code == 0
    assert out.strip() == "psi_-1|0>  ->  1*|-1>  |  tau = -"


def test_sigma_json(capsys):
    code, out, _ = run(capsys, "sigma", "0", "0", "--format", "json")
    data = json.loads(out)
    assert data["rows"][0]["tau"] == {"vars": 0, "terms": [{"exps": [], "coeff": "1"}]}


@pytest.mark.parametrize("args", [("5", "1"), ("0", "9"), ("0", "-1")])
def test_sigma_guard(capsys, args):
    code, _, err = run(capsys, "sigma", *args)
    assert code == 2
    assert "limited" in err


# -- hirota --------------------------------------------------------------------


def test_hirota_vacuum(capsys, write):
    path = write("one.json", TauPolynomial.one().to_json())
    code, out, _ = run(capsys, "hirota", path)
    assert code == 0
    assert "residual (weight <= 8) = 0" in out


def test_hirota_schur(capsys, write):
    path = write("s21.json", schur_tau((2, 1)).to_json())
    assert run(capsys, "hirota", path)[0] == 0


def test_hirota_non_tau(capsys, write):
    X = TauPolynomial.x(1)
    path = write("x1sq.json", (X * X).to_json())
    code, out, _ = run(capsys, "hirota", path, "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["zero"] is False and data["residual"]


def test_hirota_parse_error_has_position(capsys, write):
    path = write("broken.json", '{"vars": 1,\n  "terms": [\n    {"exps": [2] "coeff": "1"}]}')
    code, _, err = run(capsys, "hirota", path)
    assert code == 2
    assert f"{path}:3:18:" in err


def test_hirota_bad_shape(capsys, write):
    path = write("bad.json", {"vars": 2, "terms": [{"exps": [1], "coeff": "1"}]})
    code, _, err = run(capsys, "hirota", path)
    assert code == 2 and "not a tau polynomial" in err


def test_hirota_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "hirota", str(tmp_path / "absent.json"))
    assert code == 2 and "cannot read" in err


# -- kp ------------------------------------------------------------------------


def test_kp_vacuum_frame(capsys, write):
    path = write("vac.json", GrassmannFrame.standard([[1, 0, 0, 0], [0, 1, 0, 0]]).to_json())
    code, out, _ = run(capsys, "kp", path)
    assert code == 0
    assert "L = d\n" in out
    assert "k=3: pass" in out


def test_kp_random_frame(capsys, write):
    rng = random.Random(2)
    while True:
        F = random_frame(2, 4, rng)
        if tau_from_frame(F).constant_term():
            break
    path = write("frame.json", F.to_json())
    code, out, _ = run(capsys, "kp", path, "--depth", "4", "--degree", "3")
    assert code == 0, out
    assert "all checks passed" in out


def test_kp_x1_squared_is_rejected(capsys, write):
    X = TauPolynomial.x(1)
    path = write("x1sq.json", (X * X).to_json())
    code, out, _ = run(capsys, "kp", path)
    assert code == 1
    assert out.startswith("error: tau vanishes at t = 0")


def test_kp_shifted_non_tau_fails(capsys, write):
    X = TauPolynomial.x(1)
    path = write("bad.json", (TauPolynomial.one() + X * X).to_json())
    code, out, _ = run(capsys, "kp", path, "--format", "json")
    assert code == 1
    assert json.loads(out)["passed"] is False
