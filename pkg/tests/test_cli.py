"""Command-line surface: outputs, formats, exit codes, round-trips."""

import json
import math

import pytest

from f1zeta import cli
from f1zeta.powerlog import from_records, parse_power_log, to_records
from f1zeta.schemes import projective_space_model, scheme_to_dict


@pytest.fixture()
def p1_scheme(tmp_path):
    path = tmp_path / "p1.scheme"
    path.write_text(json.dumps(scheme_to_dict(projective_space_model(1))))
    return str(path)


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_count(capsys, p1_scheme):
    code, out = _run(capsys, "count", "--scheme", p1_scheme, "--q", "5")
    assert code == 0 and out == "6\n"


def test_zeta_group_pretty(capsys):
    code, out = _run(capsys, "zeta", "--group", "GL:2", "--pretty")
    assert code == 0 and out == "(s-3)(s-2)/((s-4)(s-1))\n"


def test_epsilon(capsys):
    code, out = _run(capsys, "epsilon", "--powers", "1*u^2")
    assert code == 0 and out == "-1\n"


def test_epsilon_tolerance_failure(capsys):
    # float rounding leaves a tiny but nonzero residual for this sum
    code, _ = _run(capsys, "epsilon", "--powers", "u^3 - u + 1", "--tol", "1e-300")
    assert code == 5


def test_zeta_records_and_stability(capsys, p1_scheme):
    code, out1 = _run(capsys, "zeta", "--scheme", p1_scheme, "--format", "records")
    code2, out2 = _run(capsys, "zeta", "--scheme", p1_scheme, "--format", "records")
    assert code == code2 == 0
    assert out1 == out2  # byte-identical reruns
    assert out1 == "0\t1\t0\t1\t1\n1\t1\t0\t1\t1\n"


def test_local_series_records(capsys, p1_scheme):
    code, out = _run(capsys, "local", "--scheme", p1_scheme, "--p", "2", "--terms", "3")
    assert code == 0
    assert out == "0\t1/1\n1\t3/1\n2\t7/1\n3\t15/1\n"


def test_fe_check_scheme(capsys, p1_scheme):
    code, out = _run(capsys, "fe-check", "--scheme", p1_scheme)
    assert code == 0 and "holds" in out


def test_zeta_scheme_pretty_prints_exponent_table(capsys, p1_scheme):
    code, out = _run(capsys, "zeta", "--scheme", p1_scheme)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "1/((s-1)s)"
    assert lines[1] == "exponent\t0\t-1\t1"
    assert lines[2] == "exponent\t1\t-1\t1"


def test_fe_check_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.scheme"
    path.write_text(json.dumps({
        "points": [{"rank": 0, "torsion": []}] * 3 + [{"rank": 1, "torsion": []}],
        "dimension": 1,
        "smooth_projective": True,
    }))
    code, out = _run(capsys, "fe-check", "--scheme", str(path))
    assert code == 4
    assert "asymmetry" in out.lower()


def test_fe_check_local(capsys, p1_scheme):
    code, out = _run(capsys, "fe-check", "--scheme", p1_scheme, "--p", "3",
                     "--format", "records")
    assert code == 0
    assert "holds\ttrue" in out and "chi\t2" in out


def test_fe_check_powers(capsys):
    code, out = _run(capsys, "fe-check", "--powers", "u^4 - u^3 - u^2 + u")
    assert code == 0 and "holds" in out
    code, _ = _run(capsys, "fe-check", "--powers", "u^2 + 2*u")
    assert code == 4


def test_limit(capsys, p1_scheme):
    code, out = _run(capsys, "limit", "--scheme", p1_scheme, "--s", "3", "--terms", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "pole_order\t2"
    assert lines[-2].startswith("target\t")
    target = float(lines[-2].split("\t")[1])
    assert target == pytest.approx(1 / 6)  # 1/(s(s-1)) at s = 3


def test_dual_records(capsys):
    code, out = _run(capsys, "dual", "--powers", "u - 1", "--format", "records")
    assert code == 0
    assert from_records([line.split("\t") for line in out.strip().splitlines()]) == \
        parse_power_log("u^-1 - 1")


def test_group_command(capsys):
    code, out = _run(capsys, "group", "--group", "SL2")
    assert code == 0
    assert "u^3 - u" in out and "(s-1)/(s-3)" in out
    code, out = _run(capsys, "group", "--group", "GL:2")
    assert code == 0
    assert out.count("identity\ttrue") == 3


def test_group_from_file(capsys, tmp_path):
    path = tmp_path / "sl2.group"
    path.write_text(json.dumps({"rank": 1, "dimension": 3, "flag_betti": [1, 1]}))
    code, out = _run(capsys, "zeta", "--group", str(path))
    assert code == 0 and out == "(s-1)/(s-3)\n"


def test_regdet(capsys):
    code, out = _run(capsys, "regdet", "--spectrum", "circle", "--s", "1")
    assert code == 0
    expected = 4 * math.sinh(math.pi) ** 2
    assert float(out.strip()) == pytest.approx(expected, rel=1e-8)


def test_fourier(capsys, tmp_path):
    path = tmp_path / "t.scheme"
    path.write_text(json.dumps({"points": [{"rank": 0, "torsion": [3]}]}))
    code, out = _run(capsys, "fourier", "--scheme", str(path), "--p", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "period\t2"
    assert lines[-1].startswith("reconstruction_error\t")


def test_parse_error_exit_codes(capsys, tmp_path):
    code, _ = _run(capsys, "count", "--scheme", str(tmp_path / "nope"), "--q", "5")
    assert code == 2
    bad = tmp_path / "bad.scheme"
    bad.write_text("{not json")
    code, _ = _run(capsys, "count", "--scheme", str(bad), "--q", "5")
    assert code == 2
    code, _ = _run(capsys, "zeta", "--powers", "u^")
    assert code == 2


def test_precondition_exit_code(capsys, p1_scheme):
    code, _ = _run(capsys, "count", "--scheme", p1_scheme, "--q", "1")
    assert code == 3
    code, _ = _run(capsys, "zeta")
    assert code == 3


def test_complex_parsing():
    assert cli.parse_complex_value("3/2") == 1.5
    assert cli.parse_complex_value("2+1i") == 2 + 1j
    assert cli.parse_complex_value("-4") == -4
    with pytest.raises(cli.ParseError):
        cli.parse_complex_value("wat")
    assert cli.parse_base("7") == 7
    assert cli.parse_base("1.5") == 1.5


def test_tolerance_env_default(monkeypatch):
    monkeypatch.setenv(cli.DEFAULT_TOL_ENV, "1e-5")
    config = cli.config_from_args(["epsilon", "--powers", "u"])
    assert config.tol == 1e-5
    monkeypatch.delenv(cli.DEFAULT_TOL_ENV)
    config = cli.config_from_args(["epsilon", "--powers", "u"])
    assert config.tol == 1e-9


def test_powers_file_round_trip(capsys, tmp_path):
    n = parse_power_log("2*u^{3/2} - u^-1")
    path = tmp_path / "n.powers"
    path.write_text(json.dumps(to_records(n)))
    code, out = _run(capsys, "dual", "--powers", str(path), "--format", "records")
    assert code == 0
    assert from_records([l.split("\t") for l in out.strip().splitlines()]) == n.dual()
