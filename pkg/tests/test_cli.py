import json

import pytest

from realquad import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    line = [l for l in out.splitlines() if l.startswith("{")][-1]
    return code, json.loads(line), out


def test_value_golden(capsys):
    code, data, _ = run_json(capsys, "value", "--function", "j",
                             "--quad", "(1+sqrt(5))/2")
    assert code == 0
    assert data["version"]
    assert abs(data["normalized_re"] - 706.3248) < 5e-4
    assert abs(data["normalized_im"]) < 1e-9
    assert data["period"] == [3]


def test_value_constant_function(capsys):
    code, data, _ = run_json(capsys, "value", "--function", "1",
                             "--period", "7")
    assert code == 0
    assert data["normalized_re"] == pytest.approx(1.0, abs=1e-12)


def test_value_both_methods(capsys):
    code, data, _ = run_json(capsys, "value", "--function", "j", "--period",
                             "2,3", "--method", "both", "--tol", "1e-11")
    assert code == 0
    assert data["method_gap"] < 1e-9


def test_json_key_order_is_stable(capsys):
    _, out1 = run(capsys, "pell", "45")
    _, out2 = run(capsys, "pell", "45")
    assert out1 == out2
    keys = list(json.loads(out1).keys())
    assert keys == ["version", "command", "D", "t", "u", "eps", "two_log_eps"]


def test_cfrac_quad(capsys):
    code, data, _ = run_json(capsys, "cfrac", "--quad", "(1+sqrt(5))/2")
    assert code == 0
    assert data["preperiod"] == [2] and data["period"] == [3]
    assert data["D"] == 5
    assert data["quad"] == {"P": 1, "Q": 2, "D": 5}


def test_cfrac_period_input(capsys):
    code, data, _ = run_json(capsys, "cfrac", "--period", "period:[2,4]")
    assert code == 0
    assert data["period"] == [2, 4]
    assert abs(data["w_float"] - 1.7071067811865476) < 1e-12


def test_pell(capsys):
    code, data, _ = run_json(capsys, "pell", "45")
    assert code == 0
    assert (data["t"], data["u"]) == ("7", "1")


def test_trace(capsys):
    code, data, _ = run_json(capsys, "trace", "--function", "1", "--D", "40")
    assert code == 0
    assert data["h"] == 2
    assert data["ratio_re"] == pytest.approx(1.0, abs=1e-9)


def test_scan_limit_csv(capsys):
    code, out = run(capsys, "scan-limit", "--N", "5,10", "--tol", "1e-10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# arc_integral=744.0")
    assert "# realquad" in lines[1]
    assert lines[2] == "N,re,im,gap"
    assert len(lines) == 5


def test_scan_class_number_csv(capsys):
    code, out = run(capsys, "scan-class-number", "--Nmax", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "N,D,h,jnor,gap720"
    assert lines[2].startswith("3,5,1,")


def test_scan_ratio_csv(capsys):
    code, out = run(capsys, "scan-ratio", "--fundamental", "--Dmax", "40",
                    "--tol", "1e-6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# decile_gap_to_720")
    assert lines[2] == "D,h,ratio_re,ratio_im"
    assert len(lines) == 3 + len([5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40])


def test_verify_bounds_envelope(capsys):
    code, data, _ = run_json(capsys, "verify-bounds", "--suite", "envelope")
    assert code == 0
    assert data["violations"] == []
    assert data["extremes"]["min_K2"] > 0


def test_verify_bounds_theorem_seeded_deterministic(capsys):
    code1, data1, _ = run_json(capsys, "verify-bounds", "--suite", "theoremS",
                               "--pairs", "3", "--grid", "0.05", "--seed", "9")
    code2, data2, _ = run_json(capsys, "verify-bounds", "--suite", "theoremS",
                               "--pairs", "3", "--grid", "0.05", "--seed", "9")
    assert code1 == code2 == 0
    assert data1 == data2


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["value"])        # neither --quad nor --period
    assert exc.value.code == 2


def test_invalid_input_exits_1(capsys):
    code = cli.main(["value", "--function", "j", "--quad", "(1+sqrt(4))/2"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_function_from_json_file(tmp_path, capsys):
    spec = tmp_path / "f.json"
    spec.write_text(json.dumps({
        "pole_order": 0, "coeffs": [744], "tail": {"A": 0.0, "B": 0.0}}))
    code, data, _ = run_json(capsys, "value", "--function", str(spec),
                             "--period", "3")
    assert code == 0
    assert data["normalized_re"] == pytest.approx(744.0, abs=1e-10)
