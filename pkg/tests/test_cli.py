import json

import pytest

from cycloverify.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char(capsys):
    code, out, _ = run(capsys, "char", "--chi", "kronecker:-4")
    data = json.loads(out)
    assert code == 0
    assert data["conductor"] == 4 and data["parity"] == -1


def test_gauss(capsys):
    code, out, _ = run(capsys, "gauss", "--chi", "kronecker:-7")
    data = json.loads(out)
    assert data["tau_tau_inverse"] == str(data["expected"]) == "-7"


def test_norm_rel_grid(capsys):
    code, out, _ = run(capsys, "norm-rel", "--bound", "40")
    data = json.loads(out)
    assert code == 0 and data["failures"] == []


def test_lvalue_exact_at_negative(capsys):
    code, out, _ = run(capsys, "lvalue", "--chi", "trivial", "--r", "-1")
    assert json.loads(out)["exact"] == "-1/12"


def test_padic_l_value(capsys):
    code, out, _ = run(capsys, "padic-l", "value", "--chi", "trivial", "--p", "5", "--k", "2")
    data = json.loads(out)
    assert data["exact"]["coordinates"] == ["1/3"]


def test_mc_check_exit_code(capsys):
    code, out, _ = run(capsys, "mc-check", "--chi", "kronecker:5", "--p", "3")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_recip_and_epsilon(capsys):
    assert run(capsys, "recip-check", "--chi", "kronecker:-4", "--p", "3")[0] == 0
    assert run(capsys, "recip-check", "--chi", "kronecker:-4", "--p", "5", "--r", "3", "--level", "1")[0] == 0


def test_euler_system(capsys):
    assert run(capsys, "euler-system", "verify", "--chi", "kronecker:-3", "--bound", "40")[0] == 0
    assert run(capsys, "euler-system", "verify", "--chi", "kronecker:-3", "--r", "3", "--bound", "40")[0] == 0


def test_class_number(capsys):
    code, out, _ = run(capsys, "class-number", "--p", "23")
    data = json.loads(out)
    assert data["h_minus"] == 3 and data["agrees"]


def test_error_goes_to_stderr_with_code_2(capsys):
    code, out, err = run(capsys, "padic", "teich", "--p", "4", "--x", "3")
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_human_output(capsys):
    code, out, _ = run(capsys, "--human", "char", "--chi", "kronecker:-3")
    assert "conductor" in out and not out.lstrip().startswith("{")


def test_run_suite_empty(capsys):
    code, out, _ = run(capsys, "run-suite", "--empty")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_run_suite_only_and_output(capsys, tmp_path):
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "run-suite", "--only", "exact-sequence", "--output", str(dest))
    assert code == 0
    assert list(json.loads(out)["summary"]) == ["exact-sequence"]
    assert json.loads(dest.read_text())["reports"]["exact-sequence"]


def test_run_suite_unknown_cell(capsys):
    code, _, err = run(capsys, "run-suite", "--only", "nope")
    assert code == 2 and "nope" in err


def test_bad_subcommand_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
