import json

import pytest

from app.schemas import RunConfig
from psi_calculus.main import (
    EXIT_IDENTITY_FAILURE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    cmd_basic_seq,
    cmd_classify,
    cmd_expand,
    cmd_verify,
    main,
)


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_forward_difference_gives_falling_factorials(capsys):
    code = main(["--cap", "8", "basic-seq", "--psi", "classical", "--delta", "forward-difference", "-M", "4"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "p_2(x) = -x + x^2" in out
    assert "p_3(x) = 2*x - 3*x^2 + x^3" in out
    assert "verdict: AGREE" in out


def test_identity_series_is_rejected(capsys):
    code = main(["--cap", "6", "basic-seq", "--delta", "identity-series"])
    assert code == EXIT_INPUT_ERROR
    assert "NotDeltaOperator" in capsys.readouterr().err


def test_d_psi_under_dxd_gives_monomials(capsys):
    code, report = run_json(capsys, "--cap", "6", "basic-seq", "--psi", "dxd", "--delta", "d_psi", "-M", "5")
    assert code == EXIT_OK
    assert report["verdict"] == "AGREE"
    assert report["routes"]["rodrigues"]["polys"][5] == ["0/1"] * 5 + ["1/1"]


def test_custom_delta_series(capsys):
    code, report = run_json(capsys, "--cap", "6", "basic-seq", "--delta", '["0", "1", "1"]', "-M", "2")
    assert code == EXIT_OK
    assert report["routes"]["lagrange1"]["polys"][2] == ["0/1", "-2/1", "1/1"]


def test_expand_x_hat(capsys):
    code, report = run_json(capsys, "--cap", "8", "expand", "--T", "x_hat", "--Q", "d_psi", "-M", "4")
    assert code == EXIT_OK
    assert report["verified"]
    assert report["q_polys"][0] == ["0/1", "1/1"]
    assert report["indicator"][0] == ["0/1", "1/1"]


def test_expand_number_operator(capsys):
    code, report = run_json(capsys, "--cap", "8", "expand", "--T", "number", "-M", "4")
    assert code == EXIT_OK
    assert report["q_polys"][0] == ["0/1"]
    assert report["q_polys"][1] == ["0/1", "1/1"]


def test_malformed_matrix(capsys):
    code = main(["--cap", "6", "expand", "--T", "[[1, 2"])
    assert code == EXIT_INPUT_ERROR
    assert "InputError" in capsys.readouterr().err


def test_classify(capsys):
    code, report = run_json(capsys, "--cap", "8", "classify", "--Q", "d_x_hat_d")
    assert code == EXIT_OK
    assert report["is_series"]
    assert report["preset"] == "dxd"
    assert report["n_psi"][:4] == ["0/1", "1/1", "4/1", "9/1"]


def test_classify_non_series_exits_zero(capsys):
    code, report = run_json(capsys, "--cap", "8", "classify", "--Q", "non-psi-series")
    assert code == EXIT_OK
    assert not report["is_series"]
    assert report["failure_witness"] == [4, 3]
    assert report["predicted"] == "-32/1"
    assert report["actual"] == "-8/1"


def test_classify_b_table(capsys):
    code, report = run_json(capsys, "--cap", "4", "classify", "--Q", '{"b_table": [[1], [2], [3], [4]]}')
    assert code == EXIT_OK
    assert report["preset"] == "classical"


def test_classify_exit_codes(capsys):
    assert main(["--cap", "6", "classify", "--Q", "x_hat"]) == EXIT_INPUT_ERROR
    assert "NotDegreeLowering" in capsys.readouterr().err
    assert main(["--cap", "4", "classify", "--Q", '{"b_table": [[1], [2]]}']) == EXIT_INPUT_ERROR
    assert "ZeroSubdiagonal" in capsys.readouterr().err


def test_verify_selected_suites(capsys):
    code = main(["--cap", "8", "verify", "--suite", "bridge", "--suite", "integration", "--trials", "2"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "bridge" in out and "integration" in out
    assert "FAIL" not in out


def test_note21_is_report_only_under_jackson(capsys):
    code, report = run_json(capsys, "--psi", "q-jackson", "--q", "1/2", "--cap", "8", "verify", "--suite", "note21")
    assert code == EXIT_OK
    (suite,) = report["suites"]
    assert suite["status"] == "REPORT-ONLY"
    assert any("n=2: 1/2" in d for d in suite["details"])


def test_table(capsys):
    code, report = run_json(capsys, "--cap", "4", "table", "--psi", "q-jackson", "--q", "1/2")
    assert code == EXIT_OK
    assert report["psi"]["n_psi"] == ["0/1", "1/1", "3/2", "7/4", "15/8"]
    assert report["binomials"][2] == ["1/1", "3/2", "1/1"]
    assert [s["kind"] for s in report["series"]] == ["exp_psi", "cos_psi", "sin_psi", "cosh_psi", "sinh_psi"]


def test_translate(capsys):
    code, report = run_json(capsys, "--cap", "4", "translate", "--y", "2", "--target", "3")
    assert code == EXIT_OK
    assert report["result"] == ["8/1", "12/1", "6/1", "1/1"]


def test_poisson(capsys):
    code = main(["--cap", "6", "poisson", "--lam", "1/2", "-M", "2"])
    assert code == EXIT_OK
    assert "difference system: PASS" in capsys.readouterr().out


def test_poisson_json_keys(capsys):
    code, report = run_json(capsys, "--cap", "6", "poisson", "--lam", "1/2", "-M", "2", "--series-order", "4")
    assert code == EXIT_OK
    assert set(report) == {
        "psi",
        "lambda",
        "M",
        "series_order",
        "guard_degree",
        "components",
        "normalizer",
        "recurrence",
        "normalized",
        "operator_solution",
        "pretty",
    }
    assert report["lambda"] == "1/2"
    assert report["guard_degree"] == 3


def test_integrate(capsys):
    code, report = run_json(capsys, "--cap", "4", "--q", "1/2", "integrate", "--kind", "q", "--poly", '["0", "1"]')
    assert code == EXIT_OK
    assert report["result"] == ["0/1", "0/1", "2/3"]
    assert report["right_inverse"]


def test_integrate_needs_q(capsys):
    assert main(["--cap", "4", "integrate", "--kind", "q", "--poly", "[1]"]) == EXIT_INPUT_ERROR
    assert "MissingParameter" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["--cap", "2", "table"],
        ["--psi", "bogus", "table"],
        ["--psi", "q-jackson", "table"],
        ["--q", "1", "--psi", "q-jackson", "table"],
        ["--psi", "custom", "--n-psi", "[0, 1", "table"],
    ],
)
def test_bad_configuration(capsys, argv):
    assert main(argv) == EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_exit_code_contract():
    assert (EXIT_OK, EXIT_IDENTITY_FAILURE, EXIT_INPUT_ERROR) == (0, 1, 2)


def test_commands_return_report_and_verdict():
    config = RunConfig(cap=8)
    report, ok = cmd_basic_seq(config, "forward-difference", 3)
    assert ok and report.verdict == "AGREE"
    report, ok = cmd_expand(config, "number", "d_psi", 4)
    assert ok and report.q_polys[1] == ["0/1", "1/1"]
    report, ok = cmd_classify(config, "non-psi-series")
    assert ok and not report.is_series
    report, ok = cmd_verify(config, ["bridge"], trials=1)
    assert ok and report.suites[0].status == "PASS"
