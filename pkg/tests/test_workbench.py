"""Report format, config parsing, CLI exit codes, and the worked pipelines."""

import io
from contextlib import redirect_stdout, redirect_stderr
from fractions import Fraction

import pytest

from valwb.cli import main
from valwb.config import WorkbenchConfig, parse_config
from valwb.errors import ParseError, WorkbenchError
from valwb.examples import run_example
from valwb.field import GF, QQ
from valwb.groupval import GroupVal
from valwb.report import Report, Verdict, digest


# -- report ------------------------------------------------------------------

def sample_report():
    rep = Report("sample")
    rep.add("op-a", digest("x"), "42", "an exact identity")
    rep.check("op-b", digest("y"), True, "held on 10 samples",
              "a bounded falsifier", caveats=("horizon 12",))
    return rep


def test_report_round_trip():
    rep = sample_report()
    text = rep.to_structured()
    assert Report.from_structured(text) == rep
    assert not rep.failed()


def test_report_failure_and_human_form():
    rep = sample_report()
    rep.check("op-c", digest("z"), False, "broke on sample 3", "plumbing")
    assert rep.failed()
    human = rep.to_human()
    assert "FAIL: broke on sample 3" in human
    assert "because:" in human
    text = rep.to_structured()
    assert text.endswith("summary FAIL 3 verdicts\n")


def test_report_rejects_newlines():
    rep = Report("bad")
    with pytest.raises(ParseError):
        rep.add("op", "in", "two\nlines", "c")


def test_report_parse_errors():
    with pytest.raises(ParseError):
        Report.from_structured("nonsense\n")
    with pytest.raises(ParseError):
        Report.from_structured("report x\nversion 2\n")
    with pytest.raises(ParseError):
        Report.from_structured("report x\nversion 1\nverdict\n  operation: op\n")


def test_report_determinism():
    a = sample_report().to_structured()
    b = sample_report().to_structured()
    assert a == b
    assert "time" not in a.lower()


# -- config ------------------------------------------------------------------

def test_parse_config_defaults():
    cfg = parse_config("", env={})
    assert cfg.field is QQ
    assert cfg.precision == Fraction(64)
    assert cfg.spec is None


def test_parse_config_full():
    text = """
    # workbench config
    char = 2
    precision = 100
    seed = 3
    spec.kind = monomial
    spec.center = t + t^2
    spec.gamma = (1, 0)
    """
    cfg = parse_config(text, env={})
    assert cfg.field.char == 2
    assert cfg.precision == Fraction(100)
    assert cfg.seed == 3
    assert cfg.spec.kind == "monomial"
    assert cfg.spec.gamma == GroupVal.lex(1, 0)


def test_parse_config_keypoly_and_pcslimit():
    kp = parse_config("""
    spec.kind = keypoly
    spec.Q = X^2 - t
    spec.vQ = 1
    spec.base.kind = monomial
    spec.base.center = t^(1/2)
    spec.base.gamma = 1/2
    """, env={})
    assert kp.spec.kind == "keypoly" and kp.spec.base.kind == "monomial"
    pc = parse_config("spec.kind = pcslimit\nspec.generator = exponential\n",
                      env={})
    assert pc.spec.kind == "pcslimit" and pc.spec.gen.name == "exponential"


def test_parse_config_env_override():
    cfg = parse_config("precision = 10\n", env={"VALWB_PREC": "33/2"})
    assert cfg.precision == Fraction(33, 2)


def test_parse_config_errors():
    with pytest.raises(ParseError, match="line 2"):
        parse_config("char = 0\nbogus line\n", env={})
    with pytest.raises(ParseError, match="duplicate"):
        parse_config("seed = 1\nseed = 2\n", env={})
    with pytest.raises(ParseError, match="unknown key"):
        parse_config("colour = red\n", env={})
    with pytest.raises(ParseError):
        parse_config("spec.kind = monomial\n", env={})  # gamma missing
    with pytest.raises(WorkbenchError):
        WorkbenchConfig(field=QQ, precision=Fraction(-1))


# -- CLI ---------------------------------------------------------------------

def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def write_cfg(tmp_path, text, name="wb.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_eval_and_delta(tmp_path):
    cfg = write_cfg(tmp_path, "spec.kind = gauss\n")
    code, out, _ = run_cli(["eval", "--config", cfg, "--poly", "t*X^2 + X + t^3"])
    assert code == 0 and "[eval] 0" in out
    code2, out2, _ = run_cli(["delta", "--config", cfg, "--poly", "X^2 - t",
                              "--format", "structured"])
    assert code2 == 0 and "outcome: 0" in out2


def test_cli_classify_structured_deterministic(tmp_path):
    cfg = write_cfg(tmp_path, "spec.kind = pcslimit\nspec.generator = exponential\n")
    runs = [run_cli(["classify", "--config", cfg, "--format", "structured"])
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0


def test_cli_verdict_failure_exit_2(tmp_path):
    # density under a unique-pair spec: a provable refusal, exit code 2
    cfg = write_cfg(tmp_path, "spec.kind = monomial\nspec.center = t^(1/2)\n"
                              "spec.gamma = (1, 0)\n")
    code, out, _ = run_cli(["density", "--config", cfg, "--f", "X + t",
                            "--g", "X", "--alpha", "3"])
    assert code == 2
    assert "FAIL" in out


def test_cli_input_error_exit_1(tmp_path):
    cfg = write_cfg(tmp_path, "spec.kind = gauss\n")
    code, _, err = run_cli(["eval", "--config", cfg, "--poly", "bogus ]]]"])
    assert code == 1 and "error:" in err
    # missing config spec
    code2, _, err2 = run_cli(["eval", "--poly", "X"])
    assert code2 == 1 and "spec" in err2


def test_cli_out_file(tmp_path):
    cfg = write_cfg(tmp_path, "spec.kind = gauss\n")
    dest = tmp_path / "report.txt"
    code, out, _ = run_cli(["classify", "--config", cfg, "--out", str(dest)])
    assert code == 0 and out == ""
    assert "ResidueTranscendental" in dest.read_text()


def test_cli_threshold_and_pcs_classify(tmp_path):
    code, out, _ = run_cli(["threshold", "--poly", "X^2 + t", "--alpha", "3"])
    assert code == 0 and "12" in out
    code2, out2, _ = run_cli(["pcs-classify", "--generator", "mixed-radix(2,3)"])
    assert code2 == 0 and "transcendental-type" in out2


# -- worked pipelines ----------------------------------------------------------

def test_run_example_tower():
    rep = run_example("6.1", p=2, witness_samples=5)
    assert not rep.failed()
    assert any("delta table" == v.operation for v in rep.verdicts)


def test_run_example_factorial():
    rep = run_example("6.2")
    assert not rep.failed()


def test_run_example_mixed_radix():
    rep = run_example("6.3", p=2, q=3)
    assert not rep.failed()


def test_run_example_unknown():
    with pytest.raises(WorkbenchError):
        run_example("9.9")
