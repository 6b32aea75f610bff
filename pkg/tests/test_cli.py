import json

import pytest

from coinvarr import cli
from coinvarr.cli import (
    RunConfig,
    SUITES,
    canon,
    emit_report,
    main,
    make_report,
    run_suite,
)
from coinvarr.polynomials import Polynomial


def test_canon_values():
    assert canon(True) == "true"
    assert canon(False) == "false"
    assert canon(7) == "7"
    assert canon((1, 2, 3)) == "(1, 2, 3)"
    assert canon(None) == "none"
    x1, x2 = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
    assert canon(x1 - x2) == "x1-x2"


def test_make_report_pass_is_exact_equality():
    good = make_report("c", 2, "k", (1, 2), (1, 2))
    assert good["pass"] and good["expected"] == good["actual"] == "(1, 2)"
    bad = make_report("c", 2, "k", True, False)
    assert not bad["pass"]
    assert bad["expected"] == "true" and bad["actual"] == "false"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(n=0)
    with pytest.raises(ValueError):
        RunConfig(workers=0)
    with pytest.raises(ValueError):
        RunConfig(degree_cap=0)
    with pytest.raises(ValueError):
        RunConfig(prime=1)
    with pytest.raises(ValueError):
        RunConfig(order="weird")


def test_run_suite_unknown_name():
    with pytest.raises(ValueError):
        run_suite("no-such-suite", RunConfig(n=2))


def test_staircase_suite_counts_and_passes():
    reports = run_suite("staircase", RunConfig(n=2))
    # 2 + 4 subset instances with two rows each, plus three display rows
    assert len(reports) == 15
    assert all(r["pass"] for r in reports)
    checks = {r["check"] for r in reports}
    assert checks == {"staircase", "staircase-count", "display"}


def test_reports_sorted_and_byte_stable():
    cfg = RunConfig(n=2)
    one = run_suite("trichotomy", cfg)
    two = run_suite("trichotomy", cfg)
    assert one == two
    keys = [(r["check"], r["n"], r["instance"]) for r in one]
    assert keys == sorted(keys)
    assert emit_report(one, "json") == emit_report(two, "json")
    assert emit_report(one, "csv") == emit_report(two, "csv")


def test_emit_report_empty():
    assert emit_report([], "json") == "[]\n"
    assert emit_report([], "csv") == "check,n,instance,expected,actual,pass,ms\n"
    with pytest.raises(ValueError):
        emit_report([], "yaml")


def test_emit_report_shapes():
    rows = [make_report("demo", 1, "k", 1, 1)]
    data = json.loads(emit_report(rows, "json"))
    assert data == [
        {
            "check": "demo",
            "n": 1,
            "instance": "k",
            "expected": "1",
            "actual": "1",
            "pass": True,
            "ms": 0,
        }
    ]
    csv_text = emit_report(rows, "csv")
    assert csv_text.splitlines()[1] == "demo,1,k,1,1,true,0"


def test_ms_zero_by_default_and_optin():
    cfg = RunConfig(n=1)
    assert all(r["ms"] == 0 for r in run_suite("staircase", cfg))
    timed = run_suite("staircase", RunConfig(n=1, timings=True))
    assert all(isinstance(r["ms"], int) and r["ms"] >= 0 for r in timed)


def test_sampling_caps_and_is_deterministic():
    cfg = RunConfig(n=3, seed=11)
    one = run_suite("cospan", cfg)
    two = run_suite("cospan", RunConfig(n=3, seed=11))
    assert one == two
    assert len(one) <= cli.SAMPLE_CAP
    other = run_suite("cospan", RunConfig(n=3, seed=12))
    assert {r["instance"] for r in other} != {r["instance"] for r in one}


def test_workers_do_not_change_reports():
    serial = run_suite("skip-quotient", RunConfig(n=3))
    pooled = run_suite("skip-quotient", RunConfig(n=3, workers=2))
    assert serial == pooled


def test_caps_clamp_without_exhaustive():
    # cospan is hard-capped at n = 4; asking for more silently clamps
    cfg = RunConfig(n=9)
    reports = run_suite("cospan", cfg)
    assert max(r["n"] for r in reports) <= 4


def test_harness_flags_corrupted_generator(monkeypatch):
    monkeypatch.setattr(cli, "verify_skip_quotient", lambda J, n: False)
    reports = run_suite("skip-quotient", RunConfig(n=2))
    assert reports and all(not r["pass"] for r in reports)
    assert all(r["expected"] == "true" and r["actual"] == "false" for r in reports)


def test_main_exit_codes(monkeypatch, capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "staircase", "--n", "1", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data and all(r["pass"] for r in data)
    monkeypatch.setattr(cli, "verify_skip_quotient", lambda J, n: False)
    code = main(["verify", "skip-quotient", "--n", "1"])
    assert code == 1
    captured = capsys.readouterr()
    assert "failed" in captured.err


def test_main_bad_input_exits_2(capsys):
    assert main(["verify", "staircase", "--n", "0"]) == 2
    assert "n must be positive" in capsys.readouterr().err
    assert main(["show", "arrangement", "garbage"]) == 2
    assert "bad arrangement syntax" in capsys.readouterr().err


def test_main_csv_output(tmp_path):
    out = tmp_path / "report.csv"
    code = main(
        ["verify", "trichotomy", "--n", "1", "--format", "csv", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,n,instance,expected,actual,pass,ms"
    assert len(lines) > 1


def test_show_arrangement_golden(capsys):
    code = main(["show", "arrangement", "n=2;H:0-1,0-2,1-2"])
    assert code == 0
    got = capsys.readouterr().out
    assert got == (
        "  ●\n"
        "●   ●\n"
        "members: x1, x2, x1-x2\n"
        "columns: (1, 2)\n"
        "southwest: true\n"
        "essential: true\n"
    )


def test_suite_registry_docs():
    for name, suite in SUITES.items():
        assert suite.name == name
        assert suite.doc
        assert suite.default_n <= suite.cap
