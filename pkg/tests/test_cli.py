import json
import shutil

import pytest

import settings.config as cfg
from conftest import INVALID_LOGIN
from main import main
from testgen import serialize_suite


@pytest.fixture
def work(tmp_path, data_dir):
    for name in ("login.lts", "login.purposes", "login.faults"):
        shutil.copy(data_dir / name, tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def suite_file(work, capsys):
    code, out, _ = run(capsys, "generate", work / "login.lts", "-o", work / "login.suite")
    assert code == 0 and out == ""
    return work / "login.suite"


def test_generate_prints_the_suite(work, capsys, login_suite):
    code, out, _ = run(capsys, "generate", work / "login.lts")
    assert code == 0
    assert out == serialize_suite(login_suite)


def test_generate_with_small_cap_fails(work, capsys):
    code, out, err = run(capsys, "generate", work / "login.lts", "--max-paths", 3)
    assert code == 2
    assert out == ""
    assert err.startswith("harp: error: path cap of 3")
    assert len(err.splitlines()) == 1


def test_validate_with_metrics(work, capsys):
    suite = suite_file(work, capsys)
    code, out, _ = run(capsys, "validate", work / "login.lts", "--metrics", "--suite", suite)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ok login: 11 states, 12 transitions"
    assert lines[1:6] == ["branches 2", "joins 1", "loops 2", "min_depth 8", "max_depth 15"]
    assert "cases 7" in lines
    assert "kind condition 28" in lines


def test_validate_rejects_broken_model(work, capsys):
    bad = work / "bad.lts"
    bad.write_text("lts bad\ninitial 1\ntrans 1 -> 2 : a | b\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2
    assert err.startswith("harp: error: line 3")
    assert len(err.splitlines()) == 1


def test_missing_file(work, capsys):
    code, _, err = run(capsys, "validate", work / "nope.lts")
    assert code == 2
    assert "nope.lts" in err


def test_filter_inline_purpose(work, capsys):
    suite = suite_file(work, capsys)
    code, out, _ = run(capsys, "filter", suite, "--model", work / "login.lts", "--purpose", INVALID_LOGIN)
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()[1:]] == ["TC4", "TC5", "TC6", "TC7"]


def test_filter_needs_exactly_one_purpose_source(work, capsys):
    suite = suite_file(work, capsys)
    code, _, err = run(capsys, "filter", suite, "--model", work / "login.lts")
    assert code == 1
    assert "--purposes FILE or --purpose TEXT" in err


def test_prioritize_greedy(work, capsys):
    suite = suite_file(work, capsys)
    code, out, _ = run(capsys, "prioritize", suite, "--technique", "greedy")
    assert code == 0
    assert out.splitlines() == ["order greedy seed=0", "TC2", "TC3", "TC4", "TC5", "TC6", "TC7", "TC1"]


def test_prioritize_harp(work, capsys):
    suite = suite_file(work, capsys)
    args = ("prioritize", suite, "--technique", "harp", "--model", work / "login.lts",
            "--purposes", work / "login.purposes", "--seed", 4, "--debug")
    code, out, _ = run(capsys, *args)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order harp seed=4"
    assert lines[1] in {"TC4", "TC5", "TC6", "TC7"}
    assert sorted(lines[1:]) == [f"TC{k}" for k in range(1, 8)]
    assert run(capsys, *args)[1] == out


@pytest.mark.parametrize("extra, message", [
    (("--technique", "harp", "--seed", "1"), "requires --purposes"),
    (("--technique", "random"), "requires --seed"),
    (("--technique", "fifo"), "invalid choice"),
])
def test_prioritize_usage_errors(work, capsys, extra, message):
    suite = suite_file(work, capsys)
    code, out, err = run(capsys, "prioritize", suite, "--model", work / "login.lts", *extra)
    assert code == 1
    assert out == ""
    assert message in err


def test_evaluate(work, capsys):
    suite = suite_file(work, capsys)
    run(capsys, "prioritize", suite, "--technique", "greedy", "-o", work / "greedy.order")
    code, out, _ = run(capsys, "evaluate", work / "greedy.order", "--faults", work / "login.faults", "--metric", "apfd")
    assert (code, out) == (0, "apfd 0.214286\n")
    code, out, _ = run(capsys, "evaluate", work / "greedy.order", "--faults", work / "login.faults", "--metric", "fmeasure")
    assert (code, out) == (0, "fmeasure 5.000000\n")


def test_evaluate_undetectable_fault(work, capsys):
    (work / "o.order").write_text("order greedy seed=0\nTC1\nTC2\n", encoding="utf-8")
    code, _, err = run(capsys, "evaluate", work / "o.order", "--faults", work / "login.faults", "--metric", "apfd")
    assert code == 2
    assert "revealed by no test case in the order" in err


def test_synthesize_hints(work, capsys):
    suite = suite_file(work, capsys)
    common = ("synthesize-hints", suite, "--model", work / "login.lts", "--faults", work / "login.faults")
    code, out, _ = run(capsys, *common, "--kind", "good")
    assert code == 0
    assert out == f"{INVALID_LOGIN}  # synthesized good, proportion=0.250000, fault=F1\n"
    code, out, _ = run(capsys, *common, "--kind", "bad")
    assert out.startswith("* | C - Login and password match | *  # synthesized bad")
    code, _, err = run(capsys, *common, "--kind", "good", "--range", "0.5")
    assert code == 1
    assert "--range" in err


def test_a12_from_sample_files(work, capsys):
    (work / "a.txt").write_text("1\n2\n", encoding="utf-8")
    (work / "b.txt").write_text("3\n4\n", encoding="utf-8")
    code, out, _ = run(capsys, "a12", work / "a.txt", work / "b.txt")
    assert (code, out) == (0, "0.000000 large\n")
    (work / "c.txt").write_text("x\n", encoding="utf-8")
    assert run(capsys, "a12", work / "a.txt", work / "c.txt")[0] == 2
    assert run(capsys, "a12", work / "a.txt")[0] == 1


def test_experiment_end_to_end(work, capsys):
    config = work / "tiny.conf"
    config.write_text("techniques = greedy, random\nrepetitions = 2\nmodels = login.lts\nmetrics = apfd\n", encoding="utf-8")
    records, summary, totals = work / "records.csv", work / "summary.csv", work / "aggregate.json"
    code, _, _ = run(capsys, "experiment", config, "--seed", 3, "-o", records, "--summary", summary, "--aggregate", totals)
    assert code == 0
    lines = records.read_text(encoding="utf-8").splitlines()
    assert lines[0] == cfg.CSV_HEADER
    assert len(lines) == 1 + 2 * 2
    assert summary.read_text(encoding="utf-8").splitlines()[1].startswith("login/F1,apfd,greedy/none,random/none,")
    rows = json.loads(totals.read_text(encoding="utf-8"))
    assert [(r["arm_a"], r["arm_b"], r["objects"]) for r in rows] == [("greedy/none", "random/none", 1)]

    code, out, _ = run(capsys, "a12", "--records", records)
    assert code == 0
    assert out == summary.read_text(encoding="utf-8")


def test_experiment_needs_a_seed(work, capsys):
    config = work / "tiny.conf"
    config.write_text("techniques = greedy\nmodels = login.lts\n", encoding="utf-8")
    code, _, err = run(capsys, "experiment", config)
    assert code == 1
    assert "--seed" in err


def test_usage_and_help(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys)[0] == 1
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "exit codes" in out
