import csv
import io
import json

import pytest

from hyperf import suites
from hyperf.cli import dumps, main, run, sweep
from hyperf.config import ConfigError, ExperimentConfig, config_from_dict, load_config

SMALL = {"family": {"count": 20}, "level": 20, "output": {"per_function": True}}


def cfg(**kw):
    data = json.loads(json.dumps(SMALL))
    data.update(kw)
    return config_from_dict(data)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


# configuration

@pytest.mark.parametrize("bad", [
    {"bogus": 1}, {"family": {"size": 3}}, {"suites": []}, {"suites": ["nope"]},
    {"instance": "torus"}, {"instance": "dunkl_ramirez", "a": "3/4"},
    {"instance": "dunkl_ramirez", "a": "abc"}, {"p_grid": ["1/2"]}, {"level": -1},
    {"output": {"format": "xml"}}, {"family": "x"}, {"seed": -1}])
def test_invalid_configs_rejected(bad):
    with pytest.raises(ConfigError):
        config_from_dict(bad)


def test_rational_grid_entries():
    c = config_from_dict({"p_grid": ["4/3", 1.5, 2]})
    assert c.p_values == [4 / 3, 1.5, 2.0]


def test_load_config_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"suites": ["hy"], "level": 12}))
    assert load_config(path).level == 12
    path.write_text("{")
    with pytest.raises(ConfigError):
        load_config(path)


def test_empty_suite_is_config_error(capsys):
    code, _, err = run_cli(["run", "--suite", ""], capsys)
    assert code == 2 and "empty" in err


def test_unknown_key_exit_code(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"suites": ["hy"], "colour": "red"}))
    code, _, err = run_cli(["run", "--config", str(path)], capsys)
    assert code == 2 and "colour" in err


def test_bad_flag_exit_code(capsys):
    code, _, _ = run_cli(["run", "--instance", "torus"], capsys)
    assert code == 2


# run

def test_algebra_suite_exact_passes():
    doc = run(cfg(instance="dunkl_ramirez", a="1/3", suites=["algebra"]))
    alg = doc["suites"]["algebra"]
    assert alg["passed"]
    rec = next(r for r in alg["records"] if r["params"]["check"] == "measure_algebra")
    assert all(rec["checks"].values()) and rec["mode"] == "rational"
    hl = next(r for r in alg["records"] if r["params"]["check"] == "hl_condition")
    assert hl["exact"] == "7/4"


@pytest.mark.parametrize("instance", ["conj_su2", "dunkl_ramirez"])
def test_hy_p2_ratios_are_one(instance):
    doc = run(cfg(instance=instance, suites=["hy"], p_grid=["2"]))
    recs = doc["suites"]["hy"]["records"]
    family = next(r for r in recs if "function" not in r["params"])
    assert all(abs(r - 1) < 1e-10 for r in family["ratio"])
    assert doc["summary"]["passed"]


def test_all_suites_pass_both_instances():
    for instance in ("conj_su2", "dunkl_ramirez"):
        doc = run(cfg(instance=instance, suites=list(suites.RUNNERS),
                      multiplier={"symbols": 1, "trials": 1, "level": 8},
                      p_grid=["3/2", "2"], q_grid=["2", "3"]))
        assert doc["summary"]["passed"], doc["summary"]


def test_records_sorted_by_parameter():
    doc = run(cfg(suites=["paley"], p_grid=["2", "5/4", "3/2"]))
    ps = [r["params"]["p"] for r in doc["suites"]["paley"]["records"] if "p" in r["params"]]
    assert ps == sorted(ps)


def test_report_is_byte_deterministic(monkeypatch):
    c = cfg(suites=["hy", "paley", "hl", "algebra"])
    monkeypatch.setenv("HYPERF_THREADS", "1")
    a = dumps(run(c))
    monkeypatch.setenv("HYPERF_THREADS", "4")
    b = dumps(run(c))
    assert a == b


def test_floats_round_trip():
    doc = run(cfg(suites=["hy"], p_grid=["4/3"]))
    text = dumps(doc)
    back = json.loads(text)
    pick = lambda d: next(r for r in d["suites"]["hy"]["records"] if "lhs" in r)
    rec, orig = pick(back), pick(doc)
    assert rec["lhs"] == [float(x) for x in orig["lhs"]]
    assert dumps(back) == text


def test_timings_opt_in():
    doc = run(cfg(suites=["hy"], timings=True))
    assert doc["suites"]["hy"]["seconds"] >= 0
    assert "seconds" not in run(cfg(suites=["hy"]))["suites"]["hy"]


def test_hard_failure_exit_code(monkeypatch, capsys):
    def failing(c, inst, fam):
        res = suites.SuiteResult("hy")
        res.add({"params": {"p": 2.0}}, {"p2_equality": False}, "p=2")
        return res
    monkeypatch.setitem(suites.RUNNERS, "hy", failing)
    code, _, err = run_cli(["run", "--suite", "hy", "--level", "5"], capsys)
    assert code == 1 and "FAILED" in err


def test_soft_failure_is_warning(monkeypatch, capsys):
    def soft(c, inst, fam):
        res = suites.SuiteResult("paley")
        res.add({"params": {"p": 1.5}}, {"finite": False}, "p=1.5")
        return res
    monkeypatch.setitem(suites.RUNNERS, "paley", soft)
    code, out, err = run_cli(["run", "--suite", "paley", "--level", "5"], capsys)
    assert code == 0 and "warning" in err
    assert json.loads(out)["suites"]["paley"]["warnings"]


def test_overflow_diagnostic(capsys):
    code, _, err = run_cli(["run", "--instance", "dunkl_ramirez", "--level", "3000",
                            "--suite", "hy"], capsys)
    assert code == 2 and "suggested cap" in err


def test_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("HYPERF_THREADS", "zero")
    code, _, err = run_cli(["run", "--suite", "hy,paley", "--level", "5"], capsys)
    assert code == 2 and "HYPERF_THREADS" in err


def test_cli_flag_overrides_and_outputs(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run_cli(["run", "--instance", "dunkl_ramirez", "--a", "1/4", "--suite", "hy",
                          "--p", "3/2,2", "--seed", "3", "--level", "10", "--out", str(out)],
                         capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["a"] == "1/4" and doc["config"]["seed"] == 3
    assert doc["instance"] == {"name": "dunkl_ramirez", "a": "1/4"}
    code, text, _ = run_cli(["run", "--suite", "hy", "--p", "2", "--level", "5",
                             "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0].keys() == {"suite", "params", "sup_ratio", "pass"}
    assert all(r["pass"] == "True" for r in rows)


# sweep

def test_sweep_p_paley():
    reports, table = sweep(cfg(suites=["paley"]), "p", ["1.25", "1.5", "2"])
    assert len(reports) == 3
    rows = list(csv.DictReader(io.StringIO(table)))
    assert [r["value"] for r in rows] == ["1.25", "1.5", "2"]
    assert abs(float(rows[-1]["sup_ratio"]) - 1) < 1e-10


def test_sweep_level_lhs_nondecreasing():
    reports, _ = sweep(cfg(suites=["hy", "paley"], p_grid=["3/2"]), "level", ["20", "40", "80"])
    for suite in ("hy", "paley"):
        lhs = [next(r for r in rep["suites"][suite]["records"]
                    if r["params"].get("p") == 1.5 and "lhs" in r)["lhs"] for rep in reports]
        for lo, hi in zip(lhs, lhs[1:]):
            assert all(b >= a * (1 - 1e-15) for a, b in zip(lo, hi))


def test_sweep_a_algebra(tmp_path, capsys):
    code, text, _ = run_cli(["sweep", "--instance", "dunkl_ramirez", "--suite", "algebra",
                             "--param", "a", "--values", "1/4,1/3,1/2", "--level", "20",
                             "--report-dir", str(tmp_path)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["pass"] for r in rows] == ["True"] * 3
    assert len(list(tmp_path.glob("report_*.json"))) == 3


def test_sweep_unknown_param():
    with pytest.raises(ConfigError):
        sweep(cfg(suites=["hy"]), "colour", ["1"])


# small subcommands

def test_mphi_command(capsys):
    code, out, _ = run_cli(["mphi", "--level", "30"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["M_phi"] == 1.0 and doc["argmax_label"] == 0
    code, out, _ = run_cli(["mphi", "--instance", "dunkl_ramirez", "--preset", "kpow:2"], capsys)
    assert json.loads(out)["M_phi"] == pytest.approx(1.25)
    code, _, _ = run_cli(["mphi", "--preset", "weird"], capsys)
    assert code == 2


def test_multiplier_bound_command(capsys):
    code, out, _ = run_cli(["multiplier-bound", "--symbol", "random:3", "--level", "12"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["sharp"] and abs(doc["ratio"] - 1) < 1e-6
    code, out, _ = run_cli(["multiplier-bound", "--symbol", "riesz:1", "--p", "3/2", "--q", "3",
                            "--level", "8", "--trials", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and 0 < doc["ratio"] < float("inf")
    code, _, _ = run_cli(["multiplier-bound", "--p", "3", "--q", "2"], capsys)
    assert code == 2
