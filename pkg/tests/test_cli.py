import json
from importlib import resources

import jsonschema
import pytest

from propbk.cli import run_command
from propbk.hypergraph import fano, parse_hg, to_hg, to_json


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run_command(argv)
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    text = resources.files("propbk").joinpath(f"schemas/{name}.v1.json").read_text()
    return json.loads(text)


def test_gen_and_decide_fano(capsys, monkeypatch):
    code, out, _ = run(capsys, ["gen", "--family", "fano"])
    assert code == 0 and parse_hg(out) == fano()
    code, out, _ = run(capsys, ["decide", "--k", "1"], out, monkeypatch)
    assert code == 0 and out == "B_1: false\n"


def test_decide_methods_and_json(tmp_path, capsys):
    f = tmp_path / "t.hg"
    f.write_text(to_hg(fano().without_edges([0])))
    for method in ("coloring", "numeration", "chains"):
        code, out, _ = run(capsys, ["decide", str(f), "--k", "1", "--method", method, "--format", "json"])
        doc = json.loads(out)
        jsonschema.validate(doc, schema("decide"))
        assert code == 0 and doc["has_property"] is True


def test_gen_json_matches_schema(capsys):
    code, out, _ = run(capsys, ["gen", "--family", "random", "--v", "20", "--n", "4", "--m", "6",
                                "--seed", "3", "--format", "json"])
    jsonschema.validate(json.loads(out), schema("hypergraph"))


def test_gen_missing_params_is_usage_error(capsys):
    code, _, err = run(capsys, ["gen", "--family", "complete", "--v", "5"])
    assert code == 2 and "--n" in err


def test_unknown_flag_exit_2(capsys):
    code, _, err = run(capsys, ["bounds", "--n", "30", "--k", "2", "--bogus"])
    assert code == 2 and "usage" in err


def test_bad_input_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.hg"
    f.write_text("v 3\ne 0 5\n")
    code, _, err = run(capsys, ["decide", str(f), "--k", "1"])
    assert code == 2 and "outside" in err


def test_check_command(tmp_path, capsys):
    f = tmp_path / "f.hg"
    f.write_text(to_hg(fano()))
    code, out, _ = run(capsys, ["check", str(f), "--coloring", "1122112", "--format", "json", "--h", "1"])
    doc = json.loads(out)
    jsonschema.validate(doc, schema("check"))
    assert code == 1 and doc["coloring_ok"] is False and doc["intersection_degree"] == 6


def test_color_algorithms(tmp_path, capsys):
    f = tmp_path / "r.json"
    code, out, _ = run(capsys, ["gen", "--family", "random", "--v", "200", "--n", "20", "--m", "100",
                                "--seed", "1", "--format", "json"])
    f.write_text(out)
    for extra in (["--algorithm", "ordering"], ["--algorithm", "naive"],
                  ["--algorithm", "prune", "--eps", "0.5"]):
        code, out, _ = run(capsys, ["color", str(f), "--k", "2", "--format", "json", *extra])
        doc = json.loads(out)
        jsonschema.validate(doc, schema("color"))
        assert code == 0 and doc["coloring"] is not None
    code, out, _ = run(capsys, ["color", str(f), "--k", "2", "--format", "csv"])
    assert out.startswith("trial,X,Y,accepted\n")


def test_color_failure_exit_1(tmp_path, capsys):
    f = tmp_path / "t.hg"
    f.write_text("v 3\ne 0 1\ne 1 2\ne 0 2\n")
    code, out, _ = run(capsys, ["color", str(f), "--k", "1", "--max-trials", "5"])
    assert code == 1 and "coloring: none" in out


def test_search_command(capsys):
    code, out, _ = run(capsys, ["search", "--n", "2", "--k", "1", "--v-max", "3", "--m-max", "3",
                                "--format", "json"])
    doc = json.loads(out)
    jsonschema.validate(doc, schema("search"))
    assert code == 0 and doc["min_edges"] == 3
    code, _, _ = run(capsys, ["search", "--n", "3", "--k", "1", "--v-max", "7", "--m-max", "7",
                              "--budget", "10"])
    assert code == 1


def test_bounds_command(capsys):
    code, out, _ = run(capsys, ["bounds", "--n", "30", "--k", "2"])
    line = next(x for x in out.splitlines() if x.startswith("mk_lower_ordering"))
    assert "0.00238356" in line and "vacuous" in line
    code, out, _ = run(capsys, ["bounds", "--n", "30", "--k", "2", "--h", "3", "--eps", "0.001",
                                "--const", "psi=2", "--format", "json"])
    jsonschema.validate(json.loads(out), schema("bounds"))
    code, out, _ = run(capsys, ["bounds", "--n", "30", "--k", "2", "--format", "csv"])
    assert out.splitlines()[0] == "name,value_log2,flags"
    code, _, err = run(capsys, ["bounds", "--n", "30", "--k", "2", "--h", "4"])
    assert code == 2


def test_audit_command(capsys):
    code, out, _ = run(capsys, ["audit", "--n", "30", "60", "--format", "json"])
    doc = json.loads(out)
    jsonschema.validate(doc, schema("audit"))
    assert code == 0 and doc["all_hold"]
    code, out, _ = run(capsys, ["audit", "--n", "30", "--format", "csv"])
    assert out.startswith("n,k,name,lhs,rhs,holds\n")


def test_audit_outside_region_is_reported_not_counted(capsys):
    # k = 3 exceeds sqrt(30 / ln 30); its rows may fail without failing the run
    code, out, _ = run(capsys, ["audit", "--n", "30", "--k", "2", "3", "--format", "json"])
    doc = json.loads(out)
    jsonschema.validate(doc, schema("audit"))
    assert [p["admissible"] for p in doc["points"]] == [True, False]
    assert not doc["points"][1]["inequalities"]["all_hold"]
    assert code == 0 and doc["all_hold"]
    _, out, _ = run(capsys, ["audit", "--n", "30", "--k", "3"])
    assert "not counted" in out


def test_prob_command(capsys):
    for argv in (["order_stat", "--n", "4", "--k", "2", "--t", "0.5"],
                 ["dense", "--n", "30", "--k", "2", "--p", "paper-k"],
                 ["badpair", "--n", "30", "--k", "2", "--h", "1"],
                 ["union", "--n", "4", "--k", "2", "--m", "1"],
                 ["eps_window", "--n", "10", "--k", "1", "--S", "1"],
                 ["degree", "--n", "30", "--k", "2", "--D", "0"]):
        code, out, _ = run(capsys, ["prob", *argv, "--format", "json"])
        doc = json.loads(out)
        jsonschema.validate(doc, schema("prob"))
        assert code == 0
    code, out, _ = run(capsys, ["prob", "order_stat", "--n", "4", "--k", "2", "--t", "0.5"])
    assert "value: 0.3125" in out
    code, _, _ = run(capsys, ["prob", "dense", "--n", "30"])
    assert code == 2


def test_mc_command(capsys):
    argv = ["mc", "--target", "order_stat", "--n", "4", "--k", "2", "--t", "0.5", "--trials", "50000",
            "--seed", "1", "--compare", "--format", "json"]
    code, out, _ = run(capsys, argv)
    doc = json.loads(out)
    jsonschema.validate(doc, schema("mc"))
    assert code == 0 and doc["compare"]["passed"]
    code2, out2, _ = run(capsys, argv + ["--jobs", "3"])
    assert out2 == out
    code, out, _ = run(capsys, ["mc", "--target", "dense", "--n", "8", "--k", "2", "--p", "0.2",
                                "--trials", "20000", "--compare", "--format", "csv"])
    assert out.splitlines()[0].endswith("std_error,passed")
    code, _, _ = run(capsys, ["mc", "--target", "dense", "--n", "8", "--trials", "10"])
    assert code == 2


def test_out_file(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, stdout, _ = run(capsys, ["bounds", "--n", "30", "--k", "2", "--format", "json", "--out", str(out)])
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["bounds"]["mk_lower_ordering"]["vacuous"] is True


def test_determinism_of_seeded_commands(tmp_path, capsys):
    outs = []
    for jobs in ("1", "4"):
        f = tmp_path / f"r{jobs}.hg"
        run(capsys, ["gen", "--family", "random", "--v", "80", "--n", "10", "--m", "60", "--seed", "5",
                     "--out", str(f)])
        code, out, _ = run(capsys, ["color", str(f), "--k", "2", "--seed", "2", "--jobs", jobs,
                                    "--format", "json"])
        outs.append((f.read_text(), out))
    assert outs[0] == outs[1]
