import json
import subprocess
import sys

import pytest

from plumpwork import suites
from plumpwork.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_verbs(capsys):
    code, out, _ = run(capsys, "algebra", "list")
    assert code == 0 and "diamond" in out and "boolean" in out
    code, out, _ = run(capsys, "algebra", "check", "diamond")
    assert code == 0 and "0 violations" in out
    code, out, _ = run(capsys, "algebra", "show", "sierpinski", "--json")
    d = json.loads(out)
    assert d["implies"][1][0] == "bot" and d["top"] == "top"


def test_algebra_from_poset_file(capsys, tmp_path):
    f = tmp_path / "v.json"
    f.write_text(json.dumps({"elements": ["x", "y"], "leq": []}))
    code, out, _ = run(capsys, "algebra", "check", str(f))
    assert code == 0
    code, out, _ = run(capsys, "eval", "-a", str(f), "eq({(ord:0, x)}, {(ord:0, y)})")
    assert code == 0 and out.strip() == "bot"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "or(mem(ord:0, {(ord:0, u)}), not(mem(ord:0, {(ord:0, u)})))")
    assert code == 0 and out.strip() == "u"
    code, out, _ = run(capsys, "eval", "--json", "-a", "bool2", "all x in ord:3 . sub(x, ord:2)")
    assert json.loads(out) == {"algebra": "bool2", "value": "top"}


@pytest.mark.parametrize("argv, needle", [
    (["eval", "eq(ord:0,"], "line 1, column 10"),
    (["eval", "eq({(ord:0, w)}, ord:0)"], "unknown truth-value label 'w'"),
    (["eval", "mem(x, ord:1)"], "x"),
    (["eval", "-a", "nope", "false"], "nope"),
    (["suite", "run", "no-such-suite"], "unknown suite"),
    (["suite", "run", "classical-degeneration", "-a", "diamond"], "bool2"),
    (["plump"], ""),
])
def test_usage_errors_exit_2(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_plump_verbs(capsys):
    code, out, _ = run(capsys, "plump", "check", "ord:2", "--json")
    assert code == 0 and json.loads(out) == {
        "ord": "top", "thin": "top", "plord": "u", "plord_crit": "u", "vartheta": "u"}
    code, out, _ = run(capsys, "plump", "succ", "ord:1")
    assert out.splitlines() == ["{(ord:0, top), ({(ord:0, u)}, top), (ord:1, top)}", "plord: top"]
    code, out, _ = run(capsys, "plump", "succ", "--thin", "ord:1")
    assert out.splitlines()[0] == "ord:2"
    code, out, _ = run(capsys, "plump", "op", "-a", "bool2", "ord:3")
    assert out.splitlines() == ["ord:3", "plord: top"]
    code, out, err = run(capsys, "plump", "theta", "ord:1", "ord:2")
    assert code == 0 and out.strip() == "u" and "not a top-subset" in err


def test_arith_verbs(capsys):
    for op, expected in [("add", "ord:3"), ("mul", "ord:2"), ("pow", "ord:1")]:
        code, out, _ = run(capsys, "arith", op, "-a", "bool2", "ord:1", "ord:2")
        assert code == 0 and out.splitlines() == [expected, "plord: top"]


def test_code_verbs(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps([["ord:0", "ord:0"]]))
    code, out, err = run(capsys, "code", "encode", str(f), "ord:1", "ord:1")
    assert code == 0 and out.splitlines()[0] == "ord:1" and err == ""
    code, out, _ = run(capsys, "code", "decode", "ord:1", "ord:1", "ord:1")
    assert out.strip() == "ord:0 -> ord:0"
    code, out, _ = run(capsys, "code", "decode", "ord:0", "ord:2", "ord:2")
    assert out.strip() == "(empty map)"
    f.write_text(json.dumps({"pairs": [["ord:0", "ord:1"], ["ord:1", "ord:0"]], "domain": "ord:2"}))
    code, out, err = run(capsys, "code", "encode", "-a", "bool2", str(f), "ord:2", "ord:2")
    assert code == 0 and out.splitlines()[0] == "ord:3" and "degree bot" in err
    f.write_text("[1, 2")
    assert run(capsys, "code", "encode", str(f), "ord:1", "ord:1")[0] == 2
    f.write_text(json.dumps([["ord:1", "ord:0"], ["ord:1", "ord:1"]]))
    assert run(capsys, "code", "encode", str(f), "ord:2", "ord:2")[0] == 2


def test_budget_exit_3(capsys, tmp_path):
    cfg = tmp_path / "b.json"
    cfg.write_text(json.dumps({"default": {"max_entries": 4}}))
    code, _, err = run(capsys, "plump", "succ", "-a", "diamond", "--budget", str(cfg), "ord:2")
    assert code == 3 and "max_entries=4" in err
    cfg.write_text(json.dumps({"default": {"instance_cap": 3}}))
    code, out, _ = run(capsys, "suite", "run", "names-equality", "-a", "bool2",
                       "--budget", str(cfg))
    assert code == 3 and out.startswith("BUDGET")


def test_suite_failure_exit_1(capsys, monkeypatch):
    def build(ctx, cfg):
        yield suites.Instance("only", "top = bot", lambda: ({"v": "top"}, False))
    monkeypatch.setitem(suites.SUITES, "broken", suites.Suite("broken", "always fails",
                                                              ("bool2",), build))
    code, out, _ = run(capsys, "suite", "run", "broken")
    assert code == 1 and out.startswith("FAIL") and "only" in out
    cfg_code, out, _ = run(capsys, "suite", "run", "broken", "heyting-laws", "-a", "bool2")
    assert cfg_code == 1


def test_suite_list_and_run(capsys):
    code, out, _ = run(capsys, "suite", "list", "--json")
    ids = [r["id"] for r in json.loads(out)]
    assert ids == suites.suite_ids() and "plord-triple-agreement" in ids
    code, out, _ = run(capsys, "suite", "run", "heyting-laws")
    assert code == 0 and len(out.splitlines()) == 4 and all(
        line.startswith("PASS") for line in out.splitlines())
    code, out, _ = run(capsys, "suite", "run", "heyting-laws", "-a", "diamond", "--json")
    d = json.loads(out)
    assert d["suite"] == "heyting-laws" and d["totals"]["failed"] == 0
    assert "wall_time" not in d
    code, out, _ = run(capsys, "suite", "run", "heyting-laws", "-a", "diamond", "--json",
                       "--timing")
    assert "wall_time" in json.loads(out)


def test_console_entry_points():
    r = subprocess.run([sys.executable, "-m", "plumpwork", "eval", "-a", "bool2", "true"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "top"
    r = subprocess.run([sys.executable, "-m", "plumpwork", "eval", "eq("],
                       capture_output=True, text=True)
    assert r.returncode == 2


def test_options_before_and_after_the_verb(capsys):
    for argv in (["-a", "bool2", "--json", "arith", "pow", "ord:2", "ord:2"],
                 ["arith", "pow", "ord:2", "ord:2", "-a", "bool2", "--json"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and json.loads(out)["name"] == "ord:4"
    code, out, _ = run(capsys, "-a", "diamond", "eval", "-a", "bool2", "true")
    assert out.strip() == "top"
