import json

import pytest

from plumpwork import suites
from plumpwork.suites import (
    NotApplicable, UnknownSuite, load_config, run_suite, settings_for, suite_ids,
)

EXPECTED_IDS = {
    "heyting-laws", "heyting-posets", "names-equality", "names-leibniz", "names-normalize",
    "names-subset-complete", "names-memo", "logic-subset-soundness", "logic-extensionality",
    "logic-monotone", "plord-triple-agreement", "plump-elem-relpl", "plump-subset-relpl-plump",
    "plump-subset-sat-relpl", "plump-relpl-biconditional", "plump-successor-plump",
    "plump-class-transitive", "plump-closed-plump-subsets", "plump-union-plump",
    "plump-op-successor", "plump-op-union", "plump-subset-retract", "thin-check-ordinals",
    "classical-degeneration", "intuitionistic-separation", "arith-closure", "arith-add-inj",
    "arith-mul-inj", "arith-pair-code-inj", "arith-pl-commute", "arith-memo",
    "coding-roundtrip", "coding-encode-plump", "coding-functional", "coding-reconstruct",
}


def test_every_invariant_has_a_suite():
    assert EXPECTED_IDS <= set(suite_ids())


def test_spec_examples():
    r = run_suite("heyting-laws", "sierpinski")
    assert r.exit_code == 0 and r.totals["instances"] > 0
    r = run_suite("plord-triple-agreement", "bool2")
    assert r.exit_code == 0
    for rec in r.records:
        assert set(rec.values.values()) == {"top"}
    r = run_suite("coding-roundtrip", "diamond")
    assert r.exit_code == 0 and r.totals["instances"] > 0


def test_report_shape():
    r = run_suite("names-equality", "bool2")
    d = json.loads(r.to_json())
    assert set(d) == {"suite", "algebra", "settings", "totals", "records"}
    assert d["settings"]["rank"] == 2 and d["settings"]["max_rank"] == 8
    assert d["totals"]["instances"] == len(d["records"]) == d["totals"]["passed"]
    keys = [rec["instance"] for rec in d["records"]]
    assert keys == sorted(keys)
    for rec in d["records"]:
        assert rec["pass"] is True and "budget_exceeded" not in rec
    assert "wall_time" in json.loads(r.to_json(timing=True))


def test_reports_are_deterministic():
    for sid, alg in [("names-leibniz", "sierpinski"), ("plump-op-successor", "diamond"),
                     ("intuitionistic-separation", "sierpinski")]:
        assert run_suite(sid, alg).to_json() == run_suite(sid, alg).to_json()


def test_errors():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
    with pytest.raises(NotApplicable):
        run_suite("classical-degeneration", "sierpinski")
    with pytest.raises(NotApplicable):
        run_suite("heyting-laws", "posets")


def test_settings_layering():
    cfg = {"default": {"max_rank": 1, "a": 1},
           "suites": {"s": {"*": {"max_rank": 2, "b": 2}, "x": {"max_rank": 3}}}}
    assert settings_for(cfg, "s", "x") == {"max_rank": 3, "a": 1, "b": 2}
    assert settings_for(cfg, "s", "y") == {"max_rank": 2, "a": 1, "b": 2}
    assert settings_for(cfg, "t", "x") == {"max_rank": 1, "a": 1}


def test_env_override(tmp_path, monkeypatch):
    f = tmp_path / "b.json"
    f.write_text(json.dumps({"default": {"max_rank": 2, "instance_cap": 2}}))
    monkeypatch.setenv(suites.BUDGET_ENV, str(f))
    cfg = load_config()
    assert cfg["default"]["instance_cap"] == 2
    r = run_suite("names-equality", "bool2", cfg)
    assert r.exit_code == 3
    assert r.records[-1].instance == "~instance-cap"
    assert r.totals == {"instances": 3, "passed": 2, "failed": 0, "budget_exceeded": 1}


def test_generator_budget_is_reported(tmp_path):
    cfg = {"default": {"max_rank": 2, "max_entries": 2}}
    r = run_suite("plord-triple-agreement", "diamond", cfg)
    assert r.exit_code == 3
    assert any(rec.budget_exceeded for rec in r.records)


def test_packaged_config_runs_cheap_suites_clean():
    for sid in ["heyting-posets", "names-memo", "thin-check-ordinals", "plump-union-plump",
                "intuitionistic-separation"]:
        for alg in suites.SUITES[sid].algebras:
            r = run_suite(sid, alg)
            assert r.exit_code == 0, (sid, alg, [x.as_dict() for x in r.failures()][:3])
