"""Experiment plumbing: claim records, result files, budget handling."""

import json

import pytest

from polycircuits.experiments import Claim, Recorder, run_experiment


def test_claim_passes_on_exact_equality():
    assert Claim("count", 24, 24).passed
    assert not Claim("count", 24, 23).passed
    assert Claim("witnesses", [], []).passed


def test_recorder_writes_result_file(tmp_path):
    rec = Recorder("demo", {"n": 3}, tmp_path)
    rec.claim("trivially true", 1, 1)
    result = rec.finish()
    assert result.passed
    on_disk = json.loads((tmp_path / "result.json").read_text())
    assert on_disk["experiment"] == "demo"
    assert on_disk["parameters"] == {"n": 3}
    assert on_disk["claims"][0]["pass"] is True
    assert on_disk["error"] == ""


def test_failed_claim_fails_the_run(tmp_path):
    rec = Recorder("demo", {}, tmp_path)
    rec.claim("ok", True, True)
    rec.claim("broken", 5, 6)
    result = rec.finish()
    assert not result.passed
    assert [c.description for c in result.claims if not c.passed] == ["broken"]


def test_unknown_experiment_is_a_key_error(tmp_path):
    with pytest.raises(KeyError):
        run_experiment("thm99", {}, tmp_path)


def test_blown_budget_leaves_partial_log(tmp_path):
    result = run_experiment("thm2", {"n": 4}, tmp_path, budget=50)
    assert not result.passed
    assert result.error.startswith("budget exceeded")
    on_disk = json.loads((tmp_path / "result.json").read_text())
    assert on_disk["pass"] is False
    assert "budget" in on_disk["error"]


def test_experiment_artifacts_are_valid_json(tmp_path):
    result = run_experiment("lemma17", {}, tmp_path)
    assert result.passed
    for path in result.artifacts:
        payload = json.loads(open(path).read())
        assert isinstance(payload, dict)
