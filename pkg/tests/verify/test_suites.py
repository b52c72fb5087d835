import json
from unittest.mock import patch

import pytest

from quantum_seifert.errors import PZero
from quantum_seifert.verify.suites import (
    _guarded,
    decay_levels,
    oracle_suite,
    reciprocity_suite,
    relations_suite,
    run_suite,
)


def _failures(report):
    return [c for c in report["checks"] if not c["passed"]]


def test_relations_suite_passes():
    report = relations_suite("A1", 6, trials=3)
    assert report["suite"] == "relations"
    assert report["passed"], _failures(report)
    names = [c["name"] for c in report["checks"]]
    assert "xi_theta_cubed" in names
    assert any(name.startswith("rep_closed") for name in names)


def test_relations_suite_on_a2():
    report = relations_suite("A2", 5, trials=2, seed=3)
    assert report["passed"], _failures(report)


def test_reciprocity_suite_passes():
    report = reciprocity_suite(trials=10, seed=5)
    assert report["passed"], _failures(report)
    assert len(report["checks"]) == 10


def test_oracle_suite_passes():
    report = oracle_suite("A1", 5)
    assert report["passed"], _failures(report)


def test_oracle_suite_records_library_errors():
    report = oracle_suite("A1", 5, manifolds=["n;1|0;(2,1)"], lenses=[])
    assert not report["passed"]
    assert "SelfDualSignTable" in report["checks"][0]["detail"]


def test_guarded_turns_errors_into_failed_checks():
    def broken():
        raise PZero("p is zero")

    assert _guarded("lens", broken) == [{"name": "lens", "passed": False, "detail": "p is zero"}]


def test_decay_levels_skip_multiples_of_p():
    levels = decay_levels(3)
    assert levels[:3] == [20, 34, 41]
    assert all(r % 3 for r in levels)
    assert decay_levels(-5, 20, 60) == [27, 34, 41, 48]
    assert decay_levels(1, 20, 34) == [20, 27, 34]


def test_run_suite_dispatch():
    with patch("quantum_seifert.verify.suites.reciprocity_suite",
               return_value={"suite": "reciprocity", "passed": True, "checks": []}) as mock_suite:
        reports = run_suite("reciprocity", trials=7, seed=2)
    mock_suite.assert_called_once_with(7, 2, "double")
    assert reports == [{"suite": "reciprocity", "passed": True, "checks": []}]
    with pytest.raises(ValueError):
        run_suite("everything")


def test_reports_are_json_ready():
    json.dumps(run_suite("oracle", algebra="A1", level=5))


@pytest.mark.slow
def test_asymptotics_suite_passes():
    report = run_suite("asymptotics", algebra="A1")[0]
    assert report["passed"], _failures(report)


def test_run_suite_forwards_trials_to_relations():
    with patch("quantum_seifert.verify.suites.relations_suite",
               return_value={"suite": "relations", "passed": True, "checks": []}) as mock_suite:
        run_suite("relations", algebra="A2", level=5, trials=60, seed=4)
    mock_suite.assert_called_once_with("A2", 5, "double", trials=60, seed=4)


def test_relations_suite_default_trial_count():
    report = relations_suite("A1", 4)
    assert report["passed"], _failures(report)
    assert sum(c["name"].startswith("rep_closed") for c in report["checks"]) == 50
