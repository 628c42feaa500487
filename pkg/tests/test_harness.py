import pytest

from superposition import constant_overlap_basis, run_axiom_campaign, run_oracle_campaign
from superposition.errors import UnknownChannelFamily, UnknownMeasure, UnknownOracle
from superposition.harness import MEASURES, report_json, report_table

BASIS2 = constant_overlap_basis(2, 0.5)


def test_registry_contents():
    for name in ("l1", "rel_ent", "rank", "robustness", "weight",
                 "l1_roof", "rel_ent_roof", "delta", "broken_l1"):
        assert name in MEASURES
    assert MEASURES["l1"].tolerance == 1e-6
    assert MEASURES["weight"].tolerance == 1e-3
    assert MEASURES["delta"].channel_family == "real_dual"


def test_small_campaign_passes():
    reports = run_axiom_campaign("l1", BASIS2, trials=25, seed=3)
    assert [r.axiom for r in reports] == ["S1", "S2", "S3", "S4"]
    assert all(r.passed for r in reports)
    assert all(r.measure == "l1" for r in reports)


def test_delta_campaign_small():
    reports = run_axiom_campaign("delta", BASIS2, trials=15, seed=2)
    assert all(r.passed for r in reports)


def test_negative_control_fails_s1():
    reports = run_axiom_campaign("broken_l1", BASIS2, trials=20, seed=0)
    s1 = reports[0]
    assert s1.axiom == "S1"
    assert not s1.passed
    assert s1.max_slack > 0
    # every free-state trial is violated: the diagonal term is 0.1 there
    assert len(s1.violations) == 20


def test_campaign_deterministic():
    a = report_json(run_axiom_campaign("l1", BASIS2, trials=10, seed=5))
    b = report_json(run_axiom_campaign("l1", BASIS2, trials=10, seed=5))
    assert a == b
    c = report_json(run_axiom_campaign("l1", BASIS2, trials=10, seed=6))
    assert a != c


def test_unknown_measure_and_family():
    with pytest.raises(UnknownMeasure):
        run_axiom_campaign("nope", BASIS2, trials=1)
    with pytest.raises(UnknownChannelFamily):
        run_axiom_campaign("l1", BASIS2, channel_family="nope", trials=1)


def test_oracle_campaign_small():
    r = run_oracle_campaign("weight", "weight_grid", trials=8, seed=1)
    assert r.axiom == "ORACLE"
    assert r.passed
    r = run_oracle_campaign("l1_roof", "roof_grid", trials=4, seed=1)
    assert r.passed


def test_oracle_errors():
    with pytest.raises(UnknownOracle):
        run_oracle_campaign("weight", "nope", trials=1)
    with pytest.raises(UnknownOracle):
        run_oracle_campaign("l1", "weight_grid", trials=1)


def test_report_table_format():
    reports = run_axiom_campaign("l1", BASIS2, trials=5, seed=1)
    table = report_table(reports)
    assert "S1" in table and "pass" in table
