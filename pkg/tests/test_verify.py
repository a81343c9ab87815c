import json

import pytest

from igm import ImplicitLayer, ModelParams, parse_seed
from igm.verify import (
    AT_SCALE,
    BOUND_OK,
    MATCH,
    MISMATCH,
    NOT_APPLICABLE,
    THEOREM_IDS,
    Trajectory,
    VerifyOptions,
    build_trajectory,
    check_connectivity,
    check_densification,
    check_diameter,
    check_order_size,
    check_parameters,
    check_spectral,
    report_document,
    run_all,
)


@pytest.fixture(scope="module")
def k1_traj():
    return build_trajectory(parse_seed("K1"), 2, 4)


@pytest.fixture(scope="module")
def c4_traj():
    return build_trajectory(parse_seed("C4"), 2, 2)


@pytest.fixture(scope="module")
def k1_report():
    return run_all(ModelParams("K1"), 4, VerifyOptions(sample_pairs=2000))


def by_level(checks, theorem_id):
    return {c.level: c for c in checks if c.theorem_id == theorem_id}


def test_order_size_k1(k1_traj):
    checks = check_order_size(k1_traj)
    assert checks[0].status == NOT_APPLICABLE
    assert [c.status for c in checks[1:]] == [MATCH] * 4
    assert checks[4].measured == {"n": "262", "e": "1274"}
    ratios = [c.note.split(";")[0].split("= ")[1] for c in checks[1:]]
    assert ratios == ["2", "2", "1.66667", "1.03968"]


def test_order_size_c4_and_empty(c4_traj):
    assert [c.status for c in check_order_size(c4_traj)[1:]] == [MATCH, MATCH]
    assert check_order_size(Trajectory(2, 0, [], [(1, 0)])) == []


def test_order_size_beyond_budget():
    traj = build_trajectory(parse_seed("K1"), 2, 5)
    last = check_order_size(traj)[-1]
    assert last.status == AT_SCALE and last.measured is None
    assert "C(262,131)" in last.note


def test_densification(k1_traj, c4_traj):
    c = check_densification(k1_traj)
    assert c.status == BOUND_OK and c.measured == pytest.approx(4.863, abs=1e-3)
    assert c.predicted_paper["comparator"] == 5
    c = check_densification(c4_traj)
    assert c.status == BOUND_OK and c.measured == pytest.approx(1276 / 262)
    single = build_trajectory(parse_seed("C4"), 2, 0)
    assert check_densification(single).status == NOT_APPLICABLE


def test_spectral(c4_traj):
    checks = by_level(check_spectral(c4_traj), "spectral_gap")
    assert checks[0].status == NOT_APPLICABLE
    assert checks[1].status == BOUND_OK and 0.6 <= checks[1].measured <= 1
    assert checks[1].predicted_paper["lower_exact"] == "3/5"
    assert checks[2].status == BOUND_OK and 0.9752 <= checks[2].measured <= 1
    assert checks[2].predicted_paper["lower"] == pytest.approx(1260 / 1292)


def test_spectral_m_zero_not_applicable(k1_traj):
    checks = by_level(check_spectral(k1_traj), "spectral_gap")
    assert checks[1].status == NOT_APPLICABLE  # lone clone over the empty set has volume 0
    assert all(checks[t].status == BOUND_OK for t in (2, 3, 4))


def test_connectivity_k1(k1_traj):
    checks = check_connectivity(k1_traj)
    n4 = by_level(checks, "connectivity_n4")
    assert n4[3].status == MATCH
    claim = {c.level: c for c in checks if c.theorem_id == "biconnectivity" and "claim" in c.hypothesis}
    assert claim[4].status == MATCH
    n2 = by_level(checks, "connectivity_n2")
    assert n2[2].status == NOT_APPLICABLE  # G_1 is two isolated nodes
    assert not any(c.status == MISMATCH for c in checks)


def test_diameter_checks(k1_traj, c4_traj):
    d = by_level(check_diameter(k1_traj), "diameter")
    assert d[3].measured == 4 and d[3].status == NOT_APPLICABLE
    d = by_level(check_diameter(c4_traj), "diameter")
    assert d[2].measured == 3


def test_case_bounds_on_layer_over_g1_c4():
    traj = build_trajectory(parse_seed("C4"), 2, 1)
    layer = ImplicitLayer(traj.snapshots[-1])
    checks = check_diameter(traj, layer, VerifyOptions(sample_pairs=10_000, rng_seed=3))
    cases = [c for c in checks if c.hypothesis.startswith("implicit layer")]
    assert len(cases) == 1 and cases[0].status == BOUND_OK
    worst = cases[0].measured
    assert worst["clone_clone"] <= 4 and worst["clone_clone_meeting_or_crossing"] <= 3
    exact = [c for c in checks if c.level == 2 and c.hypothesis.startswith("t >= 5")]
    assert exact[0].measured == 3 and "exact" in exact[0].note


def test_parameters_k1(k1_traj):
    checks = check_parameters(k1_traj)
    chi = by_level(checks, "chromatic")
    assert (chi[4].predicted_paper, chi[4].predicted_recurrence, chi[4].measured) == (5, 4, 4)
    assert chi[4].status == MISMATCH
    omega = by_level(checks, "clique")
    assert (omega[4].predicted_paper, omega[4].predicted_recurrence, omega[4].measured) == (5, 4, 4)
    assert omega[4].status == MISMATCH
    assert "lower bound on the clique number omega" in omega[4].note
    gamma = by_level(checks, "domination")
    assert gamma[3].predicted_paper == 3 and gamma[3].measured == 3 and gamma[3].status == MATCH
    assert gamma[4].measured == 6 and gamma[4].predicted_recurrence == 6
    alpha = by_level(checks, "independence")
    assert alpha[1].status == NOT_APPLICABLE
    assert alpha[3].measured == "6" and alpha[3].status == MATCH


def test_parameters_c4(c4_traj):
    checks = check_parameters(c4_traj)
    chi = by_level(checks, "chromatic")
    assert (chi[1].predicted_paper, chi[1].predicted_recurrence, chi[1].measured, chi[1].status) == (3, 3, 3, MATCH)
    assert all(c.status in (MATCH, BOUND_OK, NOT_APPLICABLE) for c in checks)


def test_run_all_k1(k1_report):
    assert len(k1_report.checks) >= 20
    assert k1_report.errors == []
    assert k1_report.has_mismatch
    assert {c.theorem_id for c in k1_report.checks} == set(THEOREM_IDS)
    mism = {(c.theorem_id, c.level) for c in k1_report.checks if c.status == MISMATCH}
    assert mism == {("clique", 4), ("chromatic", 4)}


def test_run_all_c4():
    report = run_all(ModelParams("C4"), 2, VerifyOptions(sample_pairs=2000))
    assert report.errors == [] and not report.has_mismatch
    family = [c for c in report.checks
              if c.theorem_id in ("spectral_gap", "connectivity_n2", "connectivity_n4", "biconnectivity")]
    applicable = [c for c in family if c.status != NOT_APPLICABLE]
    assert len(applicable) == 8
    assert all(c.status in (MATCH, BOUND_OK) for c in applicable)
    # the rest are hypothesis misses: level 0 spectra and the t >= 4 theorem
    assert all(c.level == 0 or c.hypothesis.startswith("t >= 4") for c in family if c.status == NOT_APPLICABLE)


def test_run_all_zero_steps():
    report = run_all(ModelParams("K1"), 0)
    assert report.checks and all(c.status == NOT_APPLICABLE for c in report.checks)


def test_run_all_other_k():
    report = run_all(ModelParams("C4", 3), 2)
    assert report.errors == []
    assert all(c.status in (MATCH, NOT_APPLICABLE) for c in report.checks)


def test_report_is_ordered_and_serializable(k1_report):
    keys = [(THEOREM_IDS.index(c.theorem_id), c.level) for c in k1_report.checks]
    assert keys == sorted(keys)
    doc = report_document(k1_report, "0.1.0")
    assert list(doc) == ["schema_version", "params", "trajectory_summary", "checks", "errors", "tool_version"]
    assert doc["trajectory_summary"][4] == {"level": 4, "n": "262", "e": "1274", "materialized": True}
    json.dumps(doc)


def test_every_comparison_is_recorded(k1_report):
    for c in k1_report.checks:
        if c.status in (MATCH, BOUND_OK, MISMATCH):
            assert c.predicted_paper is not None and c.measured is not None
        assert c.hypothesis


def test_report_is_deterministic():
    opts = VerifyOptions(sample_pairs=500, rng_seed=5)
    a = report_document(run_all(ModelParams("C4"), 1, opts), "x")
    b = report_document(run_all(ModelParams("C4"), 1, opts), "x")
    assert json.dumps(a) == json.dumps(b)


def test_levels_past_counting_limit_are_at_scale():
    traj = build_trajectory(parse_seed("C6"), 2, 4)
    assert len(traj.counts) == 3 and "counting limit" in traj.count_note
    deep = [c for c in check_order_size(traj) + check_parameters(traj, VerifyOptions()) if c.level >= 3]
    assert deep and all(c.status == AT_SCALE and c.predicted_paper is None for c in deep)
    report = run_all(ModelParams("C6"), 4, VerifyOptions(sample_pairs=200))
    assert not report.errors and json.dumps(report_document(report, "t"))
