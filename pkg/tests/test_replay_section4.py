import pytest

from noethercheck.errors import ParameterError
from noethercheck.replay import (
    RunOptions,
    check_n_independence,
    enumerate_situations,
    run_script,
)
from noethercheck.replay.model import StepKind, StepStatus

FAST = RunOptions(oracle=True, samples=10)
NO_ORACLE = RunOptions(oracle=False)


def failing_steps(report):
    return [(s.step_id, s.detail) for s in report.steps if s.status == StepStatus.FAIL]


def test_twelve_situations():
    sits = enumerate_situations()
    assert len(sits) == 12
    table = {(s.family, s.a_label): s.script_id for s in sits}
    assert table[("M", "1+2^(n-2)")] == "case2.3"
    assert table[("SD", "-1")] == "case3.1"
    assert table[("D", "-1")] == table[("Q", "-1")] == "case1.1"
    assert table[("SD", "-1+2^(n-2)")] == "case3.2"


@pytest.mark.parametrize("family", ["D", "Q"])
def test_case11_full_replay(family):
    report = run_script("case1.1", {"family": family, "n": 4}, FAST)
    assert report.passed, failing_steps(report)
    tables = report.snapshots["case1.1:z-tables"]
    eps = "-z3" if family == "Q" else "z3"
    assert tables["lambda"] == {
        "z0": "(1)/(z0)", "z1": "z1", "z2": "z2", "z3": "(z1)/(z3)"}
    assert tables["tau"] == {
        "z0": "(1)/(z0)", "z1": "z1", "z2": "(z1)/(z2)", "z3": eps}


@pytest.mark.parametrize("family", ["D", "Q"])
def test_case12_full_replay(family):
    report = run_script("case1.2", {"family": family, "n": 4}, FAST)
    assert report.passed, failing_steps(report)
    tables = report.snapshots["case1.2:z-tables"]
    if family == "D":
        assert tables["taulambda"] == {
            "z0": "z0*z1", "z1": "(1)/(z1)", "z2": "(1)/(z2)",
            "z3": "(z3)/(z1*z2)"}
        assert tables["tau"] == {
            "z0": "z0", "z1": "z1", "z2": "(1)/(z2)", "z3": "(z1)/(z3)"}
    else:
        assert tables["taulambda"] == {
            "z0": "-z0*z1", "z1": "(1)/(z1)", "z2": "(1)/(z2)",
            "z3": "(-z3)/(z1*z2)"}
        assert tables["tau"] == {
            "z0": "-z0", "z1": "z1", "z2": "(1)/(z2)", "z3": "(-z1)/(z3)"}


def test_case32_full_replay():
    report = run_script("case3.2", {"n": 4}, FAST)
    assert report.passed, failing_steps(report)
    tables = report.snapshots["case3.2:z-tables"]
    assert tables["tau"] == {
        "z0": "(1)/(z0)", "z1": "(z1)/(z0)", "z2": "z2*z3", "z3": "(1)/(z3)"}
    assert tables["taulambda"] == {
        "z0": "z0", "z1": "z1*z2^2*z3", "z2": "(1)/(z2)", "z3": "(1)/(z3)"}


@pytest.mark.parametrize("case_id", ["case2.1", "case2.2", "case3.1"])
def test_relabeled_cases_verify_correspondence(case_id):
    report = run_script(case_id, {"n": 4}, FAST)
    assert report.passed, failing_steps(report)
    ids = [s.step_id for s in report.steps]
    assert any("relabel" in i for i in ids)
    correspondence = [s for s in report.steps if "correspondence" in s.step_id]
    assert len(correspondence) >= 12  # claim-by-claim, one per generator image
    assert all(s.status != StepStatus.FAIL for s in correspondence)


def test_delegating_cases_reach_passing_targets():
    memo = {}
    report = run_script("case1.3", {"family": "Q", "n": 4}, FAST, _memo=memo)
    assert report.passed
    assert report.delegations and all(ok for _, _, ok in report.delegations)
    target, params, _ = report.delegations[0]
    assert target == "thm3.2" and params == {"family": "Q", "n": 4}

    report = run_script("case2.3", {"n": 5}, FAST, _memo=memo)
    assert report.passed
    assert report.delegations[0][0] == "thm3.1"

    report = run_script("case3.3", {"n": 5}, FAST, _memo=memo)
    assert report.passed
    assert report.delegations[0][0] == "thm3.3"


def test_case33_at_n4_cites_external_base_case():
    report = run_script("case3.3", {"n": 4}, FAST)
    assert report.passed
    delegate = next(s for s in report.steps if s.kind == StepKind.DELEGATE)
    assert delegate.status == StepStatus.DELEGATED
    assert "external" in delegate.detail


def test_case_family_bounds():
    with pytest.raises(ParameterError):
        run_script("case1.1", {"family": "M", "n": 4})
    with pytest.raises(ParameterError):
        run_script("case2.1", {"family": "D", "n": 4})
    with pytest.raises(ParameterError):
        run_script("case1.1", {"family": "D", "n": 3})


def test_n_independence_of_case11():
    verdict, reports = check_n_independence("case1.1", [4, 5], family="D",
                                            options=NO_ORACLE)
    assert verdict.ok, verdict.detail
    assert all(r.passed for r in reports)


def test_n_independence_single_n_vacuous():
    verdict, _ = check_n_independence("case1.1", [4], family="D", options=NO_ORACLE)
    assert verdict.ok


def test_lemma_2_4_steps_present():
    for case_id, params in [("case1.1", {"family": "D", "n": 4}),
                            ("case3.2", {"n": 4})]:
        report = run_script(case_id, params, NO_ORACLE)
        lemma = next(s for s in report.steps if "lemma2.4" in s.step_id)
        assert lemma.status == StepStatus.PASS
        assert lemma.kind == StepKind.THEOREM_REDUCTION
