import json

import pytest

from noethercheck.cli import main

STEP_FIELDS = {"step_id", "kind", "status", "detail", "oracle_agree", "oracle_trials"}


def test_verify_theorem_passes(capsys):
    code = main(["verify", "--theorem", "2.3", "--oracle-samples", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: PASS" in out


def test_verify_case_with_quaternion_family(capsys):
    code = main(["verify", "--case", "1.1", "--family", "Q", "--n", "4",
                 "--oracle-samples", "5"])
    assert code == 0
    assert "result: PASS" in capsys.readouterr().out


def test_verify_rejects_wrong_family(capsys):
    code = main(["verify", "--theorem", "3.2", "--family", "SD", "--n", "4"])
    err = capsys.readouterr().err
    assert code == 2
    assert "3.2" in err or "families" in err


def test_verify_json_schema(capsys):
    code = main(["verify", "--theorem", "3.1", "--p", "2", "--n", "3",
                 "--oracle-samples", "5", "--format", "json"])
    assert code == 0
    steps = json.loads(capsys.readouterr().out)
    assert isinstance(steps, list) and steps
    for step in steps:
        assert set(step) == STEP_FIELDS


def test_verify_requires_script_selector(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "4"])
    assert exc.value.code == 2


def test_group_report(capsys):
    code = main(["group", "--family", "Q", "--n", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "order 16" in out and "exponent 8" in out
    assert "unique involution: sigma^4" in out


def test_group_rejects_low_n(capsys):
    code = main(["group", "--family", "D", "--n", "3"])
    assert code == 2
    assert "n >= 4" in capsys.readouterr().err


def test_situations_listing(capsys):
    code = main(["situations", "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data) == 12


def test_all_json_schema(capsys):
    code = main(["all", "--max-n", "3", "--oracle-samples", "5", "--format", "json"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert isinstance(rows, list) and rows
    for row in rows:
        assert {"script_id", "params", "status", "reason", "steps"} == set(row)
        for step in row["steps"]:
            assert set(step) == STEP_FIELDS


def test_all_text_summary(capsys):
    code = main(["all", "--max-n", "3", "--no-oracle"])
    out = capsys.readouterr().out
    assert code == 0
    assert "summary:" in out and "skipped" in out


def test_json_output_stable_under_deterministic_seeding(capsys):
    main(["verify", "--theorem", "3.1", "--p", "2", "--n", "3",
          "--oracle-samples", "20", "--format", "json"])
    first = capsys.readouterr().out
    main(["verify", "--theorem", "3.1", "--p", "2", "--n", "3",
          "--oracle-samples", "20", "--format", "json"])
    assert capsys.readouterr().out == first
