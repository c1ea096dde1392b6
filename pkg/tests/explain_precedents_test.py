#!/usr/bin/env python3
"""
End-to-end tests for the explain-precedents tool: outputs and exit codes.
"""
import importlib.util
import json
import logging
import os

import pytest

from precedent import reason
from precedent.errors import InternalConsistencyError


def import_explain_precedents():
    tool_path = os.path.abspath(
        os.path.join(
            os.path.dirname(__file__),
            "../tools/explain-precedents/explain-precedents.py",
        )
    )
    spec = importlib.util.spec_from_file_location("explain_precedents", tool_path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


explain_precedents = import_explain_precedents()

X1 = "short,house,job"


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    """Keep user and project config files out of the runs."""
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith("PRECEDENTCLI_"):
            monkeypatch.delenv(key)


@pytest.fixture
def fiscal(fixtures_dir):
    return str(fixtures_dir / "fiscal_domicile.json")


def run(capsys, *argv):
    code = explain_precedents.main(list(argv))
    return code, capsys.readouterr().out


def test_validate(capsys, fiscal):
    code, out = run(capsys, "validate", fiscal)
    assert code == 0
    assert out == (
        "2 cases, 4 factors\nplaintiff factors: 2\ndefendant factors: 2\ninconsistent\n"
    )


def test_validate_structured(capsys, fixtures_dir):
    code, out = run(
        capsys, "validate", str(fixtures_dir / "single_case.json"), "--structured"
    )
    assert code == 0
    assert json.loads(out)["consistent"] is True


def test_validate_tolerates_the_universe_cap(capsys, fiscal):
    code, out = run(capsys, "validate", fiscal, "--cap", "2")
    assert code == 0
    assert out.endswith("consistency not checked (universe cap exceeded)\n")


def test_inc(capsys, fiscal, fixtures_dir):
    assert run(capsys, "inc", fiscal) == (0, "({short} , {job})\n")
    assert run(capsys, "inc", str(fixtures_dir / "empty_case_base.json")) == (0, "")


def test_diagram(capsys, fiscal):
    code, out = run(capsys, "diagram", fiscal, "--facts", X1)
    assert code == 0
    assert out.startswith("digraph priorities {\n")
    assert '  r0 -> r1 [color=blue, label="X:π"];\n' in out


def test_decide(capsys, fiscal):
    code, out = run(capsys, "decide", fiscal, "--facts", X1)
    assert code == 0
    assert out == (
        "obligated plaintiff\n"
        "{job}δ < {house, short}π: c1\n"
        "{house, short}π < {job}δ: -\n"
    )


def test_decide_both_permitted(capsys, fiscal):
    code, out = run(capsys, "decide", fiscal, "--facts", "short,job", "--structured")
    assert code == 0
    assert json.loads(out)["decision"] == "both permitted"


def test_decide_annotated(capsys, fiscal):
    code, out = run(capsys, "decide", fiscal, "--facts", X1, "--annotate")
    assert code == 0
    assert "deciding for plaintiff adds no inconsistency" in out
    assert "deciding for defendant adds: " in out


def test_framework(capsys, fiscal):
    code, out = run(capsys, "framework", fiscal, "--facts", X1)
    assert code == 0
    assert out.startswith("arguments (6):\n")
    assert "attacks (3):\n" in out

    code, dot = run(capsys, "framework", fiscal, "--facts", X1, "--dot")
    assert code == 0
    assert dot.startswith("digraph framework {\n")


def test_framework_verbose_still_emits_the_payload(capsys, fiscal):
    code, out = run(capsys, "framework", fiscal, "--facts", X1, "--verbose")
    assert code == 0
    assert out.startswith("arguments (6):\n")


def test_explain(capsys, fiscal):
    code, out = run(capsys, "explain", fiscal, "--facts", X1)
    assert code == 0
    assert out == (
        "decision: obligated plaintiff\n"
        "explanation 1 for plaintiff:\n"
        "  P: ({house, short}, {c1, c2}, plaintiff)\n"
        "explanation 2 for plaintiff:\n"
        "  P: ({short}, {c1, c2}, plaintiff)\n"
        "    O: ({job, short}, {c2}, defendant)\n"
        "      P: ({house, job, short}, {c1, c2}, plaintiff)\n"
    )


def test_explain_other_side(capsys, fiscal):
    code, out = run(
        capsys, "explain", fiscal, "--facts", X1, "--side", "defendant", "--annotate"
    )
    assert code == 0
    assert out.splitlines()[1:] == [
        "no explanations for defendant",
        "rejected for defendant (not admissible):",
        "  P: ({job}, {c1, c2}, defendant)",
        "    O: ({job, short}, {c1}, plaintiff)",
    ]


def test_explain_both_sides_when_undecided(capsys, fiscal):
    code, out = run(capsys, "explain", fiscal, "--facts", "short,job", "--structured")
    assert code == 0
    doc = json.loads(out)
    assert [s["side"] for s in doc["sides"]] == ["plaintiff", "defendant"]


def test_output_is_byte_stable(capsys, fiscal):
    first = run(capsys, "explain", fiscal, "--facts", "job,house,short", "--structured")
    second = run(capsys, "explain", fiscal, "--facts", X1, "--structured")
    assert first == second


def test_oracle(capsys, fiscal):
    code, out = run(capsys, "oracle", fiscal, "--facts", X1, "--trials", "25")
    assert code == 0
    assert out.endswith("all checks agree\n")


def test_oracle_mismatch_exits_1(capsys, monkeypatch, fiscal):
    monkeypatch.setattr(reason, "permitted", lambda case_base, facts, side: True)
    code, out = run(capsys, "oracle", fiscal, "--facts", X1, "--trials", "5")
    assert code == 1
    assert "minimized counterexample (permitted):" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["decide", "{fiscal}", "--facts", X1, "--dot"],
        ["decide", "{fiscal}"],
        ["judge", "{fiscal}"],
        ["explain", "{fiscal}", "--facts", X1, "--side", "judge"],
        ["oracle", "{fiscal}", "--facts", X1, "--trials", "0"],
        ["decide", "{fiscal}", "--facts", "short,yacht"],
        ["validate", "{fixtures}/premise_side_mismatch.json"],
        ["validate", "{fixtures}/malformed.json"],
        ["validate", "{fiscal}", "--config", "absent.toml"],
    ],
)
def test_usage_and_validation_errors_exit_2(capsys, fiscal, fixtures_dir, argv):
    argv = [a.format(fiscal=fiscal, fixtures=fixtures_dir) for a in argv]
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_deeply_nested_case_base_exits_2(capsys, tmp_path):
    deep = tmp_path / "deep.json"
    deep.write_text("[" * 100000, encoding="utf-8")
    code, out = run(capsys, "validate", str(deep))
    assert code == 2
    assert out == ""


def test_missing_case_base_exits_3(capsys, tmp_path):
    code, out = run(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == 3
    assert out == ""


def test_cap_exits_4(capsys, fixtures_dir):
    wide = str(fixtures_dir / "wide_universe.json")
    assert run(capsys, "inc", wide, "--cap", "4")[0] == 4
    assert run(capsys, "framework", wide, "--facts", "p0,p1,d0", "--cap", "2")[0] == 4
    assert run(capsys, "oracle", wide, "--facts", "p0", "--trials", "1")[0] == 4


def test_internal_error_exits_70(capsys, monkeypatch, fiscal):
    def broken(*args, **kwargs):
        raise InternalConsistencyError("decision and explanations disagree")

    monkeypatch.setattr(explain_precedents, "explain_decision", broken)
    code, out = run(capsys, "explain", fiscal, "--facts", X1)
    assert code == 70
    assert out == ""


def test_config_file_caps(capsys, tmp_path, fiscal):
    config = tmp_path / "tight.toml"
    config.write_text("[caps]\nuniverse = 2\n")
    assert run(capsys, "inc", fiscal, "--config", str(config))[0] == 4

    config.write_text("[caps]\nknowledge = 0\n")
    assert run(capsys, "decide", fiscal, "--facts", X1, "--config", str(config))[0] == 2


def test_config_output_format(capsys, tmp_path, fiscal):
    config = tmp_path / "structured.toml"
    config.write_text('[output]\nformat = "structured"\n')
    code, out = run(capsys, "inc", fiscal, "--config", str(config))
    assert code == 0
    assert json.loads(out) == {
        "inconsistencies": [{"plaintiff": ["short"], "defendant": ["job"]}]
    }


def test_environment_override(capsys, monkeypatch, fiscal):
    monkeypatch.setenv("PRECEDENTCLI_EXPLAIN_PRECEDENTS_CAPS_UNIVERSE", "3")
    assert run(capsys, "inc", fiscal)[0] == 4


def test_environment_ranks_above_config_file_and_below_flags(
    capsys, monkeypatch, tmp_path, fiscal
):
    config = tmp_path / "tight.toml"
    config.write_text("[caps]\nuniverse = 2\n")
    monkeypatch.setenv("PRECEDENTCLI_EXPLAIN_PRECEDENTS_CAPS_UNIVERSE", "16")
    assert run(capsys, "inc", fiscal, "--config", str(config))[0] == 0

    monkeypatch.setenv("PRECEDENTCLI_EXPLAIN_PRECEDENTS_CAPS_UNIVERSE", "3")
    assert run(capsys, "inc", fiscal, "--cap", "16")[0] == 0


def test_configured_log_level_applies_without_log_file(capsys, caplog, tmp_path, fiscal):
    config = tmp_path / "debug.toml"
    config.write_text('[logging]\nlog_level = "DEBUG"\n')
    with caplog.at_level(logging.DEBUG):
        code, _ = run(capsys, "validate", fiscal, "--config", str(config))
    assert code == 0
    assert "Running validate on" in caplog.text
