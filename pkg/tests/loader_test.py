#!/usr/bin/env python3
"""
Tests for precedent.loader: validation, parsing and serialization of case bases.
"""
import json
import random

import pytest

from precedent.core import Side
from precedent.errors import CaseBaseValidationError
from precedent.loader import (
    case_base_to_document,
    dump_case_base,
    dumps_case_base,
    load_case_base,
    parse_case_base,
    validate_case_base,
)
from precedent.oracle import random_case_base, random_universe


def test_load_fiscal_domicile(fixtures_dir, gamma1):
    case_base = load_case_base(fixtures_dir / "fiscal_domicile.json")
    assert len(case_base) == 2
    assert len(case_base.universe) == 4
    assert case_base == gamma1
    assert case_base.get("c2").outcome is Side.DEFENDANT


def test_premise_side_mismatch(fixtures_dir):
    with pytest.raises(CaseBaseValidationError) as excinfo:
        load_case_base(fixtures_dir / "premise_side_mismatch.json")
    assert any("premise side mismatch" in v for v in excinfo.value.violations)


def test_unknown_factor(fixtures_dir):
    with pytest.raises(CaseBaseValidationError) as excinfo:
        load_case_base(fixtures_dir / "unknown_factor.json")
    assert excinfo.value.violations == ["case c1: unknown factor in facts: yacht"]


def test_all_violations_reported_at_once(fixtures_dir):
    with pytest.raises(CaseBaseValidationError) as excinfo:
        load_case_base(fixtures_dir / "many_violations.json")
    violations = excinfo.value.violations
    assert "factor declared twice: short" in violations
    assert "duplicate id: c1" in violations
    assert any("conclusion/outcome mismatch" in v for v in violations)
    assert any("premise outside facts" in v for v in violations)


def test_invalid_side_is_reported_once():
    document = {
        "factors": [
            {"name": "short", "side": "plantiff"},
            {"name": "job", "side": "defendant"},
        ],
        "cases": [
            {
                "id": "c1",
                "facts": ["short", "job"],
                "rule": {"premise": ["short"], "conclusion": "plaintiff"},
                "outcome": "plaintiff",
            }
        ],
    }
    with pytest.raises(CaseBaseValidationError) as excinfo:
        validate_case_base(document)
    assert excinfo.value.violations == ["factors[0]: invalid side 'plantiff'"]


def test_malformed_json(fixtures_dir):
    with pytest.raises(CaseBaseValidationError, match="malformed JSON"):
        load_case_base(fixtures_dir / "malformed.json")


def test_deeply_nested_json(tmp_path):
    path = tmp_path / "deep.json"
    path.write_text("[" * 100000, encoding="utf-8")
    with pytest.raises(CaseBaseValidationError, match="malformed JSON"):
        load_case_base(path)


def test_missing_file_is_an_os_error(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_case_base(tmp_path / "absent.json")


def test_invalid_utf8(tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"factors": [{"name": "\xe9t\xe9", "side": "plaintiff"}]}')
    with pytest.raises(CaseBaseValidationError, match="not valid UTF-8"):
        load_case_base(path)


@pytest.mark.parametrize(
    "document, fragment",
    [
        ([], "expected a JSON object"),
        ({"factors": {}, "cases": []}, "factors: expected an array"),
        ({"factors": [], "cases": {}}, "cases: expected an array"),
        ({"factors": [{"name": "a", "side": "judge"}]}, "invalid side 'judge'"),
        ({"factors": [{"name": "", "side": "plaintiff"}]}, "non-empty string"),
        ({"factors": [], "cases": [], "extra": 1}, "unexpected key 'extra'"),
        ({"factors": [], "cases": [{"facts": []}]}, "case id must be a non-empty string"),
        (
            {"factors": [], "cases": [{"id": "c1", "facts": "a", "outcome": "plaintiff"}]},
            "expected an array of factor names",
        ),
        (
            {"factors": [], "cases": [{"id": "c1", "facts": [], "outcome": "plaintiff"}]},
            "rule must be an object",
        ),
    ],
)
def test_schema_violations(document, fragment):
    with pytest.raises(CaseBaseValidationError) as excinfo:
        validate_case_base(document)
    assert any(fragment in v for v in excinfo.value.violations)


def test_empty_document_is_an_empty_case_base():
    case_base = validate_case_base({})
    assert len(case_base) == 0
    assert len(case_base.universe) == 0


def test_document_arrays_are_sorted(gamma1):
    document = case_base_to_document(gamma1)
    assert [f["name"] for f in document["factors"]] == ["bank", "house", "job", "short"]
    assert document["cases"][1] == {
        "id": "c2",
        "facts": ["bank", "job", "short"],
        "rule": {"premise": ["job"], "conclusion": "defendant"},
        "outcome": "defendant",
    }


def test_dumps_is_stable(gamma1):
    text = dumps_case_base(gamma1)
    assert text.endswith("}\n")
    assert dumps_case_base(parse_case_base(text)) == text
    assert json.loads(text) == case_base_to_document(gamma1)


def test_dump_and_load(tmp_path, gamma1):
    path = tmp_path / "gamma1.json"
    dump_case_base(gamma1, path)
    assert load_case_base(path) == gamma1


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_random_case_bases(seed):
    rng = random.Random(seed)
    case_base = random_case_base(rng, random_universe(rng, 6), 5)
    parsed = parse_case_base(dumps_case_base(case_base))
    assert parsed == case_base
    assert dumps_case_base(parsed) == dumps_case_base(case_base)
