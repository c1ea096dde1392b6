#!/usr/bin/env python3
"""
Case-base documents.

Reads and writes the JSON case-base format:

    {"factors": [{"name": str, "side": "plaintiff"|"defendant"}, ...],
     "cases": [{"id": str, "facts": [str, ...],
                "rule": {"premise": [str, ...], "conclusion": side},
                "outcome": side}, ...]}

Validation collects every violation before failing, so a broken file is
reported in one pass.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .core import Case, CaseBase, Factor, FactorUniverse, ReasonSet, Rule, Side
from .errors import CaseBaseValidationError

logger = logging.getLogger(__name__)

SIDE_VALUES = {side.value: side for side in Side}


def _parse_side(value: Any, where: str, violations: List[str]) -> Optional[Side]:
    side = SIDE_VALUES.get(value) if isinstance(value, str) else None
    if side is None:
        violations.append(f"{where}: invalid side {value!r}")
    return side


def _parse_names(value: Any, where: str, violations: List[str]) -> Optional[List[str]]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        violations.append(f"{where}: expected an array of factor names")
        return None
    return value


def _parse_universe(raw: Any, violations: List[str]) -> Dict[str, Optional[Side]]:
    """Declared factors by name; a factor with an invalid side maps to None."""
    if not isinstance(raw, list):
        violations.append("factors: expected an array")
        return {}
    sides: Dict[str, Optional[Side]] = {}
    for index, entry in enumerate(raw):
        where = f"factors[{index}]"
        if not isinstance(entry, dict):
            violations.append(f"{where}: expected an object")
            continue
        name = entry.get("name")
        side = _parse_side(entry.get("side"), where, violations)
        if not isinstance(name, str) or not name:
            violations.append(f"{where}: factor name must be a non-empty string")
            continue
        if name in sides:
            violations.append(f"factor declared twice: {name}")
            continue
        sides[name] = side
    return sides


def _check_case(
    entry: Any,
    index: int,
    sides: Dict[str, Optional[Side]],
    seen_ids: set,
    violations: List[str],
) -> Optional[Dict[str, Any]]:
    where = f"cases[{index}]"
    if not isinstance(entry, dict):
        violations.append(f"{where}: expected an object")
        return None
    case_id = entry.get("id")
    if not isinstance(case_id, str) or not case_id:
        violations.append(f"{where}: case id must be a non-empty string")
        return None
    where = f"case {case_id}"
    if case_id in seen_ids:
        violations.append(f"duplicate id: {case_id}")
    seen_ids.add(case_id)

    before = len(violations)
    facts = _parse_names(entry.get("facts"), f"{where} facts", violations)
    rule = entry.get("rule")
    premise = conclusion = None
    if not isinstance(rule, dict):
        violations.append(f"{where}: rule must be an object")
    else:
        premise = _parse_names(rule.get("premise"), f"{where} premise", violations)
        conclusion = _parse_side(rule.get("conclusion"), f"{where} conclusion", violations)
    outcome = _parse_side(entry.get("outcome"), f"{where} outcome", violations)

    for label, names in (("facts", facts), ("premise", premise)):
        for name in sorted(set(names or ())):
            if name not in sides:
                violations.append(f"{where}: unknown factor in {label}: {name}")
    if conclusion is not None and outcome is not None and conclusion is not outcome:
        violations.append(
            f"{where}: conclusion/outcome mismatch ({conclusion} vs {outcome})"
        )
    if premise is not None and conclusion is not None:
        for name in sorted(set(premise)):
            if sides.get(name) not in (None, conclusion):
                violations.append(
                    f"{where}: premise side mismatch: {name} is pro-{sides[name]}, "
                    f"conclusion is {conclusion}"
                )
    if premise is not None and facts is not None:
        outside = sorted(set(premise) - set(facts))
        if outside:
            violations.append(f"{where}: premise outside facts: {', '.join(outside)}")

    if len(violations) > before:
        return None
    return {
        "id": case_id,
        "facts": facts,
        "premise": premise,
        "outcome": outcome,
    }


def validate_case_base(raw: Any) -> CaseBase:
    """
    Turn a parsed case-base document into a CaseBase.

    Args:
        raw: The decoded JSON document

    Returns:
        The validated CaseBase

    Raises:
        CaseBaseValidationError: with the complete list of violations
    """
    violations: List[str] = []
    if not isinstance(raw, dict):
        raise CaseBaseValidationError(["document: expected a JSON object"])
    for key in sorted(set(raw) - {"factors", "cases"}):
        violations.append(f"document: unexpected key {key!r}")

    sides = _parse_universe(raw.get("factors", []), violations)
    raw_cases = raw.get("cases", [])
    checked = []
    if not isinstance(raw_cases, list):
        violations.append("cases: expected an array")
    else:
        seen_ids: set = set()
        for index, entry in enumerate(raw_cases):
            case = _check_case(entry, index, sides, seen_ids, violations)
            if case is not None:
                checked.append(case)
    if violations:
        raise CaseBaseValidationError(violations)

    universe = FactorUniverse(tuple(Factor(name, side) for name, side in sides.items()))
    cases = tuple(
        Case(
            c["id"],
            universe.situation(c["facts"]),
            Rule(ReasonSet(frozenset(c["premise"]), c["outcome"]), c["outcome"]),
            c["outcome"],
        )
        for c in checked
    )
    case_base = CaseBase(universe, cases)
    logger.debug(
        "validated case base: %d cases over %d factors", len(case_base), len(universe)
    )
    return case_base


def parse_case_base(text: str) -> CaseBase:
    """Parse a JSON string; malformed JSON is a validation failure."""
    try:
        raw = json.loads(text)
    except ValueError as e:
        raise CaseBaseValidationError([f"malformed JSON: {e}"]) from e
    except RecursionError as e:
        raise CaseBaseValidationError(["malformed JSON: nested too deeply"]) from e
    return validate_case_base(raw)


def load_case_base(path: Union[str, Path]) -> CaseBase:
    """
    Read and validate a case-base file.

    OSError (missing file, permissions) propagates unchanged; undecodable bytes
    and malformed JSON surface as CaseBaseValidationError.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise CaseBaseValidationError([f"{path.name}: not valid UTF-8"]) from e
    return parse_case_base(text)


def case_base_to_document(case_base: CaseBase) -> Dict[str, Any]:
    """The JSON-ready document for a case base, every array sorted."""
    return {
        "factors": [
            {"name": factor.name, "side": factor.side.value}
            for factor in case_base.universe.factors
        ],
        "cases": [
            {
                "id": case.id,
                "facts": sorted(case.facts.members),
                "rule": {
                    "premise": sorted(case.premise),
                    "conclusion": case.rule.conclusion.value,
                },
                "outcome": case.outcome.value,
            }
            for case in case_base
        ],
    }


def dumps_case_base(case_base: CaseBase) -> str:
    return json.dumps(case_base_to_document(case_base), indent=2, ensure_ascii=False) + "\n"


def dump_case_base(case_base: CaseBase, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_case_base(case_base), encoding="utf-8")
