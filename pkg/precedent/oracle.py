#!/usr/bin/env python3
"""
Brute-force oracles and the cross-check harness.

The oracles recompute from definitions what the library computes by shortcut.
``run_oracle_checks`` compares both on a given instance and on random
sub-instances, then shrinks the first disagreement it finds.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

from . import reason
from .core import (
    SIDES,
    Case,
    CaseBase,
    Factor,
    FactorUniverse,
    FactSituation,
    InconsistencyPair,
    ReasonSet,
    Side,
    base_prefers,
    inconsistencies,
    powerset,
)
from .dsa import max_conclusive_subbases, state_of_cases
from .errors import CapExceededError, InternalConsistencyError
from .explain import explain_decision
from .loader import case_base_to_document

logger = logging.getLogger(__name__)

ORACLE_UNIVERSE_CAP = reason.ORACLE_UNIVERSE_CAP
SUBBASE_ORACLE_LIMIT = 10


def brute_force_inconsistencies(
    case_base: CaseBase, cap: int = ORACLE_UNIVERSE_CAP
) -> FrozenSet[InconsistencyPair]:
    """inc(Γ) by comparing every plaintiff set with every defendant set."""
    universe = case_base.universe
    if len(universe) > cap:
        raise CapExceededError("oracle universe", cap, len(universe))
    found = set()
    for u in powerset(universe.names(Side.PLAINTIFF)):
        for v in powerset(universe.names(Side.DEFENDANT)):
            pro_plaintiff = ReasonSet(u, Side.PLAINTIFF)
            pro_defendant = ReasonSet(v, Side.DEFENDANT)
            if base_prefers(case_base, pro_plaintiff, pro_defendant) and base_prefers(
                case_base, pro_defendant, pro_plaintiff
            ):
                found.add(InconsistencyPair(pro_plaintiff, pro_defendant))
    return frozenset(found)


def brute_force_subbases(
    case_base: CaseBase, chi: FactSituation, limit: int = SUBBASE_ORACLE_LIMIT
) -> FrozenSet[FrozenSet[str]]:
    """⊆-maximal conclusive sub-bases by trying every subset of the case base."""
    if len(case_base) > limit:
        raise CapExceededError("oracle cases", limit, len(case_base))
    chi = case_base.situation(chi.members)
    cases = case_base.cases
    conclusive = [
        frozenset(c.id for c in chosen)
        for size in range(len(cases) + 1)
        for chosen in combinations(cases, size)
        if state_of_cases(chosen, chi) is not None
    ]
    return frozenset(
        ids for ids in conclusive if not any(ids < other for other in conclusive)
    )


# --- Random instances ---
def random_universe(rng: random.Random, max_factors: int = 6) -> FactorUniverse:
    size = rng.randint(1, max_factors)
    factors = []
    for index in range(size):
        side = rng.choice(SIDES)
        prefix = "p" if side is Side.PLAINTIFF else "d"
        factors.append(Factor(f"{prefix}{index}", side))
    return FactorUniverse(tuple(factors))


def _random_subset(rng: random.Random, names: FrozenSet[str]) -> FrozenSet[str]:
    return frozenset(name for name in sorted(names) if rng.random() < 0.5)


def random_case(rng: random.Random, universe: FactorUniverse, case_id: str) -> Case:
    facts = _random_subset(rng, universe.names())
    outcome = rng.choice(SIDES)
    premise = _random_subset(rng, facts & universe.names(outcome))
    return Case.decided(case_id, universe, facts, premise, outcome)


def random_case_base(
    rng: random.Random, universe: FactorUniverse, max_cases: int = 4
) -> CaseBase:
    count = rng.randint(0, max_cases)
    return CaseBase(
        universe,
        tuple(random_case(rng, universe, f"c{index + 1}") for index in range(count)),
    )


def random_instance(
    rng: random.Random, max_factors: int = 6, max_cases: int = 4
) -> Tuple[CaseBase, FactSituation]:
    """A random case base and a random query situation over the same universe."""
    universe = random_universe(rng, max_factors)
    case_base = random_case_base(rng, universe, max_cases)
    return case_base, universe.situation(_random_subset(rng, universe.names()))


def random_sub_instance(
    rng: random.Random, case_base: CaseBase, max_cases: int = 6
) -> Tuple[CaseBase, FactSituation]:
    """A random sub-case-base and a random situation over the same universe."""
    ids = sorted(case_base.ids)
    rng.shuffle(ids)
    kept = ids[: rng.randint(0, min(max_cases, len(ids)))]
    facts = case_base.universe.situation(_random_subset(rng, case_base.universe.names()))
    return case_base.restrict(kept), facts


# --- Checks ---
Check = Callable[[CaseBase, FactSituation, int], Optional[str]]


def check_permitted(
    case_base: CaseBase, facts: FactSituation, cap: int = ORACLE_UNIVERSE_CAP
) -> Optional[str]:
    for side in SIDES:
        fast = reason.permitted(case_base, facts, side)
        slow = reason.permitted_oracle(case_base, facts, side, cap)
        if fast != slow:
            return f"permitted({side}) = {fast}, definition says {slow}"
    return None


def check_trichotomy(
    case_base: CaseBase, facts: FactSituation, cap: int = ORACLE_UNIVERSE_CAP
) -> Optional[str]:
    allowed = [side for side in SIDES if reason.permitted(case_base, facts, side)]
    if not allowed:
        return "neither side is permitted"
    outcome = reason.decide(case_base, facts)
    expected = allowed[0] if len(allowed) == 1 else None
    if outcome.side is not expected:
        return f"decide says {outcome.label}, permitted sides are {allowed}"
    return None


def check_inconsistencies(
    case_base: CaseBase, facts: FactSituation, cap: int = ORACLE_UNIVERSE_CAP
) -> Optional[str]:
    fast = inconsistencies(case_base, cap)
    slow = brute_force_inconsistencies(case_base, cap)
    if fast != slow:
        return f"inc has {len(fast)} pairs, exhaustive search finds {len(slow)}"
    return None


def check_subbases(
    case_base: CaseBase, facts: FactSituation, cap: int = ORACLE_UNIVERSE_CAP
) -> Optional[str]:
    for chi in facts.subsets():
        fast = max_conclusive_subbases(case_base, chi)
        slow = brute_force_subbases(case_base, chi)
        if fast != slow:
            return f"maximal sub-bases differ for {chi}"
    return None


def check_explanations(
    case_base: CaseBase, facts: FactSituation, cap: int = ORACLE_UNIVERSE_CAP
) -> Optional[str]:
    try:
        explain_decision(facts, case_base, cap)
    except InternalConsistencyError as e:
        return str(e)
    return None


CHECKS: Dict[str, Check] = {
    "permitted": check_permitted,
    "trichotomy": check_trichotomy,
    "inconsistencies": check_inconsistencies,
    "subbases": check_subbases,
    "theorems": check_explanations,
}


@dataclass
class Mismatch:
    check: str
    detail: str
    case_base: CaseBase
    facts: FactSituation


@dataclass
class OracleReport:
    instances: int = 0
    checks: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    counterexample: Optional[Mismatch] = None

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_document(self) -> Dict[str, Any]:
        counterexample = None
        if self.counterexample is not None:
            counterexample = {
                "check": self.counterexample.check,
                "detail": self.counterexample.detail,
                "facts": sorted(self.counterexample.facts.members),
                "case_base": case_base_to_document(self.counterexample.case_base),
            }
        return {
            "instances": self.instances,
            "checks": self.checks,
            "skipped": sorted(set(self.skipped)),
            "mismatches": [
                {
                    "check": m.check,
                    "detail": m.detail,
                    "facts": sorted(m.facts.members),
                    "cases": sorted(m.case_base.ids),
                }
                for m in self.mismatches
            ],
            "counterexample": counterexample,
        }


def _run(
    name: str, case_base: CaseBase, facts: FactSituation, cap: int
) -> Optional[str]:
    try:
        return CHECKS[name](case_base, facts, cap)
    except InternalConsistencyError as e:
        return str(e)


def minimize(mismatch: Mismatch, cap: int = ORACLE_UNIVERSE_CAP) -> Mismatch:
    """
    Greedily shrink a counterexample while the same check keeps failing.

    Cases are dropped first, then query factors.
    """
    current = mismatch
    changed = True
    while changed:
        changed = False
        for case_id in sorted(current.case_base.ids):
            smaller = current.case_base.restrict(current.case_base.ids - {case_id})
            detail = _run(current.check, smaller, current.facts, cap)
            if detail is not None:
                current = Mismatch(current.check, detail, smaller, current.facts)
                changed = True
                break
        if changed:
            continue
        for name in sorted(current.facts.members):
            smaller_facts = current.case_base.situation(current.facts.members - {name})
            detail = _run(current.check, current.case_base, smaller_facts, cap)
            if detail is not None:
                current = Mismatch(current.check, detail, current.case_base, smaller_facts)
                changed = True
                break
    return current


def _check_instance(
    report: OracleReport, case_base: CaseBase, facts: FactSituation, cap: int
) -> None:
    report.instances += 1
    for name in CHECKS:
        if name == "subbases" and len(case_base) > SUBBASE_ORACLE_LIMIT:
            report.skipped.append(f"subbases on {len(case_base)} cases")
            continue
        report.checks += 1
        detail = _run(name, case_base, facts, cap)
        if detail is not None:
            report.mismatches.append(Mismatch(name, detail, case_base, facts))


def run_oracle_checks(
    case_base: CaseBase,
    facts: FactSituation,
    trials: int = 200,
    seed: int = 0,
    cap: int = ORACLE_UNIVERSE_CAP,
) -> OracleReport:
    """
    Cross-check the library against its oracles.

    Runs every check on (Γ, X) and on ``trials`` random sub-instances drawn
    with ``random.Random(seed)``, then minimizes the first mismatch.

    Raises:
        CapExceededError: if the universe is larger than ``cap``
    """
    size = len(case_base.universe)
    if size > cap:
        raise CapExceededError("oracle universe", cap, size)
    facts = case_base.situation(facts.members)

    report = OracleReport()
    _check_instance(report, case_base, facts, cap)
    rng = random.Random(seed)
    for _ in range(trials):
        sub_base, sub_facts = random_sub_instance(rng, case_base)
        _check_instance(report, sub_base, sub_facts, cap)

    if report.mismatches:
        report.counterexample = minimize(report.mismatches[0], cap)
    logger.debug(
        "oracle: %d instances, %d checks, %d mismatches",
        report.instances,
        report.checks,
        len(report.mismatches),
    )
    return report
