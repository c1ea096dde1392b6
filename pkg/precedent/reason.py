#!/usr/bin/env python3
"""
The generalized reason model: which sides a fact situation may be decided for.

A decision for side s is permitted when some rule for s can be added to the
case base without creating new inconsistencies. The strongest candidate rule is
X^s -> s, and it creates a new inconsistency exactly when X^s is already ranked
below X^s̄ and not the other way round, so the check needs two priority lookups
and no enumeration.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Optional, Tuple

from .core import (
    DEFAULT_UNIVERSE_CAP,
    SIDES,
    Case,
    CaseBase,
    FactSituation,
    InconsistencyPair,
    ReasonSet,
    Rule,
    Side,
    base_prefers,
    inconsistencies,
    powerset,
    priority_witnesses,
    side_projection,
)
from .errors import CapExceededError

logger = logging.getLogger(__name__)

ORACLE_UNIVERSE_CAP = 8
QUERY_CASE_ID = "query"


class DecisionKind(str, Enum):
    BOTH_PERMITTED = "both_permitted"
    OBLIGATED = "obligated"


@dataclass(frozen=True)
class PriorityEvidence:
    """Whether ``weaker`` <_Γ ``stronger`` holds, with the witnessing cases."""

    weaker: ReasonSet
    stronger: ReasonSet
    witnesses: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return bool(self.witnesses)


@dataclass(frozen=True)
class DecisionOutcome:
    """
    The trichotomy: obligated for one side, or both sides permitted.

    ``evidence`` always holds both cross-side comparisons of the situation,
    plaintiff-favoring direction first.
    """

    kind: DecisionKind
    side: Optional[Side]
    evidence: Tuple[PriorityEvidence, PriorityEvidence]

    @property
    def label(self) -> str:
        if self.side is None:
            return "both permitted"
        return f"obligated {self.side.value}"

    def permits(self, side: Side) -> bool:
        return self.side is None or self.side is side

    def supporting(self) -> Optional[PriorityEvidence]:
        """The comparison that forces an obligation, if any."""
        if self.side is None:
            return None
        return next(e for e in self.evidence if e.stronger.side is self.side)


def _check_situation(case_base: CaseBase, facts: FactSituation) -> FactSituation:
    return case_base.universe.situation(facts.members)


def permitted(case_base: CaseBase, facts: FactSituation, side: Side) -> bool:
    """
    Whether the court may decide ``facts`` for ``side``.

    Raises:
        UnknownFactorError: if ``facts`` mentions an undeclared factor
    """
    facts = _check_situation(case_base, facts)
    own = side_projection(facts, side)
    other = side_projection(facts, side.opposite)
    outranked = base_prefers(case_base, own, other)
    return not outranked or base_prefers(case_base, other, own)


def obligated(case_base: CaseBase, facts: FactSituation, side: Side) -> bool:
    return permitted(case_base, facts, side) and not permitted(
        case_base, facts, side.opposite
    )


def comparison(
    case_base: CaseBase, facts: FactSituation, stronger_side: Side
) -> PriorityEvidence:
    """X^s̄ <_Γ X^s for s = ``stronger_side``, with its witnesses."""
    weaker = side_projection(facts, stronger_side.opposite)
    stronger = side_projection(facts, stronger_side)
    return PriorityEvidence(
        weaker, stronger, priority_witnesses(case_base, weaker, stronger)
    )


def decide(case_base: CaseBase, facts: FactSituation) -> DecisionOutcome:
    """Decide ``facts`` against the case base; never returns "neither"."""
    facts = _check_situation(case_base, facts)
    evidence = (
        comparison(case_base, facts, Side.PLAINTIFF),
        comparison(case_base, facts, Side.DEFENDANT),
    )
    allowed = [side for side in SIDES if permitted(case_base, facts, side)]
    if len(allowed) == 1:
        outcome = DecisionOutcome(DecisionKind.OBLIGATED, allowed[0], evidence)
    else:
        outcome = DecisionOutcome(DecisionKind.BOTH_PERMITTED, None, evidence)
    logger.debug("decide %s: %s", facts, outcome.label)
    return outcome


def _fresh_case_id(case_base: CaseBase) -> str:
    case_id = QUERY_CASE_ID
    suffix = 0
    while case_id in case_base.ids:
        suffix += 1
        case_id = f"{QUERY_CASE_ID}-{suffix}"
    return case_id


def hypothetical_case(
    case_base: CaseBase,
    facts: FactSituation,
    side: Side,
    premise: Optional[Iterable[str]] = None,
) -> Case:
    """
    The case ⟨X, U -> s, s⟩ deciding ``facts`` for ``side``.

    ``premise`` defaults to X^s, the strongest rule available.
    """
    facts = _check_situation(case_base, facts)
    members = (
        side_projection(facts, side).members if premise is None else frozenset(premise)
    )
    rule = Rule(case_base.universe.reason_set(members, side), side)
    return Case(_fresh_case_id(case_base), facts, rule, side)


def new_inconsistencies(
    case_base: CaseBase,
    facts: FactSituation,
    side: Side,
    cap: int = DEFAULT_UNIVERSE_CAP,
) -> FrozenSet[InconsistencyPair]:
    """Inconsistencies a decision for ``side`` with rule X^s -> s would add."""
    before = inconsistencies(case_base, cap)
    after = inconsistencies(
        case_base.with_case(hypothetical_case(case_base, facts, side)), cap
    )
    return after - before


def permitted_oracle(
    case_base: CaseBase,
    facts: FactSituation,
    side: Side,
    cap: int = ORACLE_UNIVERSE_CAP,
) -> bool:
    """
    ``permitted`` straight from its definition, for cross-checking.

    Tries every rule U -> s with U ⊆ X^s and asks whether the extended case
    base has no inconsistency the original lacks.

    Raises:
        CapExceededError: if the universe is larger than ``cap``
    """
    size = len(case_base.universe)
    if size > cap:
        raise CapExceededError("oracle universe", cap, size)
    facts = _check_situation(case_base, facts)
    before = inconsistencies(case_base, cap)
    for premise in powerset(side_projection(facts, side).members):
        extended = case_base.with_case(
            hypothetical_case(case_base, facts, side, premise)
        )
        if inconsistencies(extended, cap) <= before:
            return True
    return False
