#!/usr/bin/env python3
"""
Derivation-state arguments over a case base.

For a queried fact situation X, every sub-situation χ ⊆ X is argued from each
maximal sub-base of Γ that is conclusive for χ. An argument attacks another
when it flips the derivation state using strictly more knowledge, and no
argument with its own state sits strictly in between.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .aa import AAFramework, GroundedLabelling, grounded_labelling, is_well_founded
from .core import (
    DEFAULT_UNIVERSE_CAP,
    SIDES,
    Case,
    CaseBase,
    FactSituation,
    Side,
    cases_prefer,
    format_names,
    side_projection,
)
from .errors import CapExceededError, InternalConsistencyError, UnknownArgumentError

logger = logging.getLogger(__name__)

DEFAULT_KNOWLEDGE_CAP = DEFAULT_UNIVERSE_CAP

ArgumentKey = Tuple[Tuple[str, ...], str, Tuple[str, ...]]


def state_of_cases(cases: Iterable[Case], chi: FactSituation) -> Optional[Side]:
    """derivation_state over an already validated collection of cases."""
    cases = tuple(cases)
    for side in SIDES:
        own = side_projection(chi, side)
        other = side_projection(chi, side.opposite)
        if cases_prefer(cases, other, own) and not cases_prefer(cases, own, other):
            return side
    return None


def derivation_state(
    case_base: CaseBase, case_ids: Iterable[str], chi: FactSituation
) -> Optional[Side]:
    """
    The side the sub-base ``case_ids`` derives for ``chi``, if exactly one.

    Raises:
        UnknownCaseError: if an id is not in the case base
        UnknownFactorError: if ``chi`` mentions an undeclared factor
    """
    chi = case_base.situation(chi.members)
    return state_of_cases(case_base.restrict(case_ids), chi)


def is_conclusive(
    case_base: CaseBase, case_ids: Iterable[str], chi: FactSituation
) -> bool:
    return derivation_state(case_base, case_ids, chi) is not None


def maximal_subbases_by_state(
    case_base: CaseBase, chi: FactSituation
) -> Dict[Side, FrozenSet[str]]:
    """
    The maximal conclusive sub-base for each state that has one.

    A sub-base is conclusive for s exactly when it holds a witness of
    χ^s̄ < χ^s and no witness of the reverse, so the largest candidate drops
    the reverse witnesses and keeps everything else.
    """
    result: Dict[Side, FrozenSet[str]] = {}
    for side in SIDES:
        own = side_projection(chi, side)
        other = side_projection(chi, side.opposite)
        kept = [c for c in case_base if not cases_prefer((c,), own, other)]
        if cases_prefer(kept, other, own):
            result[side] = frozenset(c.id for c in kept)
    return result


def max_conclusive_subbases(
    case_base: CaseBase, chi: FactSituation
) -> FrozenSet[FrozenSet[str]]:
    chi = case_base.situation(chi.members)
    return frozenset(maximal_subbases_by_state(case_base, chi).values())


@total_ordering
@dataclass(frozen=True, eq=True)
class DSArgument:
    """A derivation-state argument (χ, γ, s)."""

    knowledge: FactSituation
    sub_base: FrozenSet[str]
    state: Side

    def __post_init__(self) -> None:
        object.__setattr__(self, "sub_base", frozenset(self.sub_base))

    @property
    def key(self) -> ArgumentKey:
        return (
            tuple(sorted(self.knowledge.members)),
            self.state.value,
            tuple(sorted(self.sub_base)),
        )

    def __lt__(self, other: "DSArgument") -> bool:
        if not isinstance(other, DSArgument):
            return NotImplemented
        return self.key < other.key

    @property
    def label(self) -> str:
        return (
            f"({format_names(self.knowledge.members)}, "
            f"{format_names(self.sub_base)}, {self.state.value})"
        )

    def __str__(self) -> str:
        return self.label


def enumerate_ds_arguments(
    facts: FactSituation, case_base: CaseBase, cap: int = DEFAULT_KNOWLEDGE_CAP
) -> Tuple[DSArgument, ...]:
    """
    Every DS-argument for ``facts`` over ``case_base``, in canonical order.

    Raises:
        CapExceededError: if |X| is larger than ``cap``
    """
    facts = case_base.situation(facts.members)
    if len(facts) > cap:
        raise CapExceededError("knowledge", cap, len(facts))
    arguments = [
        DSArgument(chi, sub_base, state)
        for chi in facts.subsets()
        for state, sub_base in maximal_subbases_by_state(case_base, chi).items()
    ]
    logger.debug("%d DS-arguments over %d sub-situations", len(arguments), 2 ** len(facts))
    return tuple(sorted(arguments))


def _check_members(arguments: FrozenSet[DSArgument], *candidates: DSArgument) -> None:
    for candidate in candidates:
        if candidate not in arguments:
            raise UnknownArgumentError(candidate)


def _blocked(
    attacker: DSArgument, target: DSArgument, same_state: Iterable[FrozenSet[str]]
) -> bool:
    low, high = target.knowledge.members, attacker.knowledge.members
    return any(low < k < high for k in same_state)


def attacks(a: DSArgument, b: DSArgument, arguments: Iterable[DSArgument]) -> bool:
    """
    Whether ``a`` attacks ``b`` within the argument set ``arguments``.

    ``a`` must change the state, know strictly more, and be concise: no
    argument sharing a's state has knowledge strictly between the two.

    Raises:
        UnknownArgumentError: if ``a`` or ``b`` is not in ``arguments``
    """
    arguments = frozenset(arguments)
    _check_members(arguments, a, b)
    if a.state is b.state or not b.knowledge.members < a.knowledge.members:
        return False
    same_state = (x.knowledge.members for x in arguments if x.state is a.state)
    return not _blocked(a, b, same_state)


def _attack_relation(
    arguments: Tuple[DSArgument, ...]
) -> FrozenSet[Tuple[DSArgument, DSArgument]]:
    knowledge_by_state = {
        side: [a.knowledge.members for a in arguments if a.state is side]
        for side in SIDES
    }
    relation = set()
    for a in arguments:
        below = [k for k in knowledge_by_state[a.state] if k < a.knowledge.members]
        for b in arguments:
            if b.state is a.state or not b.knowledge.members < a.knowledge.members:
                continue
            if not _blocked(a, b, below):
                relation.add((a, b))
    return frozenset(relation)


@dataclass(frozen=True)
class DSAFramework:
    """The DSA-framework for a fact situation and a case base."""

    facts: FactSituation
    case_base: CaseBase
    arguments: Tuple[DSArgument, ...]
    attacks: FrozenSet[Tuple[DSArgument, DSArgument]]

    @cached_property
    def as_aa(self) -> AAFramework:
        return AAFramework(frozenset(self.arguments), self.attacks)

    @cached_property
    def labelling(self) -> GroundedLabelling:
        return grounded_labelling(self.as_aa)

    @property
    def grounded(self) -> FrozenSet[DSArgument]:
        return self.labelling.accepted

    def __contains__(self, argument: object) -> bool:
        return argument in self.as_aa.nodes

    def __len__(self) -> int:
        return len(self.arguments)

    def check(self, argument: DSArgument) -> DSArgument:
        if argument not in self:
            raise UnknownArgumentError(argument)
        return argument

    def attackers_of(self, argument: DSArgument) -> List[DSArgument]:
        """Attackers of ``argument`` in canonical order."""
        return sorted(self.as_aa.attackers[self.check(argument)])

    def targets_of(self, argument: DSArgument) -> List[DSArgument]:
        return sorted(self.as_aa.targets[self.check(argument)])

    def sorted_attacks(self) -> List[Tuple[DSArgument, DSArgument]]:
        return sorted(self.attacks, key=lambda pair: (pair[0].key, pair[1].key))

    def with_state(self, side: Side) -> List[DSArgument]:
        return [a for a in self.arguments if a.state is side]

    def full_knowledge(self, side: Side) -> List[DSArgument]:
        """Arguments (X, γ, ``side``) that use all of the queried facts."""
        return [
            a
            for a in self.with_state(side)
            if a.knowledge.members == self.facts.members
        ]

    def find(
        self, knowledge: Iterable[str], state: Side, sub_base: Optional[Iterable[str]] = None
    ) -> DSArgument:
        """Look up an argument by knowledge and state (and sub-base, if ambiguous)."""
        wanted = frozenset(knowledge)
        matches = [
            a
            for a in self.arguments
            if a.knowledge.members == wanted
            and a.state is state
            and (sub_base is None or a.sub_base == frozenset(sub_base))
        ]
        if not matches:
            raise UnknownArgumentError(f"({format_names(wanted)}, {state.value})")
        return matches[0]


def build_framework(
    facts: FactSituation, case_base: CaseBase, cap: int = DEFAULT_KNOWLEDGE_CAP
) -> DSAFramework:
    """
    Build the DSA-framework for ``facts``.

    Raises:
        CapExceededError: if |X| is larger than ``cap``
        InternalConsistencyError: if the attack graph has a cycle
    """
    facts = case_base.situation(facts.members)
    arguments = enumerate_ds_arguments(facts, case_base, cap)
    framework = DSAFramework(facts, case_base, arguments, _attack_relation(arguments))
    if not is_well_founded(framework.as_aa):
        raise InternalConsistencyError(
            f"attack graph for {facts} is not well-founded"
        )
    logger.debug(
        "framework for %s: %d arguments, %d attacks",
        facts,
        len(framework.arguments),
        len(framework.attacks),
    )
    return framework
