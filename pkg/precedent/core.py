#!/usr/bin/env python3
"""
Domain types of the reason model and the priorities they induce.

A case base decides fact situations over a declared, finite factor universe.
Each decided case induces an a fortiori priority between reason sets of the two
sides; a case base induces the union of those priorities. Cross-side pairs that
are prioritized both ways are the inconsistencies of the case base.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import chain, combinations
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Tuple,
)

from .errors import (
    CapExceededError,
    CaseBaseValidationError,
    UnknownCaseError,
    UnknownFactorError,
)

logger = logging.getLogger(__name__)

DEFAULT_UNIVERSE_CAP = 16


class Side(str, Enum):
    """One of the two parties to a dispute."""

    PLAINTIFF = "plaintiff"
    DEFENDANT = "defendant"

    @property
    def opposite(self) -> "Side":
        return Side.DEFENDANT if self is Side.PLAINTIFF else Side.PLAINTIFF

    @property
    def symbol(self) -> str:
        return "π" if self is Side.PLAINTIFF else "δ"

    def __str__(self) -> str:
        return self.value


SIDES: Tuple[Side, Side] = (Side.PLAINTIFF, Side.DEFENDANT)


def format_names(names: Iterable[str]) -> str:
    """Render a set of names as ``{a, b}`` in lexicographic order."""
    return "{" + ", ".join(sorted(names)) + "}"


def powerset(items: Iterable[str]) -> Iterator[FrozenSet[str]]:
    """Yield every subset of ``items``, smallest first, in a stable order."""
    ordered = sorted(set(items))
    return (
        frozenset(combo)
        for combo in chain.from_iterable(
            combinations(ordered, size) for size in range(len(ordered) + 1)
        )
    )


def interval(lower: FrozenSet[str], upper: FrozenSet[str]) -> Iterator[FrozenSet[str]]:
    """Yield every set S with lower ⊆ S ⊆ upper (nothing if lower ⊄ upper)."""
    if not lower <= upper:
        return iter(())
    return (lower | extra for extra in powerset(upper - lower))


@dataclass(frozen=True)
class Factor:
    name: str
    side: Side


@dataclass(frozen=True)
class FactorUniverse:
    """The declared factor domain, partitioned into the two sides."""

    factors: Tuple[Factor, ...]

    def __post_init__(self) -> None:
        violations = []
        seen: Dict[str, Side] = {}
        for factor in self.factors:
            if not factor.name:
                violations.append("factor with empty name")
            elif factor.name in seen:
                violations.append(f"factor declared twice: {factor.name}")
            seen[factor.name] = factor.side
        if violations:
            raise CaseBaseValidationError(violations)
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors, key=lambda f: f.name))
        )

    @classmethod
    def of(
        cls, plaintiff: Iterable[str] = (), defendant: Iterable[str] = ()
    ) -> "FactorUniverse":
        """Build a universe from the names on each side."""
        return cls(
            tuple(Factor(name, Side.PLAINTIFF) for name in plaintiff)
            + tuple(Factor(name, Side.DEFENDANT) for name in defendant)
        )

    @cached_property
    def _sides(self) -> Dict[str, Side]:
        return {factor.name: factor.side for factor in self.factors}

    @cached_property
    def _by_side(self) -> Dict[Side, FrozenSet[str]]:
        return {
            side: frozenset(f.name for f in self.factors if f.side is side)
            for side in SIDES
        }

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, name: object) -> bool:
        return name in self._sides

    def side_of(self, name: str) -> Side:
        try:
            return self._sides[name]
        except KeyError:
            raise UnknownFactorError([name]) from None

    def names(self, side: Optional[Side] = None) -> FrozenSet[str]:
        if side is None:
            return frozenset(self._sides)
        return self._by_side[side]

    def check(self, names: Iterable[str]) -> FrozenSet[str]:
        """Return ``names`` as a frozenset, rejecting undeclared factors."""
        members = frozenset(names)
        unknown = members - self._sides.keys()
        if unknown:
            raise UnknownFactorError(unknown)
        return members

    def situation(self, names: Iterable[str]) -> "FactSituation":
        return FactSituation(frozenset(names), self)

    def reason_set(self, names: Iterable[str], side: Side) -> "ReasonSet":
        """Build a reason set, checking every member favors ``side``."""
        members = self.check(names)
        wrong = sorted(name for name in members if self._sides[name] is not side)
        if wrong:
            raise CaseBaseValidationError(
                [f"premise side mismatch: {name} is not pro-{side}" for name in wrong]
            )
        return ReasonSet(members, side)


@dataclass(frozen=True)
class FactSituation:
    """A finite set of declared factors."""

    members: FrozenSet[str]
    universe: FactorUniverse = field(compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", self.universe.check(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))

    def __str__(self) -> str:
        return format_names(self.members)

    def project(self, side: Side) -> "ReasonSet":
        return side_projection(self, side)

    def subsets(self) -> Iterator["FactSituation"]:
        """Every sub-situation χ ⊆ X, smallest first."""
        return (FactSituation(chi, self.universe) for chi in powerset(self.members))


@dataclass(frozen=True)
class ReasonSet:
    """A set of factors that all favor ``side``."""

    members: FrozenSet[str]
    side: Side

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))

    def __str__(self) -> str:
        return format_names(self.members)


@dataclass(frozen=True)
class Rule:
    premise: ReasonSet
    conclusion: Side

    def __post_init__(self) -> None:
        if self.premise.side is not self.conclusion:
            raise CaseBaseValidationError(
                [
                    f"premise side mismatch: premise is pro-{self.premise.side}, "
                    f"conclusion is {self.conclusion}"
                ]
            )

    def __str__(self) -> str:
        return f"{self.premise} -> {self.conclusion}"


@dataclass(frozen=True)
class Case:
    """A decided precedent ⟨facts, rule, outcome⟩."""

    id: str
    facts: FactSituation
    rule: Rule
    outcome: Side

    def __post_init__(self) -> None:
        if self.rule.conclusion is not self.outcome:
            raise CaseBaseValidationError(
                [
                    f"case {self.id}: conclusion/outcome mismatch "
                    f"({self.rule.conclusion} vs {self.outcome})"
                ]
            )
        outside = self.rule.premise.members - self.facts.members
        if outside:
            raise CaseBaseValidationError(
                [f"case {self.id}: premise outside facts: {format_names(outside)}"]
            )

    @classmethod
    def decided(
        cls,
        case_id: str,
        universe: FactorUniverse,
        facts: Iterable[str],
        premise: Iterable[str],
        outcome: Side,
    ) -> "Case":
        """Convenience constructor from plain factor names."""
        return cls(
            case_id,
            universe.situation(facts),
            Rule(universe.reason_set(premise, outcome), outcome),
            outcome,
        )

    @property
    def premise(self) -> FrozenSet[str]:
        return self.rule.premise.members

    @cached_property
    def losing_facts(self) -> FrozenSet[str]:
        """facts(c) projected to the side the case was decided against."""
        return self.facts.project(self.outcome.opposite).members


@dataclass(frozen=True)
class CaseBase:
    """A finite set of cases over one universe, kept sorted by case id."""

    universe: FactorUniverse
    cases: Tuple[Case, ...] = ()

    def __post_init__(self) -> None:
        violations = []
        seen = set()
        for case in self.cases:
            if case.id in seen:
                violations.append(f"duplicate id: {case.id}")
            seen.add(case.id)
            undeclared = case.facts.members - self.universe.names()
            if undeclared:
                violations.append(
                    f"case {case.id}: unknown factor: {format_names(undeclared)}"
                )
        if violations:
            raise CaseBaseValidationError(violations)
        object.__setattr__(
            self, "cases", tuple(sorted(self.cases, key=lambda c: c.id))
        )

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self) -> Iterator[Case]:
        return iter(self.cases)

    @cached_property
    def _index(self) -> Dict[str, Case]:
        return {case.id: case for case in self.cases}

    @property
    def ids(self) -> FrozenSet[str]:
        return frozenset(self._index)

    def get(self, case_id: str) -> Case:
        try:
            return self._index[case_id]
        except KeyError:
            raise UnknownCaseError([case_id]) from None

    def restrict(self, case_ids: Iterable[str]) -> "CaseBase":
        """The sub-base made of the given case ids."""
        wanted = frozenset(case_ids)
        unknown = wanted - self._index.keys()
        if unknown:
            raise UnknownCaseError(unknown)
        return CaseBase(
            self.universe, tuple(c for c in self.cases if c.id in wanted)
        )

    def with_case(self, case: Case) -> "CaseBase":
        return CaseBase(self.universe, self.cases + (case,))

    def situation(self, names: Iterable[str]) -> FactSituation:
        return self.universe.situation(names)


@dataclass(frozen=True)
class InconsistencyPair:
    """A cross-side pair U ⊥ V, stored with the plaintiff set first."""

    pro_plaintiff: ReasonSet
    pro_defendant: ReasonSet

    def __post_init__(self) -> None:
        if (
            self.pro_plaintiff.side is not Side.PLAINTIFF
            or self.pro_defendant.side is not Side.DEFENDANT
        ):
            raise ValueError("an inconsistency pairs a plaintiff and a defendant set")

    @property
    def sort_key(self) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        return (
            tuple(sorted(self.pro_plaintiff.members)),
            tuple(sorted(self.pro_defendant.members)),
        )

    def __str__(self) -> str:
        return f"({self.pro_plaintiff} , {self.pro_defendant})"


# --- Priorities ---
def side_projection(facts: FactSituation, side: Side) -> ReasonSet:
    """X^s: the pro-``side`` factors of a fact situation."""
    return ReasonSet(facts.members & facts.universe.names(side), side)


def _check_reason_sets(universe: FactorUniverse, *reason_sets: ReasonSet) -> None:
    for reason_set in reason_sets:
        universe.reason_set(reason_set.members, reason_set.side)


def _prefers(case: Case, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    if weaker.side is stronger.side:
        return weaker.members < stronger.members
    if stronger.side is not case.outcome:
        return False
    return weaker.members <= case.losing_facts and case.premise <= stronger.members


def case_prefers(case: Case, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    """
    Whether ``weaker`` <_c ``stronger`` under the a fortiori priority of a case.

    Cross-side pairs are only ordered toward the case's outcome: the losing-side
    set must be contained in the case's losing-side facts and the winning-side
    set must contain the rule premise. Same-side sets are ordered by strict
    inclusion.

    Raises:
        UnknownFactorError: if either set mentions an undeclared factor.
    """
    _check_reason_sets(case.facts.universe, weaker, stronger)
    return _prefers(case, weaker, stronger)


def priority_witnesses(
    case_base: CaseBase, weaker: ReasonSet, stronger: ReasonSet
) -> Tuple[str, ...]:
    """Ids of the cases c with ``weaker`` <_c ``stronger``, sorted."""
    _check_reason_sets(case_base.universe, weaker, stronger)
    return tuple(c.id for c in case_base if _prefers(c, weaker, stronger))


def base_prefers(case_base: CaseBase, weaker: ReasonSet, stronger: ReasonSet) -> bool:
    """Whether some case of the case base prefers ``stronger`` to ``weaker``."""
    _check_reason_sets(case_base.universe, weaker, stronger)
    return any(_prefers(c, weaker, stronger) for c in case_base)


def cases_prefer(
    cases: Iterable[Case], weaker: ReasonSet, stronger: ReasonSet
) -> bool:
    """Unchecked variant of base_prefers for callers that validated already."""
    return any(_prefers(c, weaker, stronger) for c in cases)


# --- Inconsistencies ---
def inconsistencies(
    case_base: CaseBase, cap: int = DEFAULT_UNIVERSE_CAP
) -> FrozenSet[InconsistencyPair]:
    """
    inc(Γ): all cross-side pairs prioritized in both directions.

    A plaintiff case c orders V below U when V ⊆ facts(c)^δ and premise(c) ⊆ U;
    a defendant case d orders U below V when U ⊆ facts(d)^π and premise(d) ⊆ V.
    Every inconsistency therefore lies in the product of two intervals for some
    pair (c, d), which is enumerated directly.

    Args:
        case_base: The case base Γ
        cap: Largest universe size accepted

    Returns:
        Frozen set of InconsistencyPair

    Raises:
        CapExceededError: if the universe is larger than ``cap``
    """
    size = len(case_base.universe)
    if size > cap:
        raise CapExceededError("universe", cap, size)

    plaintiff_cases = [c for c in case_base if c.outcome is Side.PLAINTIFF]
    defendant_cases = [c for c in case_base if c.outcome is Side.DEFENDANT]
    pairs = set()
    for c in plaintiff_cases:
        for d in defendant_cases:
            for u in interval(c.premise, d.losing_facts):
                for v in interval(d.premise, c.losing_facts):
                    pairs.add(
                        InconsistencyPair(
                            ReasonSet(u, Side.PLAINTIFF), ReasonSet(v, Side.DEFENDANT)
                        )
                    )
    logger.debug("inc over %d cases: %d pairs", len(case_base), len(pairs))
    return frozenset(pairs)


def sorted_inconsistencies(
    case_base: CaseBase, cap: int = DEFAULT_UNIVERSE_CAP
) -> List[InconsistencyPair]:
    return sorted(inconsistencies(case_base, cap), key=lambda p: p.sort_key)


def is_consistent(case_base: CaseBase, cap: int = DEFAULT_UNIVERSE_CAP) -> bool:
    return not inconsistencies(case_base, cap)
