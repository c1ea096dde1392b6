#!/usr/bin/env python3
"""
Dispute trees and explanations over a DSA-framework.

An explanation for side s is an admissible dispute tree rooted at a state-s
argument that attacks nothing. Proponent nodes face every attacker; each
opponent node is answered by at most one counter-attacker.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from .core import SIDES, CaseBase, FactSituation, Side
from .dsa import DEFAULT_KNOWLEDGE_CAP, DSAFramework, DSArgument, build_framework
from .errors import InternalConsistencyError
from .reason import DecisionOutcome, decide, obligated, permitted

logger = logging.getLogger(__name__)


class Label(str, Enum):
    PROPONENT = "P"
    OPPONENT = "O"


@dataclass(frozen=True)
class DisputeNode:
    label: Label
    argument: DSArgument
    children: Tuple["DisputeNode", ...] = ()

    def walk(self) -> Iterator["DisputeNode"]:
        """Pre-order traversal, children in stored order."""
        yield self
        for child in self.children:
            yield from child.walk()

    @property
    def size(self) -> int:
        return sum(1 for _ in self.walk())

    @property
    def depth(self) -> int:
        return 1 + max((child.depth for child in self.children), default=0)

    def arguments(self, label: Label) -> Set[DSArgument]:
        return {node.argument for node in self.walk() if node.label is label}

    @property
    def sort_key(self) -> tuple:
        return (self.label.value, self.argument.key) + tuple(
            child.sort_key for child in self.children
        )


@dataclass(frozen=True)
class DecisiveStep:
    """An opponent challenge and the proponent answer that defeats it."""

    challenge: DSArgument
    answer: DSArgument
    factors: FrozenSet[str]


@dataclass(frozen=True)
class Explanation:
    side: Side
    tree: DisputeNode
    root_knowledge: FactSituation

    @property
    def root(self) -> DSArgument:
        return self.tree.argument


@dataclass(frozen=True)
class ExplainedDecision:
    outcome: DecisionOutcome
    framework: DSAFramework
    explanations: Dict[Side, Tuple[Explanation, ...]] = field(default_factory=dict)

    def for_side(self, side: Side) -> Tuple[Explanation, ...]:
        return self.explanations.get(side, ())


def _proponent(framework: DSAFramework, argument: DSArgument) -> DisputeNode:
    return DisputeNode(
        Label.PROPONENT,
        argument,
        tuple(_opponent(framework, a) for a in framework.attackers_of(argument)),
    )


def _opponent(framework: DSAFramework, argument: DSArgument) -> DisputeNode:
    grounded = framework.grounded
    for defender in framework.attackers_of(argument):
        if defender in grounded:
            return DisputeNode(
                Label.OPPONENT, argument, (_proponent(framework, defender),)
            )
    return DisputeNode(Label.OPPONENT, argument)


def build_dispute_tree(framework: DSAFramework, root: DSArgument) -> DisputeNode:
    """
    The canonical dispute tree rooted at ``root``.

    Each opponent node is answered by the least attacker inside the grounded
    extension, or left unanswered when there is none.

    Raises:
        UnknownArgumentError: if ``root`` is not in the framework
    """
    return _proponent(framework, framework.check(root))


def _proponent_choices(
    framework: DSAFramework, argument: DSArgument
) -> Iterator[DisputeNode]:
    branches = [
        list(_opponent_choices(framework, a)) for a in framework.attackers_of(argument)
    ]
    for children in product(*branches):
        yield DisputeNode(Label.PROPONENT, argument, tuple(children))


def _opponent_choices(
    framework: DSAFramework, argument: DSArgument
) -> Iterator[DisputeNode]:
    for defender in framework.attackers_of(argument):
        for answer in _proponent_choices(framework, defender):
            yield DisputeNode(Label.OPPONENT, argument, (answer,))


def all_dispute_trees(
    framework: DSAFramework, root: DSArgument
) -> Tuple[DisputeNode, ...]:
    """Every admissible dispute tree rooted at ``root``, in canonical order."""
    trees = [
        tree
        for tree in _proponent_choices(framework, framework.check(root))
        if is_admissible_tree(tree, framework)
    ]
    return tuple(sorted(trees, key=lambda t: t.sort_key))


def is_admissible_tree(tree: DisputeNode, framework: DSAFramework) -> bool:
    """Every opponent answered, and no argument under both labels."""
    for node in tree.walk():
        framework.check(node.argument)
    answered = all(
        node.children for node in tree.walk() if node.label is Label.OPPONENT
    )
    return answered and not (
        tree.arguments(Label.PROPONENT) & tree.arguments(Label.OPPONENT)
    )


def dispute_tree_violations(tree: DisputeNode, framework: DSAFramework) -> List[str]:
    """
    Structural problems of ``tree`` as a dispute tree of ``framework``.

    Walks the tree against the attack relation directly instead of reusing the
    construction, so it can vouch for it.
    """
    problems = []
    if tree.label is not Label.PROPONENT:
        problems.append(f"root {tree.argument} is not a proponent node")
    for node in tree.walk():
        if node.argument not in framework:
            problems.append(f"{node.argument} is not in the framework")
            continue
        if node.label is Label.PROPONENT:
            expected = {a for (a, b) in framework.attacks if b == node.argument}
            seen = [child.argument for child in node.children]
            if any(child.label is not Label.OPPONENT for child in node.children):
                problems.append(f"P:{node.argument} has a proponent child")
            if set(seen) != expected or len(seen) != len(expected):
                problems.append(f"P:{node.argument} does not face exactly its attackers")
        else:
            if len(node.children) > 1:
                problems.append(f"O:{node.argument} has more than one answer")
            for child in node.children:
                if child.label is not Label.PROPONENT:
                    problems.append(f"O:{node.argument} has an opponent child")
                if (child.argument, node.argument) not in framework.attacks:
                    problems.append(
                        f"O:{node.argument} is answered by a non-attacker {child.argument}"
                    )
    return problems


def non_attacking_arguments(framework: DSAFramework, side: Side) -> List[DSArgument]:
    return [a for a in framework.with_state(side) if not framework.targets_of(a)]


def rejected_trees(framework: DSAFramework, side: Side) -> Tuple[DisputeNode, ...]:
    """Canonical trees of non-attacking state-``side`` roots that are not admissible."""
    rejected = []
    for root in non_attacking_arguments(framework, side):
        tree, admissible = tree_for(framework, root)
        if not admissible:
            rejected.append(tree)
    return tuple(rejected)


def explanations_from(
    framework: DSAFramework, side: Side, all_defenses: bool = False
) -> Tuple[Explanation, ...]:
    found = []
    for root in non_attacking_arguments(framework, side):
        if all_defenses:
            trees = all_dispute_trees(framework, root)
        else:
            tree = build_dispute_tree(framework, root)
            trees = (tree,) if is_admissible_tree(tree, framework) else ()
        found.extend(Explanation(side, tree, root.knowledge) for tree in trees)
    return tuple(found)


def explanations(
    facts: FactSituation,
    case_base: CaseBase,
    side: Side,
    cap: int = DEFAULT_KNOWLEDGE_CAP,
    all_defenses: bool = False,
) -> Tuple[Explanation, ...]:
    """
    E(s): admissible dispute trees rooted at non-attacking state-s arguments.

    Raises:
        CapExceededError: if |X| is larger than ``cap``
    """
    return explanations_from(build_framework(facts, case_base, cap), side, all_defenses)


def decisive_factors(tree: DisputeNode) -> Tuple[DecisiveStep, ...]:
    """For every answered challenge, the factors the answer adds to it."""
    steps = []
    for node in tree.walk():
        if node.label is Label.OPPONENT:
            for answer in node.children:
                steps.append(
                    DecisiveStep(
                        node.argument,
                        answer.argument,
                        answer.argument.knowledge.members
                        - node.argument.knowledge.members,
                    )
                )
    return tuple(steps)


def _cross_check(
    case_base: CaseBase,
    framework: DSAFramework,
    found: Dict[Side, Tuple[Explanation, ...]],
) -> List[str]:
    facts = framework.facts
    grounded = framework.grounded
    all_premises = all(case.premise for case in case_base)
    problems = []
    for side in SIDES:
        other = side.opposite
        must = obligated(case_base, facts, side)

        by_arguments = bool(framework.full_knowledge(side)) and not framework.full_knowledge(other)
        if must != by_arguments:
            problems.append(f"full-knowledge arguments disagree with obligation for {side}")

        by_extension = grounded == frozenset(framework.with_state(side)) and any(
            a.knowledge.members == facts.members for a in grounded
        )
        if must != by_extension:
            problems.append(f"grounded extension disagrees with obligation for {side}")

        if must and found[other]:
            problems.append(f"explanations exist for {other} although {side} is obligated")
        if must and all_premises and not found[side]:
            problems.append(f"no explanation although {side} is obligated")
        if found[side] and not permitted(case_base, facts, side):
            problems.append(f"explanations exist for {side} although it is not permitted")
    return problems


def explain_decision(
    facts: FactSituation,
    case_base: CaseBase,
    cap: int = DEFAULT_KNOWLEDGE_CAP,
    all_defenses: bool = False,
) -> ExplainedDecision:
    """
    Decide ``facts`` and explain it from both sides.

    The decision and the explanation sets are computed independently and
    checked against each other.

    Raises:
        CapExceededError: if |X| is larger than ``cap``
        InternalConsistencyError: if decision and explanations disagree
    """
    outcome = decide(case_base, facts)
    framework = build_framework(facts, case_base, cap)
    found = {side: explanations_from(framework, side, all_defenses) for side in SIDES}
    problems = _cross_check(case_base, framework, found)
    if problems:
        raise InternalConsistencyError("; ".join(problems))
    logger.debug(
        "explained %s: %s, %d/%d explanations",
        framework.facts,
        outcome.label,
        len(found[Side.PLAINTIFF]),
        len(found[Side.DEFENDANT]),
    )
    return ExplainedDecision(outcome, framework, found)


def tree_for(
    framework: DSAFramework, root: DSArgument
) -> Tuple[DisputeNode, bool]:
    """The canonical tree for ``root`` and whether it is admissible."""
    tree = build_dispute_tree(framework, root)
    return tree, is_admissible_tree(tree, framework)


def explanation_roots(found: Tuple[Explanation, ...]) -> List[DSArgument]:
    return sorted({e.root for e in found})


def find_explanation(
    found: Tuple[Explanation, ...], knowledge: FrozenSet[str]
) -> Optional[Explanation]:
    return next((e for e in found if e.root_knowledge.members == knowledge), None)
