#!/usr/bin/env python3
"""
Abstract argumentation kernel.

Frameworks are generic over hashable, mutually orderable argument ids, so the
same code serves derivation-state frameworks and plain test digraphs. Extension
enumeration is a naive subset search and is capped.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import chain, combinations
from typing import (
    AbstractSet,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Tuple,
)

import networkx as nx

from .errors import CapExceededError, UnknownArgumentError

logger = logging.getLogger(__name__)

DEFAULT_EXTENSION_CAP = 20

Node = Hashable
Attack = Tuple[Node, Node]


class Semantics(str, Enum):
    GROUNDED = "grounded"
    STABLE = "stable"
    PREFERRED = "preferred"
    COMPLETE = "complete"


@dataclass(frozen=True)
class AAFramework:
    """A pair (arguments, attacks); ``(x, y)`` in the relation means x attacks y."""

    nodes: FrozenSet[Node]
    attack_relation: FrozenSet[Attack] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "attack_relation", frozenset(self.attack_relation))
        for attacker, target in self.attack_relation:
            for node in (attacker, target):
                if node not in self.nodes:
                    raise UnknownArgumentError(node)

    @classmethod
    def from_edges(
        cls, nodes: Iterable[Node], edges: Iterable[Attack] = ()
    ) -> "AAFramework":
        return cls(frozenset(nodes), frozenset(edges))

    @cached_property
    def ordered_nodes(self) -> Tuple[Node, ...]:
        return tuple(sorted(self.nodes))

    @cached_property
    def attackers(self) -> Dict[Node, FrozenSet[Node]]:
        found: Dict[Node, set] = {node: set() for node in self.nodes}
        for attacker, target in self.attack_relation:
            found[target].add(attacker)
        return {node: frozenset(group) for node, group in found.items()}

    @cached_property
    def targets(self) -> Dict[Node, FrozenSet[Node]]:
        found: Dict[Node, set] = {node: set() for node in self.nodes}
        for attacker, target in self.attack_relation:
            found[attacker].add(target)
        return {node: frozenset(group) for node, group in found.items()}

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.ordered_nodes)
        graph.add_edges_from(self.attack_relation)
        return graph

    def __len__(self) -> int:
        return len(self.nodes)

    def check(self, members: Iterable[Node]) -> FrozenSet[Node]:
        """Return ``members`` as a frozenset, rejecting foreign ids."""
        members = frozenset(members)
        for node in members:
            if node not in self.nodes:
                raise UnknownArgumentError(node)
        return members


@dataclass(frozen=True)
class LabeledExtension:
    members: FrozenSet[Node]
    semantics: Semantics

    def sorted_members(self) -> List[Node]:
        return sorted(self.members)


@dataclass(frozen=True)
class GroundedLabelling:
    """The grounded labelling: accepted (in), rejected (out) and undecided."""

    accepted: FrozenSet[Node]
    rejected: FrozenSet[Node]
    undecided: FrozenSet[Node] = field(default_factory=frozenset)

    def label(self, node: Node) -> str:
        if node in self.accepted:
            return "in"
        if node in self.rejected:
            return "out"
        return "undec"


def _attacked_by(framework: AAFramework, members: AbstractSet[Node], node: Node) -> bool:
    return not framework.attackers[node].isdisjoint(members)


def set_attacks(framework: AAFramework, members: Iterable[Node], node: Node) -> bool:
    """Whether some argument of ``members`` attacks ``node``."""
    members = framework.check(members)
    framework.check((node,))
    return _attacked_by(framework, members, node)


def _defends(framework: AAFramework, members: AbstractSet[Node], node: Node) -> bool:
    return all(
        _attacked_by(framework, members, attacker)
        for attacker in framework.attackers[node]
    )


def defends(framework: AAFramework, members: Iterable[Node], node: Node) -> bool:
    """Whether ``members`` attacks every attacker of ``node``."""
    members = framework.check(members)
    framework.check((node,))
    return _defends(framework, members, node)


def _conflict_free(framework: AAFramework, members: AbstractSet[Node]) -> bool:
    return not any(_attacked_by(framework, members, node) for node in members)


def is_conflict_free(framework: AAFramework, members: Iterable[Node]) -> bool:
    return _conflict_free(framework, framework.check(members))


def _admissible(framework: AAFramework, members: AbstractSet[Node]) -> bool:
    return _conflict_free(framework, members) and all(
        _defends(framework, members, node) for node in members
    )


def is_admissible(framework: AAFramework, members: Iterable[Node]) -> bool:
    return _admissible(framework, framework.check(members))


def _characteristic(
    framework: AAFramework, members: AbstractSet[Node]
) -> FrozenSet[Node]:
    return frozenset(
        node for node in framework.nodes if _defends(framework, members, node)
    )


def defended_arguments(
    framework: AAFramework, members: Iterable[Node]
) -> FrozenSet[Node]:
    """The characteristic function: every argument ``members`` defends."""
    return _characteristic(framework, framework.check(members))


def is_complete(framework: AAFramework, members: Iterable[Node]) -> bool:
    members = framework.check(members)
    return _conflict_free(framework, members) and (
        _characteristic(framework, members) == members
    )


def is_stable(framework: AAFramework, members: Iterable[Node]) -> bool:
    members = framework.check(members)
    return _conflict_free(framework, members) and all(
        _attacked_by(framework, members, node)
        for node in framework.nodes - members
    )


def grounded_rounds(framework: AAFramework) -> List[FrozenSet[Node]]:
    """
    The fixpoint iteration E_0 ⊆ E_1 ⊆ ... of the grounded extension.

    E_0 holds the unattacked arguments and every later round adds what the
    previous one defends. The last entry is the grounded extension; the list
    has at most |nodes| + 1 entries.
    """
    rounds = [_characteristic(framework, frozenset())]
    while True:
        following = _characteristic(framework, rounds[-1])
        if following == rounds[-1]:
            break
        rounds.append(following)
    logger.debug(
        "grounded fixpoint over %d nodes after %d rounds", len(framework), len(rounds)
    )
    return rounds


def grounded_extension(framework: AAFramework) -> FrozenSet[Node]:
    return grounded_rounds(framework)[-1]


def grounded_labelling(framework: AAFramework) -> GroundedLabelling:
    accepted = grounded_extension(framework)
    rejected = frozenset(
        node for node in framework.nodes if _attacked_by(framework, accepted, node)
    )
    return GroundedLabelling(
        accepted, rejected, framework.nodes - accepted - rejected
    )


def _subsets(nodes: Tuple[Node, ...]) -> Iterator[FrozenSet[Node]]:
    return (
        frozenset(combo)
        for combo in chain.from_iterable(
            combinations(nodes, size) for size in range(len(nodes) + 1)
        )
    )


def _extension_order(members: FrozenSet[Node]) -> Tuple[int, List[Node]]:
    return (len(members), sorted(members))


def enumerate_extensions(
    framework: AAFramework,
    semantics: Semantics,
    cap: int = DEFAULT_EXTENSION_CAP,
) -> Tuple[LabeledExtension, ...]:
    """
    Every extension of ``framework`` under ``semantics``, by subset search.

    Grounded is included for uniformity and always yields exactly one set.
    Extensions are ordered by size, then by their sorted members.

    Raises:
        CapExceededError: if the framework has more than ``cap`` arguments
    """
    semantics = Semantics(semantics)
    if len(framework) > cap:
        raise CapExceededError("extension nodes", cap, len(framework))

    if semantics is Semantics.GROUNDED:
        found = [grounded_extension(framework)]
    elif semantics is Semantics.COMPLETE:
        found = [
            s for s in _subsets(framework.ordered_nodes) if is_complete(framework, s)
        ]
    elif semantics is Semantics.STABLE:
        found = [
            s for s in _subsets(framework.ordered_nodes) if is_stable(framework, s)
        ]
    else:
        admissible = [
            s for s in _subsets(framework.ordered_nodes) if _admissible(framework, s)
        ]
        found = [s for s in admissible if not any(s < other for other in admissible)]

    return tuple(
        LabeledExtension(members, semantics)
        for members in sorted(found, key=_extension_order)
    )


def is_well_founded(framework: AAFramework) -> bool:
    """Whether the attack graph has no directed cycle (self-attacks included)."""
    return nx.is_directed_acyclic_graph(framework.graph)


def longest_attack_chain(framework: AAFramework) -> int:
    """Number of attacks on the longest attack path of a well-founded framework."""
    if not is_well_founded(framework):
        raise ValueError("attack chains are unbounded on a cyclic framework")
    return nx.dag_longest_path_length(framework.graph)
