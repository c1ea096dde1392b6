#!/usr/bin/env python3
"""
Text, DOT and structured (JSON) renderings.

Every renderer returns a string and sorts everything it prints, so the same
input always yields the same bytes.
"""
import json
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pybars import Compiler

from .core import (
    SIDES,
    CaseBase,
    FactSituation,
    InconsistencyPair,
    ReasonSet,
    Side,
    format_names,
    side_projection,
)
from .dsa import DSAFramework, DSArgument
from .explain import DisputeNode, Explanation, Label, decisive_factors
from .reason import DecisionOutcome, PriorityEvidence


def to_json(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _lines(lines: Iterable[str]) -> str:
    lines = list(lines)
    return "\n".join(lines) + "\n" if lines else ""


def _dot_string(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _list(_, options, items):
    result = []
    for item in items:
        result.append(options["fn"](item))
        result.append("\n")
    return result


compiler = Compiler()
DOT_HELPERS = {"list": _list}
OVERLAY_STYLES = {
    Side.PLAINTIFF.value: 'color=blue, label="X:π"',
    Side.DEFENDANT.value: 'color=red, style=dashed, label="X:δ"',
}

DIAGRAM_TEMPLATE = compiler.compile(
    "digraph priorities {\n"
    "  rankdir=BT;\n"
    "  node [shape=ellipse];\n"
    "{{#list nodes}}  {{id}} [label={{{label}}}];{{/list}}"
    "{{#list priorities}}  {{weaker}} -> {{stronger}} [label={{{cases}}}];{{/list}}"
    "{{#list inclusions}}  {{weaker}} -> {{stronger}} [style=dotted, arrowhead=none];{{/list}}"
    "{{#list decisions}}  {{weaker}} -> {{stronger}} [{{{style}}}];{{/list}}"
    "}\n"
)

FRAMEWORK_TEMPLATE = compiler.compile(
    "digraph framework {\n"
    "  rankdir=BT;\n"
    "  node [shape=box];\n"
    "{{#list arguments}}  {{id}} [label={{{label}}}, style={{style}}];{{/list}}"
    "{{#list attacks}}  {{source}} -> {{target}};{{/list}}"
    "}\n"
)

TREES_TEMPLATE = compiler.compile(
    "digraph explanations {\n"
    "  rankdir=BT;\n"
    "  node [shape=box];\n"
    "{{#list clusters}}  subgraph cluster_{{prefix}} {\n"
    "    label={{{title}}};\n"
    "{{#list nodes}}    {{name}} [label={{{label}}}, style={{style}}];{{/list}}"
    "{{#list edges}}    {{child}} -> {{parent}};{{/list}}"
    "  }{{/list}}"
    "}\n"
)


def argument_document(argument: DSArgument) -> Dict[str, Any]:
    return {
        "knowledge": sorted(argument.knowledge.members),
        "sub_base": sorted(argument.sub_base),
        "state": argument.state.value,
    }


# --- validate ---
def summary_document(case_base: CaseBase, consistent: Optional[bool]) -> Dict[str, Any]:
    universe = case_base.universe
    return {
        "cases": len(case_base),
        "factors": len(universe),
        "plaintiff_factors": len(universe.names(Side.PLAINTIFF)),
        "defendant_factors": len(universe.names(Side.DEFENDANT)),
        "consistent": consistent,
    }


def render_summary(
    case_base: CaseBase, consistent: Optional[bool], structured: bool = False
) -> str:
    """``consistent`` is None when the universe is too large to enumerate inc(Γ)."""
    doc = summary_document(case_base, consistent)
    if structured:
        return to_json(doc)
    if consistent is None:
        status = "consistency not checked (universe cap exceeded)"
    else:
        status = "consistent" if consistent else "inconsistent"
    return _lines(
        [
            f"{doc['cases']} cases, {doc['factors']} factors",
            f"plaintiff factors: {doc['plaintiff_factors']}",
            f"defendant factors: {doc['defendant_factors']}",
            status,
        ]
    )


# --- inc ---
def render_inconsistencies(
    pairs: Iterable[InconsistencyPair], structured: bool = False
) -> str:
    ordered = sorted(pairs, key=lambda p: p.sort_key)
    if structured:
        return to_json(
            {
                "inconsistencies": [
                    {
                        "plaintiff": sorted(p.pro_plaintiff.members),
                        "defendant": sorted(p.pro_defendant.members),
                    }
                    for p in ordered
                ]
            }
        )
    return _lines(str(p) for p in ordered)


# --- diagram ---
NodeKey = Tuple[str, Tuple[str, ...]]


def _node_key(reason_set: ReasonSet) -> NodeKey:
    return (reason_set.side.value, tuple(sorted(reason_set.members)))


def priority_diagram(
    case_base: CaseBase, facts: Optional[FactSituation] = None
) -> Dict[str, Any]:
    """
    Reason-set nodes and priority edges induced by the case base.

    Each case c contributes facts(c)^s̄ -> premise(c), labelled with its id;
    same-side inclusions between displayed nodes are added as unlabelled
    edges. With ``facts``, the two hypothetical decisions are overlaid.
    """
    nodes: Dict[NodeKey, ReasonSet] = {}
    edges: Dict[Tuple[NodeKey, NodeKey], List[str]] = {}

    def add(reason_set: ReasonSet) -> NodeKey:
        key = _node_key(reason_set)
        nodes.setdefault(key, reason_set)
        return key

    for case in case_base:
        weaker = add(ReasonSet(case.losing_facts, case.outcome.opposite))
        stronger = add(case.rule.premise)
        edges.setdefault((weaker, stronger), []).append(case.id)

    overlays = []
    if facts is not None:
        facts = case_base.situation(facts.members)
        for side in SIDES:
            weaker = add(side_projection(facts, side.opposite))
            stronger = add(side_projection(facts, side))
            overlays.append({"from": weaker, "to": stronger, "side": side.value})

    inclusions = []
    if len(case_base):
        for a in sorted(nodes):
            for b in sorted(nodes):
                lower, upper = nodes[a], nodes[b]
                if lower.side is not upper.side or not lower.members < upper.members:
                    continue
                covered = any(
                    nodes[m].side is lower.side
                    and lower.members < nodes[m].members < upper.members
                    for m in nodes
                )
                if not covered:
                    inclusions.append((a, b))

    return {
        "nodes": sorted(nodes),
        "edges": sorted((k, sorted(ids)) for k, ids in edges.items()),
        "inclusions": inclusions,
        "overlays": overlays,
    }


def _node_label(key: NodeKey) -> str:
    side = Side(key[0])
    return f"{format_names(key[1])}{side.symbol}"


def render_diagram(
    case_base: CaseBase,
    facts: Optional[FactSituation] = None,
    structured: bool = False,
) -> str:
    diagram = priority_diagram(case_base, facts)
    ids = {key: f"r{index}" for index, key in enumerate(diagram["nodes"])}
    if structured:
        return to_json(
            {
                "nodes": [
                    {"id": ids[k], "side": k[0], "factors": list(k[1])}
                    for k in diagram["nodes"]
                ],
                "priorities": [
                    {"weaker": ids[a], "stronger": ids[b], "cases": cases}
                    for (a, b), cases in diagram["edges"]
                ],
                "inclusions": [
                    {"weaker": ids[a], "stronger": ids[b]}
                    for a, b in diagram["inclusions"]
                ],
                "decisions": [
                    {"weaker": ids[o["from"]], "stronger": ids[o["to"]], "side": o["side"]}
                    for o in diagram["overlays"]
                ],
            }
        )

    context = {
        "nodes": [
            {"id": ids[k], "label": _dot_string(_node_label(k))} for k in diagram["nodes"]
        ],
        "priorities": [
            {"weaker": ids[a], "stronger": ids[b], "cases": _dot_string(", ".join(cases))}
            for (a, b), cases in diagram["edges"]
        ],
        "inclusions": [
            {"weaker": ids[a], "stronger": ids[b]} for a, b in diagram["inclusions"]
        ],
        "decisions": [
            {
                "weaker": ids[o["from"]],
                "stronger": ids[o["to"]],
                "style": OVERLAY_STYLES[o["side"]],
            }
            for o in diagram["overlays"]
        ],
    }
    return DIAGRAM_TEMPLATE(context, helpers=DOT_HELPERS)


# --- decide ---
def _evidence_document(evidence: PriorityEvidence) -> Dict[str, Any]:
    return {
        "weaker": sorted(evidence.weaker.members),
        "stronger": sorted(evidence.stronger.members),
        "stronger_side": evidence.stronger.side.value,
        "witnesses": list(evidence.witnesses),
    }


def render_decision(
    outcome: DecisionOutcome,
    new_pairs: Optional[Dict[Side, Sequence[InconsistencyPair]]] = None,
    structured: bool = False,
) -> str:
    """
    The decision and its priority evidence.

    ``new_pairs`` (annotation) maps each side to the inconsistencies a decision
    for that side would add.
    """
    if structured:
        doc: Dict[str, Any] = {
            "decision": outcome.label,
            "kind": outcome.kind.value,
            "side": outcome.side.value if outcome.side else None,
            "evidence": [_evidence_document(e) for e in outcome.evidence],
        }
        if new_pairs is not None:
            doc["new_inconsistencies"] = {
                side.value: [
                    {
                        "plaintiff": sorted(p.pro_plaintiff.members),
                        "defendant": sorted(p.pro_defendant.members),
                    }
                    for p in sorted(new_pairs[side], key=lambda p: p.sort_key)
                ]
                for side in SIDES
            }
        return to_json(doc)

    lines = [outcome.label]
    for evidence in outcome.evidence:
        witnesses = ", ".join(evidence.witnesses) if evidence.witnesses else "-"
        lines.append(
            f"{evidence.weaker}{evidence.weaker.side.symbol} < "
            f"{evidence.stronger}{evidence.stronger.side.symbol}: {witnesses}"
        )
    if new_pairs is not None:
        for side in SIDES:
            pairs = sorted(new_pairs[side], key=lambda p: p.sort_key)
            if pairs:
                listed = "; ".join(str(p) for p in pairs)
                lines.append(f"deciding for {side.value} adds: {listed}")
            else:
                lines.append(f"deciding for {side.value} adds no inconsistency")
    return _lines(lines)


# --- framework ---
def framework_notes(framework: DSAFramework) -> List[str]:
    """Annotations on arguments whose sub-base is the whole case base at full knowledge."""
    notes = []
    everything = framework.case_base.ids
    if len(everything) < 2:
        return notes
    for side in SIDES:
        for argument in framework.full_knowledge(side):
            if argument.sub_base == everything:
                notes.append(
                    f"note: {argument.label} keeps the whole case base; no proper "
                    f"sub-base is maximal for {format_names(argument.knowledge.members)}"
                )
    return notes


def _argument_ids(framework: DSAFramework) -> Dict[DSArgument, str]:
    return {argument: f"a{index}" for index, argument in enumerate(framework.arguments)}


def render_framework(
    framework: DSAFramework, dot: bool = False, structured: bool = False, annotate: bool = False
) -> str:
    labelling = framework.labelling
    ids = _argument_ids(framework)
    attacks = framework.sorted_attacks()
    if structured:
        doc = {
            "facts": sorted(framework.facts.members),
            "arguments": [
                dict(
                    id=ids[a],
                    **argument_document(a),
                    status=labelling.label(a),
                )
                for a in framework.arguments
            ],
            "attacks": [{"from": ids[a], "to": ids[b]} for a, b in attacks],
        }
        if annotate:
            doc["notes"] = framework_notes(framework)
        return to_json(doc)

    if dot:
        context = {
            "arguments": [
                {
                    "id": ids[a],
                    "label": _dot_string(a.label),
                    "style": "solid" if a in labelling.accepted else "dashed",
                }
                for a in framework.arguments
            ],
            "attacks": [{"source": ids[a], "target": ids[b]} for a, b in attacks],
        }
        return FRAMEWORK_TEMPLATE(context, helpers=DOT_HELPERS)

    lines = [f"arguments ({len(framework.arguments)}):"]
    for a in framework.arguments:
        lines.append(f"  {labelling.label(a):<3} {a.label}")
    lines.append(f"attacks ({len(attacks)}):")
    for a, b in attacks:
        lines.append(f"  {a.label} -> {b.label}")
    if annotate:
        lines.extend(framework_notes(framework))
    return _lines(lines)


# --- explain ---
class ExplanationSection(NamedTuple):
    """What one side contributes to an explain report."""

    side: Side
    found: Tuple[Explanation, ...]
    rejected: Tuple[DisputeNode, ...] = ()


def tree_lines(tree: DisputeNode, depth: int = 0) -> List[str]:
    lines = [f"{'  ' * depth}{tree.label.value}: {tree.argument.label}"]
    for child in tree.children:
        lines.extend(tree_lines(child, depth + 1))
    return lines


def tree_document(tree: DisputeNode) -> Dict[str, Any]:
    return {
        "label": tree.label.value,
        "argument": argument_document(tree.argument),
        "children": [tree_document(child) for child in tree.children],
    }


def _steps_document(tree: DisputeNode) -> List[Dict[str, Any]]:
    return [
        {
            "challenge": argument_document(step.challenge),
            "answer": argument_document(step.answer),
            "factors": sorted(step.factors),
        }
        for step in decisive_factors(tree)
    ]


def _section_document(section: ExplanationSection, annotate: bool) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "side": section.side.value,
        "explanations": [
            {
                "root_knowledge": sorted(e.root_knowledge.members),
                "tree": tree_document(e.tree),
                "decisive_factors": _steps_document(e.tree),
            }
            for e in section.found
        ],
    }
    if annotate:
        doc["rejected"] = [tree_document(t) for t in section.rejected]
    return doc


def _section_lines(section: ExplanationSection, annotate: bool) -> List[str]:
    side = section.side.value
    lines = []
    if not section.found:
        lines.append(f"no explanations for {side}")
    for index, explanation in enumerate(section.found, 1):
        lines.append(f"explanation {index} for {side}:")
        lines.extend(tree_lines(explanation.tree, 1))
        if annotate:
            for step in decisive_factors(explanation.tree):
                lines.append(
                    f"  decisive {format_names(step.factors)}: "
                    f"{step.answer.label} answers {step.challenge.label}"
                )
    if annotate:
        for tree in section.rejected:
            lines.append(f"rejected for {side} (not admissible):")
            lines.extend(tree_lines(tree, 1))
    return lines


def render_explanations(
    sections: Sequence[ExplanationSection],
    outcome: Optional[DecisionOutcome] = None,
    dot: bool = False,
    structured: bool = False,
    annotate: bool = False,
) -> str:
    """
    Explanation trees for one or both sides.

    Rejected trees (inadmissible trees of non-attacking roots) are only shown
    when annotating.
    """
    if structured:
        return to_json(
            {
                "decision": outcome.label if outcome else None,
                "sides": [_section_document(s, annotate) for s in sections],
            }
        )
    if dot:
        return render_trees_dot(sections)

    lines = []
    if outcome is not None:
        lines.append(f"decision: {outcome.label}")
    for section in sections:
        lines.extend(_section_lines(section, annotate))
    return _lines(lines)


def _cluster(prefix: str, title: str, tree: DisputeNode) -> Dict[str, Any]:
    nodes, edges = [], []
    queue: List[Tuple[DisputeNode, Optional[str]]] = [(tree, None)]
    while queue:
        node, parent = queue.pop(0)
        name = f"{prefix}_{len(nodes)}"
        nodes.append(
            {
                "name": name,
                "label": _dot_string(f"{node.label.value}: {node.argument.label}"),
                "style": "solid" if node.label is Label.PROPONENT else "dashed",
            }
        )
        if parent is not None:
            edges.append({"child": name, "parent": parent})
        queue.extend((child, name) for child in node.children)
    return {"prefix": prefix, "title": _dot_string(title), "nodes": nodes, "edges": edges}


def render_trees_dot(sections: Sequence[ExplanationSection]) -> str:
    """One cluster per explanation; edges point from child to parent (attack direction)."""
    clusters = [
        _cluster(
            f"{section.side.value}_{index}",
            f"explanation {index + 1} for {section.side.value}",
            explanation.tree,
        )
        for section in sections
        for index, explanation in enumerate(section.found)
    ]
    return TREES_TEMPLATE({"clusters": clusters}, helpers=DOT_HELPERS)


# --- oracle ---
def render_oracle_report(report: Any, structured: bool = False) -> str:
    doc = report.to_document()
    if structured:
        return to_json(doc)
    lines = [
        f"instances checked: {doc['instances']}",
        f"checks run: {doc['checks']}",
    ]
    for name in sorted(doc["skipped"]):
        lines.append(f"skipped: {name}")
    if not doc["mismatches"]:
        lines.append("all checks agree")
        return _lines(lines)
    lines.append(f"mismatches: {len(doc['mismatches'])}")
    for mismatch in doc["mismatches"]:
        lines.append(f"  {mismatch['check']}: {mismatch['detail']}")
    counterexample = doc["counterexample"]
    if counterexample:
        lines.append(f"minimized counterexample ({counterexample['check']}):")
        lines.append(f"  facts: {format_names(counterexample['facts'])}")
        lines.append("  case base:")
        for line in to_json(counterexample["case_base"]).splitlines():
            lines.append(f"    {line}")
    return _lines(lines)
