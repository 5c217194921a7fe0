"""Schema validation: every invariant breach is reported as a Violation."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from idont.ontology.canonical import ID_PATTERN, iter_links, resolves
from idont.ontology.model import InstructionalDesign, is_valid_content_type


@dataclass(frozen=True)
class Violation:
    rule: str
    path: str
    message: str
    severity: str = "error"
    details: Optional[dict] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        d = {"rule": self.rule, "path": self.path, "message": self.message,
             "severity": self.severity}
        if self.details is not None:
            d["details"] = self.details
        return d


def violations_to_json(violations) -> str:
    return json.dumps([v.to_dict() for v in violations], ensure_ascii=False, indent=2)


def check_context_links(design: InstructionalDesign) -> list:
    """Missing context slots and dangling links anywhere in the design."""
    out = []
    ctx = design.context
    for slot, value in (("processRef", ctx.process_ref), ("environmentRef", ctx.environment_ref),
                        ("evaluationRef", ctx.evaluation_ref), ("rolesRef", ctx.roles_ref)):
        if not value:
            out.append(Violation("CONTEXT_SLOT_MISSING", f"context.{slot}",
                                 f"context slot {slot} is empty"))
    for source, target, kinds in iter_links(design):
        if source == "context.processRef" and not target:
            continue
        if not resolves(design, target, kinds):
            out.append(Violation("DANGLING_REFERENCE", source,
                                 f"{source} refers to missing element {target!r}",
                                 details={"target": target}))
    return out


def check_principle_coverage(design: InstructionalDesign) -> list:
    """One violation per scene whose instructions carry no principle at all."""
    return [Violation("PRINCIPLE_COVERAGE", f"process/{scene.id}",
                      f"scene {scene.id} has no instructional principle"
                      + ("" if scene.instructions else " (no instructions)"))
            for scene in design.process.scenes() if not scene.principles]


def _check_ids(design):
    out = []
    if not ID_PATTERN.fullmatch(design.id or ""):
        out.append(Violation("ID_FORMAT", "id", f"design id {design.id!r} is not [a-z0-9-]+"))
    counts = Counter(ident for _, ident in design.all_ids())
    for part, ident in design.all_ids():
        if not ID_PATTERN.fullmatch(ident or ""):
            out.append(Violation("ID_FORMAT", f"{part}/{ident}", f"id {ident!r} is not [a-z0-9-]+"))
    for ident, n in sorted(counts.items()):
        if n > 1:
            out.append(Violation("DUPLICATE_ID", ident, f"id {ident!r} used {n} times"))
    return out


def goal_cycles(design: InstructionalDesign) -> list:
    graph = nx.DiGraph()
    graph.add_nodes_from(g.id for g in design.goals)
    for g in design.goals:
        for pre in g.prerequisites:
            graph.add_edge(pre, g.id)
    cycles = []
    for comp in nx.strongly_connected_components(graph):
        if len(comp) > 1 or any(graph.has_edge(n, n) for n in comp):
            cycles.append(sorted(comp))
    return sorted(cycles)


def _check_goals(design):
    out = []
    for members in goal_cycles(design):
        out.append(Violation("CYCLE", "goals", "prerequisite cycle among " + ", ".join(members),
                             details={"members": members}))
    index = design.goal_index
    for g in design.goals:
        path = f"goals/{g.id}"
        if not 0.0 <= g.progress <= 1.0:
            out.append(Violation("GOAL_PROGRESS_RANGE", path, f"progress {g.progress} outside [0, 1]"))
        if g.next_goal in index and index[g.next_goal].previous_goal != g.id:
            out.append(Violation("GOAL_LINK_INCONSISTENT", path,
                                 f"{g.id}.next is {g.next_goal} but {g.next_goal}.previous "
                                 f"is {index[g.next_goal].previous_goal}"))
        if g.previous_goal in index and index[g.previous_goal].next_goal != g.id:
            out.append(Violation("GOAL_LINK_INCONSISTENT", path,
                                 f"{g.id}.previous is {g.previous_goal} but {g.previous_goal}.next "
                                 f"is {index[g.previous_goal].next_goal}"))
        node = design.process.index.get(g.achieved_by_process)
        if node is not None and node.level != g.granularity.value:
            out.append(Violation("GOAL_GRANULARITY", path,
                                 f"{g.granularity.value} goal achieved by {node.level} {node.node.id}"))
    for p in design.goal_patterns:
        if not p.source_of_pattern.strip():
            out.append(Violation("GOAL_PATTERN_SOURCE", f"goalPatterns/{p.id}",
                                 "goal pattern lacks a source"))
    return out


def _check_content(design):
    out = []
    for o in design.content.objects:
        path = f"content/{o.id}"
        if not o.fragment_refs:
            out.append(Violation("CONTENT_OBJECT_EMPTY", path, "content object has no fragments"))
        if not is_valid_content_type(o.content_type):
            out.append(Violation("CONTENT_TYPE", path, f"unknown content type {o.content_type!r}"))
    for lo in design.content.learning_objects:
        node = design.process.index.get(lo.process_ref)
        if node is not None and node.level != lo.kind.level.value:
            out.append(Violation("LEARNING_OBJECT_LEVEL", f"content/{lo.id}",
                                 f"{lo.kind.value} points at {node.level} {lo.process_ref}"))
    return out


def _check_ui(design):
    lang = design.metadata.get("language")
    if not design.ui.language:
        return [Violation("UI_LANGUAGE", "ui.language", "UI language is not set")]
    if lang is not None and design.ui.language != lang:
        return [Violation("UI_LANGUAGE", "ui.language",
                          f"UI language {design.ui.language!r} differs from design language {lang!r}")]
    return []


def validate_schema(design: InstructionalDesign) -> list:
    """All invariant breaches, in a fixed rule order; empty means valid."""
    return [
        *_check_ids(design),
        *check_context_links(design),
        *_check_goals(design),
        *check_principle_coverage(design),
        *_check_content(design),
        *_check_ui(design),
    ]
