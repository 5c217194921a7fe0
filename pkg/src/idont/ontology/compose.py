"""Stitch aspect parts into a design, split it back, and swap guidelines."""

from __future__ import annotations

from dataclasses import replace
from typing import NamedTuple

from idont.errors import CompositionError, DanglingReferenceError, UnresolvedNodeError
from idont.ontology.canonical import iter_links, resolves
from idont.ontology.model import (
    ContentCatalog,
    ContextSpec,
    GoalNode,
    GoalPattern,
    InstructionalDesign,
    ProcessTree,
    UiConfig,
)
from idont.ontology.validate import validate_schema


class DesignParts(NamedTuple):
    context: ContextSpec
    goals: tuple
    process: ProcessTree
    content: ContentCatalog
    ui: UiConfig


def _sort_parts(parts):
    found = {}
    goals, patterns = [], []
    for part in parts:
        if isinstance(part, (ContextSpec, ProcessTree, ContentCatalog, UiConfig)):
            key = type(part).__name__
            if key in found:
                raise TypeError(f"compose() got two {key} parts")
            found[key] = part
        elif isinstance(part, (list, tuple, set, frozenset)):
            for item in part:
                if isinstance(item, GoalNode):
                    goals.append(item)
                elif isinstance(item, GoalPattern):
                    patterns.append(item)
                else:
                    raise TypeError(f"unexpected item in goals part: {item!r}")
        else:
            raise TypeError(f"compose() cannot use a {type(part).__name__} part")
    missing = {"ContextSpec", "ProcessTree", "ContentCatalog", "UiConfig"} - set(found)
    if missing:
        raise TypeError("compose() is missing part(s): " + ", ".join(sorted(missing)))
    return found, goals, patterns


def compose(*parts, design_id: str | None = None, metadata=None, validate=True) -> InstructionalDesign:
    """Build a design from its context, goals, process, content and UI parts.

    Parts may be passed in any order; they are recognised by type (goals
    as a list of :class:`GoalNode`, optionally mixed with goal patterns).
    A dangling cross-part link raises :class:`DanglingReferenceError`;
    any other schema violation raises :class:`CompositionError`.
    """
    found, goals, patterns = _sort_parts(parts)
    context = found["ContextSpec"]
    design = InstructionalDesign(
        id=design_id or context.metadata.get("designId", "design"),
        context=context,
        goals=goals,
        process=found["ProcessTree"],
        content=found["ContentCatalog"],
        ui=found["UiConfig"],
        metadata=metadata or {},
        goal_patterns=patterns,
    )
    for source, target, kinds in iter_links(design):
        if not resolves(design, target, kinds):
            raise DanglingReferenceError(source, target)
    if validate:
        violations = [v for v in validate_schema(design) if v.severity == "error"]
        if violations:
            raise CompositionError(violations)
    return design


def decompose(design: InstructionalDesign) -> DesignParts:
    goals = design.goals + design.goal_patterns
    return DesignParts(design.context, goals, design.process, design.content, design.ui)


def _as_guidelines(value):
    return (value,) if isinstance(value, str) else tuple(value)


def substitute_guidelines(design: InstructionalDesign, guideline_map) -> InstructionalDesign:
    """Replace the guideline texts of the given process nodes; nothing else changes."""
    if not guideline_map:
        return design
    index = design.process.index
    bad = [k for k in guideline_map
           if k not in index or not hasattr(index[k].node, "guidelines")]
    if bad:
        raise UnresolvedNodeError(bad)

    def swap(node):
        changes = {}
        if node.id in guideline_map:
            changes["guidelines"] = _as_guidelines(guideline_map[node.id])
        for attr in ("acts", "scenes", "instructions"):
            if hasattr(node, attr):
                changes[attr] = tuple(swap(child) for child in getattr(node, attr))
        return replace(node, **changes) if changes else node

    plays = tuple(swap(p) for p in design.process.plays)
    return replace(design, process=replace(design.process, plays=plays))
