"""Classify the differences between two designs and replay them.

Sibling lists in the process tree are aligned level by level with a
minimum-cost edit alignment over node *kind* and subtree shape (the
principle set plays the role of kind for instructions), so renaming ids,
retitling or rewording guidelines never shows up as a structural
change. Everything else is compared by element id.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any, Optional

from idont.ontology.canonical import design_from_dict, design_to_dict
from idont.ontology.model import InstructionalDesign

CHILD_KEYS = {"plays": "acts", "acts": "scenes", "scenes": "instructions",
              "instructions": "activities", "activities": None}

# node attribute -> change category
NODE_ATTRS = {
    "guidelines": "guideline", "title": "guideline", "description": "guideline",
    "contentRefs": "content", "associatedGoal": "goal",
    "id": "ui", "timeLimit": "ui", "ui": "ui",
}

CATEGORIES = ("structural", "content", "guideline", "goal", "ui")


@dataclass(frozen=True)
class Change:
    op: str
    path: str
    before: Any = None
    after: Any = None
    position: Optional[int] = None

    def to_dict(self):
        d = {"op": self.op, "path": self.path}
        if self.position is not None:
            d["position"] = self.position
        if self.before is not None:
            d["before"] = self.before
        if self.after is not None:
            d["after"] = self.after
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["op"], d["path"], d.get("before"), d.get("after"), d.get("position"))


@dataclass(frozen=True)
class VariantDelta:
    structural_changes: tuple = ()
    content_changes: tuple = ()
    guideline_changes: tuple = ()
    goal_changes: tuple = ()
    ui_changes: tuple = ()

    @property
    def is_empty(self) -> bool:
        return not any(getattr(self, f"{c}_changes") for c in CATEGORIES)

    def to_dict(self) -> dict:
        return {f"{c}Changes": [ch.to_dict() for ch in getattr(self, f"{c}_changes")]
                for c in CATEGORIES}

    @classmethod
    def from_dict(cls, d) -> "VariantDelta":
        return cls(**{f"{c}_changes": tuple(Change.from_dict(x) for x in d.get(f"{c}Changes", ()))
                      for c in CATEGORIES})

    def summary(self) -> dict:
        return {c: len(getattr(self, f"{c}_changes")) for c in CATEGORIES}


def _signature(level, node):
    if level == "plays":
        return "play"
    if level == "instructions":
        return "instruction:" + ",".join(node.get("principles", ()))
    return node["kind"]


class _Collector:
    def __init__(self):
        self.buckets = {c: [] for c in CATEGORIES}

    def add(self, category, change):
        self.buckets[category].append(change)

    def delta(self):
        return VariantDelta(**{f"{c}_changes": tuple(v) for c, v in self.buckets.items()})


def _diff_nodes(out, level, a, b, path):
    for key, category in NODE_ATTRS.items():
        if a.get(key) != b.get(key):
            out.add(category, Change("changed", f"{path}/{key}", a.get(key), b.get(key)))
    child = CHILD_KEYS[level]
    if child:
        _diff_lists(out, child, a.get(child, []), b.get(child, []), f"{path}/{child}")


def _shape(level, node):
    child = CHILD_KEYS[level]
    kids = tuple(_shape(child, c) for c in node.get(child, ())) if child else ()
    return _signature(level, node), kids


# Alignment costs: pairing identical subtrees is free, pairing same-kind
# nodes is cheaper than dropping one, and a retype beats remove + add.
SAME_SHAPE, SAME_KIND, RETYPE, INDEL = 0.0, 0.5, 1.5, 1.0


def _align(a_list, b_list, level):
    """Minimum-cost alignment as a list of ``(i, j)`` with ``None`` for a gap."""
    sa = [_shape(level, n) for n in a_list]
    sb = [_shape(level, n) for n in b_list]

    def pair_cost(i, j):
        if sa[i] == sb[j]:
            return SAME_SHAPE
        return SAME_KIND if sa[i][0] == sb[j][0] else RETYPE

    n, m = len(sa), len(sb)
    cost = [[0.0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        cost[i][0] = i * INDEL
    for j in range(1, m + 1):
        cost[0][j] = j * INDEL
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost[i][j] = min(cost[i - 1][j - 1] + pair_cost(i - 1, j - 1),
                             cost[i - 1][j] + INDEL, cost[i][j - 1] + INDEL)
    steps = []
    i, j = n, m
    while i or j:
        if i and j and cost[i][j] == cost[i - 1][j - 1] + pair_cost(i - 1, j - 1):
            steps.append((i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i and cost[i][j] == cost[i - 1][j] + INDEL:
            steps.append((i - 1, None))
            i -= 1
        else:
            steps.append((None, j - 1))
            j -= 1
    return steps[::-1]


def _diff_lists(out, level, a_list, b_list, path):
    for i, j in _align(a_list, b_list, level):
        if i is None:
            out.add("structural", Change("added", path, None, b_list[j], j))
        elif j is None:
            out.add("structural", Change("removed", path, a_list[i], None, i))
        elif _signature(level, a_list[i]) != _signature(level, b_list[j]):
            out.add("structural", Change("retyped", path, a_list[i], b_list[j], i))
        else:
            _diff_nodes(out, level, a_list[i], b_list[j], f"{path}/{j}")


def _diff_keyed(out, category, prefix, a_items, b_items):
    a_map = {x["id"]: x for x in a_items}
    b_map = {x["id"]: x for x in b_items}
    for ident in sorted(a_map.keys() | b_map.keys()):
        before, after = a_map.get(ident), b_map.get(ident)
        if before == after:
            continue
        op = "added" if before is None else "removed" if after is None else "changed"
        out.add(category, Change(op, f"{prefix}/{ident}", before, after))


def _diff_map(out, category, prefix, a, b):
    for key in sorted(a.keys() | b.keys()):
        if a.get(key) != b.get(key):
            op = "added" if key not in a else "removed" if key not in b else "changed"
            out.add(category, Change(op, f"{prefix}/{key}", a.get(key), b.get(key)))


def diff(a: InstructionalDesign, b: InstructionalDesign) -> VariantDelta:
    da, db = design_to_dict(a), design_to_dict(b)
    out = _Collector()
    if da["id"] != db["id"]:
        out.add("ui", Change("changed", "id", da["id"], db["id"]))
    for key in ("id", "instructionalDesignModel"):
        if da["process"][key] != db["process"][key]:
            out.add("ui", Change("changed", f"process/{key}", da["process"][key], db["process"][key]))
    _diff_lists(out, "plays", da["process"]["plays"], db["process"]["plays"], "process/plays")
    _diff_keyed(out, "goal", "goals", da["goals"], db["goals"])
    _diff_keyed(out, "goal", "goalPatterns", da.get("goalPatterns", []), db.get("goalPatterns", []))
    for part in ("fragments", "objects", "learningObjects"):
        _diff_keyed(out, "content", f"content/{part}", da["content"][part], db["content"][part])
    ctx_a, ctx_b = da["context"], db["context"]
    for key in sorted(ctx_a.keys() | ctx_b.keys()):
        if key == "metadata":
            continue
        if ctx_a.get(key) != ctx_b.get(key):
            category = {"goalRefs": "goal", "contentRefs": "content"}.get(key, "ui")
            out.add(category, Change("changed", f"context/{key}", ctx_a.get(key), ctx_b.get(key)))
    _diff_map(out, "ui", "context/metadata", ctx_a["metadata"], ctx_b["metadata"])
    _diff_map(out, "ui", "ui", da["ui"], db["ui"])
    _diff_map(out, "ui", "metadata", da["metadata"], db["metadata"])
    return out.delta()


# -- patching -------------------------------------------------------------------

def _resolve(doc, path):
    """Follow a ``/``-separated path of keys and list indexes."""
    node = doc
    for seg in path.split("/"):
        node = node[int(seg)] if isinstance(node, list) else node[seg]
    return node


def _parent_and_key(doc, path):
    head, _, last = path.rpartition("/")
    parent = _resolve(doc, head) if head else doc
    return parent, (int(last) if isinstance(parent, list) else last)


def _apply_structural(doc, changes):
    groups = {}
    for ch in changes:
        groups.setdefault(ch.path, []).append(ch)
    for path in sorted(groups, key=lambda p: (p.count("/"), p)):
        items = _resolve(doc, path)
        removed = {ch.position for ch in groups[path] if ch.op == "removed"}
        for ch in groups[path]:
            if ch.op == "retyped":
                items[ch.position] = copy.deepcopy(ch.after)
        kept = [n for i, n in enumerate(items) if i not in removed]
        for ch in sorted((c for c in groups[path] if c.op == "added"), key=lambda c: c.position):
            kept.insert(ch.position, copy.deepcopy(ch.after))
        items[:] = kept


def _apply_keyed(doc, ch):
    prefix, _, ident = ch.path.rpartition("/")
    items = _resolve(doc, prefix)
    items[:] = [x for x in items if x["id"] != ident]
    if ch.after is not None:
        items.append(copy.deepcopy(ch.after))


def _apply_value(doc, ch):
    parent, key = _parent_and_key(doc, ch.path)
    if ch.op == "removed" or (ch.after is None and not isinstance(parent, list)):
        parent.pop(key, None)
    else:
        parent[key] = copy.deepcopy(ch.after)


KEYED_PREFIXES = ("goals/", "goalPatterns/", "content/fragments/", "content/objects/",
                  "content/learningObjects/")


def apply_delta(design: InstructionalDesign, delta: VariantDelta) -> InstructionalDesign:
    """Replay ``delta`` onto ``design``; ``apply_delta(a, diff(a, b)) == b``."""
    doc = design_to_dict(design)
    doc.setdefault("goalPatterns", [])
    _apply_structural(doc, delta.structural_changes)
    for c in CATEGORIES[1:]:
        for ch in getattr(delta, f"{c}_changes"):
            if ch.path.startswith(KEYED_PREFIXES):
                _apply_keyed(doc, ch)
            elif ch.path == "id":
                doc["id"] = ch.after
            else:
                _apply_value(doc, ch)
    for key in ("noOfPlays", "noOfActs", "noOfScenes", "noOfInstructions"):
        doc["process"].pop(key, None)
    return design_from_dict(doc, resolve=False)
