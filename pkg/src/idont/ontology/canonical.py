"""Canonical JSON form of a design, and the format-sniffing parser."""

from __future__ import annotations

import json
import re
from datetime import datetime

from idont.errors import (
    DanglingReferenceError,
    DesignParseError,
    DuplicateIdError,
    UnknownEnumError,
)
from idont.ontology.model import (
    Act,
    ActKind,
    Activity,
    ActivityKind,
    CognitiveLevel,
    ContentCatalog,
    ContentFragment,
    ContentObject,
    ContextSpec,
    FragmentKind,
    GoalNode,
    GoalPattern,
    Granularity,
    Instruction,
    InstructionalDesign,
    KnowledgeLevel,
    LearningObject,
    LearningObjectKind,
    Level,
    MerrillPrinciple,
    Play,
    ProcessTree,
    Scene,
    SceneKind,
    UiConfig,
    is_valid_content_type,
)

ID_PATTERN = re.compile(r"[a-z0-9-]+")
TOP_LEVEL_KEYS = ("context", "goals", "process", "content", "ui", "metadata")


def _enum(cls, token, name=None):
    try:
        return cls(token)
    except ValueError:
        raise UnknownEnumError(name or cls.__name__, token) from None


def _opt(d, key, value):
    if value is not None:
        d[key] = value


# -- to dict ------------------------------------------------------------------

def _activity(a):
    return {"id": a.id, "kind": a.kind.value, "description": a.description}


def _instruction(i):
    d = {
        "id": i.id,
        "principles": sorted(p.value for p in i.principles),
        "activities": [_activity(a) for a in i.activities],
        "contentRefs": list(i.content_refs),
        "guidelines": list(i.guidelines),
    }
    _opt(d, "timeLimit", i.time_limit)
    return d


def _scene(s):
    d = {"id": s.id, "kind": s.kind.value, "guidelines": list(s.guidelines),
         "instructions": [_instruction(i) for i in s.instructions]}
    _opt(d, "timeLimit", s.time_limit)
    _opt(d, "associatedGoal", s.associated_goal)
    return d


def _act(a):
    d = {"id": a.id, "kind": a.kind.value, "guidelines": list(a.guidelines),
         "scenes": [_scene(s) for s in a.scenes]}
    _opt(d, "timeLimit", a.time_limit)
    _opt(d, "associatedGoal", a.associated_goal)
    return d


def _play(p):
    d = {"id": p.id, "title": p.title, "guidelines": list(p.guidelines),
         "acts": [_act(a) for a in p.acts]}
    _opt(d, "timeLimit", p.time_limit)
    _opt(d, "associatedGoal", p.associated_goal)
    if p.ui_overrides:
        d["ui"] = dict(p.ui_overrides)
    return d


def process_to_dict(tree: ProcessTree) -> dict:
    return {
        "id": tree.id,
        "instructionalDesignModel": tree.instructional_design_model,
        "noOfPlays": tree.no_of_plays,
        "noOfActs": tree.no_of_acts,
        "noOfScenes": tree.no_of_scenes,
        "noOfInstructions": tree.no_of_instructions,
        "plays": [_play(p) for p in tree.plays],
    }


def goal_to_dict(g: GoalNode) -> dict:
    d = {
        "id": g.id,
        "name": g.name,
        "priority": g.priority.value,
        "progress": g.progress,
        "granularity": g.granularity.value,
        "knowledgeLevel": g.knowledge_level.value,
        "cognitiveLevel": g.cognitive_level.value,
        "prerequisites": list(g.prerequisites),
        "usesContent": list(g.uses_content),
    }
    _opt(d, "deadline", g.deadline.isoformat() if g.deadline else None)
    for key, value in (("previousGoal", g.previous_goal), ("nextGoal", g.next_goal),
                       ("achievedByProcess", g.achieved_by_process),
                       ("hasEvaluation", g.has_evaluation),
                       ("runsInEnvironment", g.runs_in_environment),
                       ("goalText", g.goal_text), ("goalImage", g.goal_image),
                       ("goalAudio", g.goal_audio), ("goalVideo", g.goal_video),
                       ("abcd", g.abcd)):
        _opt(d, key, value)
    if g.goal_metadata:
        d["goalMetadata"] = dict(g.goal_metadata)
    return d


def content_to_dict(c: ContentCatalog) -> dict:
    frags = []
    for f in c.fragments:
        d = {"id": f.id, "kind": f.kind.value, "payloadRef": f.payload_ref,
             "languageTag": f.language_tag}
        _opt(d, "text", f.text)
        frags.append(d)
    return {
        "fragments": frags,
        "objects": [{"id": o.id, "contentType": o.content_type,
                     "fragmentRefs": list(o.fragment_refs), "metadata": dict(o.metadata)}
                    for o in c.objects],
        "learningObjects": [{"id": lo.id, "kind": lo.kind.value,
                             "objectRefs": list(lo.object_refs), "processRef": lo.process_ref}
                            for lo in c.learning_objects],
    }


def context_to_dict(c: ContextSpec) -> dict:
    return {
        "processRef": c.process_ref,
        "goalRefs": list(c.goal_refs),
        "contentRefs": list(c.content_refs),
        "environmentRef": c.environment_ref,
        "evaluationRef": c.evaluation_ref,
        "rolesRef": c.roles_ref,
        "metadata": dict(c.metadata),
    }


def ui_to_dict(u: UiConfig) -> dict:
    return {"language": u.language, "animationStyle": u.animation_style,
            "colorTheme": u.color_theme, "animationSpeed": u.animation_speed.value,
            "background": u.background}


def design_to_dict(design: InstructionalDesign) -> dict:
    d = {
        "id": design.id,
        "context": context_to_dict(design.context),
        "goals": [goal_to_dict(g) for g in design.goals],
        "process": process_to_dict(design.process),
        "content": content_to_dict(design.content),
        "ui": ui_to_dict(design.ui),
        "metadata": dict(design.metadata),
    }
    if design.goal_patterns:
        d["goalPatterns"] = [{"id": p.id, "sourceOfPattern": p.source_of_pattern,
                              "tradeOffs": p.trade_offs, "appliesTo": list(p.applies_to)}
                             for p in design.goal_patterns]
    return d


def dumps_design(design: InstructionalDesign) -> str:
    """Byte-stable canonical JSON text."""
    return json.dumps(design_to_dict(design), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


# -- from dict ------------------------------------------------------------------

def _activity_from(d):
    return Activity(d["id"], _enum(ActivityKind, d["kind"]), d.get("description", ""))


def _instruction_from(d):
    return Instruction(
        id=d["id"],
        principles=frozenset(_enum(MerrillPrinciple, p) for p in d.get("principles", ())),
        activities=[_activity_from(a) for a in d.get("activities", ())],
        content_refs=d.get("contentRefs", ()),
        guidelines=d.get("guidelines", ()),
        time_limit=d.get("timeLimit"),
    )


def _scene_from(d):
    return Scene(d["id"], _enum(SceneKind, d["kind"]),
                 [_instruction_from(i) for i in d.get("instructions", ())],
                 d.get("guidelines", ()), d.get("timeLimit"), d.get("associatedGoal"))


def _act_from(d):
    return Act(d["id"], _enum(ActKind, d["kind"]),
               [_scene_from(s) for s in d.get("scenes", ())],
               d.get("guidelines", ()), d.get("timeLimit"), d.get("associatedGoal"))


def _play_from(d):
    return Play(d["id"], d.get("title", ""), [_act_from(a) for a in d.get("acts", ())],
                d.get("guidelines", ()), d.get("timeLimit"), d.get("associatedGoal"),
                d.get("ui", {}))


def process_from_dict(d: dict) -> ProcessTree:
    tree = ProcessTree(d.get("id", "process"),
                       d.get("instructionalDesignModel", "Merrill"),
                       [_play_from(p) for p in d.get("plays", ())])
    for key, actual in (("noOfPlays", tree.no_of_plays), ("noOfActs", tree.no_of_acts),
                        ("noOfScenes", tree.no_of_scenes),
                        ("noOfInstructions", tree.no_of_instructions)):
        if key in d and d[key] != actual:
            raise DesignParseError(f"{key} is {d[key]} but the tree has {actual}")
    return tree


def goal_from_dict(d: dict) -> GoalNode:
    deadline = d.get("deadline")
    if deadline is not None:
        try:
            deadline = datetime.fromisoformat(deadline)
        except ValueError:
            raise DesignParseError(f"goal {d.get('id')!r}: bad deadline {deadline!r}") from None
    for required in ("cognitiveLevel", "knowledgeLevel"):
        if required not in d:
            raise DesignParseError(f"goal {d.get('id')!r} lacks mandatory {required}")
    return GoalNode(
        id=d["id"],
        name=d.get("name", ""),
        cognitive_level=_enum(CognitiveLevel, d["cognitiveLevel"]),
        knowledge_level=_enum(KnowledgeLevel, d["knowledgeLevel"]),
        granularity=_enum(Granularity, d.get("granularity", "play")),
        priority=_enum(Level, d.get("priority", "medium"), "priority"),
        progress=float(d.get("progress", 0.0)),
        deadline=deadline,
        prerequisites=d.get("prerequisites", ()),
        previous_goal=d.get("previousGoal"),
        next_goal=d.get("nextGoal"),
        achieved_by_process=d.get("achievedByProcess"),
        uses_content=d.get("usesContent", ()),
        has_evaluation=d.get("hasEvaluation"),
        runs_in_environment=d.get("runsInEnvironment"),
        goal_text=d.get("goalText"),
        goal_image=d.get("goalImage"),
        goal_audio=d.get("goalAudio"),
        goal_video=d.get("goalVideo"),
        goal_metadata=d.get("goalMetadata", {}),
        abcd=d.get("abcd"),
    )


def content_from_dict(d: dict) -> ContentCatalog:
    frags = [ContentFragment(f["id"], _enum(FragmentKind, f["kind"]), f.get("payloadRef", ""),
                             f.get("languageTag", ""), f.get("text"))
             for f in d.get("fragments", ())]
    objects = []
    for o in d.get("objects", ()):
        if not is_valid_content_type(o["contentType"]):
            raise UnknownEnumError("ContentType", o["contentType"])
        objects.append(ContentObject(o["id"], o.get("fragmentRefs", ()), o["contentType"],
                                     o.get("metadata", {})))
    los = [LearningObject(lo["id"], _enum(LearningObjectKind, lo["kind"]),
                          lo.get("objectRefs", ()), lo.get("processRef", ""))
           for lo in d.get("learningObjects", ())]
    return ContentCatalog(frags, objects, los)


def context_from_dict(d: dict) -> ContextSpec:
    return ContextSpec(
        process_ref=d.get("processRef", ""),
        goal_refs=d.get("goalRefs", ()),
        content_refs=d.get("contentRefs", ()),
        environment_ref=d.get("environmentRef", ""),
        evaluation_ref=d.get("evaluationRef", ""),
        roles_ref=d.get("rolesRef", ""),
        metadata=d.get("metadata", {}),
    )


def ui_from_dict(d: dict) -> UiConfig:
    return UiConfig(
        language=d.get("language", ""),
        animation_style=d.get("animationStyle", "fade"),
        color_theme=d.get("colorTheme", "default"),
        animation_speed=_enum(Level, d.get("animationSpeed", "medium"), "animationSpeed"),
        background=d.get("background", "#ffffff"),
    )


def design_from_dict(d: dict, *, resolve: bool = True) -> InstructionalDesign:
    """Build a design from canonical JSON data.

    With ``resolve`` (the default) duplicate ids and dangling links raise;
    pass ``resolve=False`` to load a broken design for inspection.
    """
    if not isinstance(d, dict):
        raise DesignParseError("design document must be a JSON object")
    missing = [k for k in TOP_LEVEL_KEYS if k not in d]
    if missing:
        raise DesignParseError("missing top-level key(s): " + ", ".join(missing))
    try:
        design = InstructionalDesign(
            id=d.get("id", "design"),
            context=context_from_dict(d["context"]),
            goals=[goal_from_dict(g) for g in d["goals"]],
            process=process_from_dict(d["process"]),
            content=content_from_dict(d["content"]),
            ui=ui_from_dict(d["ui"]),
            metadata=d["metadata"],
            goal_patterns=[GoalPattern(p["id"], p.get("sourceOfPattern", ""),
                                       p.get("tradeOffs", ""), p.get("appliesTo", ()))
                           for p in d.get("goalPatterns", ())],
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise DesignParseError(f"malformed design document: {exc!r}") from exc
    if resolve:
        check_resolution(design)
    return design


def iter_links(design: InstructionalDesign):
    """Yield ``(source_path, target_id, target_kinds)`` for every internal link."""
    ctx = design.context
    yield "context.processRef", ctx.process_ref, ("process",)
    for ref in ctx.goal_refs:
        yield "context.goalRefs", ref, ("goal",)
    for ref in ctx.content_refs:
        yield "context.contentRefs", ref, ("content",)
    for g in design.goals:
        for ref in g.prerequisites:
            yield f"goals/{g.id}.prerequisites", ref, ("goal",)
        for name, ref in (("previousGoal", g.previous_goal), ("nextGoal", g.next_goal)):
            if ref is not None:
                yield f"goals/{g.id}.{name}", ref, ("goal",)
        if g.achieved_by_process is not None:
            yield f"goals/{g.id}.achievedByProcess", g.achieved_by_process, ("node",)
        for ref in g.uses_content:
            yield f"goals/{g.id}.usesContent", ref, ("content",)
    for p in design.goal_patterns:
        for ref in p.applies_to:
            yield f"goalPatterns/{p.id}.appliesTo", ref, ("goal",)
    for level, node, _ in design.process.walk():
        goal = getattr(node, "associated_goal", None)
        if goal is not None:
            yield f"process/{node.id}.associatedGoal", goal, ("goal",)
        for ref in getattr(node, "content_refs", ()):
            yield f"process/{node.id}.contentRefs", ref, ("content",)
    for o in design.content.objects:
        for ref in o.fragment_refs:
            yield f"content/{o.id}.fragmentRefs", ref, ("fragment",)
    for lo in design.content.learning_objects:
        for ref in lo.object_refs:
            yield f"content/{lo.id}.objectRefs", ref, ("object",)
        yield f"content/{lo.id}.processRef", lo.process_ref, ("node",)


def resolves(design: InstructionalDesign, target: str, kinds) -> bool:
    for kind in kinds:
        if kind == "process" and target == design.process.id:
            return True
        if kind == "goal" and target in design.goal_index:
            return True
        if kind == "node" and target in design.process.index:
            return True
        if kind == "content" and target in design.content.index:
            return True
        if kind == "fragment" and isinstance(design.content.index.get(target), ContentFragment):
            return True
        if kind == "object" and isinstance(design.content.index.get(target), ContentObject):
            return True
    return False


def check_resolution(design: InstructionalDesign) -> None:
    seen = set()
    for _, ident in design.all_ids():
        if ident in seen:
            raise DuplicateIdError(ident)
        seen.add(ident)
    for source, target, kinds in iter_links(design):
        if not resolves(design, target, kinds):
            raise DanglingReferenceError(source, target)


def loads_design(text: str, *, resolve: bool = True) -> InstructionalDesign:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DesignParseError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    return design_from_dict(data, resolve=resolve)


def parse_design(document, *, resolve: bool = True) -> InstructionalDesign:
    """Parse canonical JSON or OWL/XML (sniffed from the first character)."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    if document.lstrip().startswith("<"):
        from idont.ontology.owlxml import parse_owl_xml
        return parse_owl_xml(document, resolve=resolve)
    return loads_design(document, resolve=resolve)


def load_design(path, *, resolve: bool = True) -> InstructionalDesign:
    with open(path, encoding="utf-8") as fh:
        return parse_design(fh.read(), resolve=resolve)
