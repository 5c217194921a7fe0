"""Compile a declarative primer spec into an instructional design.

Each lesson becomes one play whose acts follow an act template. Content
is typed by role: seed sentences, their decomposition chains and
composed words are cases, newly introduced units and the syllable bank
are facts, and the akshara productions a lesson exercises are rules.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional

from idont import _resources
from idont.errors import PrimerSpecError, ScriptError, TemplateError
from idont.ontology.compose import compose
from idont.ontology.model import (
    CANONICAL_ACT_ORDER,
    Act,
    Activity,
    ActivityKind,
    ActKind,
    CognitiveLevel,
    ContentCatalog,
    ContentFragment,
    ContentObject,
    ContextSpec,
    FragmentKind,
    GoalNode,
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
)
from idont.ontology.validate import Violation
from idont.script import (
    CompositionClass,
    Lexicon,
    ScriptProfile,
    UnitClass,
    candidate_words,
    compose_syllable,
    decompose_sentence,
    segment_graphemes,
)

log = logging.getLogger(__name__)

TEMPLATE_ENV = "IDONT_TEMPLATE_DIR"

CONTENT_SLOTS = ("seedSentences", "seedWords", "targets", "syllableBank", "rules",
                 "candidateWords")

# Roles recorded in content-object metadata; downstream checks key on them.
ROLE_SEED = "seedSentence"
ROLE_SEED_WORD = "seedWord"
ROLE_TARGET = "targetUnit"
ROLE_BANK = "syllableBank"
ROLE_RULE = "rule"
ROLE_WORD = "composedWord"

RULE_NOTATION = {
    CompositionClass.V: "V = independent vowel (+ nasal sign)",
    CompositionClass.C: "C = consonant with inherent vowel (+ nasal sign)",
    CompositionClass.C_V: "C+V = consonant + vowel sign (+ nasal sign)",
    CompositionClass.C_C: "C+C = consonant + virama + consonant",
    CompositionClass.C_C_V: "C+C+V = conjunct + vowel sign (+ nasal sign)",
}

UI_FIELDS = {"language": "language", "animationStyle": "animation_style",
             "colorTheme": "color_theme", "animationSpeed": "animation_speed",
             "background": "background"}


# -- primer spec ------------------------------------------------------------

@dataclass(frozen=True)
class LessonSpec:
    index: int
    seeds: tuple
    targets: tuple
    guideline_overrides: Mapping = field(default_factory=dict)
    ui_overrides: Mapping = field(default_factory=dict)
    time_limit: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "targets", tuple(self.targets))
        for name in ("guideline_overrides", "ui_overrides"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name) or {})))

    def target_units(self, profile: ScriptProfile) -> list:
        """Target tokens split into units, in order, without repeats."""
        out, seen = [], set()
        for token in self.targets:
            for unit in segment_graphemes(token, profile):
                if unit.codepoint not in seen:
                    seen.add(unit.codepoint)
                    out.append(unit)
        return out

    def to_dict(self) -> dict:
        d = {"seeds": list(self.seeds), "targets": list(self.targets)}
        if self.guideline_overrides:
            d["guidelines"] = dict(self.guideline_overrides)
        if self.ui_overrides:
            d["ui"] = dict(self.ui_overrides)
        if self.time_limit is not None:
            d["timeLimit"] = self.time_limit
        return d


@dataclass(frozen=True)
class PrimerSpec:
    language: str
    medium: str
    lessons: tuple
    id: Optional[str] = None
    ui: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lessons", tuple(self.lessons))
        object.__setattr__(self, "ui", MappingProxyType(dict(self.ui or {})))

    @property
    def design_id(self) -> str:
        return self.id or f"primer-{self.language}"

    @classmethod
    def from_dict(cls, data: dict) -> "PrimerSpec":
        try:
            lessons = [
                LessonSpec(index=i, seeds=ls.get("seeds", ()), targets=ls.get("targets", ()),
                           guideline_overrides=ls.get("guidelines") or {},
                           ui_overrides=ls.get("ui") or {}, time_limit=ls.get("timeLimit"))
                for i, ls in enumerate(data["lessons"], start=1)
            ]
            return cls(language=data["language"], medium=data.get("medium", data["language"]),
                       lessons=lessons, id=data.get("id"), ui=data.get("ui") or {})
        except (KeyError, TypeError, AttributeError) as exc:
            raise PrimerSpecError(f"malformed primer spec: {exc}") from None

    def to_dict(self) -> dict:
        d = {"language": self.language, "medium": self.medium,
             "lessons": [ls.to_dict() for ls in self.lessons]}
        if self.id:
            d["id"] = self.id
        if self.ui:
            d["ui"] = dict(self.ui)
        return d

    def prior_targets(self) -> list:
        """For each lesson, the target tokens of all earlier lessons."""
        out, acc = [], []
        for lesson in self.lessons:
            out.append(tuple(acc))
            acc.extend(lesson.targets)
        return out


def load_primer(path) -> PrimerSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PrimerSpecError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return PrimerSpec.from_dict(data)


def check_primer(spec: PrimerSpec, profile: ScriptProfile) -> None:
    """Raise :class:`PrimerSpecError` unless the primer's invariants hold."""
    if [ls.index for ls in spec.lessons] != list(range(1, len(spec.lessons) + 1)):
        raise PrimerSpecError("lesson indexes must run 1, 2, 3, ... without gaps")
    owner = {}
    for lesson in spec.lessons:
        check_lesson(lesson, profile)
        for unit in lesson.target_units(profile):
            if unit.codepoint in owner:
                raise PrimerSpecError(
                    f"lesson {lesson.index} reuses target {unit.char} "
                    f"({unit.label}) already introduced in lesson {owner[unit.codepoint]}")
            owner[unit.codepoint] = lesson.index


def check_lesson(lesson: LessonSpec, profile: ScriptProfile) -> list:
    """Validate one lesson and return its decomposed seed sentences."""
    if not lesson.seeds:
        raise PrimerSpecError(f"lesson {lesson.index} has no seed sentences")
    if not lesson.targets:
        raise PrimerSpecError(f"lesson {lesson.index} has no target units")
    trees = []
    for seed in lesson.seeds:
        try:
            trees.append(decompose_sentence(seed, profile))
        except ScriptError as exc:
            raise PrimerSpecError(f"lesson {lesson.index} seed {seed!r}: {exc}") from None
    seen = {u.codepoint for tree in trees for u in tree.units}
    for token in lesson.targets:
        units = segment_graphemes(token, profile)
        if len(units) != 1:
            try:
                compose_syllable(units, profile)
            except ScriptError as exc:
                raise PrimerSpecError(f"lesson {lesson.index} target {token!r} is neither a "
                                      f"single unit nor a syllable: {exc}") from None
    for unit in lesson.target_units(profile):
        if unit.codepoint not in seen:
            raise PrimerSpecError(
                f"lesson {lesson.index} target {unit.char} ({unit.label}) "
                "does not occur in any seed sentence")
    return trees


# -- act template -----------------------------------------------------------

@dataclass(frozen=True)
class InstructionPlan:
    principles: frozenset
    activities: tuple
    content: Optional[str] = None


@dataclass(frozen=True)
class ScenePlan:
    kind: SceneKind
    instructions: tuple


@dataclass(frozen=True)
class ActPlan:
    kind: ActKind
    scenes: tuple


@dataclass(frozen=True)
class ActTemplate:
    name: str
    acts: tuple
    bloom: Mapping
    play_goal: tuple
    guidelines: Mapping

    def guideline(self, medium: str, level: str, kind: Optional[str] = None) -> Optional[str]:
        table = self.guidelines.get(medium) or self.guidelines.get("en") or {}
        if level == "play":
            return table.get("play")
        return table.get(level, {}).get(kind)

    @classmethod
    def from_dict(cls, data: dict) -> "ActTemplate":
        try:
            acts = tuple(
                ActPlan(ActKind(a["kind"]), tuple(
                    ScenePlan(SceneKind(s["kind"]), tuple(
                        InstructionPlan(frozenset(MerrillPrinciple(p) for p in i.get("principles", ())),
                                        tuple(ActivityKind(k) for k in i.get("activities", ())),
                                        i.get("content"))
                        for i in s.get("instructions", ())))
                    for s in a.get("scenes", ())))
                for a in data["acts"])
            bloom = {ActKind(k): (CognitiveLevel(v[0]), KnowledgeLevel(v[1]))
                     for k, v in data.get("bloom", {}).items()}
            play_goal = tuple(data.get("playGoal", ("apply", "procedural")))
            play_goal = (CognitiveLevel(play_goal[0]), KnowledgeLevel(play_goal[1]))
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise TemplateError(f"malformed act template: {exc}") from None
        kinds = tuple(a.kind for a in acts)
        if not data.get("customOrder") and kinds != CANONICAL_ACT_ORDER:
            raise TemplateError("act order differs from the nine-act sequence; "
                                'set "customOrder": true to allow it')
        missing = [a.kind.value for a in acts if a.kind not in bloom]
        if missing:
            raise TemplateError("no Bloom levels for act kind(s): " + ", ".join(missing))
        for act in acts:
            for scene in act.scenes:
                for ins in scene.instructions:
                    if ins.content is not None and ins.content not in CONTENT_SLOTS:
                        raise TemplateError(f"unknown content slot {ins.content!r}")
        return cls(data.get("name", "template"), acts, MappingProxyType(bloom), play_goal,
                   MappingProxyType(dict(data.get("guidelines", {}))))


def load_template(name_or_path="default") -> ActTemplate:
    """Load an act template by path or name.

    Names are looked up first in the directory named by ``IDONT_TEMPLATE_DIR``
    and then among the bundled templates.
    """
    override = os.environ.get(TEMPLATE_ENV)
    if override and not Path(name_or_path).suffix:
        candidate = Path(override) / f"{name_or_path}.json"
        if candidate.is_file():
            name_or_path = candidate
    try:
        return ActTemplate.from_dict(_resources.load_json("templates", name_or_path))
    except json.JSONDecodeError as exc:
        raise TemplateError(f"{name_or_path}: line {exc.lineno}: {exc.msg}") from None


# -- lesson compilation -----------------------------------------------------

@dataclass(frozen=True)
class CompiledLesson:
    play: Play
    goals: tuple
    content: ContentCatalog
    warnings: tuple = ()


class _Content:
    """Accumulates fragments and objects for one lesson."""

    def __init__(self, language, lesson_index):
        self.language = language
        self.lesson = str(lesson_index)
        self.fragments = []
        self.objects = []

    def add(self, obj_id, content_type, role, text, extra_texts=(), audio=True, **metadata):
        frags = [self._text(f"f-{obj_id}", text, self.language)]
        for suffix, value, tag in extra_texts:
            frags.append(self._text(f"f-{obj_id}-{suffix}", value, tag))
        if audio:
            frags.append(ContentFragment(f"f-{obj_id}-audio", FragmentKind.AUDIO,
                                         f"content/f-{obj_id}-audio.ogg", self.language))
        self.fragments.extend(frags)
        meta = {"role": role, "lesson": self.lesson, **metadata}
        self.objects.append(ContentObject(obj_id, [f.id for f in frags], content_type, meta))
        return obj_id

    @staticmethod
    def _text(frag_id, text, tag):
        return ContentFragment(frag_id, FragmentKind.TEXT, f"content/{frag_id}.txt", tag, text)


def phoneme_text(text: str, profile: ScriptProfile) -> str:
    """Space-separated phonemes of a single unit or of a run of words."""
    units = segment_graphemes(text, profile)
    if len(units) == 1:
        return " ".join(profile.phonemes.get(units[0].codepoint, ()))
    tree = decompose_sentence(text, profile)
    return " ".join(p.id for word in tree.words for p in word.phonemes)


def target_metadata(token: str, profile: ScriptProfile) -> dict:
    """Unit labels of a target token and its class (``syllable`` if several units)."""
    units = segment_graphemes(token, profile)
    cls = units[0].unit_class.value if len(units) == 1 else "syllable"
    return {"units": _unit_labels(units), "unitClass": cls}


def unit_labels(text: str, profile: ScriptProfile) -> str:
    """Space-separated ``U+XXXX`` labels of the units spelling ``text``."""
    return _unit_labels(u for u in segment_graphemes(text, profile) if not u.char.isspace())


def _unit_labels(units):
    return " ".join(u.label for u in units)


def _fill(text, index, targets):
    return text.replace("{index}", str(index)).replace("{targets}", targets)


def compile_lesson(lesson: LessonSpec, lexicon: Lexicon, profile: ScriptProfile,
                   template: ActTemplate, *, prior_targets=(), medium: Optional[str] = None,
                   language: Optional[str] = None) -> CompiledLesson:
    """Compile one lesson into a play, its goals and its content.

    ``prior_targets`` lists the target tokens of every earlier lesson; the
    syllable bank and the practice words are drawn from those plus this
    lesson's targets.
    """
    trees = check_lesson(lesson, profile)
    k = lesson.index
    pid = f"p{k}"
    language = language or profile.language_tag
    medium = medium or language
    content = _Content(language, k)
    phon_tag = f"{language}-fonipa"

    learnt_tokens = list(prior_targets) + list(lesson.targets)
    learnt_units = [u for tok in learnt_tokens for u in segment_graphemes(tok, profile)]
    words = candidate_words(learnt_units, lexicon, profile)

    slots = {slot: [] for slot in CONTENT_SLOTS}
    for i, tree in enumerate(trees, start=1):
        sid = f"{pid}-seed-{i}"
        slots["seedSentences"].append(content.add(sid, "case", ROLE_SEED, tree.surface))
        for j, word in enumerate(tree.words, start=1):
            slots["seedWords"].append(content.add(
                f"{sid}-w{j}", "case", ROLE_SEED_WORD, word.surface,
                extra_texts=[("syllables", " + ".join(s.surface for s in word.syllables), language),
                             ("phonemes", phoneme_text(word.surface, profile), phon_tag)]))
    for i, token in enumerate(lesson.targets, start=1):
        meta = target_metadata(token, profile)
        sounds = meta["unitClass"] == "syllable" or UnitClass(meta["unitClass"]).carries_sound
        slots["targets"].append(content.add(
            f"{pid}-fact-{i}", "fact", ROLE_TARGET, token,
            extra_texts=[("phoneme", phoneme_text(token, profile), phon_tag)] if sounds else (),
            **meta))
    slots["syllableBank"].append(content.add(
        f"{pid}-bank", "fact", ROLE_BANK, " ".join(learnt_tokens), audio=False,
        units=_unit_labels(learnt_units)))

    exercised = sorted({s.composition_class for tree in trees for s in tree.syllables}
                       | {s.composition_class for w in words for s in w.syllables},
                       key=lambda c: list(CompositionClass).index(c))
    for cls in exercised:
        example = next((s.surface for tree in trees for s in tree.syllables
                        if s.composition_class is cls), None)
        if example is None:
            example = next(s.surface for w in words for s in w.syllables
                           if s.composition_class is cls)
        slots["rules"].append(content.add(
            f"{pid}-rule-{cls.value.lower().replace('_', '-')}", "rule", ROLE_RULE,
            RULE_NOTATION[cls], extra_texts=[("example", example, language)], audio=False,
            compositionClass=cls.value))
    # Rule notation is script-neutral; tag it so variants need not rewrite it.
    for pos, frag in enumerate(content.fragments):
        if frag.id.startswith(f"f-{pid}-rule-") and not frag.id.endswith("-example"):
            content.fragments[pos] = replace(frag, language_tag="zxx")

    seed_surfaces = {w.surface for tree in trees for w in tree.words}
    for i, word in enumerate(words, start=1):
        slots["candidateWords"].append(content.add(
            f"{pid}-word-{i}", "case", ROLE_WORD, word.surface,
            extra_texts=[("syllables", " + ".join(s.surface for s in word.syllables), language)],
            previouslyShown=str(word.surface in seed_surfaces).lower()))

    targets_text = " ".join(lesson.targets)
    overrides = {(key if key.startswith(pid + "-") or key == pid else
                  (pid if key == "play" else f"{pid}-{key}")): value
                 for key, value in lesson.guideline_overrides.items()}

    def guidelines(node_id, level, kind=None):
        if node_id in overrides:
            value = overrides[node_id]
            return (value,) if isinstance(value, str) else tuple(value)
        text = template.guideline(medium, level, kind)
        return (_fill(text, k, targets_text),) if text else ()

    acts = []
    warnings = []
    for j, act_plan in enumerate(template.acts, start=1):
        aid = f"{pid}-a{j}"
        scenes = []
        for m, scene_plan in enumerate(act_plan.scenes, start=1):
            scid = f"{aid}-s{m}"
            instructions = []
            for n, ins_plan in enumerate(scene_plan.instructions, start=1):
                iid = f"{scid}-i{n}"
                refs = tuple(slots[ins_plan.content]) if ins_plan.content else ()
                if ins_plan.content == "candidateWords" and not refs \
                        and act_plan.kind is ActKind.EXERCISE:
                    warnings.append(Violation(
                        "EMPTY_EXERCISE", f"process/{iid}",
                        f"lesson {k} has no practice words over the learnt units",
                        severity="warning"))
                activities = tuple(Activity(f"{iid}-v{q}", kind)
                                   for q, kind in enumerate(ins_plan.activities, start=1))
                instructions.append(Instruction(iid, ins_plan.principles, activities, refs,
                                                guidelines(iid, "instructions")))
            scenes.append(Scene(scid, scene_plan.kind, instructions,
                                guidelines(scid, "scenes", scene_plan.kind.value)))
        acts.append(Act(aid, act_plan.kind, scenes, guidelines(aid, "acts", act_plan.kind.value),
                        associated_goal=f"g-{aid}"))
    play = Play(pid, f"Lesson {k}", acts, guidelines(pid, "play"),
                time_limit=lesson.time_limit, associated_goal=f"g-{pid}",
                ui_overrides=lesson.ui_overrides)

    learning_objects = [LearningObject(f"lo-{pid}", LearningObjectKind.PLAY_OBJECT,
                                       [o.id for o in content.objects], pid)]
    for act in acts:
        refs = list(dict.fromkeys(r for ins in _instructions(act) for r in ins.content_refs))
        if refs:
            learning_objects.append(LearningObject(f"lo-{act.id}", LearningObjectKind.ACT_OBJECT,
                                                   refs, act.id))
    catalog = ContentCatalog(content.fragments, content.objects, learning_objects)
    for w in warnings:
        log.warning("%s: %s", w.path, w.message)
    return CompiledLesson(play, tuple(generate_goals(lesson, play, template)), catalog,
                          tuple(warnings))


def _instructions(node):
    if isinstance(node, Instruction):
        yield node
        return
    for child in node.children:
        yield from _instructions(child)


def generate_goals(lesson: LessonSpec, play: Play, template: Optional[ActTemplate] = None) -> list:
    """One play-level goal plus one goal per act, tagged with Bloom levels.

    Lesson k's play goal lists lesson k-1's play goal as its prerequisite
    and previous goal; the forward link is added once the next lesson exists.
    """
    template = template or load_template()
    k = lesson.index
    prev = f"g-p{k - 1}" if k > 1 else None
    fact_refs = [r for act in play.acts if act.kind is ActKind.NEW_PHONEMES
                 for ins in _instructions(act) for r in ins.content_refs]
    cognitive, knowledge = template.play_goal
    goals = [GoalNode(
        id=f"g-{play.id}", name=play.title or f"Lesson {k}", cognitive_level=cognitive,
        knowledge_level=knowledge, granularity=Granularity.PLAY, priority=Level.HIGH,
        prerequisites=(prev,) if prev else (), previous_goal=prev,
        achieved_by_process=play.id, uses_content=tuple(dict.fromkeys(fact_refs)))]
    for act in play.acts:
        cognitive, knowledge = template.bloom[act.kind]
        refs = tuple(dict.fromkeys(r for ins in _instructions(act) for r in ins.content_refs))
        goals.append(GoalNode(
            id=f"g-{act.id}", name=f"{play.title or play.id}: {act.kind.value}",
            cognitive_level=cognitive, knowledge_level=knowledge, granularity=Granularity.ACT,
            priority=Level.MEDIUM, achieved_by_process=act.id, uses_content=refs))
    return goals


# -- whole primer -----------------------------------------------------------

DEFAULT_STUBS = {"environment_ref": "environment-default", "evaluation_ref": "evaluation-default",
                 "roles_ref": "roles-learner-facilitator"}


def ui_from_overrides(language: str, overrides: Mapping) -> UiConfig:
    kwargs = {"language": language}
    for key, value in overrides.items():
        if key not in UI_FIELDS:
            raise PrimerSpecError(f"unknown UI setting {key!r}")
        kwargs[UI_FIELDS[key]] = Level(value) if key == "animationSpeed" else value
    return UiConfig(**kwargs)


def compile_primer(spec: PrimerSpec, lexicon: Lexicon, profile: ScriptProfile,
                   template: Optional[ActTemplate] = None, *, warnings=None) -> InstructionalDesign:
    """Compile every lesson and compose the result into a validated design.

    Warnings (such as an exercise act with no practice words) are appended
    to ``warnings`` when a list is supplied.
    """
    template = template or load_template()
    if spec.language != profile.language_tag:
        raise PrimerSpecError(f"primer language {spec.language!r} does not match "
                              f"profile language {profile.language_tag!r}")
    check_primer(spec, profile)
    compiled = [compile_lesson(lesson, lexicon, profile, template, prior_targets=prior,
                               medium=spec.medium, language=spec.language)
                for lesson, prior in zip(spec.lessons, spec.prior_targets())]

    goals, catalog = [], ContentCatalog()
    for i, lesson in enumerate(compiled):
        lesson_goals = list(lesson.goals)
        if i + 1 < len(compiled):
            lesson_goals[0] = replace(lesson_goals[0], next_goal=compiled[i + 1].goals[0].id)
        goals.extend(lesson_goals)
        catalog = catalog.merge(lesson.content)
        if warnings is not None:
            warnings.extend(lesson.warnings)

    process = ProcessTree(plays=[c.play for c in compiled])
    context = ContextSpec(process_ref=process.id,
                          goal_refs=[c.goals[0].id for c in compiled],
                          content_refs=[f"lo-{c.play.id}" for c in compiled], **DEFAULT_STUBS)
    metadata = {"language": spec.language, "medium": spec.medium, "template": template.name,
                "script": profile.script or "", "lessons": str(len(compiled))}
    return compose(context, goals, process, catalog, ui_from_overrides(spec.language, spec.ui),
                   design_id=spec.design_id, metadata=metadata)
