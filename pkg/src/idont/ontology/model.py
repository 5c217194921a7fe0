"""Immutable in-memory model of an instructional design.

A design is stitched from four aspect parts (goals, process, content, UI)
plus a context that points at each of them. Evaluation, environment and
roles are opaque stub identifiers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from datetime import datetime
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Optional

__all__ = [
    "DEFAULT_MODEL", "Level", "Granularity", "KnowledgeLevel", "CognitiveLevel", "ActKind",
    "CANONICAL_ACT_ORDER", "SceneKind", "MerrillPrinciple", "ActivityKind", "FragmentKind",
    "ContentType", "EXTENDED_PREFIX", "is_valid_content_type", "LearningObjectKind",
    "Activity", "Instruction", "Scene", "Act", "Play", "LEVELS", "ProcessNode",
    "ProcessTree", "GoalNode", "GoalPattern", "ContentFragment", "ContentObject",
    "LearningObject", "ContentCatalog", "ContextSpec", "UiConfig", "InstructionalDesign",
]

DEFAULT_MODEL = "Merrill"


class Level(str, enum.Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class Granularity(str, enum.Enum):
    PLAY = "play"
    ACT = "act"
    SCENE = "scene"
    INSTRUCTION = "instruction"


class KnowledgeLevel(str, enum.Enum):
    FACTUAL = "factual"
    CONCEPTUAL = "conceptual"
    PROCEDURAL = "procedural"
    METACOGNITIVE = "metacognitive"


class CognitiveLevel(str, enum.Enum):
    REMEMBER = "remember"
    UNDERSTAND = "understand"
    APPLY = "apply"
    ANALYZE = "analyze"
    EVALUATE = "evaluate"
    CREATE = "create"


class ActKind(str, enum.Enum):
    MOTIVATING = "motivating"
    NEW_PHONEMES = "newPhonemes"
    FORMING_WORDS_AND_SOUNDS = "formingWordsAndSounds"
    SYLLABLE_BANK = "syllableBank"
    COMPARING = "comparing"
    LEARNING_RULES = "learningRules"
    WRITING_INSTRUCTIONS = "writingInstructions"
    EXERCISE = "exercise"
    SUMMARY = "summary"


#: The nine-act lesson sequence used by adult-literacy primers.
CANONICAL_ACT_ORDER = tuple(ActKind)


class SceneKind(str, enum.Enum):
    SIMILAR_SOUNDS = "similarSounds"
    SIMILAR_SYLLABLES = "similarSyllables"
    INSPECTING_SYLLABLE_BANK = "inspectingSyllableBank"
    SYLLABLE_FORMATION_RULES = "syllableFormationRules"
    FAMILIAR_WORDS = "familiarWords"
    SYLLABLE_BANNER = "syllableBanner"
    FORMING_WORDS = "formingWords"


class MerrillPrinciple(str, enum.Enum):
    ACTIVATION = "activation"
    DEMONSTRATION = "demonstration"
    APPLICATION = "application"
    INTEGRATION = "integration"


class ActivityKind(str, enum.Enum):
    LEARNING = "learning"
    SUPPORT = "support"
    STRUCTURE = "structure"
    GUIDANCE = "guidance"
    COACHING = "coaching"
    REFLECTION = "reflection"
    INTERPRETED = "interpreted"
    MONITORED = "monitored"


class FragmentKind(str, enum.Enum):
    TEXT = "text"
    AUDIO = "audio"
    ANIMATION = "animation"
    VIDEO = "video"
    IMAGE = "image"


class ContentType(str, enum.Enum):
    """Core content types. Extended types are spelled ``extended:<name>``."""

    FACT = "fact"
    CASE = "case"
    RULE = "rule"
    MODEL = "model"
    THEORY = "theory"


EXTENDED_PREFIX = "extended:"


def is_valid_content_type(token: str) -> bool:
    if token.startswith(EXTENDED_PREFIX):
        return len(token) > len(EXTENDED_PREFIX)
    return token in ContentType._value2member_map_


class LearningObjectKind(str, enum.Enum):
    PLAY_OBJECT = "playObject"
    ACT_OBJECT = "actObject"
    SCENE_OBJECT = "sceneObject"
    INSTRUCTION_OBJECT = "instructionObject"

    @property
    def level(self) -> Granularity:
        return Granularity(self.value[: -len("Object")])


def frozen_map(mapping) -> Mapping:
    return MappingProxyType(dict(sorted((mapping or {}).items())))


class _Frozen:
    """Coerce list fields to tuples and dict fields to read-only maps."""

    _tuples: tuple = ()
    _maps: tuple = ()

    def __post_init__(self):
        for name in self._tuples:
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for name in self._maps:
            object.__setattr__(self, name, frozen_map(getattr(self, name)))


# -- process ----------------------------------------------------------------

@dataclass(frozen=True)
class Activity:
    id: str
    kind: ActivityKind
    description: str = ""


@dataclass(frozen=True)
class Instruction(_Frozen):
    id: str
    principles: frozenset = frozenset()
    activities: tuple = ()
    content_refs: tuple = ()
    guidelines: tuple = ()
    time_limit: Optional[int] = None

    _tuples = ("activities", "content_refs", "guidelines")

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "principles", frozenset(self.principles))

    @property
    def children(self):
        return self.activities


@dataclass(frozen=True)
class Scene(_Frozen):
    id: str
    kind: SceneKind
    instructions: tuple = ()
    guidelines: tuple = ()
    time_limit: Optional[int] = None
    associated_goal: Optional[str] = None

    _tuples = ("instructions", "guidelines")

    @property
    def children(self):
        return self.instructions

    @property
    def principles(self) -> frozenset:
        out = set()
        for ins in self.instructions:
            out |= ins.principles
        return frozenset(out)


@dataclass(frozen=True)
class Act(_Frozen):
    id: str
    kind: ActKind
    scenes: tuple = ()
    guidelines: tuple = ()
    time_limit: Optional[int] = None
    associated_goal: Optional[str] = None

    _tuples = ("scenes", "guidelines")

    @property
    def children(self):
        return self.scenes


@dataclass(frozen=True)
class Play(_Frozen):
    id: str
    title: str = ""
    acts: tuple = ()
    guidelines: tuple = ()
    time_limit: Optional[int] = None
    associated_goal: Optional[str] = None
    ui_overrides: Mapping = field(default_factory=dict)

    _tuples = ("acts", "guidelines")
    _maps = ("ui_overrides",)

    @property
    def children(self):
        return self.acts


LEVELS = (Granularity.PLAY, Granularity.ACT, Granularity.SCENE, Granularity.INSTRUCTION)


@dataclass(frozen=True)
class ProcessNode:
    level: str
    node: object
    parent: Optional[str]


@dataclass(frozen=True)
class ProcessTree(_Frozen):
    id: str = "process"
    instructional_design_model: str = DEFAULT_MODEL
    plays: tuple = ()

    _tuples = ("plays",)

    def walk(self):
        """Yield every node depth-first as ``(level, node, parent_id)``."""
        for play in self.plays:
            yield "play", play, None
            for act in play.acts:
                yield "act", act, play.id
                for scene in act.scenes:
                    yield "scene", scene, act.id
                    for ins in scene.instructions:
                        yield "instruction", ins, scene.id
                        for activity in ins.activities:
                            yield "activity", activity, ins.id

    @cached_property
    def index(self) -> Mapping:
        out = {}
        for level, node, parent in self.walk():
            out.setdefault(node.id, ProcessNode(level, node, parent))
        return MappingProxyType(out)

    def _count(self, level):
        return sum(1 for lv, _, _ in self.walk() if lv == level)

    @property
    def no_of_plays(self) -> int:
        return len(self.plays)

    @property
    def no_of_acts(self) -> int:
        return self._count("act")

    @property
    def no_of_scenes(self) -> int:
        return self._count("scene")

    @property
    def no_of_instructions(self) -> int:
        return self._count("instruction")

    def scenes(self):
        return [node for level, node, _ in self.walk() if level == "scene"]

    def instructions(self):
        return [node for level, node, _ in self.walk() if level == "instruction"]


# -- goals ------------------------------------------------------------------

@dataclass(frozen=True)
class GoalNode(_Frozen):
    id: str
    name: str
    cognitive_level: CognitiveLevel
    knowledge_level: KnowledgeLevel
    granularity: Granularity = Granularity.PLAY
    priority: Level = Level.MEDIUM
    progress: float = 0.0
    deadline: Optional[datetime] = None
    prerequisites: tuple = ()
    previous_goal: Optional[str] = None
    next_goal: Optional[str] = None
    achieved_by_process: Optional[str] = None
    uses_content: tuple = ()
    has_evaluation: Optional[str] = None
    runs_in_environment: Optional[str] = None
    goal_text: Optional[str] = None
    goal_image: Optional[str] = None
    goal_audio: Optional[str] = None
    goal_video: Optional[str] = None
    goal_metadata: Mapping = field(default_factory=dict)
    abcd: Optional[str] = None

    _tuples = ("prerequisites", "uses_content")
    _maps = ("goal_metadata",)


@dataclass(frozen=True)
class GoalPattern(_Frozen):
    id: str
    source_of_pattern: str
    trade_offs: str = ""
    applies_to: tuple = ()

    _tuples = ("applies_to",)


# -- content ----------------------------------------------------------------

@dataclass(frozen=True)
class ContentFragment:
    id: str
    kind: FragmentKind
    payload_ref: str
    language_tag: str
    text: Optional[str] = None


@dataclass(frozen=True)
class ContentObject(_Frozen):
    id: str
    fragment_refs: tuple
    content_type: str
    metadata: Mapping = field(default_factory=dict)

    _tuples = ("fragment_refs",)
    _maps = ("metadata",)


@dataclass(frozen=True)
class LearningObject(_Frozen):
    id: str
    kind: LearningObjectKind
    object_refs: tuple = ()
    process_ref: str = ""

    _tuples = ("object_refs",)


def _by_id(items):
    return tuple(sorted(items, key=lambda x: x.id))


@dataclass(frozen=True)
class ContentCatalog:
    fragments: tuple = ()
    objects: tuple = ()
    learning_objects: tuple = ()

    def __post_init__(self):
        for name in ("fragments", "objects", "learning_objects"):
            object.__setattr__(self, name, _by_id(getattr(self, name)))

    @cached_property
    def index(self) -> Mapping:
        out = {}
        for item in (*self.fragments, *self.objects, *self.learning_objects):
            out.setdefault(item.id, item)
        return MappingProxyType(out)

    def merge(self, other: "ContentCatalog") -> "ContentCatalog":
        return ContentCatalog(self.fragments + other.fragments,
                              self.objects + other.objects,
                              self.learning_objects + other.learning_objects)

    def text_of(self, object_id: str) -> Optional[str]:
        """Text of the first text fragment of a content object."""
        obj = self.index.get(object_id)
        for ref in getattr(obj, "fragment_refs", ()):
            frag = self.index.get(ref)
            if frag is not None and frag.kind is FragmentKind.TEXT and frag.text is not None:
                return frag.text
        return None


# -- context / ui / design --------------------------------------------------

@dataclass(frozen=True)
class ContextSpec(_Frozen):
    process_ref: str
    goal_refs: tuple = ()
    content_refs: tuple = ()
    environment_ref: str = "environment"
    evaluation_ref: str = "evaluation"
    roles_ref: str = "roles"
    metadata: Mapping = field(default_factory=dict)

    _tuples = ("goal_refs", "content_refs")
    _maps = ("metadata",)


@dataclass(frozen=True)
class UiConfig:
    language: str = ""
    animation_style: str = "fade"
    color_theme: str = "default"
    animation_speed: Level = Level.MEDIUM
    background: str = "#ffffff"


@dataclass(frozen=True)
class InstructionalDesign(_Frozen):
    id: str
    context: ContextSpec
    goals: tuple = ()
    process: ProcessTree = field(default_factory=ProcessTree)
    content: ContentCatalog = field(default_factory=ContentCatalog)
    ui: UiConfig = field(default_factory=UiConfig)
    metadata: Mapping = field(default_factory=dict)
    goal_patterns: tuple = ()

    _maps = ("metadata",)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "goals", _by_id(self.goals))
        object.__setattr__(self, "goal_patterns", _by_id(self.goal_patterns))

    @cached_property
    def goal_index(self) -> Mapping:
        out = {}
        for g in self.goals:
            out.setdefault(g.id, g)
        return MappingProxyType(out)

    def all_ids(self):
        """Every element id with the part that owns it, duplicates included."""
        yield from (("goal", g.id) for g in self.goals)
        yield from (("goalPattern", p.id) for p in self.goal_patterns)
        yield from ((level, node.id) for level, node, _ in self.process.walk())
        yield from (("fragment", f.id) for f in self.content.fragments)
        yield from (("object", o.id) for o in self.content.objects)
        yield from (("learningObject", lo.id) for lo in self.content.learning_objects)


def field_names(cls):
    return [f.name for f in fields(cls)]
