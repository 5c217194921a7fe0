"""Whole-curriculum checks that look across lessons.

A lesson's practice words are the composed-word cases its play refers
to. Two independent routes decide whether a learner could read them:
:func:`check_prerequisite_closure` compares each word against the units
the design's fact objects introduce, and :func:`simulate_learner` walks
the lessons with a learner that only knows the primer's target units.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from idont.compiler import ROLE_TARGET, ROLE_WORD, PrimerSpec
from idont.errors import ScriptError
from idont.ontology.model import InstructionalDesign
from idont.ontology.validate import Violation, check_context_links, check_principle_coverage
from idont.script import Lexicon, ScriptProfile, candidate_words, segment_graphemes

__all__ = [
    "AcquisitionTrace", "LessonTrace", "check_all", "check_context_links",
    "check_prerequisite_closure", "check_principle_coverage", "lesson_words",
    "simulate_learner",
]


def _refs_in(play):
    for act in play.acts:
        for scene in act.scenes:
            for ins in scene.instructions:
                yield from ins.content_refs


def _objects_with_role(design, play, role):
    seen = []
    for ref in _refs_in(play):
        obj = design.content.index.get(ref)
        if obj is not None and getattr(obj, "metadata", {}).get("role") == role \
                and ref not in seen:
            seen.append(ref)
    return seen


def lesson_words(design: InstructionalDesign) -> list:
    """Per play, the ``(object id, word)`` pairs of its practice words."""
    return [[(ref, design.content.text_of(ref) or "")
             for ref in _objects_with_role(design, play, ROLE_WORD)]
            for play in design.process.plays]


def _codepoints(text, profile):
    if profile is None:
        return [ord(ch) for ch in text if not ch.isspace()]
    return [u.codepoint for u in segment_graphemes(text.replace(" ", ""), profile)]


def _introduced_by_design(design, profile):
    out, acc = [], set()
    for play in design.process.plays:
        for ref in _objects_with_role(design, play, ROLE_TARGET):
            acc |= set(_codepoints(design.content.text_of(ref) or "", profile))
        out.append(frozenset(acc))
    return out


def _missing(word, known, profile):
    try:
        cps = _codepoints(word, profile)
    except ScriptError:
        cps = [ord(ch) for ch in word]
    return [chr(cp) for cp in dict.fromkeys(cps) if cp not in known]


def check_prerequisite_closure(design: InstructionalDesign, spec: PrimerSpec | None = None,
                               profile: ScriptProfile | None = None) -> list:
    """One violation per practice word that uses a unit not yet introduced.

    Introduced units come from the target-unit facts each play refers to,
    accumulated over lessons 1..k. ``spec`` is accepted for interface
    symmetry with :func:`simulate_learner` and is not consulted, so the
    check also works on a design read back from disk.
    """
    out = []
    introduced = _introduced_by_design(design, profile)
    for k, (play, words) in enumerate(zip(design.process.plays, lesson_words(design)), start=1):
        for ref, word in words:
            missing = _missing(word, introduced[k - 1], profile)
            if missing:
                out.append(Violation(
                    "PREREQUISITE_CLOSURE", f"content/{ref}",
                    f"lesson {k} word {word} uses unintroduced unit(s) {' '.join(missing)}",
                    details={"lesson": k, "play": play.id, "word": word, "missing": missing}))
    return out


def check_all(design: InstructionalDesign, spec: PrimerSpec | None = None,
              profile: ScriptProfile | None = None) -> list:
    """Closure, context-link and principle-coverage checks, in that order."""
    return [*check_prerequisite_closure(design, spec, profile),
            *check_context_links(design),
            *check_principle_coverage(design)]


@dataclass(frozen=True)
class LessonTrace:
    lesson_index: int
    units_acquired: frozenset
    words_unlocked: int
    failures: tuple = ()

    def to_dict(self) -> dict:
        return {"lessonIndex": self.lesson_index,
                "unitsAcquired": sorted(self.units_acquired),
                "wordsUnlocked": self.words_unlocked,
                "failures": [{"word": w, "missingUnits": list(m)} for w, m in self.failures]}


@dataclass(frozen=True)
class AcquisitionTrace:
    per_lesson: tuple = field(default_factory=tuple)

    @property
    def failures(self) -> list:
        """All failures as ``(lesson index, word, missing units)``."""
        return [(t.lesson_index, w, m) for t in self.per_lesson for w, m in t.failures]

    def to_dict(self) -> dict:
        return {"perLesson": [t.to_dict() for t in self.per_lesson]}


def simulate_learner(design: InstructionalDesign, spec: PrimerSpec | None = None,
                     lexicon: Lexicon | None = None,
                     profile: ScriptProfile | None = None) -> AcquisitionTrace:
    """Replay the curriculum for a learner who starts knowing nothing.

    After lesson k the learner knows exactly the target units of lessons
    1..k (taken from ``spec`` when given, otherwise from the design's
    facts). Every practice word of lesson k is then read unit by unit;
    the first pass records the units the learner has not met.
    ``words_unlocked`` counts lexicon words readable at that point, or
    the readable practice words when no lexicon is supplied.
    """
    if spec is not None and profile is not None:
        lesson_units = [[u.codepoint for u in lesson.target_units(profile)]
                        for lesson in spec.lessons]
    elif spec is not None:
        lesson_units = [[ord(ch) for tok in lesson.targets for ch in tok]
                        for lesson in spec.lessons]
    else:
        introduced = _introduced_by_design(design, profile)
        lesson_units = [sorted(b - a) for a, b in zip([frozenset()] + introduced, introduced)]

    known = set()
    traces = []
    for k, words in enumerate(lesson_words(design), start=1):
        if k <= len(lesson_units):
            known.update(lesson_units[k - 1])
        failures = []
        readable = 0
        for _, word in words:
            unmet = []
            for cp in (ord(ch) for ch in word if not ch.isspace()):
                if cp not in known and chr(cp) not in unmet:
                    unmet.append(chr(cp))
            if unmet:
                failures.append((word, tuple(unmet)))
            else:
                readable += 1
        if lexicon is not None:
            readable = len(candidate_words([chr(cp) for cp in known], lexicon, profile))
        traces.append(LessonTrace(k, frozenset(chr(cp) for cp in known), readable,
                                  tuple(failures)))
    return AcquisitionTrace(tuple(traces))
