"""Familiar-word lexicons and candidate-word enumeration."""

from __future__ import annotations

from dataclasses import dataclass

from idont import _resources
from idont.errors import ProfileError, ScriptError
from idont.script.decompose import Word, decompose_word
from idont.script.profile import ScriptProfile


@dataclass(frozen=True)
class LexiconEntry:
    word: Word
    familiarity: float
    gloss: str | None = None

    @property
    def surface(self):
        return self.word.surface


@dataclass(frozen=True)
class Lexicon:
    entries: tuple
    language_tag: str = ""

    def __post_init__(self):
        seen = set()
        for entry in self.entries:
            if entry.surface in seen:
                raise ProfileError(f"duplicate lexicon word {entry.surface!r}")
            if not 0.0 <= entry.familiarity <= 1.0:
                raise ProfileError(f"familiarity of {entry.surface!r} outside [0, 1]")
            seen.add(entry.surface)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, surface):
        return any(e.surface == surface for e in self.entries)

    def get(self, surface):
        for entry in self.entries:
            if entry.surface == surface:
                return entry
        return None

    @classmethod
    def from_records(cls, records, profile: ScriptProfile) -> "Lexicon":
        entries = []
        for rec in records:
            try:
                word = decompose_word(rec["surface"], profile)
            except ScriptError as exc:
                raise ProfileError(f"lexicon word {rec['surface']!r}: {exc}") from exc
            entries.append(LexiconEntry(word, float(rec.get("familiarity", 0.0)), rec.get("gloss")))
        return cls(tuple(entries), profile.language_tag)

    def to_records(self) -> list:
        out = []
        for e in self.entries:
            rec = {"surface": e.surface, "familiarity": e.familiarity}
            if e.gloss is not None:
                rec["gloss"] = e.gloss
            out.append(rec)
        return out


def load_lexicon(name_or_path, profile: ScriptProfile) -> Lexicon:
    return Lexicon.from_records(_resources.load_json("lexicons", name_or_path), profile)


def candidate_words(learnt_units, lexicon: Lexicon, profile: ScriptProfile = None) -> list:
    """Lexicon words spelled entirely with learnt units.

    Ordered by familiarity (highest first), then by surface. ``profile`` is
    accepted for symmetry with the other operations; lexicon entries are
    already decomposed.
    """
    learnt = {u.codepoint if hasattr(u, "codepoint") else ord(u) for u in learnt_units}
    hits = [e for e in lexicon.entries if all(u.codepoint in learnt for u in e.word.units)]
    hits.sort(key=lambda e: (-e.familiarity, e.surface))
    return [e.word for e in hits]
