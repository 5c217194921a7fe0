"""Top-down decomposition (sentence, word, syllable, phoneme) and its inverse."""

from __future__ import annotations

import re
from dataclasses import dataclass

from idont.errors import GrammarError, UnknownUnitError
from idont.script.grammar import segment_graphemes, syllabify_units
from idont.script.profile import ScriptProfile

_WHITESPACE = re.compile(r"\s+")


@dataclass(frozen=True)
class Word:
    syllables: tuple

    @property
    def surface(self) -> str:
        return "".join(s.surface for s in self.syllables)

    @property
    def units(self) -> tuple:
        return tuple(u for s in self.syllables for u in s.units)

    @property
    def phonemes(self) -> tuple:
        return tuple(p for s in self.syllables for p in s.phonemes)

    def __str__(self):
        return self.surface


@dataclass(frozen=True)
class DecompositionTree:
    """sentence -> words -> syllables -> phonemes.

    ``gaps`` holds the whitespace runs between consecutive words so the
    sentence surface is reproduced exactly.
    """

    words: tuple
    gaps: tuple = ()

    @property
    def surface(self) -> str:
        parts = [self.words[0].surface] if self.words else []
        for gap, word in zip(self.gaps, self.words[1:]):
            parts.append(gap)
            parts.append(word.surface)
        return "".join(parts)

    @property
    def syllables(self) -> tuple:
        return tuple(s for w in self.words for s in w.syllables)

    @property
    def units(self) -> tuple:
        return tuple(u for w in self.words for u in w.units)


def decompose_word(text: str, profile: ScriptProfile) -> Word:
    if not text:
        raise GrammarError("MALFORMED", 0, "empty word")
    return Word(tuple(syllabify_units(segment_graphemes(text, profile), profile)))


def decompose_sentence(text: str, profile: ScriptProfile) -> DecompositionTree:
    """Split on whitespace and syllabify every word; offsets in errors are sentence-relative."""
    stripped = text.strip()
    if not stripped:
        raise GrammarError("MALFORMED", 0, "empty sentence")
    lead = len(text) - len(text.lstrip())
    words, gaps = [], []
    pos = 0
    pieces = _WHITESPACE.split(stripped)
    separators = _WHITESPACE.findall(stripped)
    for i, piece in enumerate(pieces):
        try:
            words.append(decompose_word(piece, profile))
        except GrammarError as exc:
            raise exc.shifted(lead + pos) from None
        except UnknownUnitError as exc:
            raise UnknownUnitError(exc.codepoint, lead + pos + exc.offset) from None
        pos += len(piece)
        if i < len(separators):
            gaps.append(separators[i])
            pos += len(separators[i])
    return DecompositionTree(tuple(words), tuple(gaps))


def decompose_to_phonemes(word, profile: ScriptProfile) -> list:
    if isinstance(word, str):
        word = decompose_word(word, profile)
    return list(word.phonemes)


def compose_word(syllables) -> Word:
    return Word(tuple(syllables))


def compose_sentence(words, separator=" ") -> DecompositionTree:
    words = tuple(words)
    return DecompositionTree(words, (separator,) * max(len(words) - 1, 0))


def render(node) -> str:
    """Text of a word, a decomposition tree or a sequence of syllables."""
    if hasattr(node, "surface"):
        return node.surface
    return "".join(s.surface for s in node)
