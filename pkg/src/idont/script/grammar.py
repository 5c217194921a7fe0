"""Akshara grammar: segmentation, syllable composition and classification.

The grammar accepted by :func:`compose_syllable` is::

    Akshara := IV NasalSign{0,n}
             | (C Virama)* C VowelSign{0,v} NasalSign{0,n}

where ``v`` and ``n`` are the profile's per-kind sign caps (one each by
default).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from idont.errors import GrammarError, UnknownUnitError
from idont.script.profile import ScriptProfile, Unit, UnitClass

IV = UnitClass.INDEPENDENT_VOWEL
C = UnitClass.CONSONANT
VS = UnitClass.VOWEL_SIGN
NS = UnitClass.NASAL_SIGN
VIRAMA = UnitClass.VIRAMA


class CompositionClass(str, enum.Enum):
    V = "V"
    C = "C"
    C_V = "C_V"
    C_C = "C_C"
    C_C_V = "C_C_V"


@dataclass(frozen=True)
class Phoneme:
    """A phoneme with the units that spell it.

    Inherent vowels have no source units of their own; a virama rides on the
    consonant it silences. Concatenating the sources of a syllable's
    phonemes therefore reproduces the syllable exactly.
    """

    id: str
    source_units: tuple = ()

    @property
    def surface(self) -> str:
        return "".join(u.char for u in self.source_units)


@dataclass(frozen=True)
class Syllable:
    units: tuple
    composition_class: CompositionClass
    phonemes: tuple = ()

    @property
    def surface(self) -> str:
        return "".join(u.char for u in self.units)

    def __str__(self):
        return self.surface


def segment_graphemes(text: str, profile: ScriptProfile) -> list:
    """One :class:`Unit` per scalar; anything outside the script block is ``other``."""
    units = []
    for offset, ch in enumerate(text):
        cp = ord(ch)
        cls = profile.unit_classes.get(cp)
        if cls is None:
            if profile.in_block(cp):
                raise UnknownUnitError(cp, offset)
            cls = UnitClass.OTHER
        units.append(Unit(cp, cls))
    return units


def _check(units, profile):
    """Validate one akshara; returns (consonant count, has vowel sign)."""
    if not units:
        raise GrammarError("MALFORMED", 0, "empty syllable")
    head = units[0].unit_class
    if head not in (IV, C):
        raise GrammarError("MALFORMED", 0, f"syllable cannot start with {head.value}")
    consonants = 1 if head is C else 0
    vowel_signs = nasal_signs = 0
    expect_consonant = False
    for pos, unit in enumerate(units[1:], start=1):
        cls = unit.unit_class
        if expect_consonant:
            if cls is not C:
                raise GrammarError("MALFORMED", pos, "virama must be followed by a consonant")
            consonants += 1
            expect_consonant = False
        elif cls is VIRAMA:
            if head is IV or vowel_signs or nasal_signs:
                raise GrammarError("MALFORMED", pos, "misplaced virama")
            expect_consonant = True
        elif cls is VS:
            if head is IV or nasal_signs:
                raise GrammarError("MALFORMED", pos, "misplaced vowel sign")
            vowel_signs += 1
            if vowel_signs > profile.max_vowel_signs:
                raise GrammarError("MAX_VOWEL_SIGNS", pos,
                                   f"more than {profile.max_vowel_signs} vowel sign(s)")
        elif cls is NS:
            nasal_signs += 1
            if nasal_signs > profile.max_nasal_signs:
                raise GrammarError("MAX_NASAL_SIGNS", pos,
                                   f"more than {profile.max_nasal_signs} nasal sign(s)")
        else:
            raise GrammarError("MALFORMED", pos, f"unexpected {cls.value}")
    if expect_consonant:
        raise GrammarError("MALFORMED", len(units) - 1, "dangling virama")
    return consonants, vowel_signs > 0


def classify(units, profile: ScriptProfile) -> CompositionClass:
    units = tuple(units)
    consonants, has_sign = _check(units, profile)
    if consonants == 0:
        return CompositionClass.V
    if consonants == 1:
        return CompositionClass.C_V if has_sign else CompositionClass.C
    return CompositionClass.C_C_V if has_sign else CompositionClass.C_C


def phonemize(units, profile: ScriptProfile) -> tuple:
    """Phonemes of one grammatical akshara, in reading order."""
    units = tuple(units)
    out = []
    i = 0
    while i < len(units):
        unit = units[i]
        cls = unit.unit_class
        nxt = units[i + 1] if i + 1 < len(units) else None
        if cls is C:
            if nxt is not None and nxt.unit_class is VIRAMA:
                out.extend(Phoneme(p, (unit, nxt)) for p in profile.phonemes[unit.codepoint])
                i += 2
                continue
            out.extend(Phoneme(p, (unit,)) for p in profile.phonemes[unit.codepoint])
            if nxt is None or nxt.unit_class is not VS:
                out.append(Phoneme(profile.inherent_vowel, ()))
        elif cls in (IV, VS, NS):
            out.extend(Phoneme(p, (unit,)) for p in profile.phonemes[unit.codepoint])
        i += 1
    return tuple(out)


def compose_syllable(units, profile: ScriptProfile) -> Syllable:
    """Build a syllable from units, enforcing the grammar and the sign caps."""
    units = tuple(units)
    cls = classify(units, profile)
    return Syllable(units, cls, phonemize(units, profile))


def syllabify_units(units, profile: ScriptProfile) -> list:
    """Split a word's unit sequence into aksharas, left to right."""
    units = list(units)
    syllables = []
    i = 0
    while i < len(units):
        start = i
        cls = units[i].unit_class
        if cls is C:
            i += 1
            while i < len(units) and units[i].unit_class is VIRAMA:
                i += 1
                if i < len(units) and units[i].unit_class is C:
                    i += 1
                else:
                    break
        elif cls is IV:
            i += 1
        else:
            raise GrammarError("MALFORMED", i, f"{cls.value} cannot start a syllable")
        while i < len(units) and units[i].unit_class in (VS, NS, VIRAMA):
            i += 1
        try:
            syllables.append(compose_syllable(units[start:i], profile))
        except GrammarError as exc:
            raise exc.shifted(start) from None
    return syllables


def syllabify(text: str, profile: ScriptProfile) -> list:
    return syllabify_units(segment_graphemes(text, profile), profile)
