"""Per-language script profiles: codepoint classes and phoneme tables."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from idont import _resources
from idont.errors import ProfileError

#: Unit classes whose members carry sound and therefore need phonemes.
SOUND_CLASSES = frozenset({"independentVowel", "consonant", "vowelSign", "nasalSign"})


class UnitClass(str, enum.Enum):
    INDEPENDENT_VOWEL = "independentVowel"
    CONSONANT = "consonant"
    VOWEL_SIGN = "vowelSign"
    NASAL_SIGN = "nasalSign"
    VIRAMA = "virama"
    DIGIT = "digit"
    OTHER = "other"

    @property
    def carries_sound(self):
        return self.value in SOUND_CLASSES


@dataclass(frozen=True, order=True)
class Unit:
    """One Unicode scalar together with its class under some profile."""

    codepoint: int
    unit_class: UnitClass = field(compare=False)

    @property
    def char(self) -> str:
        return chr(self.codepoint)

    @property
    def label(self) -> str:
        return f"U+{self.codepoint:04X}"

    def __str__(self):
        return self.char


def parse_codepoint(token: str) -> int:
    if not token.upper().startswith("U+"):
        raise ProfileError(f"codepoint must look like U+XXXX, got {token!r}")
    return int(token[2:], 16)


@dataclass(frozen=True)
class ScriptProfile:
    language_tag: str
    unit_classes: Mapping[int, UnitClass]
    phonemes: Mapping[int, tuple]
    inherent_vowel: str
    block: tuple = (0, 0)
    max_vowel_signs: int = 1
    max_nasal_signs: int = 1
    script: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "unit_classes", MappingProxyType(dict(self.unit_classes)))
        object.__setattr__(self, "phonemes", MappingProxyType(
            {cp: tuple(ph) for cp, ph in self.phonemes.items()}))
        viramas = [cp for cp, c in self.unit_classes.items() if c is UnitClass.VIRAMA]
        if len(viramas) > 1:
            raise ProfileError(f"{self.language_tag}: more than one virama codepoint")
        sounding = {cp for cp, c in self.unit_classes.items() if c.carries_sound}
        voiced = {cp for cp, ph in self.phonemes.items() if ph}
        if sounding != voiced:
            bad = sorted(sounding ^ voiced)
            raise ProfileError(
                f"{self.language_tag}: unit and phoneme tables disagree on "
                + ", ".join(f"U+{cp:04X}" for cp in bad))
        if self.max_vowel_signs < 0 or self.max_nasal_signs < 0:
            raise ProfileError("caps must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "ScriptProfile":
        try:
            classes, phonemes = {}, {}
            for entry in data["units"]:
                cp = parse_codepoint(entry["cp"])
                if cp in classes:
                    raise ProfileError(f"duplicate unit {entry['cp']}")
                classes[cp] = UnitClass(entry["class"])
                if entry.get("phonemes"):
                    phonemes[cp] = tuple(entry["phonemes"])
            caps = data.get("caps", {})
            if "block" in data:
                block = tuple(parse_codepoint(b) for b in data["block"])
            else:
                lo, hi = min(classes), max(classes)
                block = (lo & ~0x7F, hi | 0x7F)
            return cls(
                language_tag=data["languageTag"],
                unit_classes=classes,
                phonemes=phonemes,
                inherent_vowel=data["inherentVowel"],
                block=block,
                max_vowel_signs=caps.get("vowelSigns", 1),
                max_nasal_signs=caps.get("nasalSigns", 1),
                script=data.get("script"),
            )
        except (KeyError, ValueError) as exc:
            raise ProfileError(f"malformed profile: {exc}") from exc

    def to_dict(self) -> dict:
        units = [{"cp": f"U+{cp:04X}", "class": c.value,
                  "phonemes": list(self.phonemes.get(cp, ()))}
                 for cp, c in sorted(self.unit_classes.items())]
        return {
            "languageTag": self.language_tag,
            "script": self.script,
            "block": [f"U+{self.block[0]:04X}", f"U+{self.block[1]:04X}"],
            "inherentVowel": self.inherent_vowel,
            "caps": {"vowelSigns": self.max_vowel_signs, "nasalSigns": self.max_nasal_signs},
            "units": units,
        }

    def in_block(self, codepoint: int) -> bool:
        return self.block[0] <= codepoint <= self.block[1]

    def unit(self, char_or_cp) -> Unit:
        cp = ord(char_or_cp) if isinstance(char_or_cp, str) else char_or_cp
        try:
            return Unit(cp, self.unit_classes[cp])
        except KeyError:
            raise ProfileError(f"U+{cp:04X} is not in the {self.language_tag} unit table") from None

    def units(self, unit_class: UnitClass | None = None) -> list:
        return [Unit(cp, c) for cp, c in sorted(self.unit_classes.items())
                if unit_class is None or c is unit_class]

    @property
    def virama(self) -> Unit | None:
        found = self.units(UnitClass.VIRAMA)
        return found[0] if found else None

    @property
    def phoneme_inventory(self) -> frozenset:
        inventory = {self.inherent_vowel}
        for ph in self.phonemes.values():
            inventory.update(ph)
        return frozenset(inventory)


def load_profile(name_or_path) -> ScriptProfile:
    """Load a bundled profile (``"te"``, ``"hi"``) or a profile JSON file."""
    return ScriptProfile.from_dict(_resources.load_json("profiles", name_or_path))
