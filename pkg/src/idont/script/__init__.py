from idont.script.profile import ScriptProfile, Unit, UnitClass, load_profile
from idont.script.grammar import (
    CompositionClass,
    Phoneme,
    Syllable,
    classify,
    compose_syllable,
    phonemize,
    segment_graphemes,
    syllabify,
    syllabify_units,
)
from idont.script.decompose import (
    DecompositionTree,
    Word,
    compose_sentence,
    compose_word,
    decompose_sentence,
    decompose_to_phonemes,
    decompose_word,
    render,
)
from idont.script.lexicon import Lexicon, LexiconEntry, candidate_words, load_lexicon

__all__ = [
    "CompositionClass", "DecompositionTree", "Lexicon", "LexiconEntry", "Phoneme",
    "ScriptProfile", "Syllable", "Unit", "UnitClass", "Word", "candidate_words",
    "classify", "compose_sentence", "compose_syllable", "compose_word",
    "decompose_sentence", "decompose_to_phonemes", "decompose_word", "load_lexicon",
    "load_profile", "phonemize", "render", "segment_graphemes", "syllabify",
    "syllabify_units",
]
