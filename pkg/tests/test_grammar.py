import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import oracle_accepts
from idont.errors import GrammarError, UnknownUnitError
from idont.script import (
    CompositionClass,
    ScriptProfile,
    Unit,
    UnitClass,
    classify,
    compose_syllable,
    phonemize,
    segment_graphemes,
)

# Six codepoints: one independent vowel, two consonants, one vowel sign,
# one nasal sign and the virama.
ALPHABET = ["అ", "క", "ల", "ా", "ం", "్"]


def units(text, profile):
    return segment_graphemes(text, profile)


def test_segment_empty(te):
    assert segment_graphemes("", te) == []


def test_segment_single_consonant(te):
    assert segment_graphemes("క", te) == [Unit(0x0C15, UnitClass.CONSONANT)]


def test_segment_consonant_vowel_sign(te):
    got = segment_graphemes("కా", te)
    assert [(u.codepoint, u.unit_class) for u in got] == [
        (0x0C15, UnitClass.CONSONANT), (0x0C3E, UnitClass.VOWEL_SIGN)]


def test_segment_passes_whitespace_and_punctuation(te):
    got = segment_graphemes("క ల.", te)
    assert [u.unit_class for u in got] == [
        UnitClass.CONSONANT, UnitClass.OTHER, UnitClass.CONSONANT, UnitClass.OTHER]


def test_unassigned_codepoint_in_block_is_unknown(te):
    with pytest.raises(UnknownUnitError) as err:
        segment_graphemes("క఍", te)
    assert err.value.codepoint == 0x0C0D
    assert err.value.offset == 1


@pytest.mark.parametrize("text, cls", [
    ("అ", CompositionClass.V),
    ("అం", CompositionClass.V),
    ("క", CompositionClass.C),
    ("లం", CompositionClass.C),
    ("కా", CompositionClass.C_V),
    ("రిం", CompositionClass.C_V),
    ("క్క", CompositionClass.C_C),
    ("క్కా", CompositionClass.C_C_V),
    ("స్త్రీ", CompositionClass.C_C_V),
])
def test_classify(te, text, cls):
    assert classify(units(text, te), te) is cls
    assert compose_syllable(units(text, te), te).composition_class is cls


def test_compose_ka_aa(te):
    syl = compose_syllable(units("క", te) + units("ా", te), te)
    assert syl.surface == "కా"


def test_two_vowel_signs_hit_the_cap(te):
    with pytest.raises(GrammarError) as err:
        compose_syllable(units("కాి", te), te)
    assert err.value.rule == "MAX_VOWEL_SIGNS"
    assert err.value.offset == 2


def test_two_nasal_signs_hit_the_cap(te):
    with pytest.raises(GrammarError) as err:
        compose_syllable(units("కంం", te), te)
    assert err.value.rule == "MAX_NASAL_SIGNS"


def test_raised_caps_admit_more_signs(te):
    data = te.to_dict()
    data["caps"] = {"vowelSigns": 2, "nasalSigns": 1}
    loose = ScriptProfile.from_dict(data)
    assert compose_syllable(units("కాి", loose), loose).composition_class is CompositionClass.C_V


@pytest.mark.parametrize("text, offset", [("ా", 0), ("్", 0), ("క్", 1), ("అా", 1), ("కంా", 2)])
def test_malformed_positions(te, text, offset):
    with pytest.raises(GrammarError) as err:
        compose_syllable(units(text, te), te)
    assert err.value.rule == "MALFORMED"
    assert err.value.offset == offset


def test_empty_syllable_rejected(te):
    with pytest.raises(GrammarError):
        compose_syllable([], te)


def test_grammar_matches_bruteforce_oracle(te):
    mismatches = []
    for n in range(1, 5):
        for combo in itertools.product(ALPHABET, repeat=n):
            us = units("".join(combo), te)
            try:
                compose_syllable(us, te)
                accepted = True
            except GrammarError:
                accepted = False
            if accepted != oracle_accepts([u.unit_class.value for u in us]):
                mismatches.append("".join(combo))
    assert mismatches == []


def test_phonemes_of_ka_la(te):
    ids = [p.id for u in ("క", "ల") for p in phonemize(units(u, te), te)]
    assert ids == ["k", "a", "l", "a"]


def test_vowel_sign_replaces_inherent_vowel(te):
    assert [p.id for p in phonemize(units("కా", te), te)] == ["k", "aː"]


def test_virama_suppresses_inherent_vowel(te):
    assert [p.id for p in phonemize(units("క్క", te), te)] == ["k", "k", "a"]


aksharas = st.one_of(
    st.tuples(st.sampled_from(["అ", "ఇ", "ఊ"]), st.sampled_from(["", "ం"])).map("".join),
    st.tuples(
        st.lists(st.sampled_from(["క", "ల", "మ", "స", "త"]), min_size=0, max_size=2)
        .map(lambda cs: "".join(c + "్" for c in cs)),
        st.sampled_from(["క", "ల", "ద", "న", "ర"]),
        st.sampled_from(["", "ా", "ి", "ు", "ే"]),
        st.sampled_from(["", "ం", "ః"]),
    ).map("".join),
)


@given(aksharas)
def test_phoneme_sources_reproduce_the_surface(akshara):
    from idont.script import load_profile
    te = load_profile("te")
    syl = compose_syllable(units(akshara, te), te)
    rebuilt = "".join(u.char for p in syl.phonemes for u in p.source_units)
    assert rebuilt == syl.surface == akshara
    assert all(p.id in te.phoneme_inventory for p in syl.phonemes)
    assert syl.composition_class is classify(syl.units, te)


@settings(max_examples=200)
@given(st.lists(st.sampled_from(ALPHABET), min_size=0, max_size=6))
def test_accept_set_matches_oracle_on_longer_sequences(seq):
    from idont.script import load_profile
    te = load_profile("te")
    us = units("".join(seq), te)
    try:
        compose_syllable(us, te)
        accepted = True
    except GrammarError:
        accepted = False
    assert accepted == (bool(seq) and oracle_accepts([u.unit_class.value for u in us]))
