import pytest
from hypothesis import given
from hypothesis import strategies as st

from idont.errors import GrammarError, UnknownUnitError
from idont.script import (
    compose_sentence,
    compose_syllable,
    compose_word,
    decompose_sentence,
    decompose_to_phonemes,
    decompose_word,
    load_profile,
    render,
    segment_graphemes,
    syllabify,
)

TE = load_profile("te")


def test_seed_sentence_splits_into_two_words(te):
    tree = decompose_sentence("కాలం మారింది", te)
    assert [w.surface for w in tree.words] == ["కాలం", "మారింది"]


def test_seed_words_split_into_aksharas(te):
    tree = decompose_sentence("కాలం మారింది", te)
    assert [[s.surface for s in w.syllables] for w in tree.words] == [
        ["కా", "లం"], ["మా", "రిం", "ది"]]


def test_leading_vowel_sign_fails_at_offset_zero(te):
    with pytest.raises(GrammarError) as err:
        decompose_sentence("ాక", te)
    assert err.value.offset == 0


def test_error_offset_is_sentence_relative(te):
    with pytest.raises(GrammarError) as err:
        decompose_sentence("కల ాక", te)
    assert err.value.offset == 3


def test_unknown_unit_reported(te):
    with pytest.raises(UnknownUnitError):
        decompose_sentence("క఍", te)


def test_empty_sentence_rejected(te):
    with pytest.raises(GrammarError, match="empty"):
        decompose_sentence("   ", te)


@pytest.mark.parametrize("word, phonemes", [
    ("అ", ["a"]),
    ("కల", ["k", "a", "l", "a"]),
    ("కా", ["k", "aː"]),
])
def test_decompose_to_phonemes(te, word, phonemes):
    assert [p.id for p in decompose_to_phonemes(word, te)] == phonemes


def test_compose_from_syllables(te):
    ka, la, uu = (compose_syllable(segment_graphemes(t, te), te) for t in ("క", "ల", "ఊ"))
    assert render(compose_word([ka, la])) == "కల"
    assert render(compose_word([uu, ka])) == "ఊక"


def test_every_lexicon_word_roundtrips(te_lexicon, te):
    for entry in te_lexicon:
        assert render(compose_word(syllabify(entry.surface, te))) == entry.surface


def test_sentence_roundtrip_and_surface_conservation(te):
    text = "అమ్మ అండగా ఉంది"
    tree = decompose_sentence(text, te)
    assert render(tree) == text
    assert render(compose_sentence(tree.words)) == text
    for word in tree.words:
        assert word.surface == "".join(s.surface for s in word.syllables)
        for syl in word.syllables:
            assert syl.surface == "".join(u.char for u in syl.units)


consonants = st.sampled_from(["క", "ల", "మ", "న", "డ", "వ"])
akshara = st.one_of(
    st.sampled_from(["అ", "ఆ", "ఇ", "ఉ", "ఊ"]),
    st.tuples(consonants, st.sampled_from(["", "ా", "ి", "ు"]), st.sampled_from(["", "ం"]))
    .map("".join),
    st.tuples(consonants, consonants, st.sampled_from(["", "ా"]))
    .map(lambda t: t[0] + "్" + t[1] + t[2]),
)


@given(st.lists(st.lists(akshara, min_size=1, max_size=4).map("".join), min_size=1, max_size=4))
def test_random_sentences_roundtrip(words):
    text = " ".join(words)
    tree = decompose_sentence(text, TE)
    assert render(tree) == text
    assert [w.surface for w in tree.words] == words


@given(st.lists(st.tuples(consonants, st.just("")).map("".join), min_size=1, max_size=5),
       st.lists(st.sampled_from(["అ", "ఇ", "ఉ"]), max_size=3))
def test_phoneme_count_law(cons, vowels):
    # Signless, virama-free words: two phonemes per consonant, one per vowel.
    word = "".join(vowels) + "".join(cons)
    assert len(decompose_to_phonemes(word, TE)) == 2 * len(cons) + len(vowels)


def test_decompose_word_matches_syllabify(te):
    word = decompose_word("వచ్చింది", te)
    assert [s.surface for s in word.syllables] == ["వ", "చ్చిం", "ది"]
