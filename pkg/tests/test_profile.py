import pytest

from idont.errors import ProfileError
from idont.script import ScriptProfile, Unit, UnitClass, load_profile
from idont.script.profile import parse_codepoint


def test_bundled_profiles_load(te, hi):
    assert te.language_tag == "te"
    assert hi.language_tag == "hi"
    assert te.virama.codepoint == 0x0C4D
    assert hi.virama.codepoint == 0x094D


@pytest.mark.parametrize("cp, cls", [
    (0x0C05, UnitClass.INDEPENDENT_VOWEL),
    (0x0C15, UnitClass.CONSONANT),
    (0x0C3E, UnitClass.VOWEL_SIGN),
    (0x0C02, UnitClass.NASAL_SIGN),
    (0x0C4D, UnitClass.VIRAMA),
    (0x0C67, UnitClass.DIGIT),
])
def test_telugu_unit_classes_match_block_chart(te, cp, cls):
    assert te.unit_classes[cp] is cls


def test_sound_classes_and_phoneme_table_share_a_domain(te, hi):
    for profile in (te, hi):
        sounding = {cp for cp, cls in profile.unit_classes.items() if cls.carries_sound}
        assert sounding == set(profile.phonemes)


def test_phoneme_values(te):
    assert te.phonemes[0x0C15] == ("k",)
    assert te.phonemes[0x0C3E] == ("aː",)
    assert te.inherent_vowel == "a"


def test_profile_dict_roundtrip(te):
    again = ScriptProfile.from_dict(te.to_dict())
    assert again == te


def _tiny(**overrides):
    data = {"languageTag": "xx", "inherentVowel": "a", "block": ["U+0C00", "U+0C7F"],
            "units": [{"cp": "U+0C15", "class": "consonant", "phonemes": ["k"]},
                      {"cp": "U+0C4D", "class": "virama"}]}
    data.update(overrides)
    return data


def test_two_viramas_rejected():
    data = _tiny()
    data["units"].append({"cp": "U+0C4E", "class": "virama"})
    with pytest.raises(ProfileError, match="virama"):
        ScriptProfile.from_dict(data)


def test_sounding_unit_without_phonemes_rejected():
    data = _tiny()
    data["units"].append({"cp": "U+0C16", "class": "consonant"})
    with pytest.raises(ProfileError):
        ScriptProfile.from_dict(data)


def test_caps_default_to_one():
    p = ScriptProfile.from_dict(_tiny())
    assert (p.max_vowel_signs, p.max_nasal_signs) == (1, 1)


def test_parse_codepoint():
    assert parse_codepoint("U+0C15") == 0x0C15
    assert parse_codepoint("u+0c15") == 0x0C15
    with pytest.raises(ProfileError):
        parse_codepoint("0x0C15")


def test_unit_label_and_char():
    u = Unit(0x0C15, UnitClass.CONSONANT)
    assert u.char == "క"
    assert u.label == "U+0C15"


def test_profile_from_path(tmp_path, te):
    import json
    path = tmp_path / "p.json"
    path.write_text(json.dumps(te.to_dict(), ensure_ascii=False), encoding="utf-8")
    assert load_profile(str(path)) == te
