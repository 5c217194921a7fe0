from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import edit
from idont.ontology import Change, VariantDelta, apply_delta, design_from_dict, diff
from strategies import design_docs


def test_identity_is_empty(telugu_design):
    delta = diff(telugu_design, telugu_design)
    assert delta.is_empty
    assert delta.summary() == {"structural": 0, "content": 0, "guideline": 0, "goal": 0, "ui": 0}


def test_guideline_only_change(telugu_design, template):
    def to_hindi(doc):
        for play in doc["process"]["plays"]:
            play["guidelines"] = ["पाठ"]
            for act in play["acts"]:
                act["guidelines"] = [template.guideline("hi", "acts", act["kind"])]
    delta = diff(telugu_design, edit(telugu_design, to_hindi))
    assert len(delta.guideline_changes) == 30
    assert delta.structural_changes == delta.content_changes == delta.goal_changes == ()
    assert delta.ui_changes == ()


def test_removed_exercise_act(telugu_design):
    def drop(doc):
        acts = doc["process"]["plays"][1]["acts"]
        doc["process"]["plays"][1]["acts"] = [a for a in acts if a["kind"] != "exercise"]
    changed = edit(telugu_design, drop)
    delta = diff(telugu_design, changed)
    assert len(delta.structural_changes) == 1
    change = delta.structural_changes[0]
    assert (change.op, change.path, change.before["kind"]) == (
        "removed", "process/plays/1/acts", "exercise")
    assert apply_delta(telugu_design, delta) == changed


def test_retyped_scene(telugu_design):
    def retype(doc):
        doc["process"]["plays"][0]["acts"][2]["scenes"][0]["kind"] = "similarSounds"
    delta = diff(telugu_design, edit(telugu_design, retype))
    assert [c.op for c in delta.structural_changes] == ["retyped"]


def test_renaming_ids_is_not_structural(telugu_design):
    def rename(doc):
        for play in doc["process"]["plays"]:
            play["title"] = play["title"].upper()
            for act in play["acts"]:
                act["id"] = act["id"] + "-x"
    delta = diff(telugu_design, edit(telugu_design, rename))
    assert delta.structural_changes == ()
    assert delta.ui_changes


def test_cross_language_delta_replays(telugu_design, hindi_design):
    delta = diff(telugu_design, hindi_design)
    assert delta.structural_changes == ()
    assert apply_delta(telugu_design, delta) == hindi_design
    again = VariantDelta.from_dict(delta.to_dict())
    assert again == delta
    assert apply_delta(telugu_design, again) == hindi_design


def test_change_dict_roundtrip():
    c = Change("added", "process/plays", None, {"id": "p"}, 0)
    assert Change.from_dict(c.to_dict()) == c


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(design_docs(), design_docs())
def test_patch_reproduces_target(doc_a, doc_b):
    a, b = design_from_dict(doc_a), design_from_dict(doc_b)
    assert apply_delta(a, diff(a, b)) == b
    assert diff(a, a).is_empty


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
@given(design_docs(max_plays=3), st.data())
def test_single_play_removal_is_one_structural_change(doc, data):
    plays = doc["process"]["plays"]
    if not plays:
        return
    a = design_from_dict(doc)
    idx = data.draw(st.integers(0, len(plays) - 1))
    b = edit(a, lambda d: d["process"]["plays"].pop(idx))
    delta = diff(a, b)
    assert [c.op for c in delta.structural_changes] == ["removed"]
    assert apply_delta(a, delta) == b
