import itertools
from dataclasses import replace

import pytest

from helpers import edit, iscii
from idont.errors import CompositionError, DanglingReferenceError, UnresolvedNodeError
from idont.ontology import compose, decompose, diff, substitute_guidelines
from idont.ontology.model import ContextSpec


def parts_of(design):
    return list(decompose(design))


def test_compose_is_order_insensitive(telugu_design):
    parts = parts_of(telugu_design)
    for perm in itertools.permutations(parts):
        assert compose(*perm, design_id=telugu_design.id,
                       metadata=telugu_design.metadata) == telugu_design


def test_decompose_recovers_the_parts(telugu_design):
    context, goals, process, content, ui = decompose(telugu_design)
    again = compose(context, goals, process, content, ui, design_id=telugu_design.id,
                    metadata=telugu_design.metadata)
    assert decompose(again) == decompose(telugu_design)
    assert again == telugu_design


def test_missing_process_names_both_sides(telugu_design):
    context, goals, process, content, ui = decompose(telugu_design)
    bad = replace(context, process_ref="process-99")
    with pytest.raises(DanglingReferenceError) as err:
        compose(bad, goals, process, content, ui)
    assert err.value.source == "context.processRef"
    assert err.value.target == "process-99"


def test_validation_failure_aborts(telugu_design):
    def strip(doc):
        for ins in doc["process"]["plays"][0]["acts"][0]["scenes"][0]["instructions"]:
            ins["principles"] = []
    broken = edit(telugu_design, strip)
    with pytest.raises(CompositionError) as err:
        compose(*decompose(broken), metadata=broken.metadata)
    assert [v.rule for v in err.value.violations] == ["PRINCIPLE_COVERAGE"]


def test_same_process_two_catalogs(telugu_design):
    context, goals, process, content, ui = decompose(telugu_design)
    deva = replace(content, fragments=[
        replace(f, text=iscii(f.text) if f.text else f.text) for f in content.fragments])
    a = compose(context, goals, process, content, ui, metadata=telugu_design.metadata)
    b = compose(context, goals, process, deva, ui, metadata=telugu_design.metadata)
    delta = diff(a, b)
    assert delta.structural_changes == ()
    assert delta.content_changes


def test_compose_rejects_two_processes(telugu_design):
    context, goals, process, content, ui = decompose(telugu_design)
    with pytest.raises(TypeError):
        compose(context, goals, process, process, content, ui)
    with pytest.raises(TypeError):
        compose(context, goals, content, ui)


def test_empty_guideline_map_is_identity(telugu_design):
    assert substitute_guidelines(telugu_design, {}) == telugu_design


def test_telugu_medium_for_hindi_lessons(hindi_design, template):
    gmap = {}
    for level, node, _ in hindi_design.process.walk():
        if level == "scene":
            gmap[node.id] = template.guideline("te", "scenes", node.kind.value)
    swapped = substitute_guidelines(hindi_design, gmap)
    delta = diff(hindi_design, swapped)
    assert delta.guideline_changes
    assert (delta.structural_changes, delta.content_changes, delta.goal_changes,
            delta.ui_changes) == ((), (), (), ())
    scene = swapped.process.index["p1-a1-s1"].node
    assert scene.guidelines == (template.guideline("te", "scenes", "familiarWords"),)


def test_unknown_guideline_key(telugu_design):
    with pytest.raises(UnresolvedNodeError) as err:
        substitute_guidelines(telugu_design, {"scene-999": "x"})
    assert err.value.idents == ["scene-999"]
    assert "scene-999" in str(err.value)


def test_context_stub_types():
    ctx = ContextSpec("process", ["g"], ["c"], "env", "eval", "roles")
    assert ctx.goal_refs == ("g",)
