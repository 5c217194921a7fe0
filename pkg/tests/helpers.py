"""Test helpers: fixture builders, hand-written oracles and edits."""

import copy
import json
import re
from dataclasses import replace

from idont.compiler import ROLE_WORD
from idont.ontology import design_from_dict, design_to_dict
from idont.ontology.model import ContentFragment, ContentObject, FragmentKind

ACCEPTANCE_RESULTS = []

# Minimal legal document: one play, act, scene, instruction, activity.
MINIMAL_DOC = {
    "id": "mini",
    "context": {"processRef": "process", "goalRefs": ["g-1"], "contentRefs": ["c-1"],
                "environmentRef": "env", "evaluationRef": "eval", "rolesRef": "roles"},
    "goals": [{"id": "g-1", "name": "read", "cognitiveLevel": "remember",
               "knowledgeLevel": "factual", "granularity": "play", "achievedByProcess": "p-1"}],
    "process": {"plays": [{"id": "p-1", "acts": [{"id": "a-1", "kind": "motivating", "scenes": [
        {"id": "s-1", "kind": "familiarWords", "instructions": [
            {"id": "i-1", "principles": ["activation"], "contentRefs": ["c-1"],
             "activities": [{"id": "v-1", "kind": "learning"}]}]}]}]}]},
    "content": {"fragments": [{"id": "f-1", "kind": "text", "payloadRef": "content/f-1.txt",
                               "languageTag": "te", "text": "కల"}],
                "objects": [{"id": "c-1", "fragmentRefs": ["f-1"], "contentType": "case"}]},
    "ui": {"language": "te"},
    "metadata": {"language": "te"},
}


def minimal_doc():
    return copy.deepcopy(MINIMAL_DOC)


def minimal_design():
    return design_from_dict(minimal_doc())


def edit(design, fn):
    """Apply ``fn`` to the canonical dict of ``design`` and parse it back."""
    doc = json.loads(json.dumps(design_to_dict(design)))
    fn(doc)
    for key in ("noOfPlays", "noOfActs", "noOfScenes", "noOfInstructions"):
        doc["process"].pop(key, None)
    return design_from_dict(doc, resolve=False)


def iscii(text):
    """Telugu to Devanagari by the shared ISCII block layout."""
    return "".join(chr(ord(c) - 0x300) if 0x0C00 <= ord(c) <= 0x0C7F else c for c in text)


def inject_word(design, lesson, word, obj_id=None):
    """Add ``word`` as a practice word wherever play ``lesson`` shows practice words."""
    pid = f"p{lesson}"
    obj_id = obj_id or f"{pid}-word-injected"
    frag = ContentFragment(f"f-{obj_id}", FragmentKind.TEXT, f"content/f-{obj_id}.txt", "te", word)
    obj = ContentObject(obj_id, [frag.id], "case", {"role": ROLE_WORD, "lesson": str(lesson)})
    index = design.content.index
    word_refs = {o.id for o in design.content.objects if o.metadata.get("role") == ROLE_WORD}

    def fix(ins, act):
        hit = any(r in word_refs for r in ins.content_refs) or (
            act.kind.value == "exercise" and not ins.content_refs)
        return replace(ins, content_refs=ins.content_refs + (obj_id,)) if hit else ins

    plays = []
    for play in design.process.plays:
        if play.id == pid:
            play = replace(play, acts=tuple(
                replace(act, scenes=tuple(
                    replace(sc, instructions=tuple(fix(i, act) for i in sc.instructions))
                    for sc in act.scenes))
                for act in play.acts))
        plays.append(play)
    assert obj_id not in index
    content = replace(design.content, fragments=design.content.fragments + (frag,),
                      objects=design.content.objects + (obj,))
    return replace(design, process=replace(design.process, plays=plays), content=content)


# Independent akshara acceptor: classes become letters and a regular
# expression encodes IV N? | (C H)* C M? N? with the default caps.
CLASS_LETTER = {"independentVowel": "I", "consonant": "C", "vowelSign": "M",
                "nasalSign": "N", "virama": "H"}
AKSHARA_RE = re.compile(r"IN?|(?:CH)*CM?N?")


def oracle_accepts(classes):
    return AKSHARA_RE.fullmatch("".join(CLASS_LETTER.get(c, "?") for c in classes)) is not None


def record(criterion, passed, detail):
    ACCEPTANCE_RESULTS.append((criterion, passed, detail))
