"""OWL/XML projection of a design, and its inverse.

Every design element becomes a ``NamedIndividual`` named
``idont:<Type>/<id>``; scalars are data-property assertions, links are
object-property assertions, and each enumeration member is a subconcept
of its enumeration. Design-level settings (context, UI, process header,
metadata) are ontology annotations, so a design without elements yields
an ontology with zero individuals.

Ordering is carried explicitly: children hold an ``idont:position`` data
property, ordered link lists carry a ``position`` axiom annotation, and
map entries carry a ``key`` axiom annotation.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from datetime import datetime

from idont.errors import DesignParseError
from idont.ontology import model as m
from idont.ontology.canonical import design_from_dict, design_to_dict

OWL = "http://www.w3.org/2002/07/owl#"
IDONT = "urn:idont:"
XSD = "http://www.w3.org/2001/XMLSchema#"
PREFIXES = (("idont", IDONT), ("owl", OWL),
            ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
            ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"), ("xsd", XSD))

ET.register_namespace("", OWL)

# enumeration -> (concept name, member label suffix)
ENUMS = {
    "Level": (m.Level, ""),
    "Granularity": (m.Granularity, "Granularity"),
    "KnowledgeLevel": (m.KnowledgeLevel, "Knowledge"),
    "CognitiveLevel": (m.CognitiveLevel, ""),
    "ActKind": (m.ActKind, "Act"),
    "SceneKind": (m.SceneKind, "Scene"),
    "MerrillPrinciple": (m.MerrillPrinciple, "Principle"),
    "ActivityKind": (m.ActivityKind, "Activity"),
    "FragmentKind": (m.FragmentKind, ""),
    "ContentType": (m.ContentType, ""),
    "LearningObjectKind": (m.LearningObjectKind, ""),
}

LEGACY_LABELS = {("KnowledgeLevel", "factual"): "FacutalKnowledge"}

CONCEPTS = ("InstructionalDesign", "ContextSpec", "GoalNode", "GoalPattern", "ProcessTree",
            "Play", "Act", "Scene", "Instruction", "Activity", "UiConfig", "ContentCatalog",
            "ContentFragment", "ContentObject", "LearningObject", "VariantDelta",
            *ENUMS)

# Per element type: scalar keys (with datatype), enum keys, string lists,
# single refs, ordered ref lists, maps, and the child list.
SCHEMA = {
    "GoalNode": dict(
        scalars={"name": "string", "progress": "decimal", "deadline": "dateTime",
                 "goalText": "string", "goalImage": "string", "goalAudio": "string",
                 "goalVideo": "string", "abcd": "string", "hasEvaluation": "string",
                 "runsInEnvironment": "string"},
        enums={"priority": "Level", "granularity": "Granularity",
               "knowledgeLevel": "KnowledgeLevel", "cognitiveLevel": "CognitiveLevel"},
        refs=("previousGoal", "nextGoal", "achievedByProcess"),
        reflists=("prerequisites", "usesContent"),
        maps=("goalMetadata",)),
    "GoalPattern": dict(scalars={"sourceOfPattern": "string", "tradeOffs": "string"},
                        reflists=("appliesTo",)),
    "Play": dict(scalars={"title": "string", "timeLimit": "integer"}, strlists=("guidelines",),
                 refs=("associatedGoal",), maps=("ui",), children=("acts", "Act")),
    "Act": dict(scalars={"timeLimit": "integer"}, enums={"kind": "ActKind"},
                strlists=("guidelines",), refs=("associatedGoal",),
                children=("scenes", "Scene")),
    "Scene": dict(scalars={"timeLimit": "integer"}, enums={"kind": "SceneKind"},
                  strlists=("guidelines",), refs=("associatedGoal",),
                  children=("instructions", "Instruction")),
    "Instruction": dict(scalars={"timeLimit": "integer"}, enumsets={"principles": "MerrillPrinciple"},
                        strlists=("guidelines",), reflists=("contentRefs",),
                        children=("activities", "Activity")),
    "Activity": dict(scalars={"description": "string"}, enums={"kind": "ActivityKind"}),
    "ContentFragment": dict(scalars={"payloadRef": "string", "languageTag": "string",
                                     "text": "string"},
                            enums={"kind": "FragmentKind"}),
    "ContentObject": dict(scalars={"contentType": "string"}, reflists=("fragmentRefs",),
                          maps=("metadata",)),
    "LearningObject": dict(enums={"kind": "LearningObjectKind"}, refs=("processRef",),
                           reflists=("objectRefs",)),
}

# Lists that must be present (possibly empty) in the canonical dict.
DEFAULT_LISTS = {"guidelines", "prerequisites", "usesContent", "contentRefs", "principles",
                 "fragmentRefs", "objectRefs", "appliesTo", "acts", "scenes",
                 "instructions", "activities"}


def _cap(name):
    return name[0].upper() + name[1:]


def _iri(type_name, ident):
    return f"idont:{type_name}/{ident}"


def enum_label(enum_name, member, legacy=False):
    if legacy and (enum_name, member.value) in LEGACY_LABELS:
        return LEGACY_LABELS[(enum_name, member.value)]
    return _cap(member.value) + ENUMS[enum_name][1]


def _el(parent, tag, **attrs):
    return ET.SubElement(parent, f"{{{OWL}}}{tag}", attrs)


def _literal(parent, value, datatype="string"):
    lit = _el(parent, "Literal")
    if datatype != "string":
        lit.set("datatypeIRI", XSD + datatype)
    lit.text = _format(value, datatype)
    return lit


def _format(value, datatype):
    if datatype == "dateTime":
        return value if isinstance(value, str) else value.isoformat()
    if datatype == "decimal":
        return repr(float(value))
    return str(value)


def _annotation(parent, prop, value=None, iri=None, datatype="string", **meta):
    ann = _el(parent, "Annotation")
    for key, val in meta.items():
        inner = _el(ann, "Annotation")
        _el(inner, "AnnotationProperty", abbreviatedIRI=f"idont:{key}")
        _literal(inner, val, "integer" if key == "position" else "string")
    _el(ann, "AnnotationProperty", abbreviatedIRI=prop)
    if iri is not None:
        _el(ann, "AbbreviatedIRI").text = iri
    else:
        _literal(ann, value, datatype)
    return ann


def _axiom_meta(axiom, **meta):
    for key, val in meta.items():
        ann = _el(axiom, "Annotation")
        _el(ann, "AnnotationProperty", abbreviatedIRI=f"idont:{key}")
        _literal(ann, val, "integer" if key == "position" else "string")


class _Writer:
    def __init__(self, root, legacy):
        self.root = root
        self.legacy = legacy
        self.types = {}
        self.axioms = []  # (subject iri, sort key, builder)

    def data(self, subject, prop, value, datatype="string", **meta):
        def build(parent):
            ax = _el(parent, "DataPropertyAssertion")
            _axiom_meta(ax, **meta)
            _el(ax, "DataProperty", abbreviatedIRI=f"idont:{prop}")
            _el(ax, "NamedIndividual", abbreviatedIRI=subject)
            _literal(ax, value, datatype)
        key = (prop, meta.get("position", -1), meta.get("key", ""), _format(value, datatype))
        self.axioms.append((subject, (1,) + key, build))

    def link(self, subject, prop, target, **meta):
        def build(parent):
            ax = _el(parent, "ObjectPropertyAssertion")
            _axiom_meta(ax, **meta)
            _el(ax, "ObjectProperty", abbreviatedIRI=f"idont:{prop}")
            _el(ax, "NamedIndividual", abbreviatedIRI=subject)
            _el(ax, "NamedIndividual", abbreviatedIRI=target)
        key = (prop, meta.get("position", -1), "", target)
        self.axioms.append((subject, (2,) + key, build))

    def individual(self, type_name, record, position=None, parent=None):
        subject = _iri(type_name, record["id"])
        spec = SCHEMA[type_name]

        def declare(p):
            decl = _el(p, "Declaration")
            _el(decl, "NamedIndividual", abbreviatedIRI=subject)
            ca = _el(p, "ClassAssertion")
            _el(ca, "Class", abbreviatedIRI=f"idont:{type_name}")
            _el(ca, "NamedIndividual", abbreviatedIRI=subject)
        self.axioms.append((subject, (0,), declare))

        if position is not None:
            self.data(subject, "position", position, "integer")
        if parent is not None:
            self.link(parent, "has" + type_name, subject, position=position)
        for key, datatype in spec.get("scalars", {}).items():
            if record.get(key) is not None:
                self.data(subject, key, record[key], datatype)
        for key, enum_name in spec.get("enums", {}).items():
            self._enum(subject, key, enum_name, record[key])
        for key, enum_name in spec.get("enumsets", {}).items():
            for token in record.get(key, ()):
                self._enum(subject, key, enum_name, token)
        for key in spec.get("strlists", ()):
            for i, text in enumerate(record.get(key, ())):
                self.data(subject, key, text, position=i)
        for key in spec.get("refs", ()):
            if record.get(key) is not None:
                self.link(subject, key, self.ref(record[key]))
        for key in spec.get("reflists", ()):
            for i, target in enumerate(record.get(key, ())):
                self.link(subject, key, self.ref(target), position=i)
        for key in spec.get("maps", ()):
            for k, v in sorted(record.get(key, {}).items()):
                self.data(subject, key, v, key=k)
        if "children" in spec:
            child_key, child_type = spec["children"]
            for i, child in enumerate(record.get(child_key, ())):
                self.individual(child_type, child, position=i, parent=subject)

    def _enum(self, subject, key, enum_name, token):
        self.data(subject, key, token)
        self.link(subject, "has" + _cap(key), f"idont:{enum_name}/{token}")

    def ref(self, ident):
        return _iri(self.types.get(ident, "Unresolved"), ident)

    def flush(self):
        for _, _, build in sorted(self.axioms, key=lambda a: (a[0], a[1])):
            build(self.root)


def _index_types(d):
    types = {}
    for g in d["goals"]:
        types[g["id"]] = "GoalNode"
    for p in d.get("goalPatterns", ()):
        types[p["id"]] = "GoalPattern"

    def walk(record, type_name):
        types.setdefault(record["id"], type_name)
        spec = SCHEMA[type_name]
        if "children" in spec:
            key, child_type = spec["children"]
            for child in record.get(key, ()):
                walk(child, child_type)
    for play in d["process"]["plays"]:
        walk(play, "Play")
    for f in d["content"]["fragments"]:
        types.setdefault(f["id"], "ContentFragment")
    for o in d["content"]["objects"]:
        types.setdefault(o["id"], "ContentObject")
    for lo in d["content"]["learningObjects"]:
        types.setdefault(lo["id"], "LearningObject")
    return types


def serialize_owl_xml(design: m.InstructionalDesign, *, legacy_spelling: bool = False) -> str:
    """Render a design as a byte-deterministic OWL/XML document.

    ``legacy_spelling`` labels the factual knowledge concept with the
    historical ``FacutalKnowledge`` spelling used by older ontologies.
    """
    d = design_to_dict(design)
    root = ET.Element(f"{{{OWL}}}Ontology", {"ontologyIRI": f"{IDONT}design/{d['id']}"})
    for name, iri in PREFIXES:
        _el(root, "Prefix", name=name, IRI=iri)

    _annotation(root, "idont:designId", d["id"])
    for key, value in sorted(d["metadata"].items()):
        _annotation(root, "idont:metadata", value, key=key)
    ctx = d["context"]
    for key in ("processRef", "environmentRef", "evaluationRef", "rolesRef"):
        _annotation(root, f"idont:context.{key}", ctx[key])
    writer = _Writer(root, legacy_spelling)
    writer.types = _index_types(d)
    for key in ("goalRefs", "contentRefs"):
        for i, ref in enumerate(ctx[key]):
            _annotation(root, f"idont:context.{key}", iri=writer.ref(ref), position=i)
    for key, value in sorted(ctx["metadata"].items()):
        _annotation(root, "idont:context.metadata", value, key=key)
    for key, value in d["ui"].items():
        _annotation(root, f"idont:ui.{key}", value)
    proc = d["process"]
    _annotation(root, "idont:process.id", proc["id"])
    _annotation(root, "idont:process.instructionalDesignModel", proc["instructionalDesignModel"])
    for key in ("noOfPlays", "noOfActs", "noOfScenes", "noOfInstructions"):
        _annotation(root, f"idont:process.{key}", proc[key], datatype="integer")

    for concept in sorted(CONCEPTS):
        decl = _el(root, "Declaration")
        _el(decl, "Class", abbreviatedIRI=f"idont:{concept}")
    for enum_name, (enum_cls, _) in sorted(ENUMS.items()):
        for member in enum_cls:
            sub = _el(root, "SubClassOf")
            _el(sub, "Class", abbreviatedIRI=f"idont:{enum_name}/{member.value}")
            _el(sub, "Class", abbreviatedIRI=f"idont:{enum_name}")
            label = _el(root, "AnnotationAssertion")
            _el(label, "AnnotationProperty", abbreviatedIRI="rdfs:label")
            _el(label, "AbbreviatedIRI").text = f"idont:{enum_name}/{member.value}"
            _literal(label, enum_label(enum_name, member, legacy_spelling))

    for goal in d["goals"]:
        writer.individual("GoalNode", goal)
    for pattern in d.get("goalPatterns", ()):
        writer.individual("GoalPattern", pattern)
    for i, play in enumerate(proc["plays"]):
        writer.individual("Play", play, position=i)
    for f in d["content"]["fragments"]:
        writer.individual("ContentFragment", f)
    for o in d["content"]["objects"]:
        writer.individual("ContentObject", o)
    for lo in d["content"]["learningObjects"]:
        writer.individual("LearningObject", lo)
    writer.flush()

    ET.indent(root, space=" ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


# -- parsing ------------------------------------------------------------------

def _tag(el):
    return el.tag.rsplit("}", 1)[-1]


def _child(el, tag):
    for c in el:
        if _tag(c) == tag:
            return c
    return None


def _read_literal(el):
    text = el.text or ""
    datatype = el.get("datatypeIRI", XSD + "string")
    if datatype == XSD + "integer":
        return int(text)
    if datatype == XSD + "decimal":
        return float(text)
    return text


def _meta(el):
    """Axiom/annotation annotations -> {name: value}."""
    out = {}
    for ann in el:
        if _tag(ann) != "Annotation":
            continue
        prop = _child(ann, "AnnotationProperty").get("abbreviatedIRI")
        out[prop.split(":", 1)[1]] = _read_literal(_child(ann, "Literal"))
    return out


def _split_iri(iri):
    body = iri.split(":", 1)[1]
    type_name, _, ident = body.partition("/")
    return type_name, ident


def _ordered(items):
    return [v for _, v in sorted(items, key=lambda t: t[0])]


def parse_owl_xml(text: str, *, resolve: bool = True) -> m.InstructionalDesign:
    try:
        root = ET.fromstring(text.encode("utf-8"))
    except ET.ParseError as exc:
        line, col = exc.position
        raise DesignParseError(f"syntax error: {exc}", line, col) from None
    if _tag(root) != "Ontology":
        raise DesignParseError(f"root element must be Ontology, not {_tag(root)}")

    design = {"metadata": {}, "context": {"metadata": {}, "goalRefs": [], "contentRefs": []},
              "ui": {}, "process": {}, "goals": [], "goalPatterns": [],
              "content": {"fragments": [], "objects": [], "learningObjects": []}}
    ctx_lists = {"goalRefs": [], "contentRefs": []}
    individuals = {}

    def ind(iri):
        if iri not in individuals:
            type_name, ident = _split_iri(iri)
            individuals[iri] = {"type": type_name, "id": ident, "data": {}, "links": {},
                                "position": None, "parent": None}
        return individuals[iri]

    for el in root:
        tag = _tag(el)
        if tag == "Annotation":
            prop = _child(el, "AnnotationProperty").get("abbreviatedIRI").split(":", 1)[1]
            meta = _meta(el)
            iri_el = _child(el, "AbbreviatedIRI")
            value = iri_el.text if iri_el is not None else _read_literal(_child(el, "Literal"))
            section, _, key = prop.partition(".")
            if prop == "designId":
                design["id"] = value
            elif prop == "metadata":
                design["metadata"][meta["key"]] = value
            elif prop == "context.metadata":
                design["context"]["metadata"][meta["key"]] = value
            elif section == "context" and key in ctx_lists:
                ctx_lists[key].append((meta["position"], _split_iri(value)[1]))
            elif section in ("context", "ui", "process"):
                design[section][key] = value
        elif tag == "Declaration" and _child(el, "NamedIndividual") is not None:
            ind(_child(el, "NamedIndividual").get("abbreviatedIRI"))
        elif tag == "DataPropertyAssertion":
            prop = _child(el, "DataProperty").get("abbreviatedIRI").split(":", 1)[1]
            subject = ind(_child(el, "NamedIndividual").get("abbreviatedIRI"))
            value = _read_literal(_child(el, "Literal"))
            if prop == "position":
                subject["position"] = value
            else:
                subject["data"].setdefault(prop, []).append((_meta(el), value))
        elif tag == "ObjectPropertyAssertion":
            prop = _child(el, "ObjectProperty").get("abbreviatedIRI").split(":", 1)[1]
            src, dst = (n.get("abbreviatedIRI") for n in el if _tag(n) == "NamedIndividual")
            meta = _meta(el)
            target_type = _split_iri(dst)[0]
            if prop.startswith("has") and target_type in SCHEMA and prop == "has" + target_type:
                ind(dst)["parent"] = src
            elif target_type not in ENUMS:
                ind(src)["links"].setdefault(prop, []).append((meta.get("position", 0), _split_iri(dst)[1]))

    for key, items in ctx_lists.items():
        design["context"][key] = _ordered(items)

    records = {}
    for iri, info in individuals.items():
        type_name = info["type"]
        if type_name not in SCHEMA:
            raise DesignParseError(f"individual {iri} has unknown type {type_name!r}")
        spec = SCHEMA[type_name]
        rec = {"id": info["id"]}
        data = info["data"]
        for key in (*spec.get("scalars", {}), *spec.get("enums", {})):
            if key in data:
                rec[key] = data[key][0][1]
        for key in spec.get("enumsets", {}):
            rec[key] = sorted(v for _, v in data.get(key, ()))
        for key in spec.get("strlists", ()):
            rec[key] = _ordered((meta["position"], v) for meta, v in data.get(key, ()))
        for key in spec.get("maps", ()):
            if key in data:
                rec[key] = {meta["key"]: v for meta, v in data[key]}
        for key in spec.get("refs", ()):
            if key in info["links"]:
                rec[key] = info["links"][key][0][1]
        for key in spec.get("reflists", ()):
            rec[key] = _ordered(info["links"].get(key, ()))
        if "children" in spec:
            rec[spec["children"][0]] = []
        if type_name == "GoalNode" and "deadline" in rec:
            rec["deadline"] = str(rec["deadline"])
        records[iri] = (info, rec)

    plays = []
    for iri, (info, rec) in sorted(records.items(), key=lambda kv: (kv[1][0]["position"] or 0, kv[0])):
        type_name = info["type"]
        if info["parent"] is not None:
            parent_rec = records[info["parent"]][1]
            parent_rec[SCHEMA[records[info["parent"]][0]["type"]]["children"][0]].append(
                (info["position"], rec))
        elif type_name == "Play":
            plays.append((info["position"], rec))
        elif type_name == "GoalNode":
            design["goals"].append(rec)
        elif type_name == "GoalPattern":
            design["goalPatterns"].append(rec)
        elif type_name == "ContentFragment":
            design["content"]["fragments"].append(rec)
        elif type_name == "ContentObject":
            rec.setdefault("metadata", {})
            design["content"]["objects"].append(rec)
        elif type_name == "LearningObject":
            design["content"]["learningObjects"].append(rec)
    for _, rec in records.values():
        for key in ("acts", "scenes", "instructions", "activities"):
            if key in rec:
                rec[key] = _ordered(rec[key])
    design["process"]["plays"] = _ordered(plays)
    if "id" not in design:
        raise DesignParseError("ontology lacks an idont:designId annotation")
    return design_from_dict(design, resolve=resolve)
