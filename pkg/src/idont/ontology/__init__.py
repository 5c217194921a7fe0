from idont.ontology.model import *  # noqa: F401,F403
from idont.ontology.canonical import (
    design_from_dict,
    design_to_dict,
    dumps_design,
    load_design,
    loads_design,
    parse_design,
)
from idont.ontology.owlxml import parse_owl_xml, serialize_owl_xml
from idont.ontology.validate import (
    Violation,
    check_context_links,
    check_principle_coverage,
    validate_schema,
    violations_to_json,
)
from idont.ontology.compose import DesignParts, compose, decompose, substitute_guidelines
from idont.ontology.diff import Change, VariantDelta, apply_delta, diff
