"""
One template, two scripts
=========================

Compile the bundled Telugu and Hindi primers, check the Telugu
curriculum, compare the two designs and write a package.
"""

import sys
import tempfile

from idont.compiler import compile_primer, load_primer, load_template
from idont._resources import data_dir
from idont.curriculum import check_all, simulate_learner
from idont.ontology import diff
from idont.packager import emit_package
from idont.script import load_lexicon, load_profile

template = load_template()
designs = {}
for lang, name in (("te", "telugu"), ("hi", "hindi")):
    profile = load_profile(lang)
    spec = load_primer(data_dir("primers") / f"{name}.json")
    designs[lang] = compile_primer(spec, load_lexicon(lang, profile), profile, template)
    print(f"{name}: {designs[lang].process.no_of_plays} plays, "
          f"{designs[lang].process.no_of_acts} acts")

te = load_profile("te")
print("violations:", check_all(designs["te"], profile=te))
for lesson in simulate_learner(designs["te"], profile=te).per_lesson:
    print(f"  lesson {lesson.lesson_index}: knows {''.join(sorted(lesson.units_acquired))}")

# same process tree, different content and guidelines
print("diff:", diff(designs["te"], designs["hi"]).summary())

out = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp()
package = emit_package(designs["te"], out, profile=te)
print(f"{package.status} {len(package.files)} files to {out}")
