"""Command-line entry point: ``idont <subcommand> ...``.

Exit status is 0 on success, 1 when a design has violations and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from idont import __version__
from idont.compiler import PrimerSpec, compile_primer, load_primer, load_template
from idont.curriculum import check_all, simulate_learner
from idont.errors import (
    CompositionError,
    DesignParseError,
    IdontError,
    PackageError,
    PrimerSpecError,
    ProfileError,
    ScriptError,
    TemplateError,
    VariantError,
)
from idont.ontology.canonical import load_design
from idont.ontology.diff import diff
from idont.ontology.validate import validate_schema
from idont.packager import emit_package, generate_variant
from idont.script import load_lexicon, load_profile

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2

PARSE_ERRORS = (DesignParseError, PrimerSpecError, ProfileError, TemplateError, ScriptError,
                OSError, ValueError)


class Failure(Exception):
    """Abort the current subcommand with an exit status and a report."""

    def __init__(self, status, message, report=None):
        super().__init__(message)
        self.status = status
        self.report = report


def _emit(args, payload, human_lines):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _violation_lines(violations):
    return [f"{v.severity}: {v.rule} at {v.path}: {v.message}" for v in violations]


def _load_design(path):
    try:
        return load_design(path)
    except PARSE_ERRORS as exc:
        raise Failure(EXIT_USAGE, f"{path}: {exc}") from None


def _profile_for(args, language):
    try:
        return load_profile(args.profile or language)
    except (FileNotFoundError, ProfileError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"profile {args.profile or language}: {exc}") from None


def _lexicon_for(args, language, profile):
    try:
        return load_lexicon(args.lexicon or language, profile)
    except (FileNotFoundError, ProfileError, ScriptError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"lexicon {args.lexicon or language}: {exc}") from None


# -- subcommands ------------------------------------------------------------

def cmd_validate(args):
    reports, status = [], EXIT_OK
    for path in args.designs:
        design = _load_design(path)
        violations = validate_schema(design)
        if any(v.severity == "error" for v in violations):
            status = EXIT_VIOLATIONS
        reports.append({"path": str(path), "design": design.id,
                        "violations": [v.to_dict() for v in violations]})
    lines = []
    for rep in reports:
        lines.append(f"{rep['path']}: {len(rep['violations'])} violation(s)")
        lines.extend("  " + json.dumps(v, ensure_ascii=False) for v in rep["violations"])
    _emit(args, {"reports": reports}, lines)
    return status


def _compile_one(args, primer_path, out, template):
    try:
        spec = load_primer(primer_path)
    except (OSError, PrimerSpecError) as exc:
        raise Failure(EXIT_USAGE, f"{primer_path}: {exc}") from None
    profile = _profile_for(args, spec.language)
    lexicon = _lexicon_for(args, spec.language, profile)
    warnings = []
    try:
        design = compile_primer(spec, lexicon, profile, template, warnings=warnings)
    except CompositionError as exc:
        raise Failure(EXIT_VIOLATIONS, f"{primer_path}: {exc}",
                      [v.to_dict() for v in exc.violations]) from None
    except (PrimerSpecError, ScriptError) as exc:
        raise Failure(EXIT_USAGE, f"{primer_path}: {exc}") from None
    try:
        package = emit_package(design, out, profile=profile)
    except PackageError as exc:
        raise Failure(EXIT_VIOLATIONS, f"{primer_path}: {exc}",
                      [v.to_dict() for v in exc.violations]) from None
    return {"primer": str(primer_path), "design": design.id, "out": str(out),
            "status": package.status, "contentHash": package.content_hash,
            "warnings": [w.to_dict() for w in warnings]}


def cmd_compile(args):
    if not args.primer:
        raise Failure(EXIT_USAGE, "compile needs --primer (a spec file or a directory of specs)")
    if not args.out:
        raise Failure(EXIT_USAGE, "compile needs --out")
    try:
        template = load_template(args.template or "default")
    except (OSError, TemplateError) as exc:
        raise Failure(EXIT_USAGE, f"template: {exc}") from None
    source, out = Path(args.primer), Path(args.out)
    if not source.is_dir():
        result = _compile_one(args, source, out, template)
        _emit(args, result, [f"{result['primer']}: {result['status']} {result['out']} "
                             f"({result['contentHash'][:12]})"]
              + _violation_lines_from(result["warnings"]))
        return EXIT_OK

    results, status = [], EXIT_OK
    for primer_path in sorted(source.glob("*.json")):
        try:
            results.append(_compile_one(args, primer_path, out / primer_path.stem, template))
        except Failure as exc:
            status = max(status, exc.status)
            results.append({"primer": str(primer_path), "status": "failed", "error": str(exc),
                            "violations": exc.report or []})
            if args.fail_fast:
                break
    ok = sum(1 for r in results if r["status"] != "failed")
    lines = [f"{r['primer']}: {r['status']}" + (f" ({r['error']})" if "error" in r else "")
             for r in results]
    lines.append(f"{ok}/{len(results)} primer(s) compiled")
    _emit(args, {"results": results, "compiled": ok, "failed": len(results) - ok}, lines)
    return status


def _violation_lines_from(dicts):
    return [f"{d['severity']}: {d['rule']} at {d['path']}: {d['message']}" for d in dicts]


def cmd_check(args):
    design = _load_design(args.design)
    language = design.metadata.get("language", design.ui.language)
    profile = _profile_for(args, language)
    spec = None
    if args.primer:
        try:
            spec = load_primer(args.primer)
        except (OSError, PrimerSpecError) as exc:
            raise Failure(EXIT_USAGE, f"{args.primer}: {exc}") from None
    lexicon = _lexicon_for(args, language, profile) if args.lexicon else None
    violations = check_all(design, spec, profile)
    trace = simulate_learner(design, spec, lexicon, profile)
    payload = {"design": design.id, "violations": [v.to_dict() for v in violations],
               "trace": trace.to_dict()}
    lines = [f"{args.design}: {len(violations)} violation(s)", *_violation_lines(violations)]
    for t in trace.per_lesson:
        lines.append(f"  lesson {t.lesson_index}: {len(t.units_acquired)} unit(s), "
                     f"{t.words_unlocked} word(s), {len(t.failures)} failure(s)")
    _emit(args, payload, lines)
    return EXIT_VIOLATIONS if any(v.severity == "error" for v in violations) else EXIT_OK


def cmd_package(args):
    if not args.out:
        raise Failure(EXIT_USAGE, "package needs --out")
    design = _load_design(args.design)
    profile = _profile_for(args, design.metadata.get("language", design.ui.language))
    try:
        package = emit_package(design, args.out, profile=profile)
    except PackageError as exc:
        if exc.path:
            raise Failure(EXIT_USAGE, str(exc)) from None
        raise Failure(EXIT_VIOLATIONS, str(exc), [v.to_dict() for v in exc.violations]) from None
    _emit(args, {"design": design.id, "out": str(args.out), "status": package.status,
                 "contentHash": package.content_hash, "files": package.files},
          [f"{args.out}: {package.status}, {len(package.files)} file(s), "
           f"hash {package.content_hash[:12]}"])
    return EXIT_OK


def cmd_diff(args):
    delta = diff(_load_design(args.left), _load_design(args.right))
    lines = [f"{k}: {n} change(s)" for k, n in delta.summary().items()]
    _emit(args, delta.to_dict(), lines)
    return EXIT_OK


def _read_map(path, what):
    if not path:
        raise Failure(EXIT_USAGE, f"variant needs --{what}")
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise Failure(EXIT_USAGE, f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise Failure(EXIT_USAGE, f"{path}: expected a JSON object")
    return data


def cmd_variant(args):
    if not args.profile or not args.out:
        raise Failure(EXIT_USAGE, "variant needs --profile and --out")
    design = _load_design(args.design)
    profile = _profile_for(args, None)
    guidelines = _read_map(args.guidelines, "guidelines")
    content = _read_map(args.content, "content")
    try:
        variant = generate_variant(design, profile, guidelines, content, medium=args.medium,
                                   design_id=args.id)
        package = emit_package(variant, args.out, profile=profile)
    except VariantError as exc:
        raise Failure(EXIT_VIOLATIONS, str(exc),
                      {"uncovered": exc.uncovered, "unknown": exc.unknown,
                       "invalid": exc.invalid}) from None
    except PackageError as exc:
        raise Failure(EXIT_VIOLATIONS, str(exc), [v.to_dict() for v in exc.violations]) from None
    _emit(args, {"design": variant.id, "out": str(args.out), "status": package.status,
                 "contentHash": package.content_hash},
          [f"{args.out}: {package.status} variant {variant.id}"])
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--primer", help="primer spec file (or directory of specs for compile)")
    common.add_argument("--lexicon", help="lexicon file or bundled name")
    common.add_argument("--profile", help="script profile file or bundled name")
    common.add_argument("--template", help="act template file or name")
    common.add_argument("--out", help="output directory")
    common.add_argument("--json", action="store_true", help="print reports as JSON")
    common.add_argument("--fail-fast", action="store_true",
                        help="stop a batch at the first failing primer")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="idont", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"idont {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("validate", parents=[common], help="schema-validate design documents")
    p.add_argument("designs", nargs="+", type=Path)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compile", parents=[common], help="compile primer spec(s) into packages")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("check", parents=[common], help="run curriculum checks on a design")
    p.add_argument("design", type=Path)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("package", parents=[common], help="write a content package for a design")
    p.add_argument("design", type=Path)
    p.set_defaults(func=cmd_package)

    p = sub.add_parser("diff", parents=[common], help="classify the changes between two designs")
    p.add_argument("left", type=Path)
    p.add_argument("right", type=Path)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("variant", parents=[common], help="re-target a design at another language")
    p.add_argument("design", type=Path)
    p.add_argument("--guidelines", help="JSON map: process node id -> guideline text(s)")
    p.add_argument("--content", help="JSON map: fragment id -> text")
    p.add_argument("--medium", help="new medium of instruction")
    p.add_argument("--id", help="id for the variant design")
    p.set_defaults(func=cmd_variant)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Failure as exc:
        if args.json and exc.report is not None:
            print(json.dumps({"error": str(exc), "report": exc.report}, ensure_ascii=False,
                             indent=2, sort_keys=True))
        else:
            print(f"idont {args.command}: {exc}", file=sys.stderr)
            if isinstance(exc.report, list):
                for line in _violation_lines_from(exc.report):
                    print("  " + line, file=sys.stderr)
        return exc.status
    except IdontError as exc:
        print(f"idont {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
