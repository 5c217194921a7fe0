"""Write content packages and derive language or medium variants.

A package directory holds ``manifest.json``, the design in both document
forms and one placeholder file per content fragment. The manifest's
content hash covers every listed file, so re-emitting an unchanged
design touches nothing.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path, PurePosixPath

from idont import __version__
from idont.compiler import phoneme_text, target_metadata, unit_labels
from idont.curriculum import check_all
from idont.errors import PackageError, ScriptError, VariantError
from idont.ontology.canonical import dumps_design
from idont.ontology.compose import substitute_guidelines
from idont.ontology.model import FragmentKind, InstructionalDesign
from idont.ontology.owlxml import serialize_owl_xml
from idont.ontology.validate import validate_schema
from idont.script import ScriptProfile, segment_graphemes

MANIFEST = "manifest.json"
HASH_ALGORITHM = "sha256"
PHONETIC_SUFFIX = "-fonipa"


@dataclass(frozen=True)
class ContentPackage:
    path: Path
    manifest: dict
    status: str
    writes: int

    @property
    def content_hash(self) -> str:
        return self.manifest["contentHash"]

    @property
    def files(self) -> list:
        return [f["path"] for f in self.manifest["files"]]


def _digest(data: bytes) -> str:
    return hashlib.new(HASH_ALGORITHM, data).hexdigest()


def content_hash(files) -> str:
    """One hash over ``(path, bytes)`` pairs taken in path order."""
    h = hashlib.new(HASH_ALGORITHM)
    for path, data in sorted(files):
        h.update(path.encode("utf-8") + b"\0")
        h.update(str(len(data)).encode("ascii") + b"\0")
        h.update(data)
    return h.hexdigest()


def _payload_path(fragment):
    ref = PurePosixPath(fragment.payload_ref or "")
    if ref.is_absolute() or ".." in ref.parts or not ref.parts or ref.parts[0] != "content":
        ext = ".txt" if fragment.kind is FragmentKind.TEXT else ".bin"
        ref = PurePosixPath("content", fragment.id + ext)
    return str(ref)


def package_files(design: InstructionalDesign) -> dict:
    """Relative path to file bytes for everything except the manifest."""
    files = {
        "design.json": (dumps_design(design) + "\n").encode("utf-8"),
        "design.owl.xml": serialize_owl_xml(design).encode("utf-8"),
    }
    for frag in design.content.fragments:
        path = _payload_path(frag)
        if frag.kind is FragmentKind.TEXT and frag.text is not None:
            body = frag.text + "\n"
        else:
            body = f"placeholder {frag.kind.value} {frag.id} {frag.language_tag}\n"
        if path in files:
            raise PackageError(f"two fragments share payload path {path}", path=path)
        files[path] = body.encode("utf-8")
    return files


def build_manifest(design: InstructionalDesign, files: dict) -> dict:
    return {
        "id": design.id,
        "language": design.metadata.get("language", design.ui.language),
        "medium": design.metadata.get("medium", design.ui.language),
        "generator": f"idont {__version__}",
        "algorithm": HASH_ALGORITHM,
        "contentHash": content_hash(files.items()),
        "files": [{"path": p, "bytes": len(files[p]), "hash": _digest(files[p])}
                  for p in sorted(files)],
    }


def _read_manifest(out: Path):
    try:
        return json.loads((out / MANIFEST).read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return None


def _intact(out: Path, manifest: dict) -> bool:
    for entry in manifest["files"]:
        try:
            data = (out / entry["path"]).read_bytes()
        except OSError:
            return False
        if len(data) != entry["bytes"] or _digest(data) != entry["hash"]:
            return False
    return True


def _write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def emit_package(design: InstructionalDesign, out, *, profile: ScriptProfile | None = None,
                 check: bool = True) -> ContentPackage:
    """Write ``design`` as a package under ``out``.

    The design must pass schema validation and the curriculum checks; any
    violation aborts before anything is written. If the directory already
    holds an intact package with the same content hash, nothing is written
    and the status is ``"unchanged"``.
    """
    if check:
        violations = [v for v in (*validate_schema(design), *check_all(design, profile=profile))
                      if v.severity == "error"]
        if violations:
            raise PackageError(f"design {design.id} has {len(violations)} violation(s)",
                               violations=list(dict.fromkeys(violations)))
    out = Path(out)
    files = package_files(design)
    manifest = build_manifest(design, files)
    previous = _read_manifest(out)
    if previous == manifest and _intact(out, previous):
        return ContentPackage(out, manifest, "unchanged", 0)

    writes = 0
    current = None
    try:
        for path in sorted(files):
            current = out / path
            _write(current, files[path])
            writes += 1
        if previous and isinstance(previous.get("files"), list):
            for entry in previous["files"]:
                if entry.get("path") not in files:
                    stale = out / entry["path"]
                    current = stale
                    if stale.is_file():
                        stale.unlink()
        current = out / MANIFEST
        _write(current, (json.dumps(manifest, ensure_ascii=False, indent=2) + "\n").encode("utf-8"))
        writes += 1
    except OSError as exc:
        raise PackageError(f"cannot write {current}: {exc.strerror or exc}", path=str(current)) from None
    return ContentPackage(out, manifest, "written", writes)


def verify_package(out) -> list:
    """Paths whose bytes no longer match the manifest; empty when intact."""
    out = Path(out)
    manifest = _read_manifest(out)
    if manifest is None:
        return [MANIFEST]
    bad = []
    for entry in manifest["files"]:
        p = out / entry["path"]
        if not p.is_file() or _digest(p.read_bytes()) != entry["hash"]:
            bad.append(entry["path"])
    return bad


# -- variants ---------------------------------------------------------------

def guideline_nodes(design: InstructionalDesign) -> list:
    """Ids of process nodes that carry guideline text."""
    return [node.id for _, node, _ in design.process.walk()
            if getattr(node, "guidelines", ())]


def language_fragments(design: InstructionalDesign) -> list:
    """Ids of text fragments written in the design's taught language."""
    lang = design.metadata.get("language", design.ui.language)
    return [f.id for f in design.content.fragments
            if f.kind is FragmentKind.TEXT and f.language_tag == lang]


def _retag(tag, old, new):
    if tag == old:
        return new
    if tag == old + PHONETIC_SUFFIX:
        return new + PHONETIC_SUFFIX
    return tag


def generate_variant(design: InstructionalDesign, new_profile: ScriptProfile, guideline_map,
                     content_map, *, medium: str | None = None,
                     design_id: str | None = None) -> InstructionalDesign:
    """Re-target a design at another language and/or medium of instruction.

    ``guideline_map`` must give new guidelines for every node returned by
    :func:`guideline_nodes`; ``content_map`` must give new text for every
    fragment returned by :func:`language_fragments`. Phonetic fragments and
    unit labels are re-derived from the new texts with ``new_profile``.
    The process tree keeps its shape.
    """
    old_lang = design.metadata.get("language", design.ui.language)
    new_lang = new_profile.language_tag
    frag_index = {f.id: f for f in design.content.fragments}
    needed_g = set(guideline_nodes(design))
    needed_c = set(language_fragments(design))
    uncovered = (needed_g - set(guideline_map)) | (needed_c - set(content_map))
    unknown = (set(guideline_map) - set(design.process.index)) | (set(content_map) - set(frag_index))
    if uncovered or unknown:
        raise VariantError(uncovered, unknown)

    invalid = []
    for frag_id in sorted(needed_c):
        try:
            segment_graphemes(content_map[frag_id], new_profile)
        except ScriptError:
            invalid.append(frag_id)
    if invalid:
        raise VariantError(invalid=invalid)

    texts = {fid: content_map.get(fid, f.text) for fid, f in frag_index.items()}
    objects = []
    for obj in design.content.objects:
        primary = texts.get(obj.fragment_refs[0]) if obj.fragment_refs else None
        meta = dict(obj.metadata)
        if primary is not None:
            try:
                if "unitClass" in meta:
                    meta.update(target_metadata(primary, new_profile))
                elif "units" in meta:
                    meta["units"] = unit_labels(primary, new_profile)
                for ref in obj.fragment_refs[1:]:
                    frag = frag_index.get(ref)
                    if frag is not None and frag.language_tag == old_lang + PHONETIC_SUFFIX \
                            and ref not in content_map:
                        texts[ref] = phoneme_text(primary, new_profile)
            except (ScriptError, IndexError):
                raise VariantError(invalid=[obj.id]) from None
        objects.append(replace(obj, metadata=meta))
    fragments = [replace(f, text=texts[f.id], language_tag=_retag(f.language_tag, old_lang, new_lang))
                 for f in design.content.fragments]
    content = replace(design.content, fragments=fragments, objects=objects)

    metadata = dict(design.metadata)
    metadata["language"] = new_lang
    if medium is not None:
        metadata["medium"] = medium
    if "script" in metadata:
        metadata["script"] = new_profile.script or ""
    variant = replace(design, id=design_id or design.id, content=content, ui=replace(design.ui, language=new_lang),
                      metadata=metadata)
    return substitute_guidelines(variant, dict(guideline_map))
