import json
import shutil
import subprocess
import sys

import pytest

from helpers import inject_word, iscii
from idont.cli import main
from idont.ontology import design_to_dict, dumps_design, load_design


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.fixture
def compiled(tmp_path, primer_dir, capsys):
    status, _, _ = run(capsys, "compile", "--primer", primer_dir / "telugu.json",
                       "--out", tmp_path / "te")
    assert status == 0
    return tmp_path / "te" / "design.json"


def test_compile_single(tmp_path, primer_dir, capsys):
    status, out, _ = run(capsys, "compile", "--primer", primer_dir / "telugu.json",
                         "--out", tmp_path / "te", "--json")
    assert status == 0
    report = json.loads(out)
    assert report["status"] == "written" and report["design"] == "primer-te"
    assert (tmp_path / "te" / "manifest.json").is_file()
    status, out, _ = run(capsys, "compile", "--primer", primer_dir / "telugu.json",
                         "--out", tmp_path / "te", "--json")
    assert json.loads(out)["status"] == "unchanged"


def test_validate_and_check_clean(compiled, capsys):
    status, out, _ = run(capsys, "validate", compiled, "--json")
    assert status == 0 and json.loads(out)["reports"][0]["violations"] == []
    status, out, _ = run(capsys, "check", compiled, "--json")
    report = json.loads(out)
    assert status == 0 and report["violations"] == []
    assert len(report["trace"]["perLesson"]) == 3


def test_check_flags_injected_word(compiled, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(dumps_design(inject_word(load_design(compiled), 1, "వదిన")), encoding="utf-8")
    status, out, _ = run(capsys, "check", bad, "--json")
    assert status == 1
    violations = json.loads(out)["violations"]
    assert [v["rule"] for v in violations] == ["PREREQUISITE_CLOSURE"]
    assert violations[0]["details"]["missing"] == ["వ", "ద", "ి", "న"]
    status, _, err = run(capsys, "package", bad, "--out", tmp_path / "pkg")
    assert status == 1 and "PREREQUISITE_CLOSURE" in err


def test_diff_across_languages(compiled, tmp_path, primer_dir, capsys):
    run(capsys, "compile", "--primer", primer_dir / "hindi.json", "--out", tmp_path / "hi")
    status, out, _ = run(capsys, "diff", compiled, tmp_path / "hi" / "design.json", "--json")
    delta = json.loads(out)
    assert status == 0
    assert delta["structuralChanges"] == []
    assert delta["contentChanges"] and delta["guidelineChanges"]


def test_package_command(compiled, tmp_path, capsys):
    status, out, _ = run(capsys, "package", compiled, "--out", tmp_path / "p", "--json")
    assert status == 0 and json.loads(out)["status"] == "written"
    status, out, _ = run(capsys, "package", compiled, "--out", tmp_path / "p", "--json")
    assert json.loads(out)["status"] == "unchanged"


def test_parse_error_exits_2(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"id": ', encoding="utf-8")
    status, _, err = run(capsys, "validate", broken)
    assert status == 2 and "broken.json" in err


def test_unknown_enum_exits_2(compiled, tmp_path, capsys):
    doc = design_to_dict(load_design(compiled))
    doc["process"]["plays"][0]["acts"][0]["kind"] = "daydreaming"
    path = tmp_path / "enum.json"
    path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    status, _, err = run(capsys, "validate", path)
    assert status == 2 and "daydreaming" in err


def test_missing_file_and_bad_usage(tmp_path, capsys):
    assert run(capsys, "validate", tmp_path / "nope.json")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, "compile", "--out", tmp_path)[0] == 2


def _batch_dir(tmp_path, primer_dir):
    src = tmp_path / "primers"
    src.mkdir()
    shutil.copy(primer_dir / "telugu.json", src / "a-telugu.json")
    bad = json.loads((primer_dir / "telugu.json").read_text(encoding="utf-8"))
    bad["lessons"][0]["targets"] = ["వ"]
    (src / "b-broken.json").write_text(json.dumps(bad, ensure_ascii=False), encoding="utf-8")
    shutil.copy(primer_dir / "hindi.json", src / "c-hindi.json")
    return src


def test_batch_continues_past_failures(tmp_path, primer_dir, capsys):
    src = _batch_dir(tmp_path, primer_dir)
    status, out, _ = run(capsys, "compile", "--primer", src, "--out", tmp_path / "out", "--json")
    report = json.loads(out)
    assert status == 2
    assert [r["status"] for r in report["results"]] == ["written", "failed", "written"]
    assert (report["compiled"], report["failed"]) == (2, 1)
    assert (tmp_path / "out" / "c-hindi" / "manifest.json").is_file()


def test_batch_fail_fast(tmp_path, primer_dir, capsys):
    src = _batch_dir(tmp_path, primer_dir)
    status, out, _ = run(capsys, "compile", "--primer", src, "--out", tmp_path / "out",
                         "--json", "--fail-fast")
    assert status == 2
    assert [r["status"] for r in json.loads(out)["results"]] == ["written", "failed"]
    assert not (tmp_path / "out" / "c-hindi").exists()


def test_variant_command(compiled, tmp_path, capsys):
    from idont.packager import guideline_nodes, language_fragments
    design = load_design(compiled)
    nodes = design.process.index
    g = {n: list(nodes[n].node.guidelines) for n in guideline_nodes(design)}
    texts = {f.id: f.text for f in design.content.fragments}
    c = {f: iscii(texts[f]) for f in language_fragments(design)}
    (tmp_path / "g.json").write_text(json.dumps(g, ensure_ascii=False), encoding="utf-8")
    (tmp_path / "c.json").write_text(json.dumps(c, ensure_ascii=False), encoding="utf-8")
    status, out, _ = run(capsys, "variant", compiled, "--profile", "hi", "--guidelines",
                         tmp_path / "g.json", "--content", tmp_path / "c.json",
                         "--id", "primer-te-deva", "--out", tmp_path / "v", "--json")
    assert status == 0 and json.loads(out)["design"] == "primer-te-deva"
    status, out, _ = run(capsys, "diff", compiled, tmp_path / "v" / "design.json", "--json")
    assert json.loads(out)["structuralChanges"] == []

    del g[next(iter(g))]
    (tmp_path / "g.json").write_text(json.dumps(g, ensure_ascii=False), encoding="utf-8")
    status, _, err = run(capsys, "variant", compiled, "--profile", "hi", "--guidelines",
                         tmp_path / "g.json", "--content", tmp_path / "c.json",
                         "--out", tmp_path / "v2")
    assert status == 1 and "uncovered" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "idont.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("idont ")
