import json

import pytest

from tesscurv.cli import _int_list, main
from tesscurv.fileformat import load_patch
from tesscurv.patch import validate_patch


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_and_validate(tmp_path, capsys):
    path = tmp_path / "p.tess"
    code, out, _ = run(capsys, "generate", "--regular", "4", "4", "--radius", "3", "--output", str(path))
    assert code == 0 and out.startswith("faces=")
    assert validate_patch(load_patch(path.read_text())).ok
    code, out, _ = run(capsys, "validate", "--input", str(path))
    assert code == 0 and out.strip().endswith("valid")


def test_generate_stdout(capsys):
    code, out, err = run(capsys, "generate", "--kagome", "--radius", "3")
    assert code == 0 and out.startswith("tess 1") and err.startswith("faces=")
    sizes = {len(c) for c in load_patch(out).faces.values()}
    assert sizes == {3, 6}


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--regular", "3", "5", "--radius", "2"],
        ["generate", "--regular", "4", "4"],
        ["generate", "--radius", "2"],
        ["generate", "--regular", "4", "4", "--kagome", "--radius", "2"],
        ["growth", "--regular", "4", "4", "--radius", "2", "--kmax", "4"],
        ["cse", "--regular", "4", "4", "--radius", "2", "--support", "ball:0:5"],
        ["cse", "--regular", "4", "4", "--radius", "4", "--support", "disc:1"],
        ["cse", "--regular", "4", "4", "--radius", "4", "--operator", "magic"],
        ["validate", "--input", "/nonexistent/file"],
        ["frobnicate"],
        ["cse", "--regular", "4", "4", "--radius", "4", "--seed", "x"],
        ["cse", "--regular", "4", "4", "--radius", "4", "--seed", "5-2"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_patch_file(tmp_path, capsys):
    path = tmp_path / "bad.tess"
    path.write_text("tess 1\nface 0: 1 2 1 3\n")
    code, _, err = run(capsys, "validate", "--input", str(path))
    assert code == 2 and "line 2" in err


def test_invalid_patch_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.tess"
    path.write_text("tess 1\nface 0: 0 1 2 3\nface 1: 2 1 0 4\ncomplete_vertices:\ncomplete_faces: all\n")
    code, out, _ = run(capsys, "validate", "--input", str(path))
    assert code == 1 and "axiom-ii" in out


def test_verify_geometry(capsys):
    code, out, _ = run(capsys, "verify-geometry", "--regular", "4", "4", "--radius", "6", "--kmax", "4")
    assert code == 0 and "FAIL" not in out and out.strip().endswith("PASS")
    code, out, _ = run(capsys, "verify-geometry", "--regular", "3", "7", "--radius", "5", "--kmax", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify-geometry", "--kagome", "--radius", "5", "--kmax", "3")
    assert code == 0 and "hypothesis not met" in out
    code, _, _ = run(capsys, "verify-geometry", "--regular", "4", "4", "--radius", "3", "--kmax", "4")
    assert code == 2


def test_cse_expectations(capsys):
    seeds = ",".join(str(s) for s in range(1, 21))
    code, out, _ = run(capsys, "cse", "--regular", "4", "4", "--radius", "5", "--seed", seeds, "--expect", "none")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 21 and lines[-1] == "summary\tfound=0\tnotfound=20"
    code, out, _ = run(capsys, "cse", "--kagome", "--radius", "3", "--operator", "adjacency", "--support", "face:0", "--expect", "some")
    assert code == 0 and "FOUND lambda=-2/1" in out
    code, _, _ = run(capsys, "cse", "--regular", "3", "7", "--radius", "8", "--expect", "some")
    assert code == 1
    code, _, _ = run(capsys, "cse", "--kagome", "--radius", "3", "--operator", "adjacency", "--support", "face:0", "--expect", "none")
    assert code == 1


def test_cse_jsonl_and_jobs(capsys):
    args = ["cse", "--regular", "4", "4", "--radius", "5", "--seed", "1,2,3,4", "--support", "ball:0:2", "--support", "list:0,1"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert serial == parallel
    code, out, _ = run(capsys, *args, "--format", "jsonl")
    recs = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(recs) == 9 and recs[-1] == {"summary": {"found": 0, "notfound": 8}}
    assert recs[0]["kind"] == "NOTFOUND" and recs[0]["certificate"].startswith("NOTFOUND dims=")


def test_operator_file(tmp_path, capsys):
    from tesscurv import spectral
    from tesscurv.generate import generate_kagome

    K, _ = generate_kagome(3)
    path = tmp_path / "adj.op"
    path.write_text(spectral.adjacency_operator(K).to_text())
    code, out, _ = run(capsys, "cse", "--kagome", "--radius", "3", "--operator", f"file:{path}", "--support", "face:0")
    assert code == 0 and "FOUND lambda=-2/1" in out


def test_uc_trace(capsys):
    code, out, _ = run(capsys, "uc-trace", "--regular", "4", "4", "--radius", "6", "--kmax", "3")
    assert code == 0 and out.strip().splitlines()[-1].startswith("SUCCESS")
    code, out, _ = run(capsys, "uc-trace", "--kagome", "--radius", "5", "--kmax", "2", "--operator", "adjacency")
    assert code == 1 and "STALL" in out


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", "--regular", "4", "4", "--radius", "5", "--kmax", "4")
    rows = [ln.split("\t") for ln in out.strip().splitlines()[1:]]
    assert code == 0 and [int(r[1]) for r in rows] == [1, 5, 13, 25, 41]
    code, out, _ = run(capsys, "growth", "--regular", "3", "7", "--radius", "5", "--kmax", "4", "--ratio")
    rows = [ln.split("\t") for ln in out.strip().splitlines()[1:]]
    assert all(r[3] == "-1/14" for r in rows) and rows[-1][4] == "-"
    code, out, _ = run(capsys, "growth", "--regular", "6", "3", "--radius", "5", "--kmax", "3", "--format", "jsonl")
    assert all(json.loads(x)["mean_chi"] == "0/1" for x in out.splitlines())


def test_render(tmp_path, capsys):
    path = tmp_path / "k.svg"
    code, _, _ = run(capsys, "render", "--kagome", "--radius", "2", "--output", str(path))
    text = path.read_text()
    assert code == 0 and text.startswith("<svg") and "chi-positive" in text and "chi-negative" in text
    empty = tmp_path / "e.tess"
    empty.write_text("tess 1\n")
    assert run(capsys, "render", "--input", str(empty))[0] == 2
    pinch = tmp_path / "p.tess"
    pinch.write_text("tess 1\nface 0: 0 1 2\nface 1: 0 3 4\ncomplete_vertices:\ncomplete_faces: all\n")
    assert run(capsys, "render", "--input", str(pinch))[0] == 1


def test_help_documents_schemas(capsys):
    code, out, _ = run(capsys, "growth", "--help")
    assert code == 0 and "mean_chi" in out and "exit codes" in out


def test_seed_ranges():
    assert _int_list("1-3,7,-2") == [1, 2, 3, 7, -2]
    assert _int_list("4") == [4]
