import json
import sys
from pathlib import Path

import pytest

from twistcat.catgroup import CategoricalGroup, catgroup_axioms_check
from twistcat.cli import main
from twistcat.fincat import TableCategory, category_axioms_check

DATA = Path(__file__).resolve().parent.parent / "data"
PKG = Path(__file__).resolve().parent.parent / "src" / "twistcat"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def data(name):
    return DATA / name


# (command, file, exit code)
CASES = [
    ("crossed", "z2_s3_sign.json", 1),
    ("crossed", "z2_z2_id.json", 0),
    ("crossed", "affine_f3.json", 0),
    ("catgroup", "affine_f3.json", 0),
    ("catgroup", "codiscrete_z2.json", 0),
    ("catgroup", "z2_s3_sign.json", 1),
    ("eta", "projection.json", 0),
    ("eta", "sd1_eta.json", 0),
    ("action", "rg1_action.json", 0),
    ("action", "catvec_neg.json", 0),
    ("action", "catvec_counterfeit.json", 1),
    ("vecspace", "catvec_f2.json", 0),
    ("vecspace", "catvec_neg.json", 0),
    ("vecspace", "catvec_counterfeit.json", 1),
    ("double", "rg1_action.json", 1),       # only the converse of the boundary rule fails
]


@pytest.mark.parametrize("kind,name,code", CASES)
def test_data_files(capsys, kind, name, code):
    got, out, err = run(capsys, "check", kind, "--in", data(name))
    assert got == code, err
    doc = json.loads(out)
    assert doc["status"] == {0: "pass", 1: "fail"}[code]
    assert err.splitlines()[0].endswith("PASS" if code == 0 else "FAIL")


def test_peiffer_counterexample_is_named(capsys):
    _, out, _ = run(capsys, "check", "crossed", "--in", data("z2_s3_sign.json"))
    laws = {l["law"]: l for l in json.loads(out)["laws"]}
    bad = laws["peiffer-2"]
    assert bad["status"] == "fail"
    assert set(bad["counterexample"]["args"]) == {"h", "h'"}
    assert "lhs" in bad["counterexample"] and "rhs" in bad["counterexample"]


def test_double_without_converse(capsys):
    code, out, _ = run(capsys, "check", "double", "--in", data("rg1_action.json"), "--no-converse")
    assert code == 0
    assert "h1-converse" not in {l["law"] for l in json.loads(out)["laws"]}


def test_wrong_kind_for_file_is_input_error(capsys):
    code, out, err = run(capsys, "check", "eta", "--in", data("affine_f3.json"))
    assert code == 2 and out == ""
    assert err.startswith("error: ") and len(err.strip().splitlines()) == 1


# ---------------------------------------------------------------- build

def test_build_catgroup(capsys, tmp_path):
    dest = tmp_path / "cg.json"
    code, _, _ = run(capsys, "build", "catgroup", "--in", data("affine_f3.json"), "--out", dest)
    assert code == 0
    cg = CategoricalGroup.from_json(json.loads(dest.read_text()))
    assert len(cg.morphisms()) == 6 and catgroup_axioms_check(cg).ok


def test_build_refuses_to_write_a_failing_catgroup(capsys, tmp_path):
    dest = tmp_path / "cg.json"
    code, _, _ = run(capsys, "build", "catgroup", "--in", data("z2_s3_sign.json"), "--out", dest)
    assert code == 1 and not dest.exists()


def test_build_product(capsys, tmp_path):
    dest = tmp_path / "p.json"
    code, _, _ = run(capsys, "build", "product", "--in", data("sd1_eta.json"), "--out", dest)
    assert code == 0
    doc = json.loads(dest.read_text())
    P = TableCategory.from_json(doc)
    assert len(P.morphisms()) == 6 and category_axioms_check(P).ok
    assert len(doc["morphism_labels"]) == 6


def test_build_product_from_three_files(capsys, tmp_path):
    proj = json.loads(data("projection.json").read_text())
    paths = []
    for key, body in (("A", proj["A"]), ("B", proj["B"]), ("eta", {"eta": proj["eta"]})):
        p = tmp_path / f"{key}.json"
        p.write_text(json.dumps(body))
        paths.append(p)
    dest = tmp_path / "p.json"
    code, _, _ = run(capsys, "build", "product", "--in", *paths, "--out", dest)
    assert code == 0
    assert len(TableCategory.from_json(json.loads(dest.read_text())).morphisms()) == 4 * 9


# ---------------------------------------------------------------- schur and fixtures

@pytest.mark.parametrize("name,branch", [("schur_identity.json", "isomorphism"),
                                         ("schur_quotient.json", "quotient-isomorphism"),
                                         ("schur_zero.json", "zero")])
def test_schur(capsys, name, branch):
    code, out, _ = run(capsys, "schur", "--in", data(name))
    assert code == 0
    assert json.loads(out)["facts"]["verdict"]["branch"] == branch


def test_fixture_list(capsys):
    code, out, _ = run(capsys, "fixture", "list")
    assert code == 0
    assert "sd1" in [f["name"] for f in json.loads(out)]


def test_fixture_check_sd1(capsys):
    code, out, _ = run(capsys, "fixture", "sd1", "--check")
    assert code == 0
    assert json.loads(out)["facts"]["table isomorphic to S3"] is True


def test_fixture_export(capsys):
    code, out, _ = run(capsys, "fixture", "affine", "--param", "q=3")
    assert code == 0
    doc = json.loads(out)
    assert CategoricalGroup.from_json(doc["components"]["catgroup"])


# ---------------------------------------------------------------- input errors

@pytest.mark.parametrize("argv", [
    ["check", "crossed", "--in", "/nonexistent/x.json"],
    ["check", "crossed", "--in", "{bad}"],
    ["check", "crossed", "--in", "{schema}"],
    ["check", "nonsense", "--in", "x"],
    ["check", "crossed", "--in", str(DATA / "z2_z2_id.json"), "--samples", "0"],
    ["fixture", "oned", "--param", "q=7"],
    ["fixture", "oned", "--param", "q"],
    ["fixture", "nosuch"],
])
def test_bad_input_exits_2(capsys, tmp_path, argv):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    schema = tmp_path / "schema.json"
    doc = json.loads((DATA / "z2_z2_id.json").read_text())
    del doc["tau"]
    schema.write_text(json.dumps(doc))
    argv = [{"{bad}": str(bad), "{schema}": str(schema)}.get(a, a) for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_schema_error_names_the_field(capsys, tmp_path):
    doc = json.loads((DATA / "z2_z2_id.json").read_text())
    del doc["tau"]
    p = tmp_path / "x.json"
    p.write_text(json.dumps(doc))
    _, _, err = run(capsys, "check", "crossed", "--in", p)
    assert err.strip() == "error: tau: missing field"


# ---------------------------------------------------------------- determinism and coverage

@pytest.mark.parametrize("extra", [[], ["--mode", "sampled", "--samples", "300", "--seed", "9"]])
def test_reports_are_byte_identical(capsys, extra):
    argv = ["check", "vecspace", "--in", data("catvec_neg.json")] + extra
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--workers", "3")
    assert a == b == c


def test_every_checker_module_is_reachable(capsys, tmp_path):
    seen = set()

    def prof(frame, event, arg):
        if event == "call":
            f = frame.f_code.co_filename
            if f.startswith(str(PKG)):
                seen.add(Path(f).stem)

    cmds = [["check", k, "--in", data(f)] for k, f in
            [("crossed", "z2_z2_id.json"), ("catgroup", "affine_f3.json"), ("eta", "sd1_eta.json"),
             ("action", "rg1_action.json"), ("double", "rg1_action.json"),
             ("vecspace", "catvec_neg.json")]]
    cmds += [["schur", "--in", data("schur_quotient.json")], ["fixture", "sd1", "--check"]]
    sys.setprofile(prof)
    try:
        for c in cmds:
            main([str(x) for x in c])
    finally:
        sys.setprofile(None)
    capsys.readouterr()
    modules = {p.stem for p in PKG.glob("*.py")} - {"__init__", "__main__", "errors"}
    assert modules <= seen, modules - seen
