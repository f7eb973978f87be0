"""Command line entry points: exit codes, output formats, flag validation.

Exit convention: 0 when the checked property holds, 2 when the check ran
and the property fails, 1 for unusable input.
"""
import json
import pathlib

import pytest

from relartin import cli

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
JOIN = str(FIXTURES / "affine_parts_join.json")
CONTROL = str(FIXTURES / "touching_triple_control.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_check_rel_exit_codes(capsys):
    code, doc, _ = run_json(capsys, "check-rel", "--input", JOIN)
    assert code == 0
    assert doc["rel"]["ok"] and doc["rel_prime"]["ok"]

    code, doc, _ = run_json(capsys, "check-rel", "--input", CONTROL)
    assert code == 2
    assert not doc["rel_prime"]["ok"]
    pairs = {(v["u"], v["v"]) for v in doc["rel_prime"]["violations"]}
    assert pairs == {("a", "b"), ("b", "c")}


def test_classify_reports_parts(capsys):
    code, doc, _ = run_json(capsys, "classify", "--input", JOIN)
    assert code == 0
    assert [p["coxeter_kind"] for p in doc["parts"]] == ["affine", "affine"]
    assert doc["graph"]["join_decomposable"] is True


def test_build_outputs(capsys):
    code, doc, _ = run_json(capsys, "build", "--input", JOIN)
    assert code == 0
    assert doc["S_f_size"] == 45
    assert doc["S_bar_size"] == 47
    assert doc["complex_S_bar_chain_count"] == 693
    assert doc["two_dimensional"]["ok"] and doc["gluing"]["ok"]
    assert len(doc["S_ell"]["elements"]) == 27

    code, out, _ = run(capsys, "build", "--input", JOIN, "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_links_pass_and_fail(capsys):
    code, doc, _ = run_json(capsys, "links", "--input", JOIN)
    assert code == 0
    assert doc["ok"] and len(doc["entries"]) == 12

    code, out, _ = run(capsys, "links", "--input", CONTROL)
    assert code == 2
    assert "FAIL" in out and "m=3, non-disjoint" in out


def test_kpi1_verdict_and_byte_stability(capsys):
    code, out1, _ = run(capsys, "kpi1", "--input", JOIN, "--format", "json")
    code2, out2, _ = run(capsys, "kpi1", "--input", JOIN, "--format", "json")
    assert code == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["status"] == "holds, parts affine"

    code, doc, _ = run_json(capsys, "kpi1", "--input", CONTROL)
    assert code == 2
    assert doc["status"] == "inapplicable: inter-edge label condition fails"


def test_acyl_routes(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "acyl", "--input", JOIN)
    assert code == 0
    assert doc["status"] == "acyl-hyperbolic-via-witness"
    assert doc["witness_edge"] == ["a1", "a2", 4]

    free = tmp_path / "free.json"
    free.write_text(
        json.dumps({"vertices": ["a", "b"], "edges": [], "family": [["a"], ["b"]]})
    )
    code, doc, _ = run_json(capsys, "acyl", "--input", str(free))
    assert code == 0
    assert doc["status"] == "acyl-hyperbolic-via-free-product"

    small = tmp_path / "small.json"
    small.write_text(
        json.dumps(
            {
                "vertices": ["a", "b"],
                "edges": [{"u": "a", "v": "b", "m": 4}],
                "family": [["a"], ["b"]],
            }
        )
    )
    code, doc, _ = run_json(capsys, "acyl", "--input", str(small))
    assert code == 2
    assert doc["status"] == "inapplicable"


def test_develop_edge_and_part(capsys):
    code, doc, _ = run_json(
        capsys, "develop", "--input", JOIN, "--edge", "a1", "a2", "--radius-case3", "2"
    )
    assert code == 0
    assert doc["case"] == "inter-edge"
    assert doc["truncation"]["requested_radius"] == 2

    code, doc, _ = run_json(capsys, "develop", "--input", CONTROL, "--part", "0")
    assert code == 0
    assert doc["case"] == "part"

    code, out, _ = run(
        capsys,
        "develop",
        "--input",
        JOIN,
        "--edge",
        "a1",
        "a2",
        "--radius-case3",
        "2",
        "--format",
        "dot",
    )
    assert code == 0 and out.startswith('graph "')


def test_develop_selector_errors(capsys):
    code, _, err = run(capsys, "develop", "--input", JOIN)
    assert code == 1 and "exactly one" in err
    code, _, err = run(
        capsys, "develop", "--input", JOIN, "--part", "0", "--edge", "a1", "a2"
    )
    assert code == 1 and "exactly one" in err
    # an intra-part pair is not an inter-edge
    code, _, err = run(capsys, "develop", "--input", JOIN, "--edge", "a1", "b1")
    assert code == 1 and "not an inter-edge" in err
    code, _, err = run(capsys, "develop", "--input", JOIN, "--part", "9")
    assert code == 1 and "out of range" in err
    # the affine part has no exact engine
    code, _, err = run(capsys, "develop", "--input", JOIN, "--part", "0")
    assert code == 1 and "no exact word-problem engine" in err


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "kpi1", "--input", str(tmp_path / "missing.json"))
    assert code == 1 and "cannot read" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "kpi1", "--input", str(bad))
    assert code == 1 and "invalid JSON" in err

    stray = tmp_path / "stray.json"
    stray.write_text(json.dumps({"vertices": [], "edges": [], "family": [], "x": 1}))
    code, _, err = run(capsys, "kpi1", "--input", str(stray))
    assert code == 1 and "unknown keys" in err


def test_flag_validation(capsys):
    assert run(capsys, "links", "--input", JOIN, "--cap", "0")[0] == 1
    assert run(capsys, "links", "--input", JOIN, "--radius-case1", "0")[0] == 1
    assert run(capsys, "links", "--input", JOIN, "--radius-case3", "-1")[0] == 1
    assert run(capsys, "links", "--input", JOIN, "--tolerance", "0")[0] == 1
    code, _, err = run(capsys, "kpi1", "--input", JOIN, "--format", "dot")
    assert code == 1 and "dot output" in err
    assert cli.main(["nonsense"]) == 1
    assert cli.main([]) == 1


def test_text_format_is_default(capsys):
    code, out, _ = run(capsys, "check-rel", "--input", JOIN)
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    assert "rel_prime" in out
