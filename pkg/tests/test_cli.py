import json

import pytest

from liedeform.cli import (
    EXIT_CHECK_FAILED,
    EXIT_GUARD,
    EXIT_OBSTRUCTION,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(p)


def test_cohomology_text(capsys):
    code, out, _ = run(capsys, "cohomology")
    assert code == 0
    assert "dim Z1=11 dim B1=7 dim H1=4" in out


def test_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["dims"] == {"Z": 11, "B": 7, "H": 4}
    assert len(js["representatives"]) == 4


def test_cohomology_bad_degree(capsys):
    code, _, err = run(capsys, "cohomology", "--degree", "5")
    assert code == EXIT_USAGE and "degree" in err


def test_deform_builtin(capsys):
    code, out, _ = run(capsys, "deform")
    assert code == 0
    assert "orders examined: [2, 3, 4, 5, 6]" in out
    assert "[t1*t3^2]  -X*⊗e23" in out
    assert "residual zero: True" in out


def test_deform_json_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "deform", "--format", "json")
    js = json.loads(out)
    assert code == 0
    assert js["verification"]["residual_zero"] is True
    assert js["verification"]["pointwise_failures"] == 0
    assert [e["entry"] for e in js["verification"]["generic_matrix_comparison"]["differ"]] == ["(3,2)"]
    path = write(tmp_path, "d.json", js)
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and "residual zero: True" in out


def test_verify_rejects_wrong_series(capsys, tmp_path):
    bad = {"parameters": 1, "terms": {"t1": "X*⊗e11"}}
    code, out, _ = run(capsys, "verify", write(tmp_path, "bad.json", bad))
    assert code == EXIT_CHECK_FAILED and "residual zero: False" in out


def test_verify_unreadable(capsys, tmp_path):
    code, _, err = run(capsys, "verify", write(tmp_path, "x.json", "[1, 2"))
    assert code == EXIT_USAGE and "cannot read" in err


def test_deform_computed_representatives(capsys):
    code, out, _ = run(capsys, "deform", "--computed", "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["verification"]["residual_zero"]
    assert js["deformation"]["parameters"] == 4


def test_deform_single_cocycle(capsys):
    code, out, _ = run(capsys, "deform", "--cocycle", "Z*⊗e21")
    assert code == 0 and "max degree: 1" in out


def test_deform_non_cocycle(capsys):
    code, _, err = run(capsys, "deform", "--cocycle", "X*⊗e11")
    assert code == EXIT_USAGE and "not a 1-cocycle" in err


def test_deform_guard(capsys):
    code, out, _ = run(capsys, "deform", "--max-order", "1")
    assert code == EXIT_GUARD and "guard exceeded" in out


def test_deform_obstruction(capsys, tmp_path):
    inst = {"source": {"dim": 2, "labels": ["p", "q"]}, "target": {"gl": 2},
            "images": [[0, 0, 0, 0], [0, 0, 0, 0]],
            "cocycles": ["p*⊗e12", "q*⊗e21"]}
    path = write(tmp_path, "ab.json", inst)
    code, out, _ = run(capsys, "deform", "--input", path, "--format", "json")
    js = json.loads(out)
    assert code == EXIT_OBSTRUCTION
    assert js["verification"]["obstructions"][0]["monomial"] == "t1*t2"


def test_cup(capsys):
    code, out, _ = run(capsys, "cup", "X*⊗e32", "Z*⊗(2e22 + e11) + Y*⊗e21")
    assert code == 0
    assert "2 X*∧Z*⊗e32" in out and "delta1(" in out


def test_cup_json_non_coboundary(capsys):
    code, out, _ = run(capsys, "cup", "X*⊗e12", "Z*⊗e21", "--format", "json")
    js = json.loads(out)
    assert code == 0
    assert js["is_coboundary"] is (js["preimage"] is not None)


def test_cup_parse_error(capsys):
    code, _, err = run(capsys, "cup", "W*⊗e11", "X*⊗e11")
    assert code == EXIT_USAGE


@pytest.mark.parametrize("content", [
    "{not json",
    json.dumps({"source": {"dim": 1}}),
    json.dumps({"source": {"n": 2, "generators": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]},
                "target": {"gl": 2}}),
    json.dumps({"source": {"dim": 1}, "target": {"gl": 1}, "images": [[0.5]]}),
])
def test_malformed_input(capsys, tmp_path, content):
    code, _, err = run(capsys, "cohomology", "--input", write(tmp_path, "m.json", content))
    assert code == EXIT_USAGE and err.startswith("liedeform: error:")


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "cohomology", "--input", str(tmp_path / "none.json"))
    assert code == EXIT_USAGE


def test_one_dim_abelian_into_gl1(capsys, tmp_path):
    inst = {"source": {"dim": 1, "labels": ["x"]}, "target": {"gl": 1}, "images": [[0]]}
    code, out, _ = run(capsys, "cohomology", "--input", write(tmp_path, "a.json", inst))
    assert code == 0 and "dim H1=1" in out


def test_reproduce_paper(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--format", "json")
    js = json.loads(out)
    assert code == 0
    assert js["counts"]["FAIL"] == 0
    assert js["factor2_variant"]["verdict"] == "unit-factor"
    assert js["dims"] == {"Z1": 11, "B1": 7, "H1": 4}


def test_no_command(capsys):
    with pytest.raises(SystemExit):
        main([])
