import copy
import json
from pathlib import Path

import jsonschema
import pytest

from xch import catalog
from xch.problem import (
    ProblemError,
    axiom_report,
    dumps_problem,
    load_problem,
    parse_problem,
    problem_schema,
    report_schema,
    scalar_json,
)
from xch.scalars import GF, QQ

CATALOG_DIR = Path(__file__).resolve().parent.parent / "catalog"

MINIMAL = {
    "field": {"kind": "Q"},
    "algebras": {"K1": {"basis": ["e"], "mul": [[0, 0, 0, 1]]}},
    "xmods": {
        "X": {
            "R": "K1",
            "A": "K1",
            "rho": [[1]],
            "action": {"left": [[0, 0, 0, 1]], "right": [[0, 0, 0, 1]]},
        }
    },
}


def test_parse_minimal():
    p = parse_problem(copy.deepcopy(MINIMAL))
    assert p.field is QQ
    x = p.xmods["X"]
    assert x.R.dim == 1 and x.A.dim == 1
    assert all(r["valid"] for r in axiom_report(p))


def test_parse_fp_field():
    data = copy.deepcopy(MINIMAL)
    data["field"] = {"kind": "Fp", "p": 7}
    p = parse_problem(data)
    assert p.field is GF(7)


def test_parse_rational_scalars():
    data = copy.deepcopy(MINIMAL)
    data["algebras"]["K1"]["mul"] = [[0, 0, 0, "1/2"]]
    p = parse_problem(data)
    from fractions import Fraction

    assert p.algebras["K1"].product_basis(0, 0) == {0: Fraction(1, 2)}


def test_schema_rejects_shape():
    data = copy.deepcopy(MINIMAL)
    data["algebras"]["K1"]["mul"] = [[0, 0, 0]]  # missing scalar
    with pytest.raises(ProblemError, match=r"algebras"):
        parse_problem(data)
    data = copy.deepcopy(MINIMAL)
    data["field"] = {"kind": "R"}
    with pytest.raises(ProblemError, match="field"):
        parse_problem(data)
    data = copy.deepcopy(MINIMAL)
    data["algebras"]["K1"]["mul"] = [[0, 0, 0, "0.5"]]  # not p/q
    with pytest.raises(ProblemError):
        parse_problem(data)


def test_unknown_references():
    data = copy.deepcopy(MINIMAL)
    data["xmods"]["X"]["A"] = "nope"
    with pytest.raises(ProblemError, match=r"\$\.xmods\.X\.A"):
        parse_problem(data)
    data = copy.deepcopy(MINIMAL)
    data["subspaces"] = {"S": {"ambient": "ghost", "vectors": [[1]]}}
    with pytest.raises(ProblemError, match="ghost"):
        parse_problem(data)
    data = copy.deepcopy(MINIMAL)
    data["tasks"] = [{"command": "compute", "object": "missing"}]
    with pytest.raises(ProblemError, match=r"tasks\[0\]"):
        parse_problem(data)


def test_matrix_shape_errors_are_path_precise():
    data = copy.deepcopy(MINIMAL)
    data["xmods"]["X"]["rho"] = [[1], [0]]  # K1 has one basis vector
    with pytest.raises(ProblemError, match=r"rho.*expected 1 rows"):
        parse_problem(data)
    data = copy.deepcopy(MINIMAL)
    data["xmods"]["X"]["rho"] = [[1, 0]]
    with pytest.raises(ProblemError, match=r"rho\[0\].*expected 1 entries"):
        parse_problem(data)


def test_duplicate_names_across_kinds():
    data = copy.deepcopy(MINIMAL)
    data["subspaces"] = {"K1": {"ambient": "K1", "vectors": [[1]]}}
    with pytest.raises(ProblemError, match="already used"):
        parse_problem(data)


def test_out_of_range_action_index():
    data = copy.deepcopy(MINIMAL)
    data["xmods"]["X"]["action"]["left"] = [[0, 0, 5, 1]]
    with pytest.raises(ProblemError, match="out of range"):
        parse_problem(data)


def test_fp_denominator_collision():
    data = copy.deepcopy(MINIMAL)
    data["field"] = {"kind": "Fp", "p": 5}
    data["algebras"]["K1"]["mul"] = [[0, 0, 0, "1/5"]]
    with pytest.raises(ProblemError, match="vanishes mod 5"):
        parse_problem(data)


def test_axiom_report_collects_witnesses():
    # rho = 0 on the idempotent algebra breaks the Peiffer law
    data = copy.deepcopy(MINIMAL)
    data["xmods"]["X"]["rho"] = [[0]]
    p = parse_problem(data)
    rep = {r["object"]: r for r in axiom_report(p)}
    assert rep["K1"]["valid"]
    assert not rep["X"]["valid"]
    assert any(
        f["witness"] == "(r=e, r'=e)" for f in rep["X"]["failures"]
    )


def test_resolve():
    p = parse_problem(copy.deepcopy(MINIMAL))
    assert p.resolve("X")[0] == "xmod"
    assert p.resolve("K1")[0] == "algebra"
    with pytest.raises(ProblemError):
        p.resolve("nothing")


def test_scalar_json_forms():
    from fractions import Fraction

    assert scalar_json(QQ, Fraction(3)) == 3
    assert scalar_json(QQ, Fraction(-2, 7)) == "-2/7"
    assert scalar_json(GF(5), 3) == 3


# -- shipped catalog files ------------------------------------------------


def test_catalog_files_validate_against_schema():
    schema = problem_schema()
    files = sorted(CATALOG_DIR.glob("*.json"))
    assert len(files) == len(catalog.XMOD_BUILDERS) + 2
    for path in files:
        jsonschema.validate(json.loads(path.read_text()), schema)


def test_catalog_files_match_generator(tmp_path):
    # the shipped files must be byte-identical to what the code emits
    catalog.write_catalog_files(tmp_path)
    for path in sorted(CATALOG_DIR.glob("*.json")):
        regen = tmp_path / path.name
        assert regen.read_text() == path.read_text(), path.name
    assert sorted(p.name for p in tmp_path.glob("*.json")) == sorted(
        p.name for p in CATALOG_DIR.glob("*.json")
    )


def test_catalog_main_round_trips():
    p = load_problem(str(CATALOG_DIR / "main.json"))
    assert set(catalog.XMOD_BUILDERS) <= set(p.xmods)
    assert "E_A2" in p.extensions
    assert all(r["valid"] for r in axiom_report(p))
    regen = dumps_problem(catalog.catalog_problem())
    assert regen == (CATALOG_DIR / "main.json").read_text()


def test_catalog_extension_objects_are_wired():
    p = load_problem(str(CATALOG_DIR / "E_A2.json"))
    ext = p.extensions["E_A2"]
    assert ext.inj.source is ext.left
    assert ext.prj.target is ext.right
    from xch.algebras import validate_extension

    assert validate_extension(ext) == []


def test_report_schema_is_loadable():
    jsonschema.Draft202012Validator.check_schema(report_schema())
    jsonschema.Draft202012Validator.check_schema(problem_schema())
