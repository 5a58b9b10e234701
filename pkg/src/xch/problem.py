"""JSON problem files: one scalar field plus named algebras, subspaces,
crossed modules, morphisms, and extensions, with an optional task list.

Scalars are integers or strings "p/q".  Multiplication and action
tables are sparse arrays of [i, j, k, scalar] with 0-based indices;
matrices (rho, morphism components, splitting sections) are dense
row-major with rows indexing the target basis.

Loading is two staged: the shipped JSON schema rejects malformed
structure, then reference resolution and shape checks run with
path-precise error messages.  Structural problems raise ProblemError;
mathematical axiom violations do not raise, they are collected by
axiom_report so a front end can render witnesses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .algebras import (
    AlgebraAction,
    CrossedModule,
    FiniteAlgebra,
    XModExtension,
    XModMorphism,
    validate_algebra,
    validate_crossed_module,
    validate_extension,
    validate_xmod_morphism,
)
from .linalg import SparseMatrix, Subspace
from .scalars import GF, QQ, Field, FieldError


class ProblemError(ValueError):
    """Structurally bad problem data; `where` locates the offender."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


def _load_schema(filename: str) -> dict:
    ref = resources.files("xch").joinpath("schemas").joinpath(filename)
    with ref.open("r", encoding="utf-8") as fh:
        return json.load(fh)


_validators: dict[str, jsonschema.Draft202012Validator] = {}


def problem_schema() -> dict:
    return _load_schema("problem.schema.json")


def report_schema() -> dict:
    return _load_schema("report.schema.json")


def _schema_check(data, schema_name: str) -> None:
    v = _validators.get(schema_name)
    if v is None:
        v = jsonschema.Draft202012Validator(_load_schema(schema_name))
        _validators[schema_name] = v
    err = jsonschema.exceptions.best_match(v.iter_errors(data))
    if err is not None:
        raise ProblemError(err.json_path, err.message)


@dataclass(frozen=True)
class Problem:
    """Parsed problem file; every object is fully constructed."""

    field: Field
    algebras: dict
    subspaces: dict  # name -> (ambient algebra name, Subspace)
    xmods: dict
    morphisms: dict
    extensions: dict
    tasks: tuple = ()
    source: str = "<problem>"

    def resolve(self, name: str):
        """(kind, object) for a top-level name; raises ProblemError."""
        for kind, table in (
            ("algebra", self.algebras),
            ("subspace", self.subspaces),
            ("xmod", self.xmods),
            ("morphism", self.morphisms),
            ("extension", self.extensions),
        ):
            if name in table:
                return kind, table[name]
        raise ProblemError(name, "no object with this name")


def _parse_field(spec: dict) -> Field:
    if spec["kind"] == "Q":
        return QQ
    try:
        return GF(spec["p"])
    except FieldError as exc:
        raise ProblemError("$.field.p", str(exc)) from None


def _dense(rows, nrows: int, ncols: int, f: Field, where: str) -> SparseMatrix:
    if len(rows) != nrows:
        raise ProblemError(where, f"expected {nrows} rows, got {len(rows)}")
    ent = []
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ProblemError(
                f"{where}[{i}]", f"expected {ncols} entries, got {len(row)}"
            )
        for j, v in enumerate(row):
            try:
                c = f.parse(v)
            except FieldError as exc:
                raise ProblemError(f"{where}[{i}][{j}]", str(exc)) from None
            if not f.is_zero(c):
                ent.append((i, j, c))
    return SparseMatrix(nrows, ncols, ent, f)


def parse_problem(data, source: str = "<problem>") -> Problem:
    _schema_check(data, "problem.schema.json")
    f = _parse_field(data["field"])

    seen: dict[str, str] = {}

    def claim(name: str, kind: str):
        if name in seen:
            raise ProblemError(
                f"$.{kind}s.{name}", f"name already used by a {seen[name]}"
            )
        seen[name] = kind

    algebras = {}
    for name, spec in data.get("algebras", {}).items():
        claim(name, "algebra")
        try:
            algebras[name] = FiniteAlgebra(
                name, spec["basis"], [tuple(e) for e in spec["mul"]], f
            )
        except (ValueError, FieldError) as exc:
            raise ProblemError(f"$.algebras.{name}", str(exc)) from None

    def algebra_ref(name: str, where: str) -> FiniteAlgebra:
        if name not in algebras:
            raise ProblemError(where, f"unknown algebra {name!r}")
        return algebras[name]

    subspaces = {}
    for name, spec in data.get("subspaces", {}).items():
        claim(name, "subspace")
        where = f"$.subspaces.{name}"
        amb = algebra_ref(spec["ambient"], f"{where}.ambient")
        m = _dense(
            spec["vectors"], len(spec["vectors"]), amb.dim, f, f"{where}.vectors"
        )
        vecs = [m.rows().get(i, {}) for i in range(m.nrows)]
        subspaces[name] = (spec["ambient"], Subspace.from_vectors(amb.dim, vecs, f))

    xmods = {}
    for name, spec in data.get("xmods", {}).items():
        claim(name, "xmod")
        where = f"$.xmods.{name}"
        r_alg = algebra_ref(spec["R"], f"{where}.R")
        a_alg = algebra_ref(spec["A"], f"{where}.A")
        rho = _dense(spec["rho"], a_alg.dim, r_alg.dim, f, f"{where}.rho")
        try:
            act = AlgebraAction(
                a_alg,
                r_alg,
                [tuple(e) for e in spec["action"]["left"]],
                [tuple(e) for e in spec["action"]["right"]],
            )
        except (ValueError, FieldError) as exc:
            raise ProblemError(f"{where}.action", str(exc)) from None
        xmods[name] = CrossedModule(r_alg, a_alg, rho, act, name=name)

    def xmod_ref(name: str, where: str) -> CrossedModule:
        if name not in xmods:
            raise ProblemError(where, f"unknown crossed module {name!r}")
        return xmods[name]

    morphisms = {}
    for name, spec in data.get("morphisms", {}).items():
        claim(name, "morphism")
        where = f"$.morphisms.{name}"
        src = xmod_ref(spec["source"], f"{where}.source")
        tgt = xmod_ref(spec["target"], f"{where}.target")
        mu = _dense(spec["mu"], tgt.R.dim, src.R.dim, f, f"{where}.mu")
        nu = _dense(spec["nu"], tgt.A.dim, src.A.dim, f, f"{where}.nu")
        morphisms[name] = XModMorphism(src, tgt, mu, nu, name=name)

    extensions = {}
    for name, spec in data.get("extensions", {}).items():
        claim(name, "extension")
        where = f"$.extensions.{name}"
        left = xmod_ref(spec["left"], f"{where}.left")
        mid = xmod_ref(spec["mid"], f"{where}.mid")
        right = xmod_ref(spec["right"], f"{where}.right")
        for role in ("inj", "prj"):
            if spec[role] not in morphisms:
                raise ProblemError(
                    f"{where}.{role}", f"unknown morphism {spec[role]!r}"
                )
        inj, prj = morphisms[spec["inj"]], morphisms[spec["prj"]]
        gamma = _dense(
            spec["gamma"], mid.R.dim, right.R.dim, f, f"{where}.gamma"
        )
        delta = _dense(
            spec["delta"], mid.A.dim, right.A.dim, f, f"{where}.delta"
        )
        try:
            extensions[name] = XModExtension(
                left, mid, right, inj, prj, gamma, delta, name=name
            )
        except ValueError as exc:
            raise ProblemError(where, str(exc)) from None

    tasks = tuple(data.get("tasks", []))
    for i, task in enumerate(tasks):
        names = list(task.get("objects", []))
        if "object" in task:
            names.append(task["object"])
        for n in names:
            if n not in seen:
                raise ProblemError(f"$.tasks[{i}]", f"unknown object {n!r}")

    return Problem(
        f, algebras, subspaces, xmods, morphisms, extensions, tasks, source
    )


def load_problem(path: str) -> Problem:
    """Parse a problem file from disk; json errors carry line/column."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return parse_problem(data, source=str(path))


def axiom_report(p: Problem) -> list[dict]:
    """Mathematical validation of every named object, with witnesses.

    Returns one record per object: {kind, object, valid, failures},
    ordered algebras, xmods, morphisms, extensions (subspaces carry no
    axioms of their own).
    """
    out = []

    def record(kind, name, failures):
        out.append(
            {
                "kind": kind,
                "object": name,
                "valid": not failures,
                "failures": [
                    {"law": fl["law"], "witness": fl.get("witness", "")}
                    if isinstance(fl, dict)
                    else {"law": fl, "witness": ""}
                    for fl in failures
                ],
            }
        )

    for name, a in p.algebras.items():
        record("algebra", name, validate_algebra(a))
    for name, x in p.xmods.items():
        record("xmod", name, validate_crossed_module(x))
    for name, m in p.morphisms.items():
        record("morphism", name, validate_xmod_morphism(m))
    for name, e in p.extensions.items():
        record("extension", name, validate_extension(e))
    return out


# -- serialization (inverse of the parser) ----------------------------------


def scalar_json(f: Field, v):
    """int when integral, else the 'p/q' string."""
    if f.char == 0:
        return int(v) if v.denominator == 1 else str(v)
    return int(v)


def matrix_json(m: SparseMatrix) -> list:
    f = m.field
    rows = [[0] * m.ncols for _ in range(m.nrows)]
    for i, j, v in m.entries:
        rows[i][j] = scalar_json(f, v)
    return rows


def _structure_json(f: Field, entries) -> list:
    return [[i, j, k, scalar_json(f, v)] for (i, j, k, v) in entries]


def algebra_json(a: FiniteAlgebra) -> dict:
    return {
        "basis": list(a.basis),
        "mul": _structure_json(a.field, a.mul_entries),
    }


def subspace_json(ambient_name: str, s: Subspace) -> dict:
    f = s.field
    vectors = []
    for vec in s.basis:
        row = [0] * s.ambient_dim
        for j, v in vec.items():
            row[j] = scalar_json(f, v)
        vectors.append(row)
    return {"ambient": ambient_name, "vectors": vectors}


def xmod_json(x: CrossedModule) -> dict:
    return {
        "R": x.R.name,
        "A": x.A.name,
        "rho": matrix_json(x.rho),
        "action": {
            "left": _structure_json(x.field, x.action.left_entries),
            "right": _structure_json(x.field, x.action.right_entries),
        },
    }


def morphism_json(m: XModMorphism) -> dict:
    return {
        "source": m.source.name,
        "target": m.target.name,
        "mu": matrix_json(m.mu),
        "nu": matrix_json(m.nu),
    }


def extension_json(e: XModExtension) -> dict:
    return {
        "left": e.left.name,
        "mid": e.mid.name,
        "right": e.right.name,
        "inj": e.inj.name,
        "prj": e.prj.name,
        "gamma": matrix_json(e.gamma),
        "delta": matrix_json(e.delta),
    }


def dumps_problem(data: dict) -> str:
    """Canonical text for a problem dict: sorted keys, two-space indent."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
