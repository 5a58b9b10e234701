"""Built-in worked instances: small algebras, crossed modules, and one
three-term extension.  Everything here is constructed programmatically;
`write_catalog_files` serializes the same objects to the JSON problem
format so the shipped files can never drift from the code.
"""

from __future__ import annotations

from .algebras import (
    AlgebraAction,
    CrossedModule,
    FiniteAlgebra,
    XModExtension,
    XModMorphism,
    direct_product,
    identity_xmod,
    make_bimodule_xmod,
    make_inclusion_xmod,
    zero_xmod,
)
from .linalg import SparseMatrix, Subspace
from .scalars import QQ


def alg_K1(field=QQ) -> FiniteAlgebra:
    """One-dimensional algebra with an idempotent: e*e = e."""
    return FiniteAlgebra("K1", ["e"], [(0, 0, 0, 1)], field)


def alg_N1(field=QQ) -> FiniteAlgebra:
    """One-dimensional algebra with zero multiplication."""
    return FiniteAlgebra("N1", ["x"], [], field)


def alg_Z2(field=QQ) -> FiniteAlgebra:
    """Two-dimensional algebra with zero multiplication."""
    return FiniteAlgebra("Z2", ["x", "y"], [], field)


def alg_U2(field=QQ) -> FiniteAlgebra:
    """Upper-triangular 2x2 matrices: span{e11, e12, e22}."""
    mul = [
        (0, 0, 0, 1),  # e11 e11 = e11
        (0, 1, 1, 1),  # e11 e12 = e12
        (1, 2, 1, 1),  # e12 e22 = e12
        (2, 2, 2, 1),  # e22 e22 = e22
    ]
    return FiniteAlgebra("U2", ["e11", "e12", "e22"], mul, field)


def alg_A2(field=QQ) -> FiniteAlgebra:
    """K1 x K1: two orthogonal idempotents u, v."""
    mul = [(0, 0, 0, 1), (1, 1, 1, 1)]
    return FiniteAlgebra("A2", ["u", "v"], mul, field)


ALGEBRA_BUILDERS = {
    "K1": alg_K1,
    "N1": alg_N1,
    "Z2": alg_Z2,
    "U2": alg_U2,
    "A2": alg_A2,
}


def xmod_incl_U2(field=QQ) -> CrossedModule:
    """The ideal span{e12} inside U2, with inclusion."""
    a = alg_U2(field)
    ideal = Subspace.from_vectors(3, [{1: field.one()}], field)
    return make_inclusion_xmod(a, ideal, name="X_incl_U2")


def xmod_incl_A2(field=QQ) -> CrossedModule:
    """The ideal span{u} inside K1 x K1, with inclusion."""
    a = alg_A2(field)
    ideal = Subspace.from_vectors(2, [{0: field.one()}], field)
    return make_inclusion_xmod(a, ideal, name="X_incl_A2")


def xmod_bimod(field=QQ) -> CrossedModule:
    """N1 as a unital K1-bimodule with zero structure map."""
    act = AlgebraAction(
        alg_K1(field), alg_N1(field), [(0, 0, 0, 1)], [(0, 0, 0, 1)]
    )
    return make_bimodule_xmod(act, name="X_bimod")


def xmod_id_K1(field=QQ) -> CrossedModule:
    return identity_xmod(alg_K1(field), name="X_id_K1")


def xmod_id_U2(field=QQ) -> CrossedModule:
    return identity_xmod(alg_U2(field), name="X_id_U2")


def xmod_zero_K1(field=QQ) -> CrossedModule:
    return zero_xmod(alg_K1(field), name="X_zero_K1")


def xmod_zero_N1(field=QQ) -> CrossedModule:
    return zero_xmod(alg_N1(field), name="X_zero_N1")


def xmod_zero_U2(field=QQ) -> CrossedModule:
    return zero_xmod(alg_U2(field), name="X_zero_U2")


def xmod_zero_A2(field=QQ) -> CrossedModule:
    return zero_xmod(alg_A2(field), name="X_zero_A2")


def xmod_zero_Z2(field=QQ) -> CrossedModule:
    return zero_xmod(alg_Z2(field), name="X_zero_Z2")


XMOD_BUILDERS = {
    "X_incl_U2": xmod_incl_U2,
    "X_incl_A2": xmod_incl_A2,
    "X_bimod": xmod_bimod,
    "X_id_K1": xmod_id_K1,
    "X_id_U2": xmod_id_U2,
    "X_zero_K1": xmod_zero_K1,
    "X_zero_N1": xmod_zero_N1,
    "X_zero_Z2": xmod_zero_Z2,
    "X_zero_U2": xmod_zero_U2,
    "X_zero_A2": xmod_zero_A2,
}


def extension_A2(field=QQ) -> XModExtension:
    """Split extension of inclusion crossed modules over K1 x K1.

    Left term:  span{u} inside A2 = K1 x K1.
    Middle:     span{u} x Q inside A2 x Q where Q is a copy of K1.
    Right term: the identity crossed module on Q.
    """

    f = field
    left = xmod_incl_A2(f)
    q = FiniteAlgebra("Q", ["q"], [(0, 0, 0, 1)], f)
    b = direct_product(alg_A2(f), q, name="B")  # basis u, v, q
    ideal_mid = Subspace.from_vectors(
        3, [{0: f.one()}, {2: f.one()}], f
    )
    mid = make_inclusion_xmod(b, ideal_mid, name="X_mid")
    right = identity_xmod(q, name="X_right")

    one = f.one()
    # mu: left.R (span u) -> mid.R (span u, q): i -> (i, 0)
    mu = SparseMatrix(2, 1, [(0, 0, one)], f)
    # nu: A2 -> B: a -> (a, 0)
    nu = SparseMatrix(3, 2, [(0, 0, one), (1, 1, one)], f)
    # eta: mid.R -> right.R = Q: (i, q) -> q
    eta = SparseMatrix(1, 2, [(0, 1, one)], f)
    # theta: B -> Q: (a, q) -> q
    theta = SparseMatrix(1, 3, [(0, 2, one)], f)
    # linear splittings: gamma: Q -> mid.R, delta: Q -> B
    gamma = SparseMatrix(2, 1, [(1, 0, one)], f)
    delta = SparseMatrix(3, 1, [(2, 0, one)], f)
    inj = XModMorphism(left, mid, mu, nu, name="inj")
    prj = XModMorphism(mid, right, eta, theta, name="prj")
    return XModExtension(
        left, mid, right, inj, prj, gamma, delta, name="E_A2"
    )


# -- serialization to the JSON problem format --------------------------------

IDEAL_SUBSPACES = {
    "X_incl_U2": ("I_e12", "U2", [[0, 1, 0]]),
    "X_incl_A2": ("I_u", "A2", [[1, 0]]),
}


def _add_algebra(table: dict, a) -> None:
    from .problem import algebra_json

    j = algebra_json(a)
    if table.setdefault(a.name, j) != j:
        raise ValueError(f"two different algebras named {a.name}")


def _add_xmod(data: dict, x) -> None:
    from .problem import xmod_json

    _add_algebra(data["algebras"], x.R)
    _add_algebra(data["algebras"], x.A)
    j = xmod_json(x)
    if data["xmods"].setdefault(x.name, j) != j:
        raise ValueError(f"two different crossed modules named {x.name}")


def _fresh(field_kind: str = "Q") -> dict:
    return {
        "field": {"kind": field_kind},
        "algebras": {},
        "subspaces": {},
        "xmods": {},
        "morphisms": {},
        "extensions": {},
        "tasks": [],
    }


def _prune(data: dict) -> dict:
    return {k: v for k, v in data.items() if v or k == "field"}


def xmod_problem(name: str) -> dict:
    """Self-contained problem dict for one catalog crossed module."""
    x = XMOD_BUILDERS[name]()
    data = _fresh()
    _add_xmod(data, x)
    data["tasks"].append({"command": "validate"})
    data["tasks"].append(
        {"command": "compute", "object": name, "what": "hh", "max_degree": 3}
    )
    data["tasks"].append(
        {"command": "verify", "theorem": "five-term", "objects": [name]}
    )
    if name in IDEAL_SUBSPACES:
        sub_name, ambient, vectors = IDEAL_SUBSPACES[name]
        data["subspaces"][sub_name] = {"ambient": ambient, "vectors": vectors}
        data["tasks"].append(
            {
                "command": "compute",
                "object": sub_name,
                "what": "relhc",
                "max_degree": 2,
            }
        )
        for theorem in ("corollary-corx", "relat"):
            data["tasks"].append(
                {
                    "command": "verify",
                    "theorem": theorem,
                    "objects": [name],
                    "max_degree": 2,
                }
            )
    return _prune(data)


def extension_problem() -> dict:
    """Problem dict holding the split extension and its constituents."""
    from .problem import extension_json, morphism_json

    ext = extension_A2()
    data = _fresh()
    for x in (ext.left, ext.mid, ext.right):
        _add_xmod(data, x)
    data["morphisms"][ext.inj.name] = morphism_json(ext.inj)
    data["morphisms"][ext.prj.name] = morphism_json(ext.prj)
    data["extensions"][ext.name] = extension_json(ext)
    data["tasks"].append({"command": "validate"})
    data["tasks"].append(
        {
            "command": "verify",
            "theorem": "excision",
            "objects": [ext.name],
            "max_degree": 2,
        }
    )
    return _prune(data)


def catalog_problem() -> dict:
    """One problem dict holding every catalog object and standard tasks."""
    from .problem import extension_json, morphism_json

    data = _fresh()
    for name, build in XMOD_BUILDERS.items():
        _add_xmod(data, build())
    ext = extension_A2()
    for x in (ext.left, ext.mid, ext.right):
        _add_xmod(data, x)
    data["morphisms"][ext.inj.name] = morphism_json(ext.inj)
    data["morphisms"][ext.prj.name] = morphism_json(ext.prj)
    data["extensions"][ext.name] = extension_json(ext)
    for sub_name, ambient, vectors in IDEAL_SUBSPACES.values():
        data["subspaces"][sub_name] = {"ambient": ambient, "vectors": vectors}
    data["tasks"] = [
        {"command": "validate"},
        {
            "command": "verify",
            "theorem": "connes",
            "objects": ["X_id_K1", "X_id_U2", "X_zero_U2"],
            "max_degree": 3,
        },
        {
            "command": "verify",
            "theorem": "five-term",
            "objects": ["X_bimod", "X_id_K1", "X_id_U2"],
        },
        {
            "command": "verify",
            "theorem": "corollary-corx",
            "objects": ["X_incl_U2", "X_incl_A2"],
            "max_degree": 3,
        },
        {
            "command": "verify",
            "theorem": "relat",
            "objects": ["X_incl_U2"],
            "max_degree": 2,
        },
        {
            "command": "verify",
            "theorem": "connection",
            "objects": ["X_incl_U2", "X_id_K1"],
            "max_degree": 2,
        },
        {
            "command": "verify",
            "theorem": "excision",
            "objects": ["E_A2"],
            "max_degree": 2,
        },
        {
            "command": "verify",
            "theorem": "lemma-3.7",
            "objects": ["X_bimod"],
            "max_degree": 2,
        },
        {
            "command": "compute",
            "object": "X_id_K1",
            "what": "hc",
            "max_degree": 3,
        },
        {
            "command": "compute",
            "object": "I_e12",
            "what": "relhc",
            "max_degree": 2,
        },
    ]
    return _prune(data)


def write_catalog_files(dirpath) -> list:
    """Write main.json, E_A2.json, and one file per crossed module."""
    import os

    from .problem import dumps_problem

    os.makedirs(dirpath, exist_ok=True)
    files = {"main.json": catalog_problem(), "E_A2.json": extension_problem()}
    for name in XMOD_BUILDERS:
        files[f"{name}.json"] = xmod_problem(name)
    written = []
    for fname in sorted(files):
        path = os.path.join(dirpath, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_problem(files[fname]))
        written.append(path)
    return written


if __name__ == "__main__":
    import sys

    for path in write_catalog_files(
        sys.argv[1] if len(sys.argv) > 1 else "catalog"
    ):
        print(path)
