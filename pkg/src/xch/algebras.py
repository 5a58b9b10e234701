"""Finite-dimensional non-unital algebras and crossed modules.

Algebras are given by basis labels and sparse multiplication structure
constants.  Actions carry two sparse 3-tensors (left a.r and right
r.a).  Crossed modules bundle a structure map rho: R -> A with an
action of A on R; `validate_crossed_module` checks every axiom on basis
tuples and reports each violation with a witness, since bilinearity
makes basis checks complete.

Elements are sparse dicts {basis index: scalar}.  All objects are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    SparseMatrix,
    Subspace,
    image,
    kernel,
    quotient_presentation,
    rank,
    solve,
)
from .scalars import QQ, Field


def _vec_add(field, x: dict, y: dict) -> dict:
    out = dict(x)
    for j, v in y.items():
        w = field.add(out.get(j, field.zero()), v)
        if field.is_zero(w):
            out.pop(j, None)
        else:
            out[j] = w
    return out


def _vec_sub(field, x: dict, y: dict) -> dict:
    return _vec_add(field, x, {j: field.neg(v) for j, v in y.items()})


def _vec_scale(field, c, x: dict) -> dict:
    if field.is_zero(c):
        return {}
    return {j: field.mul(c, v) for j, v in x.items()}


def _tensor3(entries, dims, field, what):
    """Normalize sparse 3-tensor entries [(i, j, k, val)] into a lookup."""
    d0, d1, d2 = dims
    table: dict[tuple[int, int], dict[int, object]] = {}
    for i, j, k, v in entries:
        if not (0 <= i < d0 and 0 <= j < d1 and 0 <= k < d2):
            raise ValueError(f"{what}: index ({i},{j},{k}) out of range")
        v = field.parse(v)
        if field.is_zero(v):
            continue
        cell = table.setdefault((i, j), {})
        if k in cell:
            raise ValueError(f"{what}: duplicate entry ({i},{j},{k})")
        cell[k] = v
    return table


class FiniteAlgebra:
    """Algebra by structure constants: e_i e_j = sum_k c[i][j][k] e_k."""

    def __init__(self, name: str, basis, mul, field: Field = QQ):
        self.name = name
        self.basis = tuple(str(b) for b in basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"{name}: duplicate basis labels")
        self.dim = len(self.basis)
        self.field = field
        self._mul = _tensor3(mul, (self.dim, self.dim, self.dim), field, name)
        self.mul_entries = tuple(
            (i, j, k, self._mul[(i, j)][k])
            for (i, j) in sorted(self._mul)
            for k in sorted(self._mul[(i, j)])
        )

    def product_basis(self, i: int, j: int) -> dict:
        return dict(self._mul.get((i, j), {}))

    def product(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                cell = self._mul.get((i, j))
                if not cell:
                    continue
                c = f.mul(a, b)
                for k, v in cell.items():
                    w = f.add(out.get(k, f.zero()), f.mul(c, v))
                    if f.is_zero(w):
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def basis_vec(self, i: int) -> dict:
        return {i: self.field.one()}

    def label_of(self, i: int) -> str:
        return self.basis[i]

    def format_element(self, x: dict) -> str:
        if not x:
            return "0"
        f = self.field
        parts = []
        for j in sorted(x):
            c = f.format(x[j])
            parts.append(self.basis[j] if c == "1" else f"{c}*{self.basis[j]}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FiniteAlgebra({self.name}, dim={self.dim})"


def validate_algebra(a: FiniteAlgebra) -> list[dict]:
    """Associativity on all basis triples; empty report means valid."""
    failures = []
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.product_basis(i, j)
            for k in range(a.dim):
                lhs = a.product(ij, a.basis_vec(k))
                rhs = a.product(a.basis_vec(i), a.product_basis(j, k))
                if lhs != rhs:
                    failures.append(
                        {
                            "law": "(xy)z = x(yz)",
                            "witness": f"(x={a.basis[i]}, y={a.basis[j]}, "
                            f"z={a.basis[k]})",
                        }
                    )
    return failures


class AlgebraAction:
    """Action of `acting` (A) on `acted` (R): tensors for a.r and r.a."""

    def __init__(self, acting: FiniteAlgebra, acted: FiniteAlgebra, left, right):
        if acting.field is not acted.field:
            raise ValueError("mixed scalar modes in action")
        self.acting = acting
        self.acted = acted
        self.field = acting.field
        dims_l = (acting.dim, acted.dim, acted.dim)
        dims_r = (acted.dim, acting.dim, acted.dim)
        self._left = _tensor3(left, dims_l, self.field, "left action")
        self._right = _tensor3(right, dims_r, self.field, "right action")
        self.left_entries = tuple(
            (i, j, k, self._left[(i, j)][k])
            for (i, j) in sorted(self._left)
            for k in sorted(self._left[(i, j)])
        )
        self.right_entries = tuple(
            (i, j, k, self._right[(i, j)][k])
            for (i, j) in sorted(self._right)
            for k in sorted(self._right[(i, j)])
        )

    def act_left(self, avec: dict, rvec: dict) -> dict:
        f = self.field
        out: dict[int, object] = {}
        for i, a in avec.items():
            for j, r in rvec.items():
                cell = self._left.get((i, j))
                if not cell:
                    continue
                c = f.mul(a, r)
                for k, v in cell.items():
                    w = f.add(out.get(k, f.zero()), f.mul(c, v))
                    if f.is_zero(w):
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def act_right(self, rvec: dict, avec: dict) -> dict:
        f = self.field
        out: dict[int, object] = {}
        for j, r in rvec.items():
            for i, a in avec.items():
                cell = self._right.get((j, i))
                if not cell:
                    continue
                c = f.mul(r, a)
                for k, v in cell.items():
                    w = f.add(out.get(k, f.zero()), f.mul(c, v))
                    if f.is_zero(w):
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out


def validate_action(act: AlgebraAction) -> list[dict]:
    """Bimodule laws and the three multiplicative compatibility laws."""
    A, R = act.acting, act.acted
    failures = []

    def check(law, witness, lhs, rhs):
        if lhs != rhs:
            failures.append({"law": law, "witness": witness})

    for i in range(A.dim):
        ai = A.basis_vec(i)
        for j in range(A.dim):
            aj = A.basis_vec(j)
            aij = A.product_basis(i, j)
            for k in range(R.dim):
                rk = R.basis_vec(k)
                w = f"(a={A.basis[i]}, a'={A.basis[j]}, r={R.basis[k]})"
                check(
                    "(aa')r = a(a'r)",
                    w,
                    act.act_left(aij, rk),
                    act.act_left(ai, act.act_left(aj, rk)),
                )
                check(
                    "r(aa') = (ra)a'",
                    w,
                    act.act_right(rk, aij),
                    act.act_right(act.act_right(rk, ai), aj),
                )
                check(
                    "(ar)a' = a(ra')",
                    w,
                    act.act_right(act.act_left(ai, rk), aj),
                    act.act_left(ai, act.act_right(rk, aj)),
                )
    for i in range(A.dim):
        ai = A.basis_vec(i)
        for j in range(R.dim):
            rj = R.basis_vec(j)
            for k in range(R.dim):
                rk = R.basis_vec(k)
                rjk = R.product_basis(j, k)
                w = f"(a={A.basis[i]}, r={R.basis[j]}, r'={R.basis[k]})"
                check(
                    "a(rr') = (ar)r'",
                    w,
                    act.act_left(ai, rjk),
                    R.product(act.act_left(ai, rj), rk),
                )
                check(
                    "(ra)r' = r(ar')",
                    w,
                    R.product(act.act_right(rj, ai), rk),
                    R.product(rj, act.act_left(ai, rk)),
                )
                check(
                    "(rr')a = r(r'a)",
                    w,
                    act.act_right(rjk, ai),
                    R.product(rj, act.act_right(rk, ai)),
                )
    return failures


@dataclass(frozen=True)
class CrossedModule:
    R: FiniteAlgebra
    A: FiniteAlgebra
    rho: SparseMatrix
    action: AlgebraAction
    name: str = ""

    def __post_init__(self):
        if self.rho.nrows != self.A.dim or self.rho.ncols != self.R.dim:
            raise ValueError(
                f"rho must be {self.A.dim}x{self.R.dim}, "
                f"got {self.rho.nrows}x{self.rho.ncols}"
            )
        if self.action.acting is not self.A or self.action.acted is not self.R:
            raise ValueError("action does not match (R, A)")

    @property
    def field(self) -> Field:
        return self.A.field

    def rho_apply(self, rvec: dict) -> dict:
        return self.rho.apply(rvec)


def validate_crossed_module(x: CrossedModule) -> list[dict]:
    """All axioms with witnesses; empty report means valid."""
    failures = []
    for fail in validate_algebra(x.R):
        failures.append({**fail, "law": "R " + fail["law"]})
    for fail in validate_algebra(x.A):
        failures.append({**fail, "law": "A " + fail["law"]})
    failures.extend(validate_action(x.action))
    R, A, act = x.R, x.A, x.action
    for i in range(R.dim):
        ri = R.basis_vec(i)
        rho_i = x.rho_apply(ri)
        for j in range(R.dim):
            rj = R.basis_vec(j)
            rij = R.product_basis(i, j)
            w = f"(r={R.basis[i]}, r'={R.basis[j]})"
            if x.rho_apply(rij) != A.product(rho_i, x.rho_apply(rj)):
                failures.append({"law": "rho(rr') = rho(r)rho(r')", "witness": w})
            if act.act_left(rho_i, rj) != rij:
                failures.append({"law": "rho(r)r' = rr'", "witness": w})
            if act.act_right(ri, x.rho_apply(rj)) != rij:
                failures.append({"law": "r rho(r') = rr'", "witness": w})
    for i in range(A.dim):
        ai = A.basis_vec(i)
        for j in range(R.dim):
            rj = R.basis_vec(j)
            w = f"(a={A.basis[i]}, r={R.basis[j]})"
            if x.rho_apply(act.act_left(ai, rj)) != A.product(
                ai, x.rho_apply(rj)
            ):
                failures.append({"law": "rho(ar) = a rho(r)", "witness": w})
            if x.rho_apply(act.act_right(rj, ai)) != A.product(
                x.rho_apply(rj), ai
            ):
                failures.append({"law": "rho(ra) = rho(r)a", "witness": w})
    return failures


@dataclass(frozen=True)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    mu: SparseMatrix
    nu: SparseMatrix
    name: str = ""

    def __post_init__(self):
        if self.mu.nrows != self.target.R.dim or self.mu.ncols != self.source.R.dim:
            raise ValueError("mu shape mismatch")
        if self.nu.nrows != self.target.A.dim or self.nu.ncols != self.source.A.dim:
            raise ValueError("nu shape mismatch")


def validate_xmod_morphism(m: XModMorphism) -> list[dict]:
    failures = []
    s, t = m.source, m.target
    if (t.rho @ m.mu) != (m.nu @ s.rho):
        failures.append({"law": "rho' mu = nu rho", "witness": "(matrix)"})
    for i in range(s.R.dim):
        ri = s.R.basis_vec(i)
        for j in range(s.R.dim):
            rj = s.R.basis_vec(j)
            w = f"(r={s.R.basis[i]}, r'={s.R.basis[j]})"
            lhs = m.mu.apply(s.R.product_basis(i, j))
            rhs = t.R.product(m.mu.apply(ri), m.mu.apply(rj))
            if lhs != rhs:
                failures.append({"law": "mu(rr') = mu(r)mu(r')", "witness": w})
    for i in range(s.A.dim):
        ai = s.A.basis_vec(i)
        for j in range(s.A.dim):
            aj = s.A.basis_vec(j)
            w = f"(a={s.A.basis[i]}, a'={s.A.basis[j]})"
            lhs = m.nu.apply(s.A.product_basis(i, j))
            rhs = t.A.product(m.nu.apply(ai), m.nu.apply(aj))
            if lhs != rhs:
                failures.append({"law": "nu(aa') = nu(a)nu(a')", "witness": w})
    for i in range(s.A.dim):
        ai = s.A.basis_vec(i)
        nai = m.nu.apply(ai)
        for j in range(s.R.dim):
            rj = s.R.basis_vec(j)
            mrj = m.mu.apply(rj)
            w = f"(a={s.A.basis[i]}, r={s.R.basis[j]})"
            if m.mu.apply(s.action.act_left(ai, rj)) != t.action.act_left(
                nai, mrj
            ):
                failures.append({"law": "mu(ar) = nu(a)mu(r)", "witness": w})
            if m.mu.apply(s.action.act_right(rj, ai)) != t.action.act_right(
                mrj, nai
            ):
                failures.append({"law": "mu(ra) = mu(r)nu(a)", "witness": w})
    return failures


@dataclass(frozen=True)
class XModExtension:
    """Linearly split extension left -> mid -> right of crossed modules.

    gamma and delta are linear (not multiplicative) sections of the two
    projection components: prj.mu gamma = 1, prj.nu delta = 1, and they
    intertwine the structure maps: rho_mid gamma = delta rho_right.
    """

    left: CrossedModule
    mid: CrossedModule
    right: CrossedModule
    inj: XModMorphism
    prj: XModMorphism
    gamma: SparseMatrix
    delta: SparseMatrix
    name: str = ""

    def __post_init__(self):
        if self.inj.source is not self.left or self.inj.target is not self.mid:
            raise ValueError("inj must map left -> mid")
        if self.prj.source is not self.mid or self.prj.target is not self.right:
            raise ValueError("prj must map mid -> right")
        if (
            self.gamma.nrows != self.mid.R.dim
            or self.gamma.ncols != self.right.R.dim
        ):
            raise ValueError("gamma shape mismatch")
        if (
            self.delta.nrows != self.mid.A.dim
            or self.delta.ncols != self.right.A.dim
        ):
            raise ValueError("delta shape mismatch")


def validate_extension(ext: XModExtension) -> list[str]:
    """Row exactness and splitting laws; [] when all hold."""
    failures = []
    for m, tag in ((ext.inj, "inj"), (ext.prj, "prj")):
        for fail in validate_xmod_morphism(m):
            failures.append(f"{tag}: {fail['law']} at {fail['witness']}")
    f = ext.mid.field
    if rank(ext.inj.mu) != ext.left.R.dim:
        failures.append("top row: inj.mu is not injective")
    if rank(ext.inj.nu) != ext.left.A.dim:
        failures.append("bottom row: inj.nu is not injective")
    if rank(ext.prj.mu) != ext.right.R.dim:
        failures.append("top row: prj.mu is not surjective")
    if rank(ext.prj.nu) != ext.right.A.dim:
        failures.append("bottom row: prj.nu is not surjective")
    if kernel(ext.prj.mu) != image(ext.inj.mu):
        failures.append("top row: Ker(prj.mu) != Im(inj.mu)")
    if kernel(ext.prj.nu) != image(ext.inj.nu):
        failures.append("bottom row: Ker(prj.nu) != Im(inj.nu)")
    if (ext.prj.mu @ ext.gamma) != SparseMatrix.identity(ext.right.R.dim, f):
        failures.append("gamma is not a section of prj.mu")
    if (ext.prj.nu @ ext.delta) != SparseMatrix.identity(ext.right.A.dim, f):
        failures.append("delta is not a section of prj.nu")
    if (ext.mid.rho @ ext.gamma) != (ext.delta @ ext.right.rho):
        failures.append("sections do not intertwine the structure maps")
    return failures


@dataclass(frozen=True)
class LinearXMod:
    """An object of the linearized category: just a linear map V -> W."""

    v_labels: tuple
    w_labels: tuple
    f: SparseMatrix

    @property
    def v_dim(self):
        return len(self.v_labels)

    @property
    def w_dim(self):
        return len(self.w_labels)


# -- constructors --------------------------------------------------------


def semidirect_product(act: AlgebraAction, name: str = "") -> FiniteAlgebra:
    """Algebra on R + A with (r,a)(r',a') = (rr' + ar' + ra', aa')."""
    bad = validate_action(act)
    if bad:
        raise ValueError(f"invalid action: {bad[0]['law']} at {bad[0]['witness']}")
    R, A = act.acted, act.acting
    f = act.field
    labels = [f"r:{b}" for b in R.basis] + [f"a:{b}" for b in A.basis]
    mul = []
    for i in range(R.dim):
        for j in range(R.dim):
            for k, v in R.product_basis(i, j).items():
                mul.append((i, j, k, v))
    for i in range(A.dim):
        for j in range(R.dim):
            for k, v in act._left.get((i, j), {}).items():
                mul.append((R.dim + i, j, k, v))
    for i in range(R.dim):
        for j in range(A.dim):
            for k, v in act._right.get((i, j), {}).items():
                mul.append((i, R.dim + j, k, v))
    for i in range(A.dim):
        for j in range(A.dim):
            for k, v in A.product_basis(i, j).items():
                mul.append((R.dim + i, R.dim + j, R.dim + k, v))
    return FiniteAlgebra(name or f"{R.name}:|x{A.name}", labels, mul, f)


def self_action(a: FiniteAlgebra) -> AlgebraAction:
    """A acting on itself by multiplication (left and right)."""
    left = [(i, j, k, v) for (i, j, k, v) in a.mul_entries]
    return AlgebraAction(a, a, left, left)


def commutator_space(act: AlgebraAction) -> Subspace:
    """[A, R]: span of a.r - r.a over basis pairs, inside R."""
    A, R, f = act.acting, act.acted, act.field
    gens = []
    for i in range(A.dim):
        ai = A.basis_vec(i)
        for j in range(R.dim):
            rj = R.basis_vec(j)
            gens.append(
                _vec_sub(f, act.act_left(ai, rj), act.act_right(rj, ai))
            )
    return Subspace.from_vectors(R.dim, gens, f)


def algebra_commutator_space(a: FiniteAlgebra) -> Subspace:
    """[A, A] as a subspace of A."""
    return commutator_space(self_action(a))


def is_two_sided_ideal(a: FiniteAlgebra, sub: Subspace):
    """None if sub is an ideal, else a witness string."""
    for i in range(a.dim):
        ai = a.basis_vec(i)
        for k, vec in enumerate(sub.basis):
            if not sub.contains(a.product(ai, vec)):
                return f"{a.basis[i]} * (basis {k}) leaves the subspace"
            if not sub.contains(a.product(vec, ai)):
                return f"(basis {k}) * {a.basis[i]} leaves the subspace"
    return None


def quotient_algebra(a: FiniteAlgebra, ideal: Subspace, name: str = ""):
    """(quotient algebra, projection matrix); ideal must be two-sided."""
    witness = is_two_sided_ideal(a, ideal)
    if witness is not None:
        raise ValueError(f"not a two-sided ideal: {witness}")
    dim, proj, sec = quotient_presentation(a.dim, ideal)
    f = a.field
    pivset = set(ideal.pivots)
    free = [j for j in range(a.dim) if j not in pivset]
    labels = [f"[{a.basis[j]}]" for j in free]
    mul = []
    for i in range(dim):
        ei = sec.column(i)
        for j in range(dim):
            ej = sec.column(j)
            prod = proj.apply(a.product(ei, ej))
            for k, v in prod.items():
                mul.append((i, j, k, v))
    q = FiniteAlgebra(name or f"{a.name}/I", labels, mul, f)
    return q, proj


def subalgebra_on(a: FiniteAlgebra, sub: Subspace, name: str = ""):
    """(subalgebra, inclusion matrix); sub must be closed under product."""
    f = a.field
    labels = [f"{a.basis[p]}^" for p in sub.pivots]
    mul = []
    for i, vi in enumerate(sub.basis):
        for j, vj in enumerate(sub.basis):
            prod = a.product(vi, vj)
            try:
                coords = sub.coords(prod)
            except ValueError:
                raise ValueError(
                    f"subspace not closed under multiplication at ({i},{j})"
                ) from None
            for k, v in coords.items():
                mul.append((i, j, k, v))
    alg = FiniteAlgebra(name or f"{a.name}|sub", labels, mul, f)
    return alg, sub.inclusion_matrix()


def make_inclusion_xmod(
    a: FiniteAlgebra, ideal: Subspace, name: str = ""
) -> CrossedModule:
    """Ideal inclusion as a crossed module; action by multiplication."""
    witness = is_two_sided_ideal(a, ideal)
    if witness is not None:
        raise ValueError(f"not a two-sided ideal: {witness}")
    R, inc = subalgebra_on(a, ideal, name=f"{name or a.name}|ideal")
    left = []
    right = []
    for i in range(a.dim):
        ai = a.basis_vec(i)
        for j, vj in enumerate(ideal.basis):
            for k, v in ideal.coords(a.product(ai, vj)).items():
                left.append((i, j, k, v))
            for k, v in ideal.coords(a.product(vj, ai)).items():
                right.append((j, i, k, v))
    act = AlgebraAction(a, R, left, right)
    return CrossedModule(R, a, inc, act, name=name or f"incl({a.name})")


def identity_xmod(a: FiniteAlgebra, name: str = "") -> CrossedModule:
    return make_inclusion_xmod(
        a, Subspace.full(a.dim, a.field), name=name or f"id({a.name})"
    )


def zero_xmod(a: FiniteAlgebra, name: str = "") -> CrossedModule:
    return make_inclusion_xmod(
        a, Subspace.zero(a.dim, a.field), name=name or f"zero({a.name})"
    )


def make_bimodule_xmod(act: AlgebraAction, name: str = "") -> CrossedModule:
    """Bimodule (zero-multiplication acted algebra) with rho = 0."""
    if act.acted.mul_entries:
        i, j, _, _ = act.acted.mul_entries[0]
        raise ValueError(
            "acted algebra must have zero multiplication; "
            f"({act.acted.basis[i]})({act.acted.basis[j]}) != 0 "
            "would violate rho(m)m' = mm' with rho = 0"
        )
    rho = SparseMatrix.zero(act.acting.dim, act.acted.dim, act.field)
    return CrossedModule(act.acted, act.acting, rho, act, name=name)


def make_annihilator_xmod(
    R: FiniteAlgebra, A: FiniteAlgebra, rho: SparseMatrix, name: str = ""
) -> CrossedModule:
    """Surjective rho with kernel in the two-sided annihilator of R.

    The action is a r := (preimage of a) r; independence of the choice
    of preimage is validated (the kernel must annihilate R on both
    sides), not assumed.
    """
    f = R.field
    if image(rho).dim != A.dim:
        raise ValueError("rho must be surjective onto A")
    ker = kernel(rho)
    for kv in ker.basis:
        for j in range(R.dim):
            rj = R.basis_vec(j)
            if R.product(kv, rj) or R.product(rj, kv):
                raise ValueError(
                    "kernel of rho does not annihilate R; "
                    "the action would depend on the preimage choice"
                )
    pre = solve(rho, SparseMatrix.identity(A.dim, f))
    if pre is None:
        raise ValueError("no preimage section for rho")
    left = []
    right = []
    for i in range(A.dim):
        lift = pre.column(i)
        for j in range(R.dim):
            rj = R.basis_vec(j)
            for k, v in R.product(lift, rj).items():
                left.append((i, j, k, v))
            for k, v in R.product(rj, lift).items():
                right.append((j, i, k, v))
    act = AlgebraAction(A, R, left, right)
    return CrossedModule(R, A, rho, act, name=name or f"annih({A.name})")


def direct_product(
    a: FiniteAlgebra, b: FiniteAlgebra, name: str = ""
) -> FiniteAlgebra:
    labels = [f"{a.name}.{lbl}" for lbl in a.basis] + [
        f"{b.name}.{lbl}" for lbl in b.basis
    ]
    if len(set(labels)) != len(labels):
        labels = [f"l.{lbl}" for lbl in a.basis] + [
            f"r.{lbl}" for lbl in b.basis
        ]
    mul = list(a.mul_entries)
    mul += [
        (a.dim + i, a.dim + j, a.dim + k, v) for (i, j, k, v) in b.mul_entries
    ]
    return FiniteAlgebra(name or f"{a.name}x{b.name}", labels, mul, a.field)


def coker_rho(x: CrossedModule):
    """(Coker rho as an algebra, projection A -> Coker rho)."""
    return quotient_algebra(x.A, image(x.rho), name=f"coker({x.name})")


def additive_abelianization(x: CrossedModule) -> LinearXMod:
    """(R/[A,R] -> A/[A,A], map induced by rho)."""
    car = commutator_space(x.action)
    caa = algebra_commutator_space(x.A)
    _, proj_r, sec_r = quotient_presentation(x.R.dim, car)
    _, proj_a, _ = quotient_presentation(x.A.dim, caa)
    v_labels = tuple(
        f"[{x.R.basis[j]}]" for j in range(x.R.dim) if j not in set(car.pivots)
    )
    w_labels = tuple(
        f"[{x.A.basis[j]}]" for j in range(x.A.dim) if j not in set(caa.pivots)
    )
    induced = proj_a @ x.rho @ sec_r
    return LinearXMod(v_labels, w_labels, induced)
