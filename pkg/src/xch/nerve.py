"""Nerve of a crossed module as a simplicial algebra.

Level n is R^n + A with coordinates (r_1, ..., r_n, a).  Faces drop
r_1, merge adjacent slots, or push r_n through rho into a; degeneracies
insert a zero slot.  The product on level n is componentwise over the
composable-string picture: on basis elements, two r-slots multiply in R
into the lower slot (left operand first), an a against an r-slot acts,
and a against a multiplies in A.  Every face and degeneracy is an
algebra homomorphism for this product; `verify_homomorphisms` checks
that on all basis pairs rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import CrossedModule, FiniteAlgebra
from .linalg import (
    IncrementalSpan,
    SparseMatrix,
    Subspace,
    kernel,
    kernel_vectors,
)


def _level_algebra(x: CrossedModule, n: int) -> FiniteAlgebra:
    R, A = x.R, x.A
    dR = R.dim
    off_a = n * dR
    labels = [
        f"r{s}:{b}" for s in range(1, n + 1) for b in R.basis
    ] + [f"a:{b}" for b in A.basis]
    mul = []
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            m = min(s, t)
            for i in range(dR):
                for j in range(dR):
                    for k, v in R.product_basis(i, j).items():
                        mul.append(
                            ((s - 1) * dR + i, (t - 1) * dR + j, (m - 1) * dR + k, v)
                        )
    for t in range(1, n + 1):
        for i, j, k, v in x.action.left_entries:
            mul.append((off_a + i, (t - 1) * dR + j, (t - 1) * dR + k, v))
    for s in range(1, n + 1):
        for i, j, k, v in x.action.right_entries:
            mul.append(((s - 1) * dR + i, off_a + j, (s - 1) * dR + k, v))
    for i, j, k, v in A.mul_entries:
        mul.append((off_a + i, off_a + j, off_a + k, v))
    return FiniteAlgebra(f"N{n}({x.name})", labels, mul, x.field)


def _face_matrix(x: CrossedModule, n: int, i: int) -> SparseMatrix:
    dR, dA = x.R.dim, x.A.dim
    f = x.field
    one = f.one()
    dom = n * dR + dA
    cod = (n - 1) * dR + dA
    dom_a = n * dR
    cod_a = (n - 1) * dR
    ent = []
    if i == 0:
        for s in range(2, n + 1):
            for t in range(dR):
                ent.append(((s - 2) * dR + t, (s - 1) * dR + t, one))
    elif i < n:
        for s in range(1, n + 1):
            cs = s if s < i else (i if s <= i + 1 else s - 1)
            for t in range(dR):
                ent.append(((cs - 1) * dR + t, (s - 1) * dR + t, one))
    else:
        for s in range(1, n):
            for t in range(dR):
                ent.append(((s - 1) * dR + t, (s - 1) * dR + t, one))
        for r, c, v in x.rho.entries:
            ent.append((cod_a + r, (n - 1) * dR + c, v))
    for t in range(dA):
        ent.append((cod_a + t, dom_a + t, one))
    return SparseMatrix(cod, dom, ent, f)


def _degen_matrix(x: CrossedModule, n: int, i: int) -> SparseMatrix:
    dR, dA = x.R.dim, x.A.dim
    f = x.field
    one = f.one()
    dom = n * dR + dA
    cod = (n + 1) * dR + dA
    ent = []
    for s in range(1, n + 1):
        cs = s if s <= i else s + 1
        for t in range(dR):
            ent.append(((cs - 1) * dR + t, (s - 1) * dR + t, one))
    for t in range(dA):
        ent.append(((n + 1) * dR + t, n * dR + t, one))
    return SparseMatrix(cod, dom, ent, f)


@dataclass(frozen=True)
class SimplicialAlgebra:
    levels: tuple
    faces: tuple  # faces[n] = (d_0^n, ..., d_n^n) for n >= 1; faces[0] = ()
    degeneracies: tuple  # degeneracies[n] = (s_0^n, ..., s_n^n), empty at top
    max_level: int

    def face(self, n: int, i: int) -> SparseMatrix:
        return self.faces[n][i]

    def degen(self, n: int, i: int) -> SparseMatrix:
        return self.degeneracies[n][i]

    def dim(self, n: int) -> int:
        return self.levels[n].dim


def nerve(x: CrossedModule, max_level: int) -> SimplicialAlgebra:
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    levels = tuple(_level_algebra(x, n) for n in range(max_level + 1))
    faces = tuple(
        tuple(_face_matrix(x, n, i) for i in range(n + 1)) if n else ()
        for n in range(max_level + 1)
    )
    degens = tuple(
        tuple(
            _degen_matrix(x, n, i) for i in range(n + 1)
        )
        if n < max_level
        else ()
        for n in range(max_level + 1)
    )
    return SimplicialAlgebra(levels, faces, degens, max_level)


def constant_simplicial(a: FiniteAlgebra, max_level: int) -> SimplicialAlgebra:
    """The constant simplicial algebra: every level is a, all maps id."""
    eye = SparseMatrix.identity(a.dim, a.field)
    levels = tuple(a for _ in range(max_level + 1))
    faces = tuple(
        tuple(eye for _ in range(n + 1)) if n else ()
        for n in range(max_level + 1)
    )
    degens = tuple(
        tuple(eye for _ in range(n + 1)) if n < max_level else ()
        for n in range(max_level + 1)
    )
    return SimplicialAlgebra(levels, faces, degens, max_level)


def verify_simplicial_identities(sa: SimplicialAlgebra) -> list[str]:
    bad = []
    for n in range(2, sa.max_level + 1):
        for j in range(n + 1):
            for i in range(j):
                if sa.face(n - 1, i) @ sa.face(n, j) != sa.face(n - 1, j - 1) @ sa.face(
                    n, i
                ):
                    bad.append(f"d_{i} d_{j} != d_{j-1} d_{i} at level {n}")
    for n in range(sa.max_level):
        for j in range(n + 1):
            sj = sa.degen(n, j)
            for i in range(n + 2):
                lhs = sa.face(n + 1, i) @ sj
                if i < j:
                    rhs = sa.degen(n - 1, j - 1) @ sa.face(n, i)
                elif i in (j, j + 1):
                    rhs = SparseMatrix.identity(sa.dim(n), sa.levels[n].field)
                else:
                    rhs = sa.degen(n - 1, j) @ sa.face(n, i - 1)
                if lhs != rhs:
                    bad.append(f"d_{i} s_{j} identity fails at level {n}")
    for n in range(sa.max_level - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if sa.degen(n + 1, i) @ sa.degen(n, j) != sa.degen(
                    n + 1, j + 1
                ) @ sa.degen(n, i):
                    bad.append(f"s_{i} s_{j} != s_{j+1} s_{i} at level {n}")
    return bad


def _is_hom(m: SparseMatrix, src: FiniteAlgebra, dst: FiniteAlgebra) -> bool:
    cols = [m.column(j) for j in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            if m.apply(src.product_basis(i, j)) != dst.product(cols[i], cols[j]):
                return False
    return True


def verify_homomorphisms(sa: SimplicialAlgebra) -> list[str]:
    bad = []
    for n in range(1, sa.max_level + 1):
        for i in range(n + 1):
            if not _is_hom(sa.face(n, i), sa.levels[n], sa.levels[n - 1]):
                bad.append(f"d_{i}^{n} is not an algebra homomorphism")
    for n in range(sa.max_level):
        for i in range(n + 1):
            if not _is_hom(sa.degen(n, i), sa.levels[n], sa.levels[n + 1]):
                bad.append(f"s_{i}^{n} is not an algebra homomorphism")
    return bad


@dataclass(frozen=True)
class MooreComplex:
    window: tuple  # (lo, hi), inclusive
    subspaces: dict  # n -> Subspace of level n
    boundary: dict  # n -> matrix in Moore coordinates, N_n -> N_{n-1}

    def dim(self, n: int) -> int:
        return self.subspaces[n].dim


def moore(sa: SimplicialAlgebra, window=None) -> MooreComplex:
    if window is None:
        window = range(sa.max_level + 1)
    lo, hi = min(window), max(window)
    if lo < 0 or hi > sa.max_level:
        raise ValueError(
            f"window [{lo},{hi}] exceeds built levels [0,{sa.max_level}]"
        )
    subspaces = {}
    for n in range(lo, hi + 1):
        if n == 0:
            subspaces[n] = Subspace.full(sa.dim(0), sa.levels[0].field)
        else:
            stacked = sa.face(n, 0)
            for i in range(1, n):
                stacked = stacked.vstack(sa.face(n, i))
            subspaces[n] = kernel(stacked)
    boundary = {}
    for n in range(lo + 1, hi + 1):
        sub, prev = subspaces[n], subspaces[n - 1]
        cols = []
        for vec in sub.basis:
            img = sa.face(n, n).apply(vec)
            cols.append(prev.coords(img))
        boundary[n] = SparseMatrix.from_columns(prev.dim, cols, sa.levels[0].field)
    return MooreComplex((lo, hi), subspaces, boundary)


@dataclass(frozen=True)
class AugmentedSimplicialAlgebra:
    base: SimplicialAlgebra
    target: FiniteAlgebra
    aug: SparseMatrix

    def __post_init__(self):
        if self.aug.nrows != self.target.dim or self.aug.ncols != self.base.dim(0):
            raise ValueError("augmentation shape mismatch")


def validate_augmentation(asa: AugmentedSimplicialAlgebra) -> list[str]:
    bad = []
    if not _is_hom(asa.aug, asa.base.levels[0], asa.target):
        bad.append("augmentation is not an algebra homomorphism")
    if asa.base.max_level >= 1:
        if asa.aug @ asa.base.face(1, 0) != asa.aug @ asa.base.face(1, 1):
            bad.append("aug d_0 != aug d_1")
    return bad


def augment_trivial(sa: SimplicialAlgebra) -> AugmentedSimplicialAlgebra:
    f = sa.levels[0].field
    zero = FiniteAlgebra("0", [], [], f)
    return AugmentedSimplicialAlgebra(sa, zero, SparseMatrix.zero(0, sa.dim(0), f))


def augment_by_quotient(
    sa: SimplicialAlgebra, target: FiniteAlgebra, proj: SparseMatrix
) -> AugmentedSimplicialAlgebra:
    asa = AugmentedSimplicialAlgebra(sa, target, proj)
    bad = validate_augmentation(asa)
    if bad:
        raise ValueError(bad[0])
    return asa


@dataclass(frozen=True)
class HomotopyGroup:
    n: int
    dim: int
    representatives: tuple  # vectors in level-n (or target, for n = -1) coords


def _quotient_reps(field, ker_vecs, im_vecs):
    span = IncrementalSpan(field)
    for v in im_vecs:
        span.add(v)
    reps = tuple(v for v in ker_vecs if span.add(v))
    return len(reps), reps


def homotopy_group(asa: AugmentedSimplicialAlgebra, n: int) -> HomotopyGroup:
    sa = asa.base
    f = sa.levels[0].field
    if n < -1:
        raise ValueError("homotopy groups are defined for n >= -1")
    if n == -1:
        ker_vecs = [{j: f.one()} for j in range(asa.target.dim)]
        im_vecs = [asa.aug.column(j) for j in range(asa.aug.ncols)]
        dim, reps = _quotient_reps(f, ker_vecs, im_vecs)
        return HomotopyGroup(-1, dim, reps)
    if n + 1 > sa.max_level:
        raise ValueError(
            f"homotopy in degree {n} needs levels through {n + 1}, "
            f"built {sa.max_level}"
        )
    mc = moore(sa, range(max(0, n - 1), n + 2))
    sub = mc.subspaces[n]
    if n == 0:
        ker_vecs = kernel_vectors(asa.aug)
    else:
        ker_vecs_moore = kernel_vectors(mc.boundary[n])
        ker_vecs = [_from_moore(sub, v, f) for v in ker_vecs_moore]
    nxt = mc.subspaces[n + 1]
    im_vecs = [
        sa.face(n + 1, n + 1).apply(vec) for vec in nxt.basis
    ]
    dim, reps = _quotient_reps(f, ker_vecs, im_vecs)
    return HomotopyGroup(n, dim, reps)


def _from_moore(sub: Subspace, coords: dict, field) -> dict:
    out: dict[int, object] = {}
    for i, c in coords.items():
        for j, v in sub.basis[i].items():
            w = field.add(out.get(j, field.zero()), field.mul(c, v))
            if field.is_zero(w):
                out.pop(j, None)
            else:
                out[j] = w
    return out


def verify_pi_multiplication_vanishes(
    asa: AugmentedSimplicialAlgebra, n: int
) -> list[str]:
    """Products of degree-n homotopy classes must be boundaries, n >= 1."""
    if n < 1:
        raise ValueError("only meaningful for n >= 1")
    pg = homotopy_group(asa, n)
    sa = asa.base
    mc = moore(sa, range(n, n + 2))
    sub, nxt = mc.subspaces[n], mc.subspaces[n + 1]
    im = Subspace.from_vectors(
        sa.dim(n),
        [sa.face(n + 1, n + 1).apply(v) for v in nxt.basis],
        sa.levels[0].field,
    )
    bad = []
    alg = sa.levels[n]
    for i, z in enumerate(pg.representatives):
        for j, w in enumerate(pg.representatives):
            prod = alg.product(z, w)
            if not sub.contains(prod) or not im.contains(prod):
                bad.append(f"product of representatives {i},{j} is not a boundary")
    return bad
