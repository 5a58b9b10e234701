from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dense_oracle
from xch import catalog
from xch.algebras import XModMorphism, quotient_algebra, zero_xmod
from xch.complexes import (
    ChainComplex,
    ChainMap,
    algebra_chain_map,
    algebra_complex,
    bar_boundary,
    beta_gamma,
    cyclic_operator,
    estimate_cell_dims,
    hochschild_boundary,
    identity_chain_map,
    induced_chain_map,
    kernel_complex,
    kron,
    norm_operator,
    shift_complex,
    tensor_power,
    xmod_complex,
)
from xch.linalg import SparseMatrix, image, rank
from xch.scalars import QQ


def _hdim(c, n):
    return c.dims[n] - c.rank_d(n) - c.rank_d(n + 1)


def test_hochschild_k1_n1():
    b = hochschild_boundary(catalog.alg_K1(), 1)
    assert b.is_zero_matrix()  # e.e - e.e = 0


def test_hochschild_u2_n1():
    b = hochschild_boundary(catalog.alg_U2(), 1)
    # e11 (x) e12 is column 0*3+1 = 1; b = e11 e12 - e12 e11 = e12
    assert b.column(1) == {1: Fraction(1)}


def test_bar_k1_n1():
    bp = bar_boundary(catalog.alg_K1(), 1)
    assert bp.column(0) == {0: Fraction(1)}


def test_bar_zero_mult():
    assert bar_boundary(catalog.alg_Z2(), 2).is_zero_matrix()


def test_boundary_squares_u2():
    a = catalog.alg_U2()
    for op in (hochschild_boundary, bar_boundary):
        for n in range(2, 4):
            assert (op(a, n - 1) @ op(a, n)).is_zero_matrix()


def test_cyclic_operator_n1():
    t = cyclic_operator(2, 1)
    # t(x (x) y) = -(y (x) x): column of basis (0,1) -> -(1,0)
    assert t.column(1) == {2: Fraction(-1)}


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(1, 3), n=st.integers(0, 3))
def test_cyclic_group_identities(dim, n):
    t = cyclic_operator(dim, n)
    size = dim ** (n + 1)
    eye = SparseMatrix.identity(size, QQ)
    power = eye
    for _ in range(n + 1):
        power = t @ power
    assert power == eye  # t^(n+1) = 1
    norm = norm_operator(dim, n)
    assert ((eye - t) @ norm).is_zero_matrix()
    assert (norm @ (eye - t)).is_zero_matrix()


@settings(max_examples=20, deadline=None)
@given(
    name=st.sampled_from(sorted(catalog.ALGEBRA_BUILDERS)),
    n=st.integers(1, 3),
)
def test_b_bprime_intertwining(name, n):
    a = catalog.ALGEBRA_BUILDERS[name]()
    size = a.dim ** (n + 1)
    eye = SparseMatrix.identity(size, QQ)
    t = cyclic_operator(a.dim, n)
    b = hochschild_boundary(a, n)
    bp = bar_boundary(a, n)
    norm = norm_operator(a.dim, n)
    norm_low = norm_operator(a.dim, n - 1)
    t_low = cyclic_operator(a.dim, n - 1)
    eye_low = SparseMatrix.identity(a.dim**n, QQ)
    assert b @ (eye - t) == (eye_low - t_low) @ bp
    assert bp @ norm == norm_low @ b


def test_kron_shapes():
    m = SparseMatrix.from_dense([[1, 2], [0, 1]], QQ)
    k = kron(m, m)
    assert (k.nrows, k.ncols) == (4, 4)
    assert tensor_power(m, 3).nrows == 8


def test_cc_k1_dims_and_matrices():
    c = algebra_complex(catalog.alg_K1(), "CC", (0, 4))
    assert [c.dims[n] for n in range(5)] == [1, 2, 3, 4, 5]
    for n in range(1, 5):
        dense = [[QQ.parse(v) for v in row] for row in c.diff[n].to_dense()]
        assert dense == dense_oracle.cyclic_total_boundary(n)
    assert c.verify_dd_zero() == []


def test_cc_k1_homology_oracle():
    c = algebra_complex(catalog.alg_K1(), "CC", (0, 4))
    assert [_hdim(c, n) for n in range(4)] == dense_oracle.cyclic_homology_dims(3)


def test_c_k1_homology_oracle():
    c = algebra_complex(catalog.alg_K1(), "C", (0, 4))
    assert [_hdim(c, n) for n in range(4)] == dense_oracle.naive_hochschild_dims(3)


def test_cbar_k1_vanishes():
    c = algebra_complex(catalog.alg_K1(), "Cbar", (0, 4))
    assert [_hdim(c, n) for n in range(4)] == [0, 0, 0, 0]


def test_all_flavors_dd_zero_algebra():
    for name, build in catalog.ALGEBRA_BUILDERS.items():
        a = build()
        for flavor in ("C", "Cbar", "CC2", "CC"):
            c = algebra_complex(a, flavor, (0, 3))
            assert c.verify_dd_zero() == [], (name, flavor)


def test_all_flavors_dd_zero_xmod():
    for name, build in catalog.XMOD_BUILDERS.items():
        x = build()
        for flavor in ("C", "Cbar", "CC2", "CC"):
            c = xmod_complex(x, flavor, (0, 3))
            assert c.verify_dd_zero() == [], (name, flavor)


def test_degree_zero_space_is_a():
    x = catalog.xmod_incl_U2()
    for flavor in ("C", "Cbar", "CC2", "CC"):
        c = xmod_complex(x, flavor, (0, 2))
        assert c.dims[0] == x.A.dim


def test_estimated_dims_match_built():
    x = catalog.xmod_id_U2()
    for flavor in ("C", "CC2", "CC"):
        c = xmod_complex(x, flavor, (0, 3))
        level_dims = [x.R.dim * p + x.A.dim for p in range(4)]
        est = estimate_cell_dims(level_dims, flavor, 3)
        assert est == c.dims


def test_cc2_is_coordinate_subcomplex_of_cc():
    x = catalog.xmod_incl_U2()
    cc = xmod_complex(x, "CC", (0, 3))
    cc2 = xmod_complex(x, "CC2", (0, 3))
    sel = {}
    for n in cc.degree_range():
        keep = []
        for p, c, q, size, off in cc.cells[n]:
            if c <= 1:
                keep.extend(range(off, off + size))
        sel[n] = keep
        assert len(keep) == cc2.dims[n]
    for n in range(1, 4):
        rows = {r: i for i, r in enumerate(sel[n - 1])}
        cols = {c: j for j, c in enumerate(sel[n])}
        ent = []
        for r, c, v in cc.diff[n].entries:
            if r in rows and c in cols:
                ent.append((rows[r], cols[c], v))
        sub = SparseMatrix(len(rows), len(cols), ent, QQ)
        assert sub == cc2.diff[n]


def test_zero_xmod_cc_matches_algebra_homology():
    a = catalog.alg_U2()
    cx = xmod_complex(zero_xmod(a), "CC", (0, 3))
    ca = algebra_complex(a, "CC", (0, 3))
    for n in range(3):
        assert _hdim(cx, n) == _hdim(ca, n), n


def test_inclusion_cc2_matches_quotient_hochschild():
    x = catalog.xmod_incl_U2()
    cx = xmod_complex(x, "CC2", (0, 3))
    q, _ = quotient_algebra(x.A, image(x.rho))
    cq = algebra_complex(q, "CC2", (0, 3))
    for n in range(3):
        assert _hdim(cx, n) == _hdim(cq, n), n


def test_labels_record_cells():
    x = catalog.xmod_incl_U2()
    c = xmod_complex(x, "CC", (0, 2))
    assert any(lbl.startswith("p1c0q0:") for lbl in c.labels[1])
    assert any(lbl.startswith("p0c1q0:") for lbl in c.labels[1])
    assert len(c.labels[2]) == c.dims[2]


def test_identity_morphism_induces_identity():
    x = catalog.xmod_incl_U2()
    eye_r = SparseMatrix.identity(x.R.dim, QQ)
    eye_a = SparseMatrix.identity(x.A.dim, QQ)
    m = XModMorphism(x, x, eye_r, eye_a)
    c = xmod_complex(x, "CC2", (0, 2))
    cm = induced_chain_map(m, "CC2", (0, 2), c, c)
    for n in range(3):
        assert cm.maps[n] == SparseMatrix.identity(c.dims[n], QQ)


def test_kernel_of_identity_is_zero():
    c = algebra_complex(catalog.alg_U2(), "CC", (0, 3))
    kc, inc = kernel_complex(identity_chain_map(c))
    assert all(kc.dims[n] == 0 for n in kc.degree_range())


def test_kernel_of_projection_to_zero_quotient():
    a = catalog.alg_K1()
    zero_q, proj = quotient_algebra(a, image(SparseMatrix.identity(1, QQ)))
    ca = algebra_complex(a, "CC", (0, 3))
    cq = algebra_complex(zero_q, "CC", (0, 3))
    cm = algebra_chain_map(proj, ca, cq)
    kc, inc = kernel_complex(cm)
    assert kc.dims == ca.dims
    for n in range(1, 4):
        assert kc.diff[n].nnz() == ca.diff[n].nnz()


def test_shift_complex():
    x = catalog.xmod_id_K1()
    _, gamma, _, _ = beta_gamma(x, (0, 3))
    g2 = shift_complex(gamma, 2)
    assert g2.window == (2, 5)
    for n in range(2, 6):
        assert g2.dims[n] == gamma.dims[n - 2]
    padded = shift_complex(gamma, 2, pad_lo=0)
    assert padded.window == (0, 5)
    assert padded.dims[0] == 0 and padded.dims[1] == 0
    assert padded.verify_dd_zero() == []


def test_beta_gamma_zero_xmod_is_zero():
    x = catalog.xmod_zero_U2()
    beta, gamma, sb, sg = beta_gamma(x, (0, 3))
    assert all(beta.dims[n] == 0 for n in beta.degree_range())
    assert all(gamma.dims[n] == 0 for n in gamma.degree_range())


def test_beta_gamma_ses_verify():
    x = catalog.xmod_incl_U2()
    beta, gamma, sb, sg = beta_gamma(x, (0, 3))
    assert sb.verify() == []
    assert sg.verify() == []
    assert beta.verify_dd_zero() == []
    assert gamma.verify_dd_zero() == []


def test_gamma_degree_zero_vanishes():
    for build in (catalog.xmod_incl_U2, catalog.xmod_id_K1, catalog.xmod_bimod):
        beta, gamma, _, _ = beta_gamma(build(), (0, 2))
        assert beta.dims[0] == 0 and gamma.dims[0] == 0


def test_h1_gamma_identity_k1():
    _, gamma, _, _ = beta_gamma(catalog.xmod_id_K1(), (0, 3))
    assert _hdim(gamma, 1) == 1


def test_gamma_degree1_is_r_coordinates():
    x = catalog.xmod_incl_U2()
    _, gamma, _, _ = beta_gamma(x, (0, 2))
    assert gamma.dims[1] == x.R.dim
    assert gamma.labels[1] == ("p1c0q0:r1:e12^",)


def test_chain_map_shape_validation():
    c = algebra_complex(catalog.alg_K1(), "C", (0, 2))
    with pytest.raises(ValueError, match="shape"):
        ChainMap(c, c, {n: SparseMatrix.zero(9, 9, QQ) for n in range(3)})


def test_window_validation():
    with pytest.raises(ValueError):
        ChainComplex((2, 1), {}, {})
    with pytest.raises(ValueError, match="degree 0"):
        algebra_complex(catalog.alg_K1(), "C", (1, 2))


def test_unknown_flavor():
    with pytest.raises(ValueError, match="flavor"):
        algebra_complex(catalog.alg_K1(), "CCC", (0, 2))
