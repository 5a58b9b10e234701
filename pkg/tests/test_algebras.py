from fractions import Fraction

import pytest

from xch import catalog
from xch.algebras import (
    AlgebraAction,
    CrossedModule,
    FiniteAlgebra,
    additive_abelianization,
    algebra_commutator_space,
    commutator_space,
    direct_product,
    is_two_sided_ideal,
    make_annihilator_xmod,
    make_bimodule_xmod,
    quotient_algebra,
    self_action,
    semidirect_product,
    validate_action,
    validate_algebra,
    validate_crossed_module,
    validate_extension,
    validate_xmod_morphism,
)
from xch.linalg import SparseMatrix, Subspace, image, kernel
from xch.scalars import QQ, GF


def test_u2_is_associative():
    assert validate_algebra(catalog.alg_U2()) == []


def test_nonassociative_witness():
    # xx = y, xy = x: then (xx)x = yx = 0 but x(xx) = xy = x
    bad = FiniteAlgebra("bad", ["x", "y"], [(0, 0, 1, 1), (0, 1, 0, 1)], QQ)
    report = validate_algebra(bad)
    assert {"law": "(xy)z = x(yz)", "witness": "(x=x, y=x, z=x)"} in report


def test_all_catalog_algebras_valid():
    for name, build in catalog.ALGEBRA_BUILDERS.items():
        assert validate_algebra(build()) == [], name


def test_all_catalog_xmods_valid():
    for name, build in catalog.XMOD_BUILDERS.items():
        assert validate_crossed_module(build()) == [], name


def test_peiffer_violation_witness():
    # zero structure map on K1 with K1 acting on itself by multiplication
    k1 = catalog.alg_K1()
    act = self_action(k1)
    x = CrossedModule(k1, k1, SparseMatrix.zero(1, 1, QQ), act)
    report = validate_crossed_module(x)
    assert {"law": "rho(r)r' = rr'", "witness": "(r=e, r'=e)"} in report
    assert {"law": "r rho(r') = rr'", "witness": "(r=e, r'=e)"} in report


def test_action_law_violation_witness():
    # x.e = -x makes x(ee) = -x but (xe)e = x
    k1, n1 = catalog.alg_K1(), catalog.alg_N1()
    act = AlgebraAction(k1, n1, [(0, 0, 0, 1)], [(0, 0, 0, -1)])
    report = validate_action(act)
    assert {"law": "r(aa') = (ra)a'", "witness": "(a=e, a'=e, r=x)"} in report


def test_commutator_space_u2():
    a = catalog.alg_U2()
    com = algebra_commutator_space(a)
    assert com.dim == 1
    assert com.contains({1: Fraction(1)})  # e11 e12 - e12 e11 = e12


def test_quotient_u2_by_e12():
    a = catalog.alg_U2()
    ideal = Subspace.from_vectors(3, [{1: Fraction(1)}], QQ)
    q, proj = quotient_algebra(a, ideal)
    assert q.dim == 2
    assert q.basis == ("[e11]", "[e22]")
    assert validate_algebra(q) == []
    for i in range(q.dim):
        for j in range(q.dim):
            assert q.product_basis(i, j) == q.product_basis(j, i)
    assert proj.apply({1: Fraction(1)}) == {}


def test_quotient_rejects_non_ideal():
    a = catalog.alg_U2()
    sub = Subspace.from_vectors(3, [{0: Fraction(1)}], QQ)  # e11: not an ideal
    assert is_two_sided_ideal(a, sub) is not None
    with pytest.raises(ValueError):
        quotient_algebra(a, sub)


def test_inclusion_xmod_u2():
    x = catalog.xmod_incl_U2()
    assert validate_crossed_module(x) == []
    assert x.R.dim == 1
    assert x.R.product_basis(0, 0) == {}  # e12 e12 = 0
    assert x.rho_apply({0: Fraction(1)}) == {1: Fraction(1)}
    # e11 . e12 = e12, e12 . e11 = 0
    assert x.action.act_left({0: Fraction(1)}, {0: Fraction(1)}) == {
        0: Fraction(1)
    }
    assert x.action.act_right({0: Fraction(1)}, {0: Fraction(1)}) == {}


def test_semidirect_product_formula():
    x = catalog.xmod_bimod()
    sd = semidirect_product(x.action)
    assert sd.dim == 2
    assert validate_algebra(sd) == []
    # (x, 0)(0, e) = (x.e, 0) = (x, 0)
    assert sd.product({0: Fraction(1)}, {1: Fraction(1)}) == {0: Fraction(1)}
    # (0, e)(0, e) = (0, e)
    assert sd.product({1: Fraction(1)}, {1: Fraction(1)}) == {1: Fraction(1)}


def test_semidirect_of_identity_xmod_u2():
    x = catalog.xmod_id_U2()
    sd = semidirect_product(x.action)
    assert sd.dim == 6
    assert validate_algebra(sd) == []


def test_annihilator_xmod():
    z2, n1 = catalog.alg_Z2(), catalog.alg_N1()
    rho = SparseMatrix(1, 2, [(0, 0, Fraction(1))], QQ)  # x -> x, y -> 0
    x = make_annihilator_xmod(z2, n1, rho, name="annih")
    assert validate_crossed_module(x) == []
    assert kernel(x.rho).dim == 1


def test_annihilator_requires_annihilating_kernel():
    # y y = y: the kernel element y does not annihilate R
    r = FiniteAlgebra("R", ["x", "y"], [(1, 1, 1, 1)], QQ)
    n1 = catalog.alg_N1()
    rho = SparseMatrix(1, 2, [(0, 0, Fraction(1))], QQ)
    with pytest.raises(ValueError, match="annihilate"):
        make_annihilator_xmod(r, n1, rho)


def test_annihilator_requires_surjective():
    z2 = catalog.alg_Z2()
    rho = SparseMatrix(2, 2, [(0, 0, Fraction(1))], QQ)
    with pytest.raises(ValueError, match="surjective"):
        make_annihilator_xmod(z2, z2, rho)


def test_bimodule_xmod_rejects_nonzero_multiplication():
    k1 = catalog.alg_K1()
    act = self_action(k1)
    with pytest.raises(ValueError, match="zero multiplication"):
        make_bimodule_xmod(act)


def test_abelianization_bimod():
    lin = additive_abelianization(catalog.xmod_bimod())
    assert lin.v_dim == 1 and lin.w_dim == 1
    assert lin.f.is_zero_matrix()


def test_abelianization_id_u2():
    lin = additive_abelianization(catalog.xmod_id_U2())
    # [A, R] = [U2, U2] = span{e12} on both sides; induced map is identity
    assert lin.v_dim == 2 and lin.w_dim == 2
    assert lin.f == SparseMatrix.identity(2, QQ)


def test_kernel_of_rho_annihilates():
    # structural consequence of the axioms, checked on every catalog xmod
    for name, build in catalog.XMOD_BUILDERS.items():
        x = build()
        ker = kernel(x.rho)
        for kv in ker.basis:
            for j in range(x.R.dim):
                rj = x.R.basis_vec(j)
                assert x.R.product(kv, rj) == {}, name
                assert x.R.product(rj, kv) == {}, name


def test_image_of_rho_is_ideal():
    for name, build in catalog.XMOD_BUILDERS.items():
        x = build()
        assert is_two_sided_ideal(x.A, image(x.rho)) is None, name


def test_direct_product():
    a2 = direct_product(catalog.alg_K1(), catalog.alg_K1())
    assert a2.dim == 2
    assert validate_algebra(a2) == []
    assert a2.product({0: Fraction(1)}, {1: Fraction(1)}) == {}


def test_extension_instance():
    ext = catalog.extension_A2()
    for x in (ext.left, ext.mid, ext.right):
        assert validate_crossed_module(x) == []
    assert validate_extension(ext) == []
    assert (ext.prj.mu @ ext.gamma) == SparseMatrix.identity(1, QQ)
    assert (ext.prj.nu @ ext.delta) == SparseMatrix.identity(1, QQ)
    assert (ext.mid.rho @ ext.gamma) == (ext.delta @ ext.right.rho)
    # exactness of both rows
    assert kernel(ext.inj.mu).dim == 0 and kernel(ext.inj.nu).dim == 0
    assert image(ext.prj.mu).dim == 1 and image(ext.prj.nu).dim == 1
    assert kernel(ext.prj.mu) == image(ext.inj.mu)
    assert kernel(ext.prj.nu) == image(ext.inj.nu)


def test_gf_catalog_roundtrip():
    f = GF(7)
    x = catalog.xmod_incl_U2(f)
    assert validate_crossed_module(x) == []
    assert x.field is f


def test_dim_zero_algebra():
    from xch.algebras import zero_xmod

    z = FiniteAlgebra("0", [], [], QQ)
    assert validate_algebra(z) == []
    x = zero_xmod(z)
    assert validate_crossed_module(x) == []
    assert x.R.dim == 0 and x.A.dim == 0


def test_morphism_violation():
    from xch.algebras import XModMorphism

    ext = catalog.extension_A2()
    m = XModMorphism(ext.left, ext.mid, ext.inj.mu, ext.inj.nu.scale(Fraction(2)))
    laws = {fail["law"] for fail in validate_xmod_morphism(m)}
    assert "rho' mu = nu rho" in laws
    assert "nu(aa') = nu(a)nu(a')" in laws
