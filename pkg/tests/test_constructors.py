"""Family constructors: towers, twists, symmetric tables, parameter checks."""

import pytest

from complen.checkers import check_polarized_identity, find_idempotents, find_isotropic
from complen.constructors import (
    CayleyDicksonSpec,
    OkuboSpec,
    cayley_dickson_double,
    make_base_algebra,
    make_hurwitz,
    make_hurwitz_tower,
    make_okubo,
    make_okubo_idempotent,
    make_okubo_isotropic,
    make_para_hurwitz,
    make_pseudo_octonion,
    make_quadratic_etale,
    make_two_dim_form,
    standard_twist,
)
from complen.errors import (
    CharacteristicForbidden,
    DegenerateParameter,
    MissingUnit,
    MuNotASolution,
    ParameterZero,
    ReducibleCubic,
    UnknownFamily,
)
from complen.fields import field_make

F2 = field_make("F2")
F3 = field_make("F3")
F5 = field_make("F5")
F7 = field_make("F7")
Q = field_make("Q")


# --- Hurwitz tower -----------------------------------------------------------


def test_tower_dimensions_and_units():
    for params, dim in (((), 1), ((1,), 2), ((1, 1), 4), ((1, 1, 1), 8)):
        a = make_hurwitz_tower(Q, None, tuple(Q.from_int(p) for p in params))
        assert a.dim == dim
        assert a.is_unital()
        assert a.quad is not None


def test_square_norm_start_needs_odd_characteristic():
    with pytest.raises(CharacteristicForbidden):
        make_hurwitz_tower(F2, None, ())
    # with an etale start characteristic 2 is fine
    a = make_hurwitz_tower(F2, F2.one(), (F2.one(),))
    assert a.dim == 4


def test_etale_multiplication_rule():
    # l * l = l + mu
    k = make_quadratic_etale(F2, F2.one())
    ell = k.basis_element(1)
    assert k.multiply(ell, ell) == k.add(ell, k.basis_element(0))
    assert k.quad_eval(ell) == F2.one()  # n(y*l) = -mu*y^2


def test_etale_degenerate_mu_rejected():
    with pytest.raises(DegenerateParameter):
        make_quadratic_etale(F5, F5.one())  # 4*1 + 1 = 0 in F5
    from fractions import Fraction

    with pytest.raises(DegenerateParameter):
        make_quadratic_etale(Q, Fraction(-1, 4))


def test_doubling_negates_norm_block():
    base = make_quadratic_etale(Q, Q.one())
    d = cayley_dickson_double(base, Q.from_int(3))
    assert d.dim == 4
    # n on the new half is -alpha times n on the old half
    x_old = d.basis_element(1)
    x_new = d.basis_element(3)
    assert d.quad_eval(x_new) == Q.mul(Q.from_int(-3), base.quad_eval(base.basis_element(1)))
    assert d.quad_eval(x_old) == base.quad_eval(base.basis_element(1))


def test_spec_wrapper_matches_direct_call():
    spec = CayleyDicksonSpec(Q, None, (Q.one(), Q.one()))
    a = make_hurwitz(spec)
    b = make_hurwitz_tower(Q, None, (Q.one(), Q.one()))
    assert a.table == b.table and a.quad == b.quad


def test_dim16_tower_is_flexible_and_quadratic_but_not_composition_certified():
    a = make_hurwitz_tower(Q, None, (Q.one(),) * 4)
    assert a.dim == 16
    assert check_polarized_identity(a, "quadratic").holds
    assert check_polarized_identity(a, "flexible").holds
    assert not check_polarized_identity(a, "alternative").holds


# --- standard twists ---------------------------------------------------------


def test_twist_products_follow_conjugation_pattern():
    a = make_hurwitz_tower(Q, None, (Q.one(), Q.one()))
    conj = [a.conjugate(a.basis_element(i)) for i in range(4)]
    twists = {t: standard_twist(a, t) for t in ("I", "II", "III", "IV")}
    for i in range(4):
        bi = a.basis_element(i)
        for j in range(4):
            bj = a.basis_element(j)
            assert twists["I"].multiply(bi, bj) == a.multiply(bi, bj)
            assert twists["II"].multiply(bi, bj) == a.multiply(conj[i], bj)
            assert twists["III"].multiply(bi, bj) == a.multiply(bi, conj[j])
            assert twists["IV"].multiply(bi, bj) == a.multiply(conj[i], conj[j])


def test_twist_unitality():
    a = make_hurwitz_tower(Q, None, (Q.one(),))
    assert standard_twist(a, "I").is_unital()
    for t in ("II", "III", "IV"):
        assert not standard_twist(a, t).is_unital()


def test_twist_carries_descending_certificates():
    a = make_hurwitz_tower(F3, None, (F3.one(),))
    t = standard_twist(a, "IV")
    assert "descending-flexible" in t.certificates
    assert "descending-alternative" in t.certificates


def test_para_hurwitz_is_type_iv():
    a = make_hurwitz_tower(Q, None, (Q.one(),))
    assert make_para_hurwitz(a).table == standard_twist(a, "IV").table


def test_twist_rejects_unknown_type_and_nonunital_input():
    a = make_hurwitz_tower(Q, None, (Q.one(),))
    with pytest.raises(UnknownFamily):
        standard_twist(a, "V")
    with pytest.raises(MissingUnit):
        standard_twist(standard_twist(a, "IV"), "I")


# --- symmetric eight-dimensional tables --------------------------------------


def test_isotropic_table_worked_products():
    alpha, beta = F5.from_int(2), F5.from_int(3)
    a = make_okubo_isotropic(F5, alpha, beta)
    x01 = a.basis_element(2)
    x10 = a.basis_element(0)
    assert a.multiply(x01, x01) == a.scale(F5.neg(beta), a.basis_element(3))
    assert a.multiply(x10, x10) == a.scale(F5.neg(alpha), a.basis_element(1))
    assert a.multiply(x01, x10) == a.basis_element(4)
    assert a.is_zero(a.multiply(x10, x01))


def test_isotropic_table_is_symmetric_composition():
    a = make_okubo_isotropic(F2, F2.one(), F2.one())
    assert "descending-flexible" in a.certificates
    # (x*y)*x = n(x) y = x*(y*x) spot check on a mixed pair
    x = a.add(a.basis_element(0), a.basis_element(5))
    y = a.basis_element(3)
    nx = a.quad_eval(x)
    assert a.multiply(a.multiply(x, y), x) == a.scale(nx, y)
    assert a.multiply(x, a.multiply(y, x)) == a.scale(nx, y)


def test_isotropic_basis_is_isotropic():
    a = make_okubo_isotropic(F2, F2.one(), F2.one())
    assert all(a.quad_eval(a.basis_element(i)) == F2.zero() for i in range(8))
    els, exhaustive = find_isotropic(a)
    assert exhaustive and len(els) == 135


def test_idempotent_table_has_idempotents():
    a = make_okubo_idempotent(F2, F2.one(), F2.one())
    x0 = a.basis_element(0)
    assert a.multiply(x0, x0) == x0
    els, exhaustive = find_idempotents(a)
    assert exhaustive and len(els) == 12
    for e in els:
        assert a.multiply(e, e) == e


def test_idempotent_table_general_parameter_product():
    beta, gamma = Q.from_int(2), Q.from_int(5)
    a = make_okubo_idempotent(Q, beta, gamma)
    b = a.add(a.basis_element(3), a.basis_element(7))
    u = a.basis_element(1)
    w = a.multiply(a.multiply(a.multiply(b, b), u), b)
    expect = [0, 0, 22, 22, 0, 0, 6, 14]  # beta+2bg, beta+2bg, 3b, 2b+bg
    assert w == tuple(Q.from_int(c) for c in expect)


def test_symmetric_table_parameter_validation():
    with pytest.raises(ParameterZero):
        make_okubo_isotropic(F5, F5.zero(), F5.one())
    with pytest.raises(ParameterZero):
        make_okubo_idempotent(Q, Q.one(), Q.zero())
    with pytest.raises(CharacteristicForbidden):
        make_okubo_idempotent(F3, F3.one(), F3.one())


# --- pseudo-octonion ---------------------------------------------------------


def test_pseudo_octonion_auto_mu_picks_smallest_root():
    a = make_pseudo_octonion(F7)
    assert a.name == "pseudo-octonion(2)"
    assert a.dim == 8
    assert not a.is_unital()


def test_pseudo_octonion_explicit_mu_checked():
    a = make_pseudo_octonion(F7, F7.from_int(6))
    assert a.name == "pseudo-octonion(6)"
    with pytest.raises(MuNotASolution):
        make_pseudo_octonion(F7, F7.from_int(3))
    with pytest.raises(MuNotASolution):
        make_pseudo_octonion(Q)


def test_pseudo_octonion_characteristic_guard():
    with pytest.raises(CharacteristicForbidden):
        make_pseudo_octonion(F2)
    with pytest.raises(CharacteristicForbidden):
        make_pseudo_octonion(F3)


def test_okubo_dispatcher():
    a = make_okubo(OkuboSpec("isotropic", F5, (F5.from_int(2), F5.from_int(3))))
    assert a.name.startswith("okubo-isotropic")
    b = make_okubo(OkuboSpec("pseudo-octonion", F7))
    assert b.name == "pseudo-octonion(2)"
    with pytest.raises(UnknownFamily):
        make_okubo(OkuboSpec("spherical", F5, ()))


# --- two-dimensional form ----------------------------------------------------


def test_two_dim_form_products_and_norm():
    a = make_two_dim_form(F5, F5.one())
    u, v = a.basis_element(0), a.basis_element(1)
    assert a.multiply(u, u) == v
    assert a.multiply(u, v) == u
    assert a.multiply(v, u) == u
    assert a.multiply(v, v) == a.sub(a.scale(F5.one(), u), v)
    # recovered norm x^2 + y^2 + lam*xy
    x = a.add(a.scale(F5.from_int(2), u), a.scale(F5.from_int(3), v))
    assert a.quad_eval(x) == F5.from_int(4 + 9 + 6)


def test_two_dim_form_requires_irreducible_cubic():
    with pytest.raises(ReducibleCubic):
        make_two_dim_form(F5, F5.zero())  # x^3 - 3x has root 0
    a = make_two_dim_form(Q, Q.one())  # x^3 - 3x - 1 has no rational root
    assert a.dim == 2


def test_base_algebra_is_the_field():
    a = make_base_algebra(F7)
    assert a.dim == 1 and a.is_unital()
    assert a.quad_eval((F7.from_int(3),)) == F7.from_int(2)
