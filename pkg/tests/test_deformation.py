from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from operadic import CoOp, Field, ModuleSpace, bracket, identity_coop
from operadic import deformation as dfm
from operadic.errors import DegreeError, NotCoassociativeError, OperadError
from operadic.generators import ALGEBRAS, dual_of_algebra, group_like, random_coassociative, rng_for

import oracles
from conftest import coops, spaces

Q = Field.rational()
L1 = ModuleSpace(1, Q)


def const(space, degree, value):
    return CoOp.from_entries(space, degree, [(0, (0,) * degree, value)])


def test_coboundary_of_unit_is_minus_reference():
    for space in (L1, ModuleSpace(2, Q), ModuleSpace(2, Field.prime(7))):
        d0 = group_like(space)
        assert dfm.coboundary(d0, identity_coop(space)) == -d0


def test_d1_degree_one_coboundary_by_hand():
    x = Fraction(-4, 9)
    assert dfm.coboundary(const(L1, 2, 1), const(L1, 1, x)) == const(L1, 2, -x)
    assert dfm.coboundary(const(L1, 2, 1), const(L1, 2, x)).is_zero()


def test_coassociator_direct_on_dual_algebras():
    space = ModuleSpace(2, Q)
    for name, table in ALGEBRAS.items():
        d = dual_of_algebra(space, table)
        assert dfm.coassociator_direct(d).is_zero(), name
        assert dfm.associator(d).is_zero(), name


def test_non_associative_table_has_nonzero_coassociator():
    space = ModuleSpace(2, Q)
    # e1 e1 = e2, rest zero, plus e2 e1 = e1 makes (e1 e1) e1 != e1 (e1 e1)
    table = [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]
    d = dual_of_algebra(space, table)
    assert not dfm.associator(d).is_zero()
    assert dfm.associator(d) == dfm.coassociator_direct(d)


def test_context_rejects_wrong_degrees():
    space = ModuleSpace(2, Q)
    with pytest.raises(DegreeError):
        dfm.DeformationContext(group_like(space), identity_coop(space))
    with pytest.raises(OperadError):
        dfm.DeformationContext(group_like(space), group_like(ModuleSpace(2, Field.prime(5))))


def test_bianchi_refuses_non_coassociative_base():
    space = ModuleSpace(2, Q)
    d0 = CoOp.from_entries(space, 2, [(0, (0, 1), 1), (1, (0, 0), 1)])
    ctx = dfm.DeformationContext(d0, group_like(space))
    with pytest.raises(NotCoassociativeError) as err:
        dfm.bianchi_residual(ctx)
    assert err.value.entry is not None


def test_d_square_needs_odd_reference():
    space = ModuleSpace(2, Q)
    with pytest.raises(DegreeError):
        dfm.d_square_residual(identity_coop(space), group_like(space))


def test_maurer_cartan_vanishes_for_transported_group_like():
    space = ModuleSpace(2, Q)
    d0 = group_like(space)
    d1 = random_coassociative(space, rng_for(3))
    assert dfm.maurer_cartan(d0, d1 - d0).is_zero()


def test_associator_matches_substitution_oracle():
    space = ModuleSpace(2, Q)
    d = CoOp.from_entries(space, 2, [(0, (0, 1), 2), (1, (1, 0), Fraction(1, 3)),
                                     (1, (0, 0), -1)])
    total = oracles.compose_by_substitution(d, d, 0)
    merged = {a: dict(total[a]) for a in total}
    for a, m in oracles.compose_by_substitution(d, d, 1).items():
        for J, v in m.items():
            merged[a][J] = merged[a].get(J, 0) + v
    merged = {a: {J: v for J, v in m.items() if v} for a, m in merged.items()}
    assert oracles.as_dict(dfm.associator(d)) == merged


def _context(data, space):
    return dfm.DeformationContext(data.draw(coops(space, 2)), data.draw(coops(space, 2)))


@given(data=st.data())
def test_deformation_equation(data):
    ctx = _context(data, data.draw(spaces(dims=(1, 2, 3))))
    assert dfm.deformation_residual(ctx).is_zero()
    assert dfm.maurer_cartan(ctx.delta0, ctx.omega) == ctx.A - ctx.A0


@given(data=st.data())
def test_prolongation_and_triple_bracket(data):
    ctx = _context(data, data.draw(spaces()))
    assert dfm.prolongation_residual(ctx).is_zero()
    w = ctx.omega
    assert bracket(bracket(w, w), w).is_zero()


@given(data=st.data())
def test_d_square_equals_coboundary_of_associator(data):
    space = data.draw(spaces())
    d0 = data.draw(coops(space, 2))
    f = data.draw(coops(space, max_degree=2))
    assert dfm.d_square_residual(d0, f).is_zero()


@given(data=st.data())
def test_nabla_square_and_decomposition(data):
    space = data.draw(spaces())
    ctx = _context(data, space)
    f = data.draw(coops(space, max_degree=2))
    assert dfm.nabla_square_residual(ctx, f).is_zero()
    split = dfm.coboundary(ctx.delta0, f) + bracket(f, ctx.omega)
    assert dfm.covariant_derivative(ctx, f) == split


@given(data=st.data())
def test_derivation_and_commutation(data):
    space = data.draw(spaces())
    ref, f, g = (data.draw(coops(space, max_degree=2)) for _ in range(3))
    assert dfm.derivation_property_residual(ref, f, g).is_zero()
    assert dfm.commutation_relation_residual(ref, f, g).is_zero()


@given(data=st.data())
def test_associator_against_loops(data):
    space = data.draw(spaces(dims=(1, 2, 3)))
    d = data.draw(coops(space, 2))
    assert dfm.associator(d) == dfm.coassociator_direct(d)
    assert bracket(d, d).scale(space.field(Fraction(1, 2))) == dfm.associator(d)


@given(data=st.data(), kind=st.sampled_from(["group_like", "dual_numbers", "left_unit",
                                             "transported"]))
def test_bianchi_on_coassociative_bases(data, kind):
    space = data.draw(spaces(dims=(2,)))
    if kind == "group_like":
        d0 = group_like(space)
    elif kind == "transported":
        d0 = random_coassociative(space, rng_for(data.draw(st.integers(0, 99))))
    else:
        d0 = dual_of_algebra(space, ALGEBRAS[kind])
    ctx = dfm.DeformationContext.from_deformation(d0, data.draw(coops(space, 2)))
    assert dfm.bianchi_residual(ctx).is_zero()
    assert dfm.covariant_derivative(ctx, ctx.A).is_zero()
    f = data.draw(coops(space, max_degree=2))
    assert dfm.coboundary(d0, dfm.coboundary(d0, f)).is_zero()
