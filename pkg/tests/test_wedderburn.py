"""Radical, decomposition, split resolution, and module certification."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordembed.algebra import quotient_algebra_by_subspace, subspace_product
from ordembed.errors import (
    DimensionMismatch,
    NotInvariant,
    NotSemisimple,
    NotSemisimpleAction,
)
from ordembed.linalg import MatQ, Subspace, op_apply, unit_vec
from ordembed.samples import (
    cyclic_group_algebra,
    dihedral4_group_algebra,
    matrix_algebra,
    planted_radical_instance,
    poly_quotient_algebra,
    quaternion_algebra,
    symmetric3_group_algebra,
    upper_triangular_algebra,
)
from ordembed.exact import PolyQ
from ordembed.wedderburn import (
    certify_simple_module,
    commutant,
    commutant_matrices,
    decompose,
    isotypic_split,
    operator_algebra,
    radical,
    resolve_all,
    resolve_split_status,
    restrict_op,
    semisimple_quotient,
)

F = Fraction


def fmat(*rows):
    return MatQ(tuple(tuple(F(x) for x in r) for r in rows))


# -- radical ------------------------------------------------------------------------


def test_radical_of_triangular_matrices():
    t2 = upper_triangular_algebra(2)
    rad = radical(t2)
    assert rad.basis.rows == (unit_vec(3, 1),)


def test_radical_of_dual_numbers():
    dual = poly_quotient_algebra(PolyQ.make([0, 0, 1]), name="dual")
    rad = radical(dual)
    assert rad.basis.rows == (unit_vec(2, 1),)


def test_semisimple_algebras_have_zero_radical():
    for alg in (matrix_algebra(2), cyclic_group_algebra(3),
                symmetric3_group_algebra(), quaternion_algebra(-1, -1)):
        assert radical(alg).dim == 0, alg.name


def test_radical_is_nilpotent_ideal():
    t3 = upper_triangular_algebra(3)
    rad = radical(t3)
    assert rad.dim == 3
    sq = subspace_product(t3, rad, rad)
    cube = subspace_product(t3, rad, sq)
    assert sq.dim == 1
    assert cube.dim == 0


def test_quotient_by_radical_is_semisimple():
    t3 = upper_triangular_algebra(3)
    ss, _ = semisimple_quotient(t3)
    assert ss.dim == 3
    assert radical(ss).dim == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_planted_radical_recovered_exactly(seed):
    inst = planted_radical_instance(seed)
    rad = radical(inst.algebra)
    assert rad.basis.rows == inst.radical.basis.rows
    ss, _ = quotient_algebra_by_subspace(inst.algebra, rad, name="ss")
    assert radical(ss).dim == 0


# -- decomposition ------------------------------------------------------------------


def test_decompose_rejects_nonsemisimple():
    with pytest.raises(NotSemisimple) as exc:
        decompose(upper_triangular_algebra(2))
    assert exc.value.radical.dim == 1


def test_group_algebra_c2_idempotents():
    dec = decompose(cyclic_group_algebra(2))
    half = F(1, 2)
    assert dec.central_idempotents == ((half, -half), (half, half))
    assert [c.dim for c in dec.components] == [1, 1]


def test_group_algebra_c3_and_c4_component_dims():
    assert [c.dim for c in decompose(cyclic_group_algebra(3)).components] == [1, 2]
    assert [c.dim for c in decompose(cyclic_group_algebra(4)).components] == [1, 1, 2]


def test_group_algebra_s3_components():
    dec = resolve_all(decompose(symmetric3_group_algebra()), 1000)
    assert [c.dim for c in dec.components] == [1, 1, 4]
    four = dec.components[2]
    assert four.centre_dim == 1
    assert four.reduced_degree == 2
    assert four.split_status.kind == "split"
    assert four.matrix_size == 2


def test_group_algebra_d4_components():
    dec = resolve_all(decompose(dihedral4_group_algebra()), 1000)
    assert [c.dim for c in dec.components] == [1, 1, 1, 1, 4]
    assert dec.components[4].split_status.kind == "split"
    assert dec.components[4].matrix_size == 2


def test_decomposition_idempotents_are_central_orthogonal():
    a = symmetric3_group_algebra()
    dec = decompose(a)
    total = a.unit
    acc = tuple(F(0) for _ in range(a.dim))
    for e in dec.central_idempotents:
        assert a.mul(e, e) == e
        for i in range(a.dim):
            b = a.basis_vec(i)
            assert a.mul(e, b) == a.mul(b, e)
        acc = tuple(x + y for x, y in zip(acc, e))
    assert acc == total


def test_component_dimension_invariant():
    for alg in (symmetric3_group_algebra(), dihedral4_group_algebra(),
                matrix_algebra(2), cyclic_group_algebra(4)):
        for comp in decompose(alg).components:
            assert comp.reduced_degree ** 2 * comp.centre_dim == comp.dim


def test_component_blocks_multiply_back_into_parent():
    a = symmetric3_group_algebra()
    for comp in decompose(a).components:
        block = comp.subspace()
        for r in block.basis.rows:
            assert block.contains_vec(a.mul(r, comp.idempotent))
            assert a.mul(r, comp.idempotent) == r


# -- split status -------------------------------------------------------------------


def test_matrix_algebra_splits_with_certificates():
    dec = resolve_all(decompose(matrix_algebra(2)), 1000)
    comp = dec.components[0]
    assert comp.split_status.kind == "split"
    assert comp.matrix_size == 2
    idems = comp.split_status.idempotents
    assert len(idems) == 2
    b = comp.algebra
    for e in idems:
        assert b.mul(e, e) == e
    assert all(x == 0 for x in b.mul(idems[0], idems[1]))


def test_matrix_algebra_3_splits():
    dec = resolve_all(decompose(matrix_algebra(3)), 1000)
    comp = dec.components[0]
    assert comp.split_status.kind == "split"
    assert comp.matrix_size == 3
    assert len(comp.split_status.idempotents) == 3


def test_hamilton_quaternions_are_division():
    dec = resolve_all(decompose(quaternion_algebra(-1, -1)), 1000)
    comp = dec.components[0]
    assert comp.split_status.kind == "quaternion_division"
    assert comp.split_status.places == (2, "inf")
    assert comp.matrix_size == 1


def test_ramified_quaternion_pairs():
    for (a, b), places in [((-1, 3), (2, 3)), ((2, 5), (2, 5))]:
        dec = resolve_all(decompose(quaternion_algebra(a, b)), 1000)
        comp = dec.components[0]
        assert comp.split_status.kind == "quaternion_division"
        assert comp.split_status.places == places


def test_split_quaternion_pair():
    dec = resolve_all(decompose(quaternion_algebra(1, 1)), 1000)
    comp = dec.components[0]
    assert comp.split_status.kind == "split"
    assert comp.matrix_size == 2


def test_zero_budget_leaves_unknown():
    dec = decompose(matrix_algebra(3))
    comp = resolve_split_status(dec.components[0], 0)
    assert comp.split_status.kind == "unknown"
    assert comp.split_status.budget == 0


def test_commutative_component_is_trivially_split():
    dec = decompose(cyclic_group_algebra(3))
    for comp in resolve_all(dec, 10).components:
        assert comp.split_status.kind == "split"
        assert comp.matrix_size == 1


# -- operator algebras and modules --------------------------------------------------


def test_operator_algebra_contains_identity():
    e = operator_algebra([], module_dim=3)
    assert e.dim == 1
    assert e.basis_matrices()[0] == MatQ.identity(3)


def test_operator_algebra_closure():
    nil = fmat((0, 1), (0, 0))
    e = operator_algebra([nil])
    assert e.dim == 2  # I and the nilpotent
    swap = fmat((0, 1), (1, 0))
    assert operator_algebra([swap]).dim == 2
    full = operator_algebra([fmat((0, 1), (0, 0)), fmat((0, 0), (1, 0))])
    assert full.dim == 4


def test_operator_algebra_shape_validation():
    with pytest.raises(DimensionMismatch):
        operator_algebra([])
    with pytest.raises(DimensionMismatch):
        operator_algebra([fmat((0, 1), (0, 0))], module_dim=3)


def test_commutant_of_full_matrix_action_is_scalars():
    gens = [fmat((1, 0), (0, 0)), fmat((0, 1), (0, 0)), fmat((0, 0), (1, 0))]
    e = operator_algebra(gens)
    mats = commutant_matrices(e)
    assert len(mats) == 1
    c = commutant(e)
    assert c.dim == 1


def test_double_centralizer():
    cases = [
        [fmat((0, 1), (1, 0))],
        [fmat((1, 0), (0, 0)), fmat((0, 1), (0, 0)), fmat((0, 0), (1, 0))],
        [fmat((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))],
    ]
    for gens in cases:
        e = operator_algebra(gens)
        first = commutant_matrices(e)
        second = commutant_matrices(operator_algebra(list(first),
                                                     module_dim=e.module_dim))
        back = operator_algebra(list(second), module_dim=e.module_dim)
        assert back.spanned.basis.rows == e.spanned.basis.rows


def test_isotypic_split_of_swap_action():
    e = operator_algebra([fmat((0, 1), (1, 0))])
    parts = isotypic_split(e)
    assert [p.image_dim for p in parts] == [1, 1]
    bases = {p.subspace.basis.rows for p in parts}
    assert bases == {((F(1), F(-1)),), ((F(1), F(1)),)}


def test_isotypic_split_rejects_nilpotent_action():
    with pytest.raises(NotSemisimpleAction):
        isotypic_split(operator_algebra([fmat((0, 1), (0, 0))]))


def test_isotypic_single_part_for_multiplicity_two():
    e11 = fmat((1, 0), (0, 0))
    e12 = fmat((0, 1), (0, 0))
    e21 = fmat((0, 0), (1, 0))

    def diag(m):
        z = [F(0), F(0)]
        return MatQ(tuple(tuple(list(r) + z) for r in m.rows)
                    + tuple(tuple(z + list(r)) for r in m.rows))

    e = operator_algebra([diag(e11), diag(e12), diag(e21)])
    parts = isotypic_split(e)
    assert len(parts) == 1
    assert parts[0].image_dim == 4


def test_restrict_op_requires_invariance():
    swap = fmat((0, 1), (1, 0))
    w = Subspace.from_rows(2, [(F(1), F(0))])
    with pytest.raises(NotInvariant):
        restrict_op(swap, w)
    plus = Subspace.from_rows(2, [(F(1), F(1))])
    r = restrict_op(swap, plus)
    assert r == MatQ(((F(1),),))


def test_certify_simple_eigenspace():
    e = operator_algebra([fmat((0, 1), (1, 0))])
    res = certify_simple_module(e, Subspace.from_rows(2, [(F(1), F(1))]), 100)
    assert res.kind == "simple"


def test_certify_whole_module_with_two_isotypics():
    e = operator_algebra([fmat((0, 1), (1, 0))])
    res = certify_simple_module(e, Subspace.full(2), 100)
    assert res.kind == "not_simple"
    w = res.witness
    assert w is not None and 0 < w.dim < 2
    for g in e.generators:
        for row in w.basis.rows:
            assert w.contains_vec(op_apply(g, row))


def test_certify_multiplicity_two_finds_copy():
    e11 = fmat((1, 0), (0, 0))
    e12 = fmat((0, 1), (0, 0))
    e21 = fmat((0, 0), (1, 0))

    def diag(m):
        z = [F(0), F(0)]
        return MatQ(tuple(tuple(list(r) + z) for r in m.rows)
                    + tuple(tuple(z + list(r)) for r in m.rows))

    e = operator_algebra([diag(e11), diag(e12), diag(e21)])
    res = certify_simple_module(e, Subspace.full(4), 400)
    assert res.kind == "not_simple"
    w = res.witness
    assert w is not None and w.dim == 2
    for g in e.generators:
        for row in w.basis.rows:
            assert w.contains_vec(op_apply(g, row))
    diag_copy = Subspace.from_rows(4, [(F(1), F(0), F(1), F(0)),
                                       (F(0), F(1), F(0), F(1))])
    res2 = certify_simple_module(e, diag_copy, 400)
    assert res2.kind == "simple"


def test_certify_nonsemisimple_restriction():
    e = operator_algebra([fmat((0, 1), (0, 0))])
    res = certify_simple_module(e, Subspace.full(2), 100)
    assert res.kind == "not_simple"
    assert res.witness.basis.rows == ((F(1), F(0)),)


def test_certify_rejects_noninvariant_subspace():
    e = operator_algebra([fmat((0, 1), (1, 0))])
    with pytest.raises(NotInvariant):
        certify_simple_module(e, Subspace.from_rows(2, [(F(1), F(0))]), 10)


def test_certify_quaternion_regular_module_is_simple():
    h = quaternion_algebra(-1, -1)
    gens = [h.left_mult_op(h.basis_vec(i)) for i in (1, 2)]
    e = operator_algebra(gens)
    assert e.dim == 4
    res = certify_simple_module(e, Subspace.full(4), 400)
    assert res.kind == "simple"
    assert "quaternion" in res.note


def test_certify_split_quaternion_regular_module_is_not_simple():
    h = quaternion_algebra(1, 1)
    gens = [h.left_mult_op(h.basis_vec(i)) for i in (1, 2)]
    e = operator_algebra(gens)
    res = certify_simple_module(e, Subspace.full(4), 400)
    assert res.kind == "not_simple"
    w = res.witness
    assert w is not None and w.dim == 2
    for g in e.generators:
        for row in w.basis.rows:
            assert w.contains_vec(op_apply(g, row))
