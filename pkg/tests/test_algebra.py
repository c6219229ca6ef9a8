"""Structure algebras, orders, ideals, quotients, and the inverse obstruction."""

from fractions import Fraction

import pytest

from ordembed.algebra import (
    algebra_to_doc,
    build_algebra,
    build_ideal,
    build_order,
    centre,
    induced_algebra,
    is_regular,
    left_annihilator,
    load_algebra,
    load_order,
    one_sided_inverse_obstruction,
    opposite_algebra,
    order_to_doc,
    product_algebra,
    quotient_by_ideal,
    right_annihilator,
    saturate_ideal,
    two_sided_ideal_generated,
)
from ordembed.errors import (
    NoUnit,
    NonSaturatedIdeal,
    NotAssociative,
    OracleIncomplete,
    ParseError,
)
from ordembed.exact import PolyQ
from ordembed.linalg import MatQ, Subspace, unit_vec
from ordembed.samples import (
    cyclic_group_algebra,
    matrix_algebra,
    poly_quotient_algebra,
    upper_triangular_algebra,
)

F = Fraction


def fmat(*rows):
    return MatQ(tuple(tuple(F(x) for x in r) for r in rows))


def test_group_algebra_c2_basics():
    a = cyclic_group_algebra(2)
    assert a.dim == 2
    assert a.unit == (F(1), F(0))
    x = a.basis_vec(1)
    assert a.mul(x, x) == a.unit
    assert a.minimal_polynomial(x) == PolyQ.make([-1, 0, 1])
    assert a.is_commutative()


def test_matrix_algebra_units_multiply():
    m2 = matrix_algebra(2)
    e01 = m2.basis_vec(1)
    e10 = m2.basis_vec(2)
    # e01 * e10 = e00, e10 * e01 = e11
    assert m2.mul(e01, e10) == m2.basis_vec(0)
    assert m2.mul(e10, e01) == m2.basis_vec(3)
    assert not m2.is_commutative()
    assert m2.trace(m2.unit) == 4


def test_minimal_polynomial_of_matrix_idempotent():
    m2 = matrix_algebra(2)
    e00 = m2.basis_vec(0)
    assert m2.minimal_polynomial(e00) == PolyQ.make([0, -1, 1])
    assert m2.minimal_polynomial(m2.unit) == PolyQ.make([-1, 1])


def test_centre_dimensions():
    assert centre(matrix_algebra(2)).dim == 1
    assert centre(cyclic_group_algebra(4)).dim == 4
    both = product_algebra(cyclic_group_algebra(2), cyclic_group_algebra(2))
    assert centre(both).dim == 4


def test_centre_of_product_separates_factors():
    p = product_algebra(matrix_algebra(2), matrix_algebra(2))
    z = centre(p)
    assert z.dim == 2
    assert z.contains_vec(p.unit)


def test_load_algebra_rejects_nonassociative_table():
    # u*u = v, u*v = 1, but v*u = 0: (uu)u = vu = 0 while u(uu) = uv = 1
    doc = {
        "name": "broken",
        "dim": 3,
        "basis": ["1", "u", "v"],
        "unit": ["1", "0", "0"],
        "table": [
            {"i": 0, "j": 0, "c": ["1", "0", "0"]},
            {"i": 0, "j": 1, "c": ["0", "1", "0"]},
            {"i": 0, "j": 2, "c": ["0", "0", "1"]},
            {"i": 1, "j": 0, "c": ["0", "1", "0"]},
            {"i": 2, "j": 0, "c": ["0", "0", "1"]},
            {"i": 1, "j": 1, "c": ["0", "0", "1"]},
            {"i": 1, "j": 2, "c": ["1", "0", "0"]},
        ],
    }
    with pytest.raises(NotAssociative) as exc:
        load_algebra(doc)
    assert exc.value.triple == (1, 1, 1)


def test_load_algebra_rejects_wrong_unit():
    doc = {
        "name": "unitless",
        "dim": 1,
        "basis": ["a"],
        "unit": ["0"],
        "table": [{"i": 0, "j": 0, "c": ["1"]}],
    }
    with pytest.raises(NoUnit):
        load_algebra(doc)


def test_algebra_doc_roundtrip():
    a = matrix_algebra(2)
    doc = algebra_to_doc(a)
    b = load_algebra(doc)
    assert b.table == a.table
    assert b.unit == a.unit
    assert b.basis_labels == a.basis_labels


def test_induced_subalgebra_upper_triangular():
    m2 = matrix_algebra(2)
    rows = fmat((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1))  # e00, e01, e11
    t2 = induced_algebra(m2, rows, name="T2")
    assert t2.dim == 3
    assert t2.unit == (F(1), F(0), F(1))


def test_left_annihilator_in_triangular_algebra():
    # ann_l(span{e01}) in T2 is span{e01, e11}
    t2 = upper_triangular_algebra(2)
    target = Subspace.from_rows(3, [unit_vec(3, 1)])
    ann = left_annihilator(t2, target)
    assert ann.basis.rows == (unit_vec(3, 1), unit_vec(3, 2))
    # and on the right, e01 is killed by e00
    rann = right_annihilator(t2, target)
    assert rann.basis.rows == (unit_vec(3, 0), unit_vec(3, 1))


def test_annihilator_of_whole_algebra_is_zero():
    m2 = matrix_algebra(2)
    assert left_annihilator(m2, Subspace.full(4)).dim == 0


def test_annihilator_in_split_product():
    p = product_algebra(cyclic_group_algebra(1), cyclic_group_algebra(1), name="QxQ")
    first = Subspace.from_rows(2, [unit_vec(2, 0)])
    ann = left_annihilator(p, first)
    assert ann.basis.rows == (unit_vec(2, 1),)


def test_opposite_algebra_reverses_products():
    t2 = upper_triangular_algebra(2)
    op = opposite_algebra(t2)
    u, v = t2.basis_vec(0), t2.basis_vec(1)
    assert op.mul(u, v) == t2.mul(v, u)
    assert op.unit == t2.unit


def test_order_requires_integral_closure():
    amb = poly_quotient_algebra(PolyQ.make([F(1, 2), 0, 1]), name="halfroot")
    with pytest.raises(ParseError):
        build_order(amb)


def test_ideal_generated_by_unit_is_whole_order():
    r = build_order(cyclic_group_algebra(2))
    whole = two_sided_ideal_generated(r, [r.coord_algebra.unit])
    assert whole.lattice.basis_mat().rows == ((1, 0), (0, 1))
    empty = two_sided_ideal_generated(r, [])
    assert empty.lattice.is_zero


def test_principal_ideal_in_group_ring():
    # (1 - x) inside Z[C2]
    r = build_order(cyclic_group_algebra(2))
    gen = (F(1), F(-1))
    ideal = two_sided_ideal_generated(r, [gen])
    assert ideal.lattice.basis_mat().rows == ((1, -1),)
    assert ideal.saturated


def test_quotient_by_augmentation_ideal():
    r = build_order(cyclic_group_algebra(2))
    ideal = two_sided_ideal_generated(r, [(F(1), F(-1))])
    q = quotient_by_ideal(r, ideal)
    assert q.order.rank == 1
    # both 1 and x map to the same generator
    from ordembed.linalg import row_times_mat

    img_one = row_times_mat((F(1), F(0)), q.projection)
    img_x = row_times_mat((F(0), F(1)), q.projection)
    assert img_one == img_x
    assert img_one != (F(0),)


def test_quotient_projection_is_multiplicative():
    r = build_order(upper_triangular_algebra(2))
    ideal = two_sided_ideal_generated(r, [r.coord_algebra.basis_vec(1)])
    q = quotient_by_ideal(r, ideal)
    assert q.order.rank == 2
    from ordembed.linalg import row_times_mat

    for i in range(3):
        for j in range(3):
            a = r.coord_algebra.basis_vec(i)
            b = r.coord_algebra.basis_vec(j)
            lhs = row_times_mat(r.coord_algebra.mul(a, b), q.projection)
            rhs = q.order.coord_algebra.mul(
                row_times_mat(a, q.projection), row_times_mat(b, q.projection)
            )
            assert lhs == rhs


def test_quotient_by_whole_order_is_zero_ring():
    r = build_order(cyclic_group_algebra(2))
    whole = two_sided_ideal_generated(r, [r.coord_algebra.unit])
    q = quotient_by_ideal(r, whole)
    assert q.is_zero
    assert q.order.rank == 0


def test_quotient_refuses_non_saturated_ideal():
    r = build_order(cyclic_group_algebra(2))
    doubled = build_ideal(r, [(2, 0), (0, 2)])
    assert not doubled.saturated
    with pytest.raises(NonSaturatedIdeal) as exc:
        quotient_by_ideal(r, doubled)
    sat = exc.value.saturation
    assert sat.lattice.basis_mat().rows == ((1, 0), (0, 1))
    assert saturate_ideal(doubled).saturated


def test_regularity_in_group_ring():
    r = build_order(cyclic_group_algebra(2))
    assert is_regular(r, (F(1), F(0)))
    assert is_regular(r, (F(2), F(1)))
    assert not is_regular(r, (F(1), F(1)))  # (1+x)(1-x) = 0


class ShiftOracle:
    """Symbolic model of a ring where y*x = 1 but x*y != 1.

    Elements are integer combinations of monomials x^i y^j, stored sparsely
    as {(i, j): coeff}. Products normalize with the relation y x = 1. A cap
    on the exponents makes the oracle return None beyond its window, which
    is exactly the partial-knowledge situation the obstruction check is
    specified against.
    """

    def __init__(self, cap: int | None = None):
        self.cap = cap

    def one(self):
        return {(0, 0): 1}

    def x(self):
        return {(1, 0): 1}

    def y(self):
        return {(0, 1): 1}

    def mul(self, a, b):
        out: dict = {}
        for (i, j), c in a.items():
            for (k, l), d in b.items():
                # x^i y^j x^k y^l: y^j x^k collapses by min(j, k)
                t = min(j, k)
                key = (i + k - t, j + l - t)
                if self.cap is not None and max(key) > self.cap:
                    return None
                out[key] = out.get(key, 0) + c * d
        return {k: v for k, v in out.items() if v}

    def sub(self, a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) - v
        return {k: v for k, v in out.items() if v}

    def is_zero(self, a):
        return not a


def test_obstruction_produces_orthogonal_idempotents():
    o = ShiftOracle()
    res = one_sided_inverse_obstruction(o, o.x(), o.y(), 3)
    assert not res.refuted
    assert len(res.idempotents) == 4
    for e in res.idempotents:
        assert o.is_zero(o.sub(o.mul(e, e), e))
    for i, e in enumerate(res.idempotents):
        for j, f in enumerate(res.idempotents):
            if i != j:
                assert o.is_zero(o.mul(e, f))


def test_obstruction_refutes_two_sided_inverse():
    o = ShiftOracle()
    res = one_sided_inverse_obstruction(o, o.one(), o.one(), 5)
    assert res.refuted
    assert res.idempotents == ()


def test_obstruction_incomplete_oracle():
    o = ShiftOracle(cap=2)
    with pytest.raises(OracleIncomplete):
        one_sided_inverse_obstruction(o, o.x(), o.y(), 3)


def test_obstruction_rejects_wrong_orientation():
    o = ShiftOracle()
    with pytest.raises(ValueError):
        one_sided_inverse_obstruction(o, o.y(), o.x(), 3)
    with pytest.raises(ValueError):
        one_sided_inverse_obstruction(o, o.x(), o.y(), -1)


def test_order_doc_roundtrip_keeps_lattice():
    # Z + 2x Z inside Q[C2] is closed under products: (2x)^2 = 4
    amb = cyclic_group_algebra(2)
    from ordembed.linalg import Lattice

    r = build_order(amb, Lattice.from_rows(2, [(1, 0), (0, 2)]), name="index2")
    doc = order_to_doc(r)
    back = load_order(doc)
    assert back.lattice.basis_mat().rows == ((1, 0), (0, 2))
    assert back.ambient.table == r.ambient.table
    assert back.coord_algebra.mul((0, 1), (0, 1))[0] == 4


def test_sampled_associativity_flag():
    m8 = matrix_algebra(3)
    checked = build_algebra(
        m8.name, m8.basis_labels, m8.unit, m8.table, full_assoc_check=True
    )
    assert checked.assoc_fully_checked
