"""Structure-constant algebras over Q, integral orders, and ring operations.

An algebra is given by a multiplication table on a fixed basis; an order is
a full-rank multiplication-closed lattice containing the unit. Elements are
coordinate rows against the algebra basis. Left/right multiplication
operators follow the column convention of `linalg`, which makes
a -> left_mult_op(a) an algebra homomorphism into matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Protocol, Sequence

from .errors import (
    DimensionMismatch,
    NonSaturatedIdeal,
    NotAssociative,
    NoUnit,
    OracleIncomplete,
    ParseError,
)
from .exact import PolyQ, rat, rat_str
from .linalg import (
    IntVec,
    Lattice,
    MatQ,
    RowSolver,
    Subspace,
    Vec,
    inverse,
    is_zero_vec,
    kernel,
    lattice_intersect_subspace,
    left_kernel,
    mat_vstack,
    rank,
    row_times_mat,
    snf,
    solve_row,
    vec,
    zero_vec,
)

ASSOC_FULL_CHECK_MAX_DIM = 64
ASSOC_SAMPLE_TRIPLES = 1000


@dataclass(frozen=True)
class StructureAlgebra:
    """Finite-dimensional associative unital algebra over Q."""

    name: str
    basis_labels: tuple[str, ...]
    unit: Vec
    table: tuple[tuple[Vec, ...], ...]
    assoc_fully_checked: bool = True

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def basis_vec(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.table[i][j]

    def mul(self, u: Sequence, v: Sequence) -> Vec:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise DimensionMismatch("element length vs algebra dim")
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            a = Fraction(a)
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * Fraction(b)
                for m, c in enumerate(self.table[i][j]):
                    if c:
                        out[m] += ab * c
        return tuple(out)

    def power(self, a: Sequence, k: int) -> Vec:
        out = self.unit
        base = vec(a)
        while k > 0:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def left_mult_op(self, a: Sequence) -> MatQ:
        """Column-convention matrix of v -> a*v."""
        n = self.dim
        cols = [self.mul(a, self.basis_vec(j)) for j in range(n)]
        return MatQ(tuple(tuple(cols[j][m] for j in range(n)) for m in range(n)))

    def right_mult_op(self, a: Sequence) -> MatQ:
        """Column-convention matrix of v -> v*a."""
        n = self.dim
        cols = [self.mul(self.basis_vec(j), a) for j in range(n)]
        return MatQ(tuple(tuple(cols[j][m] for j in range(n)) for m in range(n)))

    def trace(self, a: Sequence) -> Fraction:
        """Trace of the left regular representation of a."""
        total = Fraction(0)
        for i, c in enumerate(a):
            if c:
                total += Fraction(c) * sum(
                    (self.table[i][m][m] for m in range(self.dim)), Fraction(0)
                )
        return total

    def minimal_polynomial(self, a: Sequence) -> PolyQ:
        a = vec(a)
        powers = [self.unit]
        current = self.unit
        while True:
            current = self.mul(current, a)
            coeffs = solve_row(MatQ(tuple(powers)), current)
            if coeffs is not None:
                return PolyQ.make([-c for c in coeffs] + [Fraction(1)])
            powers.append(current)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n)
        )


def _check_unit(alg: StructureAlgebra) -> None:
    for i in range(alg.dim):
        e = alg.basis_vec(i)
        if alg.mul(alg.unit, e) != e or alg.mul(e, alg.unit) != e:
            raise NoUnit(f"declared unit fails on basis element {alg.basis_labels[i]}")


def _assoc_defect(alg: StructureAlgebra, i: int, j: int, k: int) -> bool:
    left = alg.mul(alg.table[i][j], alg.basis_vec(k))
    right = alg.mul(alg.basis_vec(i), alg.table[j][k])
    return left != right


def _check_associativity(alg: StructureAlgebra, full: bool, seed: int) -> bool:
    n = alg.dim
    if full or n <= ASSOC_FULL_CHECK_MAX_DIM:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if _assoc_defect(alg, i, j, k):
                        raise NotAssociative(i, j, k)
        return True
    rng = random.Random(seed)
    for _ in range(ASSOC_SAMPLE_TRIPLES):
        i, j, k = (rng.randrange(n) for _ in range(3))
        if _assoc_defect(alg, i, j, k):
            raise NotAssociative(i, j, k)
    return False


def build_algebra(
    name: str,
    basis_labels: Sequence[str],
    unit: Sequence,
    table: Sequence[Sequence[Sequence]],
    *,
    verify: bool = True,
    full_assoc_check: bool = False,
    seed: int = 0,
) -> StructureAlgebra:
    """Construct and (by default) validate an algebra from a dense table."""
    labels = tuple(str(s) for s in basis_labels)
    n = len(labels)
    unit_v = vec(unit)
    if len(unit_v) != n:
        raise DimensionMismatch("unit length vs dim")
    if len(table) != n or any(len(row) != n for row in table):
        raise DimensionMismatch("table shape vs dim")
    dense = tuple(tuple(vec(table[i][j]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if len(dense[i][j]) != n:
                raise DimensionMismatch(f"product ({i},{j}) has wrong length")
    alg = StructureAlgebra(name, labels, unit_v, dense)
    if verify and n:
        _check_unit(alg)
        fully = _check_associativity(alg, full_assoc_check, seed)
        if not fully:
            alg = StructureAlgebra(name, labels, unit_v, dense, assoc_fully_checked=False)
    return alg


def load_algebra(doc: dict, *, full_assoc_check: bool = False, seed: int = 0) -> StructureAlgebra:
    """Validate a parsed algebra document (see the file format in the README)."""
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object")
    try:
        name = str(doc["name"])
        dim = int(doc["dim"])
        basis = list(doc["basis"])
        unit = [rat(x) for x in doc["unit"]]
        entries = doc.get("table", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed algebra document: {exc}") from exc
    if dim < 0 or len(basis) != dim or len(unit) != dim:
        raise ParseError("dim, basis, and unit lengths disagree")
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for entry in entries:
        try:
            i = int(entry["i"])
            j = int(entry["j"])
            c = [rat(x) for x in entry["c"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed table entry: {exc}") from exc
        if not (0 <= i < dim and 0 <= j < dim) or len(c) != dim:
            raise ParseError(f"table entry ({i},{j}) out of range")
        table[i][j] = c
    return build_algebra(
        name, basis, unit, table, full_assoc_check=full_assoc_check, seed=seed
    )


def algebra_to_doc(alg: StructureAlgebra) -> dict:
    entries = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            c = alg.table[i][j]
            if not is_zero_vec(c):
                entries.append({"i": i, "j": j, "c": [rat_str(x) for x in c]})
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis_labels),
        "unit": [rat_str(x) for x in alg.unit],
        "table": entries,
    }


def product_algebra(a: StructureAlgebra, b: StructureAlgebra, name: str | None = None) -> StructureAlgebra:
    """Direct product with block coordinates (a first, then b)."""
    n, m = a.dim, b.dim
    labels = tuple(f"{s}.l" for s in a.basis_labels) + tuple(f"{s}.r" for s in b.basis_labels)
    unit = tuple(a.unit) + tuple(b.unit)

    def emb_a(v: Vec) -> Vec:
        return tuple(v) + zero_vec(m)

    def emb_b(v: Vec) -> Vec:
        return zero_vec(n) + tuple(v)

    table = [[zero_vec(n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = emb_a(a.table[i][j])
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = emb_b(b.table[i][j])
    return StructureAlgebra(
        name or f"{a.name}*{b.name}", labels, unit,
        tuple(tuple(r) for r in table),
        assoc_fully_checked=a.assoc_fully_checked and b.assoc_fully_checked,
    )


def opposite_algebra(a: StructureAlgebra, name: str | None = None) -> StructureAlgebra:
    table = tuple(tuple(a.table[j][i] for j in range(a.dim)) for i in range(a.dim))
    return StructureAlgebra(
        name or f"{a.name}.op", a.basis_labels, a.unit, table,
        assoc_fully_checked=a.assoc_fully_checked,
    )


def induced_algebra(
    a: StructureAlgebra,
    basis_rows: MatQ,
    *,
    name: str,
    unit_hint: Sequence | None = None,
    labels: Sequence[str] | None = None,
) -> StructureAlgebra:
    """Subalgebra on the given (independent) basis rows, with its own unit.

    The rows must span a multiplication-closed subspace. The unit of the
    subalgebra is solved for when no hint is supplied; corner algebras eAe
    pass their idempotent e.
    """
    k = basis_rows.nrows
    if rank(basis_rows) != k:
        raise DimensionMismatch("subalgebra basis rows are dependent")
    solver = RowSolver(basis_rows)
    products: list[list[Vec]] = []
    for i in range(k):
        row_products = []
        for j in range(k):
            p = a.mul(basis_rows.rows[i], basis_rows.rows[j])
            coords = solver.solve(p)
            if coords is None:
                raise DimensionMismatch(
                    f"subspace not closed under multiplication at pair ({i},{j})"
                )
            row_products.append(coords)
        products.append(row_products)
    if unit_hint is not None:
        unit_coords = solver.solve(vec(unit_hint))
        if unit_coords is None:
            raise NoUnit("unit hint lies outside the subalgebra")
    else:
        # solve u * b_i = b_i = b_i * u in subalgebra coordinates
        rows_sys = []
        for s in range(k):
            row = []
            for i in range(k):
                row.extend(products[s][i])
                row.extend(products[i][s])
            rows_sys.append(tuple(row))
        want = []
        for i in range(k):
            e = tuple(Fraction(1 if t == i else 0) for t in range(k))
            want.extend(e)
            want.extend(e)
        unit_coords = solve_row(MatQ(tuple(rows_sys)), want)
        if unit_coords is None:
            raise NoUnit(f"subalgebra {name} has no two-sided unit")
    lab = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(k))
    return StructureAlgebra(
        name, lab, vec(unit_coords),
        tuple(tuple(products[i][j] for j in range(k)) for i in range(k)),
        assoc_fully_checked=a.assoc_fully_checked,
    )


def quotient_algebra_by_subspace(
    a: StructureAlgebra, ideal: Subspace, *, name: str
) -> tuple[StructureAlgebra, MatQ]:
    """Quotient of a Q-algebra by a two-sided ideal subspace.

    Returns the quotient and the projection matrix P (dim x qdim), applied
    to elements as row_times_mat(x, P). Canonical coset representatives are
    supported on the non-pivot coordinates of the ideal's RREF basis.
    """
    if ideal.ambient != a.dim:
        raise DimensionMismatch("ideal ambient vs algebra dim")
    piv = set(ideal.pivots)
    free = [j for j in range(a.dim) if j not in piv]
    q = len(free)

    def project(v: Sequence) -> Vec:
        residual = ideal.reduce_vec(v)
        return tuple(residual[j] for j in free)

    reps = []
    for f in free:
        reps.append(a.basis_vec(f))
    table = []
    for i in range(q):
        row = []
        for j in range(q):
            row.append(project(a.mul(reps[i], reps[j])))
        table.append(tuple(row))
    labels = tuple(a.basis_labels[f] for f in free)
    quotient = StructureAlgebra(
        name, labels, project(a.unit), tuple(table),
        assoc_fully_checked=a.assoc_fully_checked,
    )
    proj_mat = MatQ(tuple(project(a.basis_vec(i)) for i in range(a.dim)))
    return quotient, proj_mat


# -- ring-theoretic operations ----------------------------------------------------


def centre(a: StructureAlgebra) -> Subspace:
    """{z : z b = b z for all b}, as the kernel of stacked commutators."""
    if a.dim == 0:
        return Subspace.zero(0)
    blocks = []
    for i in range(a.dim):
        e = a.basis_vec(i)
        blocks.append(a.left_mult_op(e) - a.right_mult_op(e))
    stacked = mat_vstack(*blocks)
    return Subspace.from_rows(a.dim, kernel(stacked).rows)


def left_annihilator(a: StructureAlgebra, s: Subspace) -> Subspace:
    """{x : x * v = 0 for all v in s}."""
    if s.ambient != a.dim:
        raise DimensionMismatch("subspace ambient vs algebra dim")
    if s.dim == 0:
        return Subspace.full(a.dim)
    conditions = []
    for v in s.basis.rows:
        # row i of n_v is e_i * v; x * v = x @ n_v
        n_v = MatQ(tuple(a.mul(a.basis_vec(i), v) for i in range(a.dim)))
        conditions.append(n_v)
    stacked = MatQ(tuple(
        tuple(x for m in conditions for x in m.rows[i])
        for i in range(a.dim)
    ))
    return Subspace.from_rows(a.dim, left_kernel(stacked).rows)


def right_annihilator(a: StructureAlgebra, s: Subspace) -> Subspace:
    """{x : v * x = 0 for all v in s}."""
    if s.ambient != a.dim:
        raise DimensionMismatch("subspace ambient vs algebra dim")
    if s.dim == 0:
        return Subspace.full(a.dim)
    conditions = []
    for v in s.basis.rows:
        n_v = MatQ(tuple(a.mul(v, a.basis_vec(i)) for i in range(a.dim)))
        conditions.append(n_v)
    stacked = MatQ(tuple(
        tuple(x for m in conditions for x in m.rows[i])
        for i in range(a.dim)
    ))
    return Subspace.from_rows(a.dim, left_kernel(stacked).rows)


def subspace_product(a: StructureAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Linear span of {x*y : x in u, y in v}."""
    rows = []
    for x in u.basis.rows:
        for y in v.basis.rows:
            rows.append(a.mul(x, y))
    return Subspace.from_rows(a.dim, rows)


def two_sided_ideal_subspace(a: StructureAlgebra, gens: Iterable[Sequence]) -> Subspace:
    """Smallest two-sided ideal subspace of the Q-algebra containing gens."""
    current = Subspace.from_rows(a.dim, [vec(g) for g in gens])
    while True:
        rows = list(current.basis.rows)
        new_rows = list(rows)
        for g in rows:
            for i in range(a.dim):
                e = a.basis_vec(i)
                new_rows.append(a.mul(e, g))
                new_rows.append(a.mul(g, e))
        bigger = Subspace.from_rows(a.dim, new_rows)
        if bigger.dim == current.dim:
            return current
        current = bigger


# -- orders and lattice ideals -----------------------------------------------------


@dataclass(frozen=True)
class OrderRing:
    """A unital multiplication-closed full-rank lattice in its ambient algebra.

    `coord_algebra` carries the structure constants re-expressed in the
    lattice basis (integral by closure); ideal and quotient computations
    happen in those coordinates.
    """

    ambient: StructureAlgebra
    lattice: Lattice
    coord_algebra: StructureAlgebra

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def name(self) -> str:
        return self.coord_algebra.name

    def to_ambient(self, coords: Sequence) -> Vec:
        return row_times_mat(vec(coords), self.lattice.basis_mat())

    def from_ambient(self, v: Sequence) -> IntVec | None:
        return self.lattice.coords_of(v)


def build_order(
    ambient: StructureAlgebra,
    lattice: Lattice | None = None,
    *,
    name: str | None = None,
) -> OrderRing:
    n = ambient.dim
    if lattice is None:
        lattice = Lattice.standard(n)
    if lattice.ambient != n:
        raise DimensionMismatch("lattice ambient vs algebra dim")
    if lattice.rank != n:
        raise ParseError("order lattice must have full rank")
    unit_coords = lattice.coords_of(ambient.unit)
    if unit_coords is None:
        raise NoUnit("order lattice does not contain the unit")
    basis_vecs = [tuple(Fraction(x) for x in row) for row in lattice.basis]
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            p = ambient.mul(basis_vecs[i], basis_vecs[j])
            coords = lattice.coords_of(p)
            if coords is None:
                raise ParseError(
                    f"order lattice not closed under multiplication at pair ({i},{j})"
                )
            row.append(vec(coords))
        table.append(tuple(row))
    standard = lattice.basis == Lattice.standard(n).basis
    coord_alg = StructureAlgebra(
        name or ambient.name,
        ambient.basis_labels if standard else tuple(f"g{i}" for i in range(n)),
        vec(unit_coords),
        tuple(table),
        assoc_fully_checked=ambient.assoc_fully_checked,
    )
    return OrderRing(ambient, lattice, coord_alg)


def load_order(doc: dict, *, full_assoc_check: bool = False, seed: int = 0) -> OrderRing:
    alg = load_algebra(doc, full_assoc_check=full_assoc_check, seed=seed)
    lattice = None
    if "lattice" in doc:
        try:
            rows = [[int(x) for x in row] for row in doc["lattice"]]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed lattice rows: {exc}") from exc
        lattice = Lattice.from_rows(alg.dim, rows)
    return build_order(alg, lattice)


def order_to_doc(order: OrderRing) -> dict:
    doc = algebra_to_doc(order.ambient)
    std = Lattice.standard(order.ambient.dim)
    if order.lattice.basis != std.basis:
        doc["lattice"] = [list(row) for row in order.lattice.basis]
    return doc


@dataclass(frozen=True)
class LatticeIdeal:
    """Two-sided ideal of an order, stored in order coordinates (HNF)."""

    parent: OrderRing
    lattice: Lattice
    saturated: bool

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def ambient_rows(self) -> MatQ:
        return MatQ.from_rows(
            [self.parent.to_ambient(row) for row in self.lattice.basis]
        )

    def span(self) -> Subspace:
        return self.lattice.span()


def build_ideal(parent: OrderRing, rows: Iterable[Sequence[int]], *, verify: bool = True) -> LatticeIdeal:
    n = parent.rank
    lat = Lattice.from_rows(n, rows)
    alg = parent.coord_algebra
    if verify:
        for g in lat.basis:
            gv = vec(g)
            for i in range(n):
                e = alg.basis_vec(i)
                if not lat.contains_vec(alg.mul(e, gv)):
                    raise ParseError("ideal rows not closed under left multiplication")
                if not lat.contains_vec(alg.mul(gv, e)):
                    raise ParseError("ideal rows not closed under right multiplication")
    sat = _saturate_in_order(lat)
    return LatticeIdeal(parent, lat, saturated=(sat.basis == lat.basis))


def _saturate_in_order(lat: Lattice) -> Lattice:
    if lat.is_zero:
        return lat
    return lattice_intersect_subspace(Lattice.standard(lat.ambient), lat.span())


def saturate_ideal(ideal: LatticeIdeal) -> LatticeIdeal:
    sat = _saturate_in_order(ideal.lattice)
    return LatticeIdeal(ideal.parent, sat, saturated=True)


def two_sided_ideal_generated(parent: OrderRing, gens: Iterable[Sequence[int]]) -> LatticeIdeal:
    """Smallest multiplication-closed sublattice containing R*g*R for each g."""
    n = parent.rank
    alg = parent.coord_algebra
    current = Lattice.from_rows(n, [list(map(int, g)) for g in gens])
    while True:
        rows = [list(r) for r in current.basis]
        new_rows = [list(r) for r in current.basis]
        for g in rows:
            gv = vec(g)
            for i in range(n):
                e = alg.basis_vec(i)
                for p in (alg.mul(e, gv), alg.mul(gv, e)):
                    new_rows.append([int(x) for x in p])
        bigger = Lattice.from_rows(n, new_rows)
        if bigger.basis == current.basis:
            break
        current = bigger
    sat = _saturate_in_order(current)
    return LatticeIdeal(parent, current, saturated=(sat.basis == current.basis))


def is_regular(parent: OrderRing, r: Sequence) -> bool:
    """True iff r is a non-zero-divisor in the ambient algebra."""
    a = parent.coord_algebra
    rv = vec(r)
    return rank(a.left_mult_op(rv)) == a.dim and rank(a.right_mult_op(rv)) == a.dim


@dataclass(frozen=True)
class QuotientResult:
    order: OrderRing
    projection: MatQ  # rank x qrank, applied as row_times_mat(x, projection)
    lifts: tuple[IntVec, ...]  # one preimage row per quotient basis vector

    @property
    def is_zero(self) -> bool:
        return self.order.rank == 0


def quotient_by_ideal(parent: OrderRing, ideal: LatticeIdeal, *, name: str | None = None) -> QuotientResult:
    """Quotient order R/I with the coordinate projection.

    Refuses non-saturated ideals: the error carries the saturation so the
    caller can decide to saturate explicitly.
    """
    if ideal.parent is not parent and ideal.parent.lattice != parent.lattice:
        raise DimensionMismatch("ideal belongs to a different order")
    if not ideal.saturated:
        raise NonSaturatedIdeal(saturate_ideal(ideal))
    n = parent.rank
    k = ideal.rank
    alg = parent.coord_algebra
    qname = name or f"{parent.name}.quot"
    if k == 0:
        return QuotientResult(
            build_order(alg, name=qname),
            MatQ.identity(n),
            tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)),
        )
    d, _, v = snf([list(r) for r in ideal.lattice.basis])
    assert all(d[i][i] == 1 for i in range(k)), "saturated ideal has unit invariant factors"
    v_mat = MatQ.from_rows(v)
    w = inverse(v_mat)  # rows of w are an adapted basis of Z^n
    for row in w.rows:
        assert all(x.denominator == 1 for x in row)
    proj = MatQ(tuple(tuple(v_mat.rows[i][j] for j in range(k, n)) for i in range(n)))
    lifts = tuple(tuple(int(x) for x in w.rows[i]) for i in range(k, n))
    q = n - k
    if q == 0:
        empty = StructureAlgebra(qname, (), (), ())
        return QuotientResult(OrderRing(empty, Lattice.zero(0), empty), proj, ())

    def project(x: Sequence) -> Vec:
        return row_times_mat(x, proj)

    table = []
    for i in range(q):
        row = []
        for j in range(q):
            prod = alg.mul(vec(lifts[i]), vec(lifts[j]))
            row.append(project(prod))
        table.append(tuple(row))
    quot_alg = StructureAlgebra(
        qname,
        tuple(f"q{i}" for i in range(q)),
        project(alg.unit),
        tuple(table),
        assoc_fully_checked=alg.assoc_fully_checked,
    )
    return QuotientResult(build_order(quot_alg), proj, lifts)


# -- one-sided inverses -----------------------------------------------------------


class MultOracle(Protocol):
    """Black-box ring window for the one-sided inverse obstruction.

    Any method may return None to signal that the product or difference
    leaves the window the oracle knows about.
    """

    def one(self): ...

    def mul(self, a, b): ...

    def sub(self, a, b): ...

    def is_zero(self, a) -> bool | None: ...


@dataclass(frozen=True)
class ObstructionResult:
    refuted: bool
    idempotents: tuple
    window: int

    @property
    def obstruction_found(self) -> bool:
        return not self.refuted and bool(self.idempotents)


def _oracle_eq(oracle: MultOracle, a, b) -> bool:
    diff = oracle.sub(a, b)
    if diff is None:
        raise OracleIncomplete("difference left the oracle window")
    z = oracle.is_zero(diff)
    if z is None:
        raise OracleIncomplete("zero test left the oracle window")
    return bool(z)


def _oracle_mul(oracle: MultOracle, a, b):
    p = oracle.mul(a, b)
    if p is None:
        raise OracleIncomplete("product left the oracle window")
    return p


def one_sided_inverse_obstruction(oracle: MultOracle, x, y, n: int) -> ObstructionResult:
    """Certified idempotent family from a one-sided inverse.

    Requires y*x = 1 (checked; ValueError otherwise). If x*y = 1 too, there
    is no obstruction and the result is a refutation. Otherwise returns
    e_0..e_n with e_i = x^i y^i - x^(i+1) y^(i+1), verified pairwise
    orthogonal, idempotent, and nonzero: a witness that the ring embeds in
    no semisimple Artinian ring.
    """
    if n < 0:
        raise ValueError("window must be nonnegative")
    one = oracle.one()
    yx = _oracle_mul(oracle, y, x)
    if not _oracle_eq(oracle, yx, one):
        raise ValueError("y*x != 1: obstruction requires a left inverse")
    xy = _oracle_mul(oracle, x, y)
    if _oracle_eq(oracle, xy, one):
        return ObstructionResult(refuted=True, idempotents=(), window=n)
    xp = [one]
    yp = [one]
    for _ in range(n + 1):
        xp.append(_oracle_mul(oracle, xp[-1], x))
        yp.append(_oracle_mul(oracle, yp[-1], y))
    f = [_oracle_mul(oracle, xp[i], yp[i]) for i in range(n + 2)]
    ee = []
    for i in range(n + 1):
        e = oracle.sub(f[i], f[i + 1])
        if e is None:
            raise OracleIncomplete("difference left the oracle window")
        ee.append(e)
    for i, e in enumerate(ee):
        z = oracle.is_zero(e)
        if z is None:
            raise OracleIncomplete("zero test left the oracle window")
        if z:
            raise OracleIncomplete(
                f"idempotent e_{i} vanished: oracle window is inconsistent with y*x=1"
            )
        if not _oracle_eq(oracle, _oracle_mul(oracle, e, e), e):
            raise OracleIncomplete(f"e_{i}^2 != e_{i} inside the oracle window")
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j:
                continue
            p = _oracle_mul(oracle, ee[i], ee[j])
            z = oracle.is_zero(p)
            if z is None:
                raise OracleIncomplete("zero test left the oracle window")
            if not z:
                raise OracleIncomplete(f"e_{i} e_{j} != 0 inside the oracle window")
    return ObstructionResult(refuted=False, idempotents=tuple(ee), window=n)
