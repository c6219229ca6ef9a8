"""Semisimple-quotient criteria for orders.

The classical left quotient ring of an order is realized at rational scale:
the lattice's span inside its ambient algebra, with the lattice inclusion as
the quotient map. Goldie-style chain conditions are not tested directly; for
orders they come down to semisimplicity of that rational span, and every
report names this surrogate where it is used. Localizations at central primes
are realized as idempotent slices of the span rather than by Ore fractions,
which agrees with the fraction construction for central denominator sets and
is exactly computable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    LatticeIdeal,
    OrderRing,
    StructureAlgebra,
    build_algebra,
    build_ideal,
    build_order,
    centre,
    product_algebra,
)
from .embeddings import (
    Embedding,
    _check_ring_map,
    _nilpotent_witness,
    canonical_embedding,
    minimal_primes,
)
from .errors import CentreNotEtale, NotSemiprime, NotSemisimple, ParseError
from .linalg import (
    IntVec,
    Lattice,
    MatQ,
    RowSolver,
    Subspace,
    Vec,
    lattice_intersect_subspace,
    rank,
    row_times_mat,
    solve_row,
    vec,
)
from .wedderburn import SemisimpleDecomposition, decompose, radical

__all__ = [
    "CentreData",
    "CentreCriterionReport",
    "CriterionCondition",
    "EmbeddabilityReport",
    "IdempotentCentreReport",
    "QuotientReport",
    "SliceData",
    "centre_criterion",
    "centre_of",
    "classical_quotient",
    "embeddability_report",
    "idempotent_centre_criterion",
]


# -- subalgebras carved out of the rational span -----------------------------------


def _structure_on_rows(
    parent: StructureAlgebra, rows: MatQ, unit_coords: Vec, *, name: str, prefix: str
) -> StructureAlgebra:
    """The multiplication of `parent` restricted to the span of `rows`.

    The rows must be linearly independent and multiplication-closed; the
    produced algebra uses them as its basis.
    """
    k = rows.nrows
    solver = RowSolver(rows)
    table = []
    for i in range(k):
        line = []
        for j in range(k):
            prod = parent.mul(rows.row(i), rows.row(j))
            coords = solver.solve(prod)
            if coords is None:
                raise ParseError("rows are not closed under multiplication")
            line.append(tuple(coords))
        table.append(tuple(line))
    labels = tuple(f"{prefix}{i}" for i in range(k))
    return build_algebra(name, labels, unit_coords, tuple(table))


def _slice_rows(alg: StructureAlgebra, e: Vec) -> MatQ:
    """Basis rows of e*A for a central idempotent e."""
    op = alg.left_mult_op(e)
    return Subspace.from_rows(alg.dim, op.transpose().rows).basis


# -- centre data --------------------------------------------------------------------


@dataclass(frozen=True)
class CentreData:
    """The centre lattice of an order, packaged as an order in its own right.

    `rows` expresses the centre basis in the parent's lattice coordinates;
    `idempotents` are the primitive idempotents of the centre's span written
    in parent coordinates, aligned with `minimal_primes` (both empty when the
    centre span has a radical).
    """

    rows: MatQ
    order: OrderRing
    semiprime: bool
    radical_witness: IntVec | None
    minimal_primes: tuple[LatticeIdeal, ...]
    idempotents: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return self.rows.nrows

    def to_parent(self, coords) -> Vec:
        return row_times_mat(vec(coords), self.rows)


def centre_of(order: OrderRing, *, seed: int = 0) -> CentreData:
    """Z(R) as an order, with its central primes when the span is semisimple."""
    alg = order.coord_algebra
    zsub = centre(alg)
    zlat = lattice_intersect_subspace(Lattice.standard(order.rank), zsub)
    zrows = MatQ.from_rows(zlat.basis)
    unit_coords = solve_row(zrows, alg.unit)
    assert unit_coords is not None, "unit must be central"
    zalg = _structure_on_rows(
        alg, zrows, unit_coords, name=f"Z({order.name})", prefix="z"
    )
    zorder = build_order(zalg)
    try:
        primes = minimal_primes(zorder, seed=seed)
    except NotSemiprime as exc:
        witness = tuple(int(x) for x in row_times_mat(vec(exc.witness), zrows))
        return CentreData(zrows, zorder, False, witness, (), ())
    dec = decompose(zorder.coord_algebra, seed=seed)
    idems = tuple(row_times_mat(c.idempotent, zrows) for c in dec.components)
    return CentreData(zrows, zorder, True, None, primes, idems)


# -- classical quotient --------------------------------------------------------------


@dataclass(frozen=True)
class QuotientReport:
    """The rational span of an order, read as its classical quotient ring."""

    order: OrderRing
    algebra: StructureAlgebra
    semisimple: bool
    radical_witness: IntVec | None
    decomposition: SemisimpleDecomposition | None
    minimal_primes: tuple[LatticeIdeal, ...]
    prime_spans_match: bool | None
    centre: CentreData


def classical_quotient(order: OrderRing, *, seed: int = 0) -> QuotientReport:
    """Q = span of R with the lattice inclusion; semisimple iff R is semiprime.

    When semisimple, the minimal ideals of Q are checked to be exactly the
    spans of the minimal primes of R, in matching order.
    """
    alg = order.coord_algebra
    centre_data = centre_of(order, seed=seed)
    try:
        dec = decompose(alg, seed=seed)
    except NotSemisimple as exc:
        witness = _nilpotent_witness(order, exc)
        return QuotientReport(
            order, alg, False, witness, None, (), None, centre_data
        )
    primes = minimal_primes(order, seed=seed)
    match = len(primes) == len(dec.components)
    if match:
        for i, p in enumerate(primes):
            rows = []
            for j, comp in enumerate(dec.components):
                if j != i:
                    rows.extend(comp.block_rows.rows)
            complement = Subspace.from_rows(alg.dim, rows)
            if p.lattice.span() != complement:
                match = False
                break
    return QuotientReport(order, alg, True, None, dec, primes, match, centre_data)


# -- centre criterion ----------------------------------------------------------------


@dataclass(frozen=True)
class CriterionCondition:
    name: str
    holds: bool | None
    note: str = ""
    witness: IntVec | None = None


@dataclass(frozen=True)
class SliceData:
    """One idempotent slice e*Q of the span, read as a central localization."""

    prime_index: int
    idempotent: Vec
    rows: MatQ
    algebra: StructureAlgebra
    semisimple: bool
    component_count: int | None
    centre_dim: int


@dataclass(frozen=True)
class CentreCriterionReport:
    order: OrderRing
    verdict: bool
    conditions: tuple[CriterionCondition, ...]
    centre: CentreData
    slices: tuple[SliceData, ...]
    product_algebra: StructureAlgebra | None
    product_iso: MatQ | None
    contraction: tuple[int, ...] | None
    contraction_surjective: bool | None


def _build_slices(
    alg: StructureAlgebra, centre_data: CentreData, *, seed: int
) -> tuple[SliceData, ...]:
    slices = []
    for i, e in enumerate(centre_data.idempotents):
        rows = _slice_rows(alg, e)
        unit_coords = solve_row(rows, e)
        assert unit_coords is not None
        sl = _structure_on_rows(
            alg, rows, unit_coords, name=f"{alg.name}@q{i}", prefix="s"
        )
        rad = radical(sl)
        count = None
        if rad.dim == 0:
            count = len(decompose(sl, seed=seed).components)
        slices.append(
            SliceData(i, e, rows, sl, rad.dim == 0, count, centre(sl).dim)
        )
    return tuple(slices)


def _product_iso(
    alg: StructureAlgebra, slices: tuple[SliceData, ...]
) -> tuple[StructureAlgebra, MatQ]:
    """A verified isomorphism from the span onto the product of its slices."""
    prod = slices[0].algebra
    for sl in slices[1:]:
        prod = product_algebra(prod, sl.algebra, name=f"{prod.name} x {sl.algebra.name}")
    solvers = [RowSolver(sl.rows) for sl in slices]
    rows = []
    for j in range(alg.dim):
        b = alg.basis_vec(j)
        image: list = []
        for sl, solver in zip(slices, solvers):
            coords = solver.solve(alg.mul(sl.idempotent, b))
            assert coords is not None
            image.extend(coords)
        rows.append(image)
    m = MatQ.from_rows(rows)
    _check_ring_map(alg, prod, m)
    if rank(m) != alg.dim or prod.dim != alg.dim:
        raise ParseError("slice reassembly is not bijective")
    return prod, m


def _contract_primes(
    order: OrderRing, primes: tuple[LatticeIdeal, ...], centre_data: CentreData
) -> tuple[tuple[int, ...], bool]:
    """For each minimal prime of R, the minimal central prime it meets Z(R) in."""
    zsub = centre(order.coord_algebra)
    targets = [q.lattice.basis for q in centre_data.minimal_primes]
    zsolver = RowSolver(centre_data.rows)
    indices = []
    for p in primes:
        meet = lattice_intersect_subspace(p.lattice, zsub)
        coords = []
        for row in meet.basis:
            c = zsolver.solve(vec(row))
            assert c is not None
            coords.append([int(x) for x in c])
        contracted = build_ideal(centre_data.order, coords)
        assert contracted.lattice.basis in targets, (
            "a minimal prime contracted to a non-minimal central ideal"
        )
        indices.append(targets.index(contracted.lattice.basis))
    surjective = set(indices) == set(range(len(targets)))
    return tuple(indices), surjective


def centre_criterion(order: OrderRing, *, seed: int = 0) -> CentreCriterionReport:
    """Decide semisimplicity of the quotient from the centre of the order.

    Conditions reported: R semiprime; central non-zero-divisors stay regular
    in R (at rational scale a central regular element is already a unit of
    the centre's span, so the check verifies each slice's centre is exactly
    the matching centre component); finitely many minimal central primes; and
    per central prime, semisimplicity of the idempotent slice standing in for
    the localization. When everything holds the report carries a verified
    isomorphism from the span onto the product of the slices, plus the
    contraction map from minimal primes onto minimal central primes.
    """
    alg = order.coord_algebra
    centre_data = centre_of(order, seed=seed)
    conditions = []

    try:
        decompose(alg, seed=seed)
        semiprime = True
        conditions.append(CriterionCondition("semiprime", True))
    except NotSemisimple as exc:
        semiprime = False
        conditions.append(
            CriterionCondition(
                "semiprime",
                False,
                note="the span has a nonzero radical",
                witness=_nilpotent_witness(order, exc),
            )
        )

    if not centre_data.semiprime:
        conditions.append(
            CriterionCondition(
                "central-regular-elements-stay-regular",
                True,
                note=(
                    "rational-scale surrogate: a central non-zero-divisor of a "
                    "finite-dimensional span is a unit, hence regular in R"
                ),
            )
        )
        conditions.append(
            CriterionCondition(
                "finitely-many-minimal-central-primes",
                None,
                note="central primes not enumerated: the centre span has a radical",
                witness=centre_data.radical_witness,
            )
        )
        conditions.append(
            CriterionCondition(
                "central-localizations-semisimple",
                None,
                note="no central idempotents available to slice with",
            )
        )
        return CentreCriterionReport(
            order, False, tuple(conditions), centre_data, (), None, None, None, None
        )

    slices = _build_slices(alg, centre_data, seed=seed)
    regular_ok = all(
        sl.centre_dim == centre_data.minimal_primes[sl.prime_index].parent.rank
        - centre_data.minimal_primes[sl.prime_index].lattice.rank
        for sl in slices
    )
    conditions.append(
        CriterionCondition(
            "central-regular-elements-stay-regular",
            regular_ok,
            note=(
                "rational-scale surrogate: each slice's centre equals the "
                "matching component of the centre's span"
            ),
        )
    )
    conditions.append(
        CriterionCondition(
            "finitely-many-minimal-central-primes",
            True,
            note=f"{len(centre_data.minimal_primes)} minimal central primes",
        )
    )
    slices_ok = all(sl.semisimple for sl in slices)
    conditions.append(
        CriterionCondition(
            "central-localizations-semisimple",
            slices_ok,
            note="Goldie surrogate: the idempotent slice of the span is semisimple",
        )
    )

    verdict = semiprime and regular_ok and slices_ok
    product_alg = None
    product_map = None
    contraction = None
    surjective = None
    if verdict:
        product_alg, product_map = _product_iso(alg, slices)
        contraction, surjective = _contract_primes(
            order, minimal_primes(order, seed=seed), centre_data
        )
    return CentreCriterionReport(
        order,
        verdict,
        tuple(conditions),
        centre_data,
        slices,
        product_alg,
        product_map,
        contraction,
        surjective,
    )


# -- idempotent centre corollary -------------------------------------------------------


@dataclass(frozen=True)
class IdempotentCentreReport:
    order: OrderRing
    verdict: bool
    semiprime: bool
    radical_witness: IntVec | None
    centre: CentreData
    factors: tuple[SliceData, ...]
    product_algebra: StructureAlgebra | None
    product_iso: MatQ | None


def idempotent_centre_criterion(order: OrderRing, *, seed: int = 0) -> IdempotentCentreReport:
    """The corollary path: Z(R) spans a product of fields, factor rings split Q.

    Each primitive central idempotent e cuts the factor ring R/R(1-e), realized
    rationally as the slice e*Q; the verdict asks every factor to be semisimple
    and R to be semiprime. A centre whose span has a radical is rejected with
    CentreNotEtale before any factor is built.
    """
    alg = order.coord_algebra
    centre_data = centre_of(order, seed=seed)
    if not centre_data.semiprime:
        zalg = centre_data.order.coord_algebra
        rad = radical(zalg)
        lifted = Subspace.from_rows(
            order.rank,
            [centre_data.to_parent(row) for row in rad.basis.rows],
        )
        raise CentreNotEtale(radical=lifted)
    zdec = decompose(centre_data.order.coord_algebra, seed=seed)
    for comp in zdec.components:
        assert comp.centre_dim == comp.algebra.dim, "commutative blocks are fields"

    try:
        decompose(alg, seed=seed)
        semiprime, witness = True, None
    except NotSemisimple as exc:
        semiprime, witness = False, _nilpotent_witness(order, exc)

    factors = _build_slices(alg, centre_data, seed=seed)
    verdict = semiprime and all(f.semisimple for f in factors)
    product_alg = None
    product_map = None
    if verdict:
        product_alg, product_map = _product_iso(alg, factors)
    return IdempotentCentreReport(
        order,
        verdict,
        semiprime,
        witness,
        centre_data,
        factors,
        product_alg,
        product_map,
    )


# -- embeddability -------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddabilityReport:
    order: OrderRing
    verdict: bool
    witness: Embedding | None
    nilpotent_witness: IntVec | None
    minimal_primes: tuple[LatticeIdeal, ...]
    component_dims: tuple[int, ...]


def embeddability_report(order: OrderRing, *, seed: int = 0) -> EmbeddabilityReport:
    """Can every prime quotient's rational span live in a simple Artinian ring?

    For a semiprime order the answer is witnessed directly: the span of each
    R/p is itself simple Artinian, and the canonical map into the product of
    the blocks is the witness embedding. A non-semiprime order fails with a
    nilpotent witness vector.
    """
    try:
        sigma = canonical_embedding(order, seed=seed)
    except NotSemiprime as exc:
        return EmbeddabilityReport(order, False, None, exc.witness, (), ())
    primes = minimal_primes(order, seed=seed)
    dims = tuple(c.algebra.dim for c in sigma.codomain.components)
    return EmbeddabilityReport(order, True, sigma, None, primes, dims)
