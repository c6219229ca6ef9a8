"""Radical, Wedderburn decomposition, split status, and module machinery.

The decomposition pipeline: the Jacobson radical comes from the char-0
trace-form criterion; a semisimple algebra is split into simple blocks by
factoring minimal polynomials of centre elements and lifting the factors to
orthogonal central idempotents; each simple block's division part is then
resolved as far as rational arithmetic allows (commutative and quaternion
cases certified, anything beyond reported as Unknown rather than guessed).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .algebra import (
    StructureAlgebra,
    centre,
    induced_algebra,
    quotient_algebra_by_subspace,
)
from .errors import (
    DimensionMismatch,
    NotInvariant,
    NotSemisimple,
    NotSemisimpleAction,
)
from .exact import PolyQ, factor_rational_poly, poly_xgcd
from .hilbert import ramified_places
from .linalg import (
    MatQ,
    RowSolver,
    Subspace,
    Vec,
    kron,
    left_kernel,
    mat_hstack,
    mat_unvec,
    mat_vec_of,
    op_apply,
    row_times_mat,
    rref,
    solve_row,
)

DECOMPOSE_CANDIDATE_CAP = 5000


def radical(a: StructureAlgebra) -> Subspace:
    """Jacobson radical via the trace form of the left regular representation.

    Over Q the radical is exactly {x : trace(L_{xb}) = 0 for all b}, the
    kernel of the Gram matrix G[i][j] = trace(L_{b_i b_j}).
    """
    n = a.dim
    if n == 0:
        return Subspace.zero(0)
    gram = MatQ(tuple(
        tuple(a.trace(a.table[i][j]) for j in range(n)) for i in range(n)
    ))
    return Subspace.from_rows(n, left_kernel(gram).rows)


def semisimple_quotient(a: StructureAlgebra, *, name: str | None = None) -> tuple[StructureAlgebra, MatQ]:
    """A / rad(A) with the projection matrix."""
    rad = radical(a)
    return quotient_algebra_by_subspace(a, rad, name=name or f"{a.name}.ss")


# -- split status -------------------------------------------------------------------


@dataclass(frozen=True)
class SplitStatus:
    """Resolution of the division part of a simple component.

    kind is one of "split" (component is a matrix ring over its centre),
    "quaternion_division", or "unknown". Certificates: matrix units come as
    orthogonal idempotents in component coordinates when the zero-divisor
    search succeeded; quaternion decisions carry the ramified places of the
    associated (a, b) pair.
    """

    kind: str
    matrix_size: int | None = None
    budget: int | None = None
    note: str = ""
    places: tuple = ()
    idempotents: tuple[Vec, ...] = ()

    @staticmethod
    def split(n: int, *, note: str = "", idempotents: tuple[Vec, ...] = ()) -> "SplitStatus":
        return SplitStatus("split", matrix_size=n, note=note, idempotents=idempotents)

    @staticmethod
    def quaternion_division(places: Iterable, *, note: str = "") -> "SplitStatus":
        return SplitStatus("quaternion_division", matrix_size=1, note=note,
                           places=tuple(places))

    @staticmethod
    def unknown(budget: int, *, note: str = "") -> "SplitStatus":
        return SplitStatus("unknown", budget=budget, note=note)

    @property
    def is_split(self) -> bool:
        return self.kind == "split"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"


@dataclass(frozen=True)
class SimpleComponent:
    """One simple block of a semisimple algebra.

    `algebra` carries the restricted structure constants in block
    coordinates; `block_rows` maps block coordinates back into the parent
    (one parent-coordinate row per block basis vector); `idempotent` is the
    block's central idempotent in parent coordinates.
    """

    algebra: StructureAlgebra
    centre_dim: int
    reduced_degree: int
    split_status: SplitStatus
    idempotent: Vec
    block_rows: MatQ

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def matrix_size(self) -> int | None:
        return self.split_status.matrix_size

    def to_parent(self, coords: Sequence) -> Vec:
        return row_times_mat(coords, self.block_rows)

    def subspace(self) -> Subspace:
        return Subspace.from_rows(self.block_rows.ncols, self.block_rows.rows)


@dataclass(frozen=True)
class SemisimpleDecomposition:
    parent: StructureAlgebra
    central_idempotents: tuple[Vec, ...]
    components: tuple[SimpleComponent, ...]

    def __len__(self) -> int:
        return len(self.components)


def _centre_candidates(dim: int, seed: int):
    """Deterministic stream of nonzero integer coefficient vectors."""
    for i in range(dim):
        yield tuple(1 if j == i else 0 for j in range(dim))
    if dim > 1:
        for combo in itertools.product((-1, 0, 1), repeat=dim):
            if any(combo) and combo > tuple(-x for x in combo):
                yield combo
    rng = random.Random(seed)
    bound = 2
    count = 0
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if any(v):
            yield v
        count += 1
        if count % 50 == 0:
            bound += 1


def _crt_idempotents(b: StructureAlgebra, z: Vec, factors: list[tuple[PolyQ, int]]) -> list[Vec]:
    """Orthogonal idempotents from the factored minimal polynomial of z."""
    m = PolyQ.one()
    for f, mult in factors:
        m = m * f ** mult
    out = []
    for f, mult in factors:
        fi = f ** mult
        hi = m // fi
        # u_i = h_i^{-1} mod f_i^{mult}
        d, s, _ = poly_xgcd(hi, fi)
        assert d.degree == 0
        u = (s.scale(1 / d.coeffs[0])) % fi
        g = (hi * u) % m
        out.append(_eval_poly_at(b, g, z))
    return out


def _eval_poly_at(b: StructureAlgebra, p: PolyQ, z: Vec) -> Vec:
    """Evaluate p(z) inside b, sending the constant term to the block unit."""
    out = tuple(Fraction(0) for _ in range(b.dim))
    power = b.unit
    for c in p.coeffs:
        if c:
            out = tuple(o + c * w for o, w in zip(out, power))
        power = b.mul(power, z)
    return out


def _image_rows(op: MatQ) -> MatQ:
    """Row basis of the image of a column-convention operator."""
    res = rref(op.transpose())
    return MatQ(res.matrix.rows[: res.rank])


def decompose(a: StructureAlgebra, *, seed: int = 0) -> SemisimpleDecomposition:
    """Split a semisimple algebra into simple blocks via its centre.

    Components come back in canonical order: by dimension, then by
    lexicographic comparison of the central idempotents.
    """
    rad = radical(a)
    if rad.dim:
        raise NotSemisimple(rad)
    if a.dim == 0:
        return SemisimpleDecomposition(a, (), ())

    finished: list[tuple[Vec, MatQ, StructureAlgebra, int]] = []
    queue: list[tuple[Vec, MatQ]] = [(a.unit, MatQ.identity(a.dim))]
    while queue:
        unit_vec, rows = queue.pop()
        block = induced_algebra(a, rows, name=f"{a.name}.blk", unit_hint=unit_vec)
        z_sub = centre(block)
        c = z_sub.dim
        if c == 1:
            finished.append((unit_vec, rows, block, 1))
            continue
        split_found = False
        certified_field = False
        for tries, combo in enumerate(_centre_candidates(c, seed)):
            if tries >= DECOMPOSE_CANDIDATE_CAP:
                raise RuntimeError(
                    "centre splitting failed to certify a field within the candidate cap"
                )
            z = row_times_mat(combo, z_sub.basis)
            mp = block.minimal_polynomial(z)
            factors = factor_rational_poly(mp)
            if len(factors) > 1:
                idems = _crt_idempotents(block, z, factors)
                for e in idems:
                    e_rows = _image_rows(block.left_mult_op(e))
                    lifted_rows = MatQ(tuple(row_times_mat(r, rows) for r in e_rows.rows))
                    lifted_unit = row_times_mat(e, rows)
                    queue.append((lifted_unit, lifted_rows))
                split_found = True
                break
            if factors and factors[0][1] == 1 and factors[0][0].degree == c:
                certified_field = True
                break
        if split_found:
            continue
        assert certified_field
        finished.append((unit_vec, rows, block, c))

    components = []
    for unit_vec, rows, block, c in finished:
        d = block.dim
        m = isqrt(d // c)
        assert m * m * c == d, "component dimension must be centre_dim * square"
        status = SplitStatus.split(1) if m == 1 else SplitStatus.unknown(0, note="unresolved")
        components.append(SimpleComponent(
            algebra=block,
            centre_dim=c,
            reduced_degree=m,
            split_status=status,
            idempotent=unit_vec,
            block_rows=rows,
        ))
    components.sort(key=lambda comp: (comp.dim, comp.idempotent))
    # consistency: orthogonality and completeness of the idempotents
    total = tuple(Fraction(0) for _ in range(a.dim))
    for comp in components:
        total = tuple(x + y for x, y in zip(total, comp.idempotent))
        assert a.mul(comp.idempotent, comp.idempotent) == comp.idempotent
    assert total == a.unit
    for i, ci in enumerate(components):
        for j, cj in enumerate(components):
            if i != j:
                assert all(x == 0 for x in a.mul(ci.idempotent, cj.idempotent))
    return SemisimpleDecomposition(a, tuple(c.idempotent for c in components),
                                   tuple(components))


# -- zero-divisor search and split resolution ---------------------------------------


def _candidate_elements(b: StructureAlgebra, seed: int):
    """Deterministic stream of integer elements of b for the splitting search."""
    n = b.dim
    for i in range(n):
        yield b.basis_vec(i)
    for i in range(n):
        for j in range(i + 1, n):
            yield tuple(x + y for x, y in zip(b.basis_vec(i), b.basis_vec(j)))
            yield tuple(x - y for x, y in zip(b.basis_vec(i), b.basis_vec(j)))
    rng = random.Random(seed)
    bound = 1
    count = 0
    while True:
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
        if any(v):
            yield v
        count += 1
        if count % 40 == 0:
            bound += 1


def _find_zero_divisor(b: StructureAlgebra, budget: int, seed: int) -> tuple[Vec | None, int]:
    """A nonzero non-invertible element of b, or None when budget runs out.

    Looks for elements with reducible minimal polynomial; if p = f*g with f
    irreducible, f evaluated at the element is a zero divisor. Returns the
    witness and the budget spent.
    """
    spent = 0
    for cand in _candidate_elements(b, seed):
        if spent >= budget:
            return None, spent
        spent += 1
        mp = b.minimal_polynomial(cand)
        if mp.degree <= 1:
            continue
        factors = factor_rational_poly(mp)
        if len(factors) == 1 and factors[0][1] == 1:
            continue
        f, _mult = factors[0]
        z = _eval_poly_at(b, f, cand)
        if any(z):
            return z, spent
    return None, spent


def _idempotent_from_left_ideal(b: StructureAlgebra, z: Vec) -> Vec:
    """The idempotent generator of the left ideal b*z (b semisimple)."""
    ideal_rows = _image_rows(b.right_mult_op(z))
    k = ideal_rows.nrows
    system = []
    for t in range(k):
        row = []
        for i in range(k):
            row.extend(b.mul(ideal_rows.rows[i], ideal_rows.rows[t]))
        system.append(tuple(row))
    want = []
    for i in range(k):
        want.extend(ideal_rows.rows[i])
    coeffs = solve_row(MatQ(tuple(system)), want)
    assert coeffs is not None, "semisimple left ideal must have an idempotent generator"
    e = row_times_mat(coeffs, ideal_rows)
    assert b.mul(e, e) == e
    return e


def _corner_rows(b: StructureAlgebra, f: Vec) -> MatQ:
    """Row basis of the corner f*b*f."""
    rows = []
    for i in range(b.dim):
        rows.append(b.mul(b.mul(f, b.basis_vec(i)), f))
    res = rref(MatQ(tuple(rows)))
    return MatQ(res.matrix.rows[: res.rank])


def _quaternion_invariants(b: StructureAlgebra) -> tuple[Fraction, Fraction]:
    """Standard-form parameters (alpha, beta) of a dim-4 central simple Q-algebra.

    Finds trace-zero u, v with u^2 = alpha, v^2 = beta, uv = -vu; then the
    algebra is determined by the Hilbert symbols of (alpha, beta). The
    searches always succeed on small integer boxes: the norm form on the
    trace-zero space is nondegenerate, and a quadratic form vanishing on
    all of {-1,0,1}^dim vanishes identically.
    """
    n = b.dim
    assert n == 4
    # trace-zero subspace of the regular representation
    tr_rows = MatQ((tuple(b.trace(b.basis_vec(i)) for i in range(n)),))
    v_basis = left_kernel(tr_rows.transpose())
    assert v_basis.nrows == 3
    u = None
    alpha = None
    for combo in itertools.product((-1, 0, 1), repeat=3):
        if not any(combo):
            continue
        cand = row_times_mat(combo, v_basis)
        scal = _as_scalar(b, b.mul(cand, cand))
        assert scal is not None, "square of a trace-zero element must be scalar"
        if scal != 0:
            u, alpha = cand, scal
            break
    assert u is not None and alpha is not None
    # orthogonal complement of u in V under the form x*y + y*x
    conditions = []
    for row in v_basis.rows:
        anti = tuple(p + q for p, q in zip(b.mul(u, row), b.mul(row, u)))
        conditions.append(anti)
    rel = left_kernel(MatQ(tuple(conditions)))
    assert rel.nrows == 2
    v = None
    beta = None
    for combo_coeffs in itertools.product((-1, 0, 1), repeat=2):
        if not any(combo_coeffs):
            continue
        mix = row_times_mat(combo_coeffs, rel)
        cand = row_times_mat(mix, v_basis)
        sq = _as_scalar(b, b.mul(cand, cand))
        assert sq is not None
        if sq != 0:
            v, beta = cand, sq
            break
    assert v is not None and beta is not None
    anti = tuple(p + q for p, q in zip(b.mul(u, v), b.mul(v, u)))
    assert all(x == 0 for x in anti)
    return alpha, beta


def _as_scalar(b: StructureAlgebra, x: Vec) -> Fraction | None:
    coeffs = solve_row(MatQ((b.unit,)), x)
    return coeffs[0] if coeffs is not None else None


def resolve_split_status(component: SimpleComponent, budget: int, *, seed: int = 0) -> SimpleComponent:
    """Decide whether a simple component is a matrix ring over its centre.

    Commutative components are certified immediately; dim-4 components with
    rational centre are decided exactly through Hilbert symbols; everything
    else runs a budgeted zero-divisor search that peels off orthogonal
    idempotents until every corner collapses onto the centre. Components
    that resist (division parts of reduced degree >= 3, or matrix rings
    over quaternion division algebras) come back Unknown: no guessing.
    """
    if component.split_status.kind != "unknown":
        return component
    b = component.algebra
    c = component.centre_dim
    m = component.reduced_degree
    if m == 1:
        return replace(component, split_status=SplitStatus.split(1))
    if m == 2 and c == 1:
        alpha, beta = _quaternion_invariants(b)
        places = ramified_places(alpha, beta)
        if places:
            return replace(component, split_status=SplitStatus.quaternion_division(
                places, note=f"({alpha},{beta}) ramified"))
        # split by symbols; look for explicit matrix units within budget
        status = _peel_matrix_units(component, budget, seed)
        if status.is_unknown:
            status = SplitStatus.split(2, note=f"({alpha},{beta}) unramified; units not located")
        return replace(component, split_status=status)
    return replace(component, split_status=_peel_matrix_units(component, budget, seed))


def _peel_matrix_units(component: SimpleComponent, budget: int, seed: int) -> SplitStatus:
    """Peel orthogonal idempotents until corners certify, within budget."""
    b = component.algebra
    c = component.centre_dim
    m = component.reduced_degree
    idempotents: list[Vec] = [b.unit]
    remaining = budget
    progress = True
    while progress:
        if all(_corner_dim(b, f) == c for f in idempotents):
            n = len(idempotents)
            assert n == m, "fully peeled component must expose reduced_degree idempotents"
            return SplitStatus.split(n, idempotents=tuple(idempotents),
                                     note="zero-divisor search")
        progress = False
        for pos, f in enumerate(list(idempotents)):
            corner_rows = _corner_rows(b, f)
            if corner_rows.nrows == c:
                continue
            corner = induced_algebra(b, corner_rows, name=f"{b.name}.corner",
                                     unit_hint=f)
            # a dim-4 rational corner is decided by Hilbert symbols before
            # any search budget is spent on it
            if c == 1 and corner.dim == 4:
                alpha, beta = _quaternion_invariants(corner)
                places = ramified_places(alpha, beta)
                if places:
                    if len(idempotents) == 1:
                        return SplitStatus.quaternion_division(
                            places, note=f"({alpha},{beta}) ramified")
                    return SplitStatus.unknown(
                        budget,
                        note="matrix ring over a quaternion division algebra; "
                             "outside the certificate vocabulary",
                    )
            z_local, spent = _find_zero_divisor(corner, remaining, seed)
            remaining -= spent
            if z_local is None:
                return SplitStatus.unknown(budget, note="budget exhausted")
            e_local = _idempotent_from_left_ideal(corner, z_local)
            e = row_times_mat(e_local, corner_rows)
            f_minus_e = tuple(x - y for x, y in zip(f, e))
            assert any(e) and any(f_minus_e)
            idempotents[pos:pos + 1] = [e, f_minus_e]
            progress = True
            break
    return SplitStatus.unknown(budget, note="no further splitting found")


def _corner_dim(b: StructureAlgebra, f: Vec) -> int:
    return _corner_rows(b, f).nrows


def resolve_all(dec: SemisimpleDecomposition, budget: int, *, seed: int = 0) -> SemisimpleDecomposition:
    comps = tuple(resolve_split_status(c, budget, seed=seed) for c in dec.components)
    return replace(dec, components=comps)


# -- operator algebras and modules ---------------------------------------------------


@dataclass(frozen=True)
class OperatorAlgebra:
    """Unital multiplication-closed span of square matrices."""

    module_dim: int
    generators: tuple[MatQ, ...]
    spanned: Subspace  # of the d*d matrix space, row-major vectorization

    @property
    def dim(self) -> int:
        return self.spanned.dim

    def basis_matrices(self) -> tuple[MatQ, ...]:
        d = self.module_dim
        return tuple(mat_unvec(r, d, d) for r in self.spanned.basis.rows)


def operator_algebra(gens: Sequence[MatQ], module_dim: int | None = None) -> OperatorAlgebra:
    """Smallest unital multiplication-closed subspace containing the generators."""
    if gens:
        d = gens[0].nrows
        for g in gens:
            if g.shape != (d, d):
                raise DimensionMismatch("generators must be square and equal-sized")
    else:
        if module_dim is None:
            raise DimensionMismatch("module_dim required when no generators are given")
        d = module_dim
    if module_dim is not None and module_dim != d:
        raise DimensionMismatch("module_dim disagrees with generator size")
    rows = [mat_vec_of(MatQ.identity(d))] + [mat_vec_of(g) for g in gens]
    span = Subspace.from_rows(d * d, rows)
    while True:
        mats = [mat_unvec(r, d, d) for r in span.basis.rows]
        new_rows = list(span.basis.rows)
        for x in mats:
            for y in mats:
                new_rows.append(mat_vec_of(x * y))
        bigger = Subspace.from_rows(d * d, new_rows)
        if bigger.dim == span.dim:
            break
        span = bigger
    return OperatorAlgebra(d, tuple(gens), span)


def matrices_to_algebra(mats: Sequence[MatQ], *, name: str) -> tuple[StructureAlgebra, tuple[MatQ, ...]]:
    """Structure algebra of an independent list of matrices closed under products.

    The identity must lie in the span (it becomes the unit).
    """
    if not mats:
        raise DimensionMismatch("empty matrix basis")
    d = mats[0].nrows
    solver = RowSolver(MatQ(tuple(mat_vec_of(m) for m in mats)))
    table = []
    for x in mats:
        row = []
        for y in mats:
            coords = solver.solve(mat_vec_of(x * y))
            if coords is None:
                raise DimensionMismatch("matrix list not closed under products")
            row.append(coords)
        table.append(tuple(row))
    unit_coords = solver.solve(mat_vec_of(MatQ.identity(d)))
    if unit_coords is None:
        raise DimensionMismatch("identity matrix outside the span")
    alg = StructureAlgebra(
        name, tuple(f"m{i}" for i in range(len(mats))), unit_coords,
        tuple(table),
    )
    return alg, tuple(mats)


def spanned_algebra(e: OperatorAlgebra, *, name: str = "spanned") -> tuple[StructureAlgebra, tuple[MatQ, ...]]:
    return matrices_to_algebra(e.basis_matrices(), name=name)


def commutant_matrices(e: OperatorAlgebra) -> tuple[MatQ, ...]:
    """Basis of {X : XG = GX for all generators G}."""
    d = e.module_dim
    eye = MatQ.identity(d)
    blocks = []
    for g in e.generators:
        blocks.append(kron(eye, g) - kron(g.transpose(), eye))
    if not blocks:
        return tuple(mat_unvec(r, d, d) for r in Subspace.full(d * d).basis.rows)
    stacked = mat_hstack(*blocks)
    rows = left_kernel(stacked)
    sub = Subspace.from_rows(d * d, rows.rows)
    return tuple(mat_unvec(r, d, d) for r in sub.basis.rows)


def commutant(e: OperatorAlgebra, *, name: str = "commutant") -> StructureAlgebra:
    mats = commutant_matrices(e)
    alg, _ = matrices_to_algebra(mats, name=name)
    return alg


@dataclass(frozen=True)
class IsotypicPart:
    subspace: Subspace
    component: SimpleComponent
    image_dim: int


def isotypic_split(e: OperatorAlgebra, module_dim: int | None = None, *, seed: int = 0) -> tuple[IsotypicPart, ...]:
    """Isotypic decomposition of the module under a semisimple action."""
    d = e.module_dim
    if module_dim is not None and module_dim != d:
        raise DimensionMismatch("module_dim disagrees with the operator algebra")
    alg, mats = spanned_algebra(e)
    rad = radical(alg)
    if rad.dim:
        raise NotSemisimpleAction("the spanned operator algebra has nonzero radical")
    dec = decompose(alg, seed=seed)
    parts = []
    covered = 0
    for comp in dec.components:
        e_mat = _coords_to_matrix(comp.idempotent, mats)
        image = Subspace.from_rows(d, e_mat.transpose().rows)
        assert image.dim > 0, "a nonzero idempotent matrix has nonzero image"
        parts.append(IsotypicPart(image, comp, image.dim))
        covered += image.dim
    assert covered == d, "isotypic images must fill the module"
    return tuple(parts)


def _coords_to_matrix(coords: Sequence, mats: Sequence[MatQ]) -> MatQ:
    d = mats[0].nrows
    out = MatQ.zeros(d, d)
    for c, m in zip(coords, mats):
        if c:
            out = out + m.scale(c)
    return out


def restrict_op(op: MatQ, w: Subspace) -> MatQ:
    """Matrix of a column-convention operator restricted to an invariant subspace."""
    cols = []
    for row in w.basis.rows:
        image = op_apply(op, row)
        if not w.contains_vec(image):
            raise NotInvariant("operator does not preserve the subspace")
        cols.append(w.coords_of(image))
    k = w.dim
    return MatQ(tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))


@dataclass(frozen=True)
class SimplicityResult:
    kind: str  # "simple" | "not_simple" | "unknown"
    witness: Subspace | None = None
    note: str = ""
    budget: int | None = None

    @property
    def is_simple(self) -> bool:
        return self.kind == "simple"


def certify_simple_module(e: OperatorAlgebra, w: Subspace, budget: int, *, seed: int = 0) -> SimplicityResult:
    """Decide simplicity of an invariant subspace under the generated action.

    NotSimple witnesses are proper nonzero invariant subspaces in ambient
    module coordinates. Simplicity certificates go through the commutant:
    a field (or certified quaternion-division) commutant of an isotypically
    homogeneous semisimple module forces simplicity.
    """
    if w.ambient != e.module_dim:
        raise DimensionMismatch("subspace ambient vs module dim")
    if w.dim == 0:
        return SimplicityResult("not_simple", witness=w, note="zero module")
    restricted = [restrict_op(g, w) for g in e.generators]
    sub_action = operator_algebra(restricted, module_dim=w.dim)
    alg, mats = spanned_algebra(sub_action)
    rad = radical(alg)
    if rad.dim:
        # rad * W is invariant, nonzero (the action on W is faithful by
        # construction) and proper (the radical is nilpotent)
        witness_rows = []
        for r in rad.basis.rows:
            r_mat = _coords_to_matrix(r, mats)
            for local_row in r_mat.transpose().rows:
                witness_rows.append(row_times_mat(local_row, w.basis))
        witness = Subspace.from_rows(w.ambient, witness_rows)
        assert 0 < witness.dim < w.dim
        return SimplicityResult(
            "not_simple",
            witness=witness,
            note="restricted action is not semisimple",
        )
    parts = isotypic_split(sub_action, seed=seed)
    if len(parts) > 1:
        local = parts[0].subspace
        witness = Subspace.from_rows(
            w.ambient, [row_times_mat(r, w.basis) for r in local.basis.rows]
        )
        return SimplicityResult("not_simple", witness=witness,
                                note="multiple isotypic components")
    comm_mats = commutant_matrices(sub_action)
    comm_alg, _ = matrices_to_algebra(comm_mats, name="End")
    comm_dec = decompose(comm_alg, seed=seed)
    assert len(comm_dec.components) == 1, "isotypic module has simple commutant"
    comp = resolve_split_status(comm_dec.components[0], budget, seed=seed)
    status = comp.split_status
    if status.kind == "split" and status.matrix_size == 1:
        return SimplicityResult("simple", note="commutant is a field")
    if status.kind == "quaternion_division":
        return SimplicityResult("simple", note="commutant is quaternion division")
    if status.kind == "split":
        idem = status.idempotents[0] if status.idempotents else None
        if idem is None:
            return SimplicityResult("unknown", budget=budget,
                                    note="split commutant without explicit idempotent")
        idem_parent = comp.to_parent(idem)
        e_mat = _coords_to_matrix(idem_parent, comm_mats)
        local = Subspace.from_rows(w.dim, e_mat.transpose().rows)
        witness = Subspace.from_rows(
            w.ambient, [row_times_mat(r, w.basis) for r in local.basis.rows]
        )
        return SimplicityResult("not_simple", witness=witness,
                                note="commutant contains a proper idempotent")
    return SimplicityResult("unknown", budget=budget, note=status.note)
