"""Embeddings of orders into semisimple algebras, and their minimization.

An Embedding is an injective unital ring morphism from a Z-order R into a
semisimple rational algebra, recorded as the matrix of lattice-basis images.
The pipeline takes such an embedding apart and rebuilds a smaller one:

* reduce_redundant drops codomain components not needed for injectivity and
  certifies the projection;
* bimodule_ladder splits one component A_i into simple (R, A_i)-bimodule
  summands; their left annihilators in R are minimal primes;
* minimize_step keeps an irredundant family of summands, forms the product
  of their endomorphism rings B, and certifies the reduction with two
  commuting morphisms: a monomorphism from the full summand product back
  into the codomain, and the projection onto the kept part;
* classify decides the natural and elementary properties per prime, and
  minimize_to_elementary iterates reduction steps to the elementary fixpoint.

All claims ship with checkable witnesses: morphism certificates are matrices
re-verified entry by entry, annihilators are saturated integer lattices, and
simplicity always comes from certify_simple_module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .algebra import (
    LatticeIdeal,
    OrderRing,
    StructureAlgebra,
    algebra_to_doc,
    build_ideal,
    is_regular,
    left_annihilator,
    load_algebra,
    load_order,
    order_to_doc,
    quotient_by_ideal,
    right_annihilator,
    two_sided_ideal_subspace,
)
from .errors import (
    DimensionMismatch,
    DomainNotSemiprime,
    NotElementary,
    NotIrredundant,
    NotNatural,
    NotRegular,
    NotSemiprime,
    NotSemisimple,
    ParseError,
    UnmatchedComponents,
    UnresolvedSimplicity,
)
from .linalg import (
    Lattice,
    MatQ,
    RowSolver,
    Subspace,
    Vec,
    inverse,
    lattice_intersect_subspace,
    left_kernel,
    mat_vec_of,
    op_apply,
    rank,
    row_times_mat,
    solve_row,
    vec,
)
from .wedderburn import (
    SemisimpleDecomposition,
    SimpleComponent,
    SimplicityResult,
    certify_simple_module,
    commutant_matrices,
    decompose,
    isotypic_split,
    matrices_to_algebra,
    operator_algebra,
    radical,
    resolve_split_status,
    restrict_op,
    semisimple_quotient,
)


# -- embedding records --------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """An injective unital ring morphism from an order into a semisimple algebra.

    `map` has one row per domain lattice basis vector, in the coordinates of
    `codomain.parent`. `component_assignment`, when present, names the index
    of the minimal prime of the domain matched to each codomain component.
    """

    domain: OrderRing
    codomain: SemisimpleDecomposition
    map: MatQ
    component_assignment: tuple[int, ...] | None = None

    @property
    def codomain_dim(self) -> int:
        return self.codomain.parent.dim

    def image_of(self, coords: Sequence) -> Vec:
        return row_times_mat(vec(coords), self.map)


def _check_ring_map(src: StructureAlgebra, dst: StructureAlgebra, m: MatQ) -> None:
    if m.shape != (src.dim, dst.dim):
        raise DimensionMismatch(
            f"map shape {m.shape} vs source dim {src.dim}, target dim {dst.dim}"
        )
    if row_times_mat(src.unit, m) != dst.unit:
        raise ParseError("map does not send the unit to the unit")
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = row_times_mat(src.table[i][j], m)
            rhs = dst.mul(m.row(i), m.row(j))
            if lhs != rhs:
                raise ParseError(
                    f"map is not multiplicative at basis pair ({i}, {j})"
                )


def build_embedding(
    domain: OrderRing,
    codomain: SemisimpleDecomposition,
    map_rows,
    *,
    assignment: tuple[int, ...] | None = None,
) -> Embedding:
    """Validate and freeze an embedding record.

    Checks the unital and multiplicative laws on all basis pairs and the
    injectivity of the matrix; raises ParseError with the failing detail.
    """
    m = map_rows if isinstance(map_rows, MatQ) else MatQ.from_rows(map_rows)
    _check_ring_map(domain.coord_algebra, codomain.parent, m)
    if rank(m) != domain.rank:
        raise ParseError("embedding map has a nonzero kernel")
    if assignment is not None and len(assignment) != len(codomain.components):
        raise DimensionMismatch("component assignment length vs component count")
    return Embedding(domain, codomain, m, assignment)


def _component_coords(parent: StructureAlgebra, comp: SimpleComponent, v: Sequence) -> Vec:
    projected = parent.mul(vec(v), comp.idempotent)
    coords = solve_row(comp.block_rows, projected)
    assert coords is not None, "central projection lands in its own block"
    return coords


def canonical_embedding(order: OrderRing, *, seed: int = 0) -> Embedding:
    """The inclusion of R into its own rational span, in lattice coordinates."""
    try:
        dec = decompose(order.coord_algebra, seed=seed)
    except NotSemisimple as exc:
        raise NotSemiprime(witness=_nilpotent_witness(order, exc)) from exc
    return build_embedding(
        order, dec, MatQ.identity(order.rank),
        assignment=tuple(range(len(dec.components))),
    )


def load_embedding(
    doc: dict,
    *,
    resolver: Callable[[str], dict] | None = None,
    full_assoc_check: bool = False,
    seed: int = 0,
) -> Embedding:
    """Build an embedding from its document.

    The document carries the domain order (inline or as a string reference
    resolved through `resolver`), the list of simple codomain components,
    and the map rows in concatenated component coordinates. Rationals are
    "p/q" strings.
    """

    def resolve(ref) -> dict:
        if isinstance(ref, str):
            if resolver is None:
                raise ParseError(f"reference {ref!r} given without a resolver")
            return resolver(ref)
        return ref

    if "domain" not in doc or "codomain" not in doc or "map" not in doc:
        raise ParseError("embedding document needs domain, codomain and map")
    domain = load_order(resolve(doc["domain"]), full_assoc_check=full_assoc_check, seed=seed)
    entries = doc["codomain"]
    if not entries:
        raise ParseError("embedding codomain list is empty")
    parts = []
    names = []
    for ent in entries:
        alg = load_algebra(resolve(ent), full_assoc_check=full_assoc_check, seed=seed)
        try:
            dec = decompose(alg, seed=seed)
        except NotSemisimple as exc:
            raise ParseError(f"codomain entry {alg.name!r} is not semisimple") from exc
        if len(dec.components) != 1:
            raise ParseError(f"codomain entry {alg.name!r} is not simple")
        comp = dec.components[0]
        parts.append((alg, comp.centre_dim, comp.reduced_degree, comp.split_status))
        names.append(alg.name)
    codomain = _product_decomposition(parts, name=" x ".join(names))
    try:
        rows = [[Fraction(str(x)) for x in row] for row in doc["map"]]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed map entry: {exc}") from exc
    return build_embedding(domain, codomain, MatQ.from_rows(rows))


def embedding_to_doc(
    emb: Embedding,
    *,
    name: str | None = None,
    domain_ref: str | None = None,
    codomain_refs: Sequence[str] | None = None,
) -> dict:
    """Document of an embedding, map rows in concatenated component coordinates."""
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    doc["domain"] = domain_ref if domain_ref is not None else order_to_doc(emb.domain)
    if codomain_refs is not None:
        doc["codomain"] = list(codomain_refs)
    else:
        doc["codomain"] = [algebra_to_doc(c.algebra) for c in emb.codomain.components]
    parent = emb.codomain.parent
    rows = []
    for t in range(emb.domain.rank):
        row: list[str] = []
        for comp in emb.codomain.components:
            row.extend(str(x) for x in _component_coords(parent, comp, emb.map.row(t)))
        rows.append(row)
    doc["map"] = rows
    return doc


# -- minimal primes -----------------------------------------------------------------


def _primitive_integer(row: Sequence) -> tuple[int, ...]:
    fracs = [Fraction(x) for x in row]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints) if any(ints) else 1
    lead = next((x for x in ints if x), 1)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


def _nilpotent_witness(order: OrderRing, exc: NotSemisimple) -> tuple[int, ...]:
    rad = exc.radical
    assert rad is not None and rad.dim > 0
    witness = _primitive_integer(rad.basis.rows[0])
    alg = order.coord_algebra
    power = vec(witness)
    for _ in range(alg.dim):
        power = alg.mul(power, vec(witness))
    assert not any(power), "radical witness must be nilpotent"
    return witness


def minimal_primes(order: OrderRing, *, seed: int = 0) -> tuple[LatticeIdeal, ...]:
    """Kernels of the projections of R onto the simple blocks of its span.

    Each returned ideal is saturated (the quotient is torsion-free), the
    family intersects to zero, and no member can be dropped; this is checked
    before returning. Non-semiprime input raises NotSemiprime carrying an
    integer nilpotent witness.
    """
    try:
        dec = decompose(order.coord_algebra, seed=seed)
    except NotSemisimple as exc:
        raise NotSemiprime(witness=_nilpotent_witness(order, exc)) from exc
    n = order.rank
    primes = []
    for i in range(len(dec.components)):
        others = Subspace.zero(n)
        for j, comp in enumerate(dec.components):
            if j != i:
                others = others.add(comp.subspace())
        lat = lattice_intersect_subspace(Lattice.standard(n), others)
        ideal = build_ideal(order, lat.basis, verify=True)
        assert ideal.saturated
        primes.append(ideal)
    spans = [p.span() for p in primes]
    total = Subspace.full(n)
    for s in spans:
        total = total.intersect(s)
    assert total.dim == 0, "minimal primes must intersect to zero"
    if len(primes) > 1:
        for i in range(len(primes)):
            rest = Subspace.full(n)
            for j, s in enumerate(spans):
                if j != i:
                    rest = rest.intersect(s)
            assert rest.dim > 0, "minimal prime family must be irredundant"
    return tuple(primes)


def is_prime_lattice_ideal(order: OrderRing, ideal: LatticeIdeal, *, seed: int = 0) -> bool:
    """True iff the quotient by the ideal is an order in a simple algebra."""
    if not ideal.saturated:
        return False
    if ideal.rank == order.rank:
        return False
    quotient = quotient_by_ideal(order, ideal)
    try:
        dec = decompose(quotient.order.coord_algebra, seed=seed)
    except NotSemisimple:
        return False
    return len(dec.components) == 1


# -- morphism certificates ------------------------------------------------------------


@dataclass(frozen=True)
class MorphismCertificate:
    """A morphism between two embeddings of the same order.

    `alpha` maps the source codomain into the target codomain (one row per
    source parent basis vector) and must satisfy target = alpha after source
    on every lattice basis vector.
    """

    source: Embedding
    target: Embedding
    alpha: MatQ
    kind: str  # "epi" | "mono" | "iso"


def identity_certificate(f: Embedding) -> MorphismCertificate:
    return MorphismCertificate(f, f, MatQ.identity(f.codomain_dim), "iso")


def verify_morphism(
    cert: MorphismCertificate, *, natural_endpoints: bool = False
) -> tuple[bool, dict]:
    """Re-check a morphism certificate entry by entry.

    Returns (ok, diagnostics). The diagnostics name the first failing basis
    pair or lattice basis vector. With natural_endpoints=True the morphism
    is additionally required to be injective, which must hold whenever both
    endpoints are natural embeddings.
    """
    src = cert.source.codomain.parent
    dst = cert.target.codomain.parent
    diag: dict = {
        "shape": cert.alpha.shape == (src.dim, dst.dim),
        "unital": False,
        "multiplicative": True,
        "triangle": True,
        "kind": False,
        "rank": None,
    }
    if not diag["shape"]:
        return False, diag
    diag["unital"] = row_times_mat(src.unit, cert.alpha) == dst.unit
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = row_times_mat(src.table[i][j], cert.alpha)
            rhs = dst.mul(cert.alpha.row(i), cert.alpha.row(j))
            if lhs != rhs:
                diag["multiplicative"] = False
                diag["failing_pair"] = (i, j)
                break
        if not diag["multiplicative"]:
            break
    for t in range(cert.source.domain.rank):
        if row_times_mat(cert.source.map.row(t), cert.alpha) != cert.target.map.row(t):
            diag["triangle"] = False
            diag["failing_basis_index"] = t
            break
    r = rank(cert.alpha)
    diag["rank"] = r
    if cert.kind == "epi":
        diag["kind"] = r == dst.dim
    elif cert.kind == "mono":
        diag["kind"] = r == src.dim
    elif cert.kind == "iso":
        diag["kind"] = src.dim == dst.dim and r == src.dim
    if natural_endpoints:
        diag["natural_mono"] = r == src.dim
    ok = all(
        diag[key] for key in
        ("shape", "unital", "multiplicative", "triangle", "kind")
    )
    if natural_endpoints:
        ok = ok and diag["natural_mono"]
    return ok, diag


# -- redundancy reduction -------------------------------------------------------------


@dataclass(frozen=True)
class ReduceResult:
    embedding: Embedding
    dropped: tuple[int, ...]
    certificate: MorphismCertificate


def _projected_map(f: Embedding, keep: Sequence[int]) -> MatQ:
    parent = f.codomain.parent
    rows = []
    for t in range(f.domain.rank):
        row: list[Fraction] = []
        for i in keep:
            row.extend(_component_coords(parent, f.codomain.components[i], f.map.row(t)))
        rows.append(tuple(row))
    return MatQ(tuple(rows))


def project_embedding(f: Embedding, keep: Sequence[int]) -> tuple[Embedding, MorphismCertificate]:
    """Compose with the projection onto a component subfamily.

    The kept family must preserve injectivity; the certified projection is
    returned alongside the projected embedding.
    """
    keep = tuple(keep)
    if not keep or sorted(set(keep)) != list(keep):
        raise DimensionMismatch("keep must be a nonempty strictly increasing index list")
    comps = [f.codomain.components[i] for i in keep]
    parts = [(c.algebra, c.centre_dim, c.reduced_degree, c.split_status) for c in comps]
    dec = _product_decomposition(parts, name=f"{f.codomain.parent.name}.proj")
    parent = f.codomain.parent
    pr_rows = []
    for k in range(parent.dim):
        basis_vec = parent.basis_vec(k)
        row: list[Fraction] = []
        for comp in comps:
            row.extend(_component_coords(parent, comp, basis_vec))
        pr_rows.append(tuple(row))
    pr = MatQ(tuple(pr_rows))
    new_map = MatQ(tuple(row_times_mat(f.map.row(t), pr) for t in range(f.domain.rank)))
    assignment = None
    if f.component_assignment is not None:
        assignment = tuple(f.component_assignment[i] for i in keep)
    emb = build_embedding(f.domain, dec, new_map, assignment=assignment)
    cert = MorphismCertificate(f, emb, pr, "epi")
    ok, diag = verify_morphism(cert)
    assert ok, f"projection certificate failed: {diag}"
    return emb, cert


def reduce_redundant(f: Embedding) -> ReduceResult:
    """Drop codomain components until no single component can be removed.

    Components are tried from the last index down, so the kept family is the
    lexicographically earliest one the greedy pass can reach. The result is
    certified irredundant: removing any remaining component is re-checked to
    kill injectivity.
    """
    count = len(f.codomain.components)
    keep = list(range(count))
    changed = True
    while changed:
        changed = False
        for idx in reversed(keep):
            if len(keep) == 1:
                break
            trial = [j for j in keep if j != idx]
            if rank(_projected_map(f, trial)) == f.domain.rank:
                keep = trial
                changed = True
                break
    for idx in keep:
        trial = [j for j in keep if j != idx]
        if trial:
            assert rank(_projected_map(f, trial)) < f.domain.rank
    if len(keep) == count:
        return ReduceResult(f, (), identity_certificate(f))
    emb, cert = project_embedding(f, keep)
    dropped = tuple(i for i in range(count) if i not in keep)
    return ReduceResult(emb, dropped, cert)


# -- bimodule ladders -----------------------------------------------------------------


@dataclass(frozen=True)
class LadderFactor:
    """One simple subquotient of a component, realized on an invariant summand.

    `upper` and `lower` are consecutive chain members; `carrier` is an
    invariant complement of `lower` inside `upper`, so the factor action
    lives on an honest subspace. Action matrices are in carrier-local
    coordinates: one left matrix per domain lattice basis vector, one right
    matrix per component basis vector.
    """

    upper: Subspace
    lower: Subspace
    carrier: Subspace
    left_action: tuple[MatQ, ...]
    right_action: tuple[MatQ, ...]
    annihilator: LatticeIdeal
    simplicity: SimplicityResult


@dataclass(frozen=True)
class BimoduleLadder:
    component: SimpleComponent
    chain: tuple[Subspace, ...]
    factors: tuple[LadderFactor, ...]

    def __len__(self) -> int:
        return len(self.factors)


def _matrix_of(coords: Sequence, mats: Sequence[MatQ]) -> MatQ:
    d = mats[0].nrows
    out = MatQ.zeros(d, d)
    for c, m in zip(coords, mats):
        if c:
            out = out + m.scale(c)
    return out


def _simple_summands(e, budget: int, seed: int) -> list[Subspace]:
    """Split a semisimple module into simple invariant summands.

    Isotypic parts come first; a part of multiplicity m is cut along the
    orthogonal idempotents of its commutant, which peel m rank-one blocks.
    A commutant that resists explicit splitting raises UnresolvedSimplicity.
    """
    out: list[Subspace] = []
    for part in isotypic_split(e, seed=seed):
        w = part.subspace
        restricted = operator_algebra(
            tuple(restrict_op(g, w) for g in e.generators), module_dim=w.dim
        )
        comm_alg, comm_mats = matrices_to_algebra(
            commutant_matrices(restricted), name="End"
        )
        dec = decompose(comm_alg, seed=seed)
        assert len(dec.components) == 1, "commutant of an isotypic module is simple"
        comp = resolve_split_status(dec.components[0], budget, seed=seed)
        status = comp.split_status
        if comp.reduced_degree == 1 or status.kind == "quaternion_division":
            out.append(w)
            continue
        if status.kind == "split" and status.idempotents:
            n = len(status.idempotents)
            for eps in status.idempotents:
                e_mat = _matrix_of(comp.to_parent(eps), comm_mats)
                local = Subspace.from_rows(w.dim, e_mat.transpose().rows)
                assert local.dim * n == w.dim, "idempotents cut equal-size blocks"
                out.append(Subspace.from_rows(
                    w.ambient,
                    [row_times_mat(r, w.basis) for r in local.basis.rows],
                ))
            continue
        raise UnresolvedSimplicity(
            budget,
            message="isotypic multiplicity not explicitly split: "
                    + (status.note or status.kind),
        )
    return out


def _annihilator_ideal(order: OrderRing, left_mats: Sequence[MatQ]) -> LatticeIdeal:
    n = order.rank
    stacked = MatQ(tuple(mat_vec_of(m) for m in left_mats))
    ker = left_kernel(stacked)
    lat = lattice_intersect_subspace(
        Lattice.standard(n), Subspace.from_rows(n, ker.rows)
    )
    ideal = build_ideal(order, lat.basis, verify=True)
    assert ideal.saturated
    return ideal


def _left_ops_on_component(f: Embedding, index: int) -> tuple[MatQ, ...]:
    comp = f.codomain.components[index]
    parent = f.codomain.parent
    ops = []
    for t in range(f.domain.rank):
        coords = _component_coords(parent, comp, f.map.row(t))
        ops.append(comp.algebra.left_mult_op(coords))
    return tuple(ops)


def bimodule_ladder(
    order: OrderRing,
    component: SimpleComponent,
    left_action: Sequence[MatQ],
    budget: int,
    *,
    seed: int = 0,
) -> BimoduleLadder:
    """Descending chain of sub-bimodules of a component with simple factors.

    The chain is assembled from a direct-summand decomposition (the combined
    action is semisimple for a semiprime domain), so every factor comes with
    an invariant carrier, its action matrices, a saturated annihilator ideal
    and a simplicity certificate from certify_simple_module.
    """
    d = component.dim
    for m in left_action:
        if m.shape != (d, d):
            raise DimensionMismatch("left action matrices must act on the component")
    if len(left_action) != order.rank:
        raise DimensionMismatch("one left action matrix per lattice basis vector")
    right_ops = tuple(
        component.algebra.right_mult_op(component.algebra.basis_vec(k))
        for k in range(d)
    )
    e = operator_algebra(tuple(left_action) + right_ops, module_dim=d)
    summands = _simple_summands(e, budget, seed)
    assert sum(s.dim for s in summands) == d, "summands must fill the component"
    chain = [Subspace.zero(d)]
    for s in reversed(summands):
        chain.append(chain[-1].add(s))
    chain.reverse()
    assert chain[0].dim == d
    factors = []
    for j, carrier in enumerate(summands):
        left_restricted = tuple(restrict_op(m, carrier) for m in left_action)
        right_restricted = tuple(restrict_op(m, carrier) for m in right_ops)
        ann = _annihilator_ideal(order, left_restricted)
        simplicity = certify_simple_module(e, carrier, budget, seed=seed)
        if simplicity.kind == "unknown":
            raise UnresolvedSimplicity(budget, partial=tuple(factors))
        assert simplicity.is_simple, "summand construction yields simple factors"
        factors.append(LadderFactor(
            upper=chain[j],
            lower=chain[j + 1],
            carrier=carrier,
            left_action=left_restricted,
            right_action=right_restricted,
            annihilator=ann,
            simplicity=simplicity,
        ))
    return BimoduleLadder(component, tuple(chain), tuple(factors))


# -- collections and the minimization step --------------------------------------------


@dataclass(frozen=True)
class CollectionEntry:
    """A kept simple bimodule factor, keyed by its minimal prime."""

    prime_index: int
    prime: LatticeIdeal
    component_index: int
    factor_index: int
    carrier: Subspace
    left_action: tuple[MatQ, ...]
    right_action: tuple[MatQ, ...]
    end_algebra: StructureAlgebra
    length: int | None
    dim_proxy: int
    simplicity: SimplicityResult


@dataclass(frozen=True)
class Collection:
    parent: Embedding
    entries: tuple[CollectionEntry, ...]


@dataclass(frozen=True)
class MinimizeStepResult:
    """Output of one minimization step.

    `embedding` maps into the product of endomorphism rings of the kept
    factors; `combined` maps into the product over all factors. The two
    certificates make the reduction triangle commute: `into_parent` is the
    monomorphism from the combined product back into the original codomain
    (so original = into_parent after combined) and `onto_selected` is the
    projection of the combined product onto the kept part.
    """

    collection: Collection
    embedding: Embedding
    combined: Embedding
    into_parent: MorphismCertificate
    onto_selected: MorphismCertificate
    ladders: tuple[BimoduleLadder, ...]
    selected: tuple[tuple[int, int], ...]
    dropped: tuple[tuple[int, int], ...]
    source_size: int | None
    target_size: int | None


def _product_decomposition(parts: Sequence[tuple], *, name: str) -> SemisimpleDecomposition:
    """Assemble simple parts into a product algebra with slice components.

    Each part is (algebra, centre_dim, reduced_degree, split_status); the
    resulting decomposition keeps the listed order and carries the given
    split statuses through unchanged.
    """
    if not parts:
        raise DimensionMismatch("empty product")
    dims = [p[0].dim for p in parts]
    total = sum(dims)
    offsets = [sum(dims[:i]) for i in range(len(parts))]

    def embed(i: int, v: Sequence) -> Vec:
        row = [Fraction(0)] * total
        for k, x in enumerate(v):
            row[offsets[i] + k] = Fraction(x)
        return tuple(row)

    labels = tuple(
        f"p{i}.{lab}" for i, p in enumerate(parts) for lab in p[0].basis_labels
    )
    unit = [Fraction(0)] * total
    for i, p in enumerate(parts):
        for k, x in enumerate(p[0].unit):
            unit[offsets[i] + k] = Fraction(x)
    zero = tuple(Fraction(0) for _ in range(total))
    table = []
    for i, p in enumerate(parts):
        for a in range(dims[i]):
            row = []
            for j, q in enumerate(parts):
                for b in range(dims[j]):
                    row.append(embed(i, p[0].table[a][b]) if i == j else zero)
            table.append(tuple(row))
    product = StructureAlgebra(
        name, labels, tuple(unit), tuple(table),
        assoc_fully_checked=all(p[0].assoc_fully_checked for p in parts),
    )
    components = []
    idempotents = []
    for i, (alg, centre_dim, reduced_degree, status) in enumerate(parts):
        block_rows = MatQ(tuple(
            tuple(Fraction(1 if c == offsets[i] + r else 0) for c in range(total))
            for r in range(dims[i])
        ))
        idem = embed(i, alg.unit)
        idempotents.append(idem)
        components.append(SimpleComponent(
            alg, centre_dim, reduced_degree, status, idem, block_rows,
        ))
    return SemisimpleDecomposition(product, tuple(idempotents), tuple(components))


def _simple_part(alg: StructureAlgebra, budget: int, seed: int) -> tuple:
    dec = decompose(alg, seed=seed)
    assert len(dec.components) == 1, "endomorphism ring of a simple module is simple"
    comp = resolve_split_status(dec.components[0], budget, seed=seed)
    return (alg, comp.centre_dim, comp.reduced_degree, comp.split_status)


def _prime_action_image(fac: LadderFactor, prime: LatticeIdeal) -> Subspace:
    rows = []
    for g in prime.lattice.basis:
        m = _matrix_of([Fraction(x) for x in g], fac.left_action)
        rows.extend(m.transpose().rows)
    return Subspace.from_rows(fac.carrier.dim, rows)


def minimize_step(f: Embedding, budget: int, *, seed: int = 0) -> MinimizeStepResult:
    """One reduction step: keep an irredundant family of simple factors.

    Ladders are built per component; factor annihilators are minimal primes
    of the domain. Dropping factors greedily from the last canonical index
    leaves a family whose annihilators intersect to zero and biject onto
    min(R), which is verified. The kept endomorphism product B receives the
    domain through left multiplications, and the step emits the verified
    monomorphism of the full product into the original codomain together
    with the projection onto B. Dimension bounds (per component and, when
    split statuses are certified, total matrix size) are asserted.
    """
    domain = f.domain
    primes = minimal_primes(domain, seed=seed)
    count = len(f.codomain.components)
    for i in range(count):
        keep = [j for j in range(count) if j != i]
        if keep and rank(_projected_map(f, keep)) == domain.rank:
            raise NotIrredundant(f"component {i} can be dropped")

    ladders = []
    factors: dict[tuple[int, int], LadderFactor] = {}
    order_keys: list[tuple[int, int]] = []
    for i, comp in enumerate(f.codomain.components):
        ladder = bimodule_ladder(
            domain, comp, _left_ops_on_component(f, i), budget, seed=seed
        )
        ladders.append(ladder)
        for j, fac in enumerate(ladder.factors):
            factors[(i, j)] = fac
            order_keys.append((i, j))

    spans = {k: factors[k].annihilator.span() for k in order_keys}

    def intersects_to_zero(keys: Sequence[tuple[int, int]]) -> bool:
        current = Subspace.full(domain.rank)
        for k in keys:
            current = current.intersect(spans[k])
            if current.dim == 0:
                return True
        return current.dim == 0

    assert intersects_to_zero(order_keys), \
        "factor annihilators of an embedding intersect to zero"
    selected = list(order_keys)
    for k in reversed(order_keys):
        if len(selected) == 1:
            break
        trial = [x for x in selected if x != k]
        if intersects_to_zero(trial):
            selected = trial
    selected_keys = tuple(selected)
    dropped_keys = tuple(k for k in order_keys if k not in set(selected_keys))

    sel_bases = [factors[k].annihilator.lattice.basis for k in selected_keys]
    prime_bases = [p.lattice.basis for p in primes]
    assert len(sel_bases) == len(set(sel_bases)), "kept annihilators are distinct"
    assert set(sel_bases) == set(prime_bases), \
        "kept annihilators enumerate the minimal primes"
    prime_of = {k: prime_bases.index(b) for k, b in zip(selected_keys, sel_bases)}

    for k in selected_keys:
        fac = factors[k]
        for pi in range(len(primes)):
            image = _prime_action_image(fac, primes[pi])
            if pi == prime_of[k]:
                assert image.dim == 0, "matched prime annihilates its carrier"
            else:
                assert image.dim == fac.carrier.dim, \
                    "other primes act with full image on a simple carrier"

    ends: dict[tuple[int, int], tuple] = {}
    for k in order_keys:
        fac = factors[k]
        right_e = operator_algebra(fac.right_action, module_dim=fac.carrier.dim)
        alg, mats = matrices_to_algebra(
            commutant_matrices(right_e), name=f"End{k[0]}.{k[1]}"
        )
        basis_rows = MatQ(tuple(mat_vec_of(m) for m in mats))
        ends[k] = (_simple_part(alg, budget, seed), mats, basis_rows)

    resolved = tuple(
        resolve_split_status(c, budget, seed=seed) for c in f.codomain.components
    )
    source_size = None
    if all(c.split_status.matrix_size is not None for c in resolved):
        source_size = sum(c.split_status.matrix_size for c in resolved)
    for i, comp in enumerate(f.codomain.components):
        kept_dim = sum(factors[k].carrier.dim for k in selected_keys if k[0] == i)
        assert kept_dim <= comp.dim, "kept carriers fit inside their component"

    lengths: dict[tuple[int, int], int | None] = {}
    for k in selected_keys:
        size = resolved[k[0]].split_status.matrix_size
        if size is None:
            lengths[k] = None
            continue
        num = factors[k].carrier.dim * size
        den = f.codomain.components[k[0]].dim
        assert num % den == 0, "carrier length over the component is integral"
        length = num // den
        end_size = ends[k][0][3].matrix_size
        if end_size is not None:
            assert end_size == length, "endomorphism matrix size equals the length"
        lengths[k] = length
    target_size = None
    if all(ends[k][0][3].matrix_size is not None for k in selected_keys):
        target_size = sum(ends[k][0][3].matrix_size for k in selected_keys)
    if source_size is not None and target_size is not None:
        assert target_size <= source_size, "matrix size cannot grow"

    base = f.codomain.parent.name
    sel_parts = [ends[k][0] for k in selected_keys]
    b_dec = _product_decomposition(sel_parts, name=f"{base}.min")
    all_keys = selected_keys + dropped_keys
    if dropped_keys:
        c_dec = _product_decomposition(
            [ends[k][0] for k in all_keys], name=f"{base}.sum"
        )
    else:
        c_dec = b_dec

    coords_cache: dict[tuple[int, int], list[Vec]] = {}
    for k in all_keys:
        fac = factors[k]
        solver = RowSolver(ends[k][2])
        per_basis = []
        for t in range(domain.rank):
            coords = solver.solve(mat_vec_of(fac.left_action[t]))
            assert coords is not None, "left action commutes with the right action"
            per_basis.append(coords)
        coords_cache[k] = per_basis

    phi_map = MatQ(tuple(
        tuple(x for k in selected_keys for x in coords_cache[k][t])
        for t in range(domain.rank)
    ))
    phi = build_embedding(
        domain, b_dec, phi_map,
        assignment=tuple(prime_of[k] for k in selected_keys),
    )
    if dropped_keys:
        g_map = MatQ(tuple(
            tuple(x for k in all_keys for x in coords_cache[k][t])
            for t in range(domain.rank)
        ))
        combined = build_embedding(domain, c_dec, g_map)
    else:
        combined = phi

    # the natural property of phi at the level of its own codomain: both
    # annihilators of phi(p) are exactly the matched block
    for pos, k in enumerate(selected_keys):
        prime = primes[prime_of[k]]
        img = Subspace.from_rows(
            b_dec.parent.dim,
            [row_times_mat([Fraction(x) for x in g], phi_map)
             for g in prime.lattice.basis],
        )
        block = b_dec.components[pos].subspace()
        l_ann = left_annihilator(b_dec.parent, img)
        r_ann = right_annihilator(b_dec.parent, img)
        assert l_ann.basis.rows == block.basis.rows, "collection embedding is natural"
        assert r_ann.basis.rows == block.basis.rows, "collection embedding is natural"

    carriers_by_component: dict[int, list[tuple[int, int]]] = {}
    for k in order_keys:
        carriers_by_component.setdefault(k[0], []).append(k)
    proj_data = {}
    for i, keys in carriers_by_component.items():
        stacked = MatQ(tuple(
            r for k in keys for r in factors[k].carrier.basis.rows
        ))
        assert stacked.nrows == f.codomain.components[i].dim
        proj_data[i] = (keys, inverse(stacked))

    alpha_rows = []
    for k in all_keys:
        i, _ = k
        comp = f.codomain.components[i]
        keys, p_inv = proj_data[i]
        combined_coords = row_times_mat(comp.algebra.unit, p_inv)
        offset = 0
        for kk in keys:
            width = factors[kk].carrier.dim
            if kk == k:
                unit_slice = combined_coords[offset:offset + width]
                break
            offset += width
        fac = factors[k]
        for beta in ends[k][1]:
            local = op_apply(beta, unit_slice)
            a_local = row_times_mat(local, fac.carrier.basis)
            alpha_rows.append(comp.to_parent(a_local))
    alpha = MatQ(tuple(alpha_rows))
    alpha_kind = "iso" if c_dec.parent.dim == f.codomain.parent.dim else "mono"
    into_parent = MorphismCertificate(combined, f, alpha, alpha_kind)
    ok, diag = verify_morphism(into_parent)
    assert ok, f"summand reassembly certificate failed: {diag}"

    if dropped_keys:
        b_dim = b_dec.parent.dim
        c_dim = c_dec.parent.dim
        pr = MatQ(tuple(
            tuple(Fraction(1 if r == c else 0) for c in range(b_dim))
            for r in range(c_dim)
        ))
        onto_selected = MorphismCertificate(combined, phi, pr, "epi")
        ok, diag = verify_morphism(onto_selected)
        assert ok, f"projection certificate failed: {diag}"
    else:
        onto_selected = identity_certificate(phi)

    entries = []
    for pos, k in enumerate(selected_keys):
        fac = factors[k]
        entries.append(CollectionEntry(
            prime_index=prime_of[k],
            prime=primes[prime_of[k]],
            component_index=k[0],
            factor_index=k[1],
            carrier=fac.carrier,
            left_action=fac.left_action,
            right_action=fac.right_action,
            end_algebra=ends[k][0][0],
            length=lengths[k],
            dim_proxy=fac.carrier.dim,
            simplicity=fac.simplicity,
        ))
    collection = Collection(parent=f, entries=tuple(entries))
    return MinimizeStepResult(
        collection=collection,
        embedding=phi,
        combined=combined,
        into_parent=into_parent,
        onto_selected=onto_selected,
        ladders=tuple(ladders),
        selected=selected_keys,
        dropped=dropped_keys,
        source_size=source_size,
        target_size=target_size,
    )


# -- classification -------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeReport:
    prime_index: int
    component_index: int
    natural: bool
    simple_bimodule: bool | None
    contraction_ok: bool
    witness: Subspace | None = None
    note: str = ""


@dataclass(frozen=True)
class ClassifyReport:
    natural: bool
    elementary: bool | None
    per_prime: tuple[PrimeReport, ...]
    assignment: tuple[int, ...]


def _unique_perfect_matching(candidates: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    found: list[tuple[int, ...]] = []

    def backtrack(pos: int, used: set, current: list[int]) -> None:
        if len(found) == 2:
            return
        if pos == len(candidates):
            found.append(tuple(current))
            return
        for i in candidates[pos]:
            if i not in used:
                used.add(i)
                current.append(i)
                backtrack(pos + 1, used, current)
                current.pop()
                used.discard(i)

    backtrack(0, set(), [])
    return found[0] if len(found) == 1 else None


def _preimage_lattice(f: Embedding, target: Subspace) -> Lattice:
    n = f.domain.rank
    reduced = MatQ(tuple(target.reduce_vec(f.map.row(t)) for t in range(n)))
    ker = left_kernel(reduced)
    return lattice_intersect_subspace(
        Lattice.standard(n), Subspace.from_rows(n, ker.rows)
    )


def classify(f: Embedding, budget: int, *, seed: int = 0) -> ClassifyReport:
    """Natural and elementary status of an embedding, per minimal prime.

    Components are matched to primes by requiring the component block to be
    annihilated by the prime's image on both sides; a missing or ambiguous
    matching raises UnmatchedComponents. For each matched pair the report
    carries: whether both annihilators equal the block exactly (natural),
    whether the block is a simple bimodule (tri-state, with a proper
    sub-bimodule witness on failure), and whether the preimage of the ideal
    generated by the prime's image is the prime again.
    """
    domain = f.domain
    primes = minimal_primes(domain, seed=seed)
    comps = f.codomain.components
    parent = f.codomain.parent
    if len(primes) != len(comps):
        raise UnmatchedComponents(
            f"{len(comps)} components against {len(primes)} minimal primes"
        )
    ann_pairs = []
    candidates = []
    for p in primes:
        img = Subspace.from_rows(
            parent.dim,
            [row_times_mat([Fraction(x) for x in g], f.map) for g in p.lattice.basis],
        )
        l_ann = left_annihilator(parent, img)
        r_ann = right_annihilator(parent, img)
        ann_pairs.append((img, l_ann, r_ann))
        candidates.append([
            i for i, c in enumerate(comps)
            if l_ann.contains(c.subspace()) and r_ann.contains(c.subspace())
        ])
    match = _unique_perfect_matching(candidates)
    if match is None:
        raise UnmatchedComponents(
            "no unique assignment of components to minimal primes"
        )
    reports = []
    for pi, p in enumerate(primes):
        ci = match[pi]
        comp = comps[ci]
        block = comp.subspace()
        img, l_ann, r_ann = ann_pairs[pi]
        natural_here = (
            l_ann.basis.rows == block.basis.rows
            and r_ann.basis.rows == block.basis.rows
        )
        two_sided = two_sided_ideal_subspace(parent, img.basis.rows) \
            if img.dim else Subspace.zero(parent.dim)
        preimage = _preimage_lattice(f, two_sided)
        contraction_ok = preimage.basis == p.lattice.basis
        left_ops = _left_ops_on_component(f, ci)
        right_ops = tuple(
            comp.algebra.right_mult_op(comp.algebra.basis_vec(k))
            for k in range(comp.dim)
        )
        action = operator_algebra(left_ops + right_ops, module_dim=comp.dim)
        result = certify_simple_module(
            action, Subspace.full(comp.dim), budget, seed=seed
        )
        simple_here: bool | None
        witness = None
        if result.kind == "simple":
            simple_here = True
        elif result.kind == "not_simple":
            simple_here = False
            assert result.witness is not None
            witness = Subspace.from_rows(
                parent.dim,
                [row_times_mat(r, comp.block_rows) for r in result.witness.basis.rows],
            )
        else:
            simple_here = None
        reports.append(PrimeReport(
            prime_index=pi,
            component_index=ci,
            natural=natural_here,
            simple_bimodule=simple_here,
            contraction_ok=contraction_ok,
            witness=witness,
            note=result.note,
        ))
    natural = all(r.natural for r in reports)
    elementary: bool | None
    if not natural:
        elementary = False
    elif any(r.simple_bimodule is False for r in reports):
        elementary = False
    elif any(r.simple_bimodule is None for r in reports):
        elementary = None
    else:
        elementary = True
    return ClassifyReport(
        natural=natural,
        elementary=elementary,
        per_prime=tuple(reports),
        assignment=tuple(match),
    )


# -- iteration to the elementary fixpoint ----------------------------------------------


@dataclass(frozen=True)
class MinimizeChain:
    """The full descending chain from an embedding to its elementary floor."""

    steps: tuple[tuple[str, object], ...]
    final: Embedding
    report: ClassifyReport


def minimize_to_elementary(f: Embedding, budget: int, *, seed: int = 0) -> MinimizeChain:
    """Alternate redundancy reduction and minimization until elementary.

    Each minimization step strictly shrinks the codomain dimension (this is
    asserted), so the loop terminates. A classification that cannot certify
    simplicity within budget raises UnresolvedSimplicity carrying the chain
    so far.
    """
    steps: list[tuple[str, object]] = []
    current = f
    while True:
        reduced = reduce_redundant(current)
        if reduced.dropped:
            steps.append(("reduce", reduced))
            current = reduced.embedding
        report = None
        try:
            report = classify(current, budget, seed=seed)
        except UnmatchedComponents:
            pass
        if report is not None:
            if report.elementary is True:
                return MinimizeChain(tuple(steps), current, report)
            if report.elementary is None:
                raise UnresolvedSimplicity(
                    budget, partial=tuple(steps),
                    message="classification left a simplicity certificate open",
                )
        before = current.codomain_dim
        step = minimize_step(current, budget, seed=seed)
        assert step.embedding.codomain_dim < before, \
            "minimization strictly shrinks the codomain"
        steps.append(("minimize", step))
        current = step.embedding


# -- necessary conditions for M-equivalence --------------------------------------------


@dataclass(frozen=True)
class MEquivalenceResult:
    verdict: str  # "equivalent" | "not_equivalent" | "undetermined"
    per_prime: tuple[tuple[int, str, str], ...]  # (prime index, verdict, detail)


def m_equivalence_necessary(
    f: Embedding, g: Embedding, budget: int, *, seed: int = 0
) -> MEquivalenceResult:
    """Compare matched components of two natural embeddings prime by prime.

    Certified invariants only: centre dimension always; full matrix algebras
    over the rationals are equivalent regardless of size; quaternion division
    parts compare by their ramified places, which decide isomorphism. Larger
    centres are never compared by isomorphism, leaving those primes
    undetermined.
    """
    if f.domain.rank != g.domain.rank or \
            f.domain.coord_algebra.table != g.domain.coord_algebra.table:
        raise DimensionMismatch("embeddings must share their domain order")
    try:
        report_f = classify(f, budget, seed=seed)
    except UnmatchedComponents as exc:
        raise NotNatural(f"first embedding is not natural: {exc}") from exc
    try:
        report_g = classify(g, budget, seed=seed)
    except UnmatchedComponents as exc:
        raise NotNatural(f"second embedding is not natural: {exc}") from exc
    if not report_f.natural:
        raise NotNatural("first embedding is not natural")
    if not report_g.natural:
        raise NotNatural("second embedding is not natural")
    per_prime = []
    for pi in range(len(report_f.assignment)):
        comp_f = resolve_split_status(
            f.codomain.components[report_f.assignment[pi]], budget, seed=seed
        )
        comp_g = resolve_split_status(
            g.codomain.components[report_g.assignment[pi]], budget, seed=seed
        )
        if comp_f.centre_dim != comp_g.centre_dim:
            per_prime.append((pi, "not_equivalent",
                              f"centre dims {comp_f.centre_dim} vs {comp_g.centre_dim}"))
            continue
        sf, sg = comp_f.split_status, comp_g.split_status
        if sf.kind == "split" and sg.kind == "split" and comp_f.centre_dim == 1:
            per_prime.append((pi, "equivalent", "both full matrix rings over Q"))
        elif sf.kind == "quaternion_division" and sg.kind == "quaternion_division":
            if sf.places == sg.places:
                per_prime.append((pi, "equivalent",
                                  f"same quaternion ramification {sf.places}"))
            else:
                per_prime.append((pi, "not_equivalent",
                                  f"ramification {sf.places} vs {sg.places}"))
        elif {sf.kind, sg.kind} == {"split", "quaternion_division"}:
            per_prime.append((pi, "not_equivalent", "split against division"))
        else:
            per_prime.append((pi, "undetermined",
                              f"statuses {sf.kind}/{sg.kind}, centre dim {comp_f.centre_dim}"))
    if any(v == "not_equivalent" for _, v, _ in per_prime):
        verdict = "not_equivalent"
    elif all(v == "equivalent" for _, v, _ in per_prime):
        verdict = "equivalent"
    else:
        verdict = "undetermined"
    return MEquivalenceResult(verdict, tuple(per_prime))


# -- semiprimary reduction --------------------------------------------------------------


@dataclass(frozen=True)
class SemiprimaryReduction:
    embedding: Embedding
    projection: MatQ
    radical: Subspace


def reduce_semiprimary(
    order: OrderRing, target: StructureAlgebra, map_rows, *, seed: int = 0
) -> SemiprimaryReduction:
    """Push an embedding into an algebra with radical down to its quotient.

    The domain must miss the radical (a nonzero intersection exhibits a
    nilpotent element of the order and raises DomainNotSemiprime with that
    witness). The returned projection is the canonical epimorphism onto the
    semisimple quotient, composed with the given map.
    """
    m = map_rows if isinstance(map_rows, MatQ) else MatQ.from_rows(map_rows)
    _check_ring_map(order.coord_algebra, target, m)
    if rank(m) != order.rank:
        raise ParseError("map into the target is not injective")
    rad = radical(target)
    if rad.dim == 0:
        dec = decompose(target, seed=seed)
        emb = build_embedding(order, dec, m)
        return SemiprimaryReduction(emb, MatQ.identity(target.dim), rad)
    reduced_rows = MatQ(tuple(rad.reduce_vec(m.row(t)) for t in range(order.rank)))
    meets = left_kernel(reduced_rows)
    if meets.nrows:
        raise DomainNotSemiprime(witness=_primitive_integer(meets.rows[0]))
    quotient, projection = semisimple_quotient(target)
    new_map = MatQ(tuple(
        row_times_mat(m.row(t), projection) for t in range(order.rank)
    ))
    dec = decompose(quotient, seed=seed)
    emb = build_embedding(order, dec, new_map)
    return SemiprimaryReduction(emb, projection, rad)


# -- localization units ------------------------------------------------------------------


def localization_unit_check(
    f: Embedding, denominators: Sequence[Sequence], budget: int, *, seed: int = 0
) -> bool:
    """Check that central regular elements become units under an elementary map.

    For an elementary embedding every central regular denominator must land
    on an invertible element; a False therefore flags an internal
    inconsistency rather than a legitimate outcome.
    """
    try:
        report = classify(f, budget, seed=seed)
    except UnmatchedComponents as exc:
        raise NotElementary(
            f"localization check needs an elementary embedding: {exc}"
        ) from exc
    if report.elementary is not True:
        raise NotElementary("localization check needs a certified elementary embedding")
    alg = f.domain.coord_algebra
    parent = f.codomain.parent
    for s in denominators:
        sv = vec(s)
        if alg.left_mult_op(sv) != alg.right_mult_op(sv):
            raise NotRegular(element=tuple(s), message="element is not central")
        if not is_regular(f.domain, sv):
            raise NotRegular(element=tuple(s))
        image = row_times_mat(sv, f.map)
        if rank(parent.left_mult_op(image)) != parent.dim:
            return False
    return True
