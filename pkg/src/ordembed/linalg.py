"""Exact linear algebra: rational matrices, RREF subspaces, HNF lattices.

Conventions used across the workbench:

* vectors are rows (tuples of Fraction, or of int for lattices);
* a `Subspace` is canonically the RREF of any spanning set, so two
  subspaces are equal iff their basis matrices are equal entrywise;
* a `Lattice` is canonically the row Hermite normal form (pivots positive,
  entries above a pivot reduced into [0, pivot));
* operators on a coordinate space are matrices acting on column vectors,
  so composition is matrix multiplication in application order.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and cross-multiplication with content extraction keeps intermediate entries
integral; pivots are normalized to 1 only in the final step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]


def vec(items: Iterable) -> Vec:
    return tuple(Fraction(x) for x in items)


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Vec, c) -> Vec:
    c = Fraction(c)
    return tuple(a * c for a in u)


def vec_dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


@dataclass(frozen=True)
class MatQ:
    """Immutable rational matrix, row-major."""

    rows: tuple[Vec, ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "MatQ":
        out = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if out and any(len(r) != len(out[0]) for r in out):
            raise DimensionMismatch("ragged rows")
        return MatQ(out)

    @staticmethod
    def identity(n: int) -> "MatQ":
        return MatQ(tuple(unit_vec(n, i) for i in range(n)))

    @staticmethod
    def zeros(r: int, c: int) -> "MatQ":
        return MatQ(tuple(zero_vec(c) for _ in range(r)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def __add__(self, other: "MatQ") -> "MatQ":
        self._check_same_shape(other)
        return MatQ(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatQ") -> "MatQ":
        self._check_same_shape(other)
        return MatQ(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "MatQ":
        return MatQ(tuple(tuple(-x for x in r) for r in self.rows))

    def __mul__(self, other: "MatQ") -> "MatQ":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return MatQ(tuple(tuple(vec_dot(r, c) for c in cols) for r in self.rows))

    def scale(self, c) -> "MatQ":
        c = Fraction(c)
        return MatQ(tuple(tuple(x * c for x in r) for r in self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "MatQ":
        return MatQ(tuple(zip(*self.rows))) if self.rows else MatQ(())

    def row(self, i: int) -> Vec:
        return self.rows[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def _check_same_shape(self, other: "MatQ") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")


def mat_vstack(*mats: MatQ) -> MatQ:
    width = {m.ncols for m in mats if m.nrows}
    if len(width) > 1:
        raise DimensionMismatch("vstack width mismatch")
    return MatQ(tuple(r for m in mats for r in m.rows))


def mat_hstack(*mats: MatQ) -> MatQ:
    heights = {m.nrows for m in mats}
    if len(heights) != 1:
        raise DimensionMismatch("hstack height mismatch")
    return MatQ(tuple(tuple(x for m in mats for x in m.rows[i]) for i in range(mats[0].nrows)))


def row_times_mat(v: Sequence, m: MatQ) -> Vec:
    if len(v) != m.nrows:
        raise DimensionMismatch("vector/matrix size mismatch")
    out = [Fraction(0)] * m.ncols
    for a, row in zip(v, m.rows):
        if a:
            for j, b in enumerate(row):
                out[j] += Fraction(a) * b
    return tuple(out)


def op_apply(m: MatQ, v: Sequence) -> Vec:
    """Apply a column-convention operator to a row vector: (m @ v^T)^T."""
    if len(v) != m.ncols:
        raise DimensionMismatch("operator/vector size mismatch")
    return tuple(vec_dot(row, vec(v)) for row in m.rows)


def kron(a: MatQ, b: MatQ) -> MatQ:
    """Kronecker product compatible with row-major vectorization.

    With vec(X) the row-major flattening of X as a row vector,
    vec(X @ G) = vec(X) @ kron(I, G) and vec(G @ X) = vec(X) @ kron(G^T, I).
    """
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            rows.append(tuple(a.rows[i][j] * b.rows[k][l]
                              for j in range(a.ncols) for l in range(b.ncols)))
    return MatQ(tuple(rows))


def mat_vec_of(m: MatQ) -> Vec:
    return tuple(x for r in m.rows for x in r)


def mat_unvec(v: Sequence, nrows: int, ncols: int) -> MatQ:
    v = vec(v)
    if len(v) != nrows * ncols:
        raise DimensionMismatch("cannot reshape")
    return MatQ(tuple(tuple(v[i * ncols + j] for j in range(ncols)) for i in range(nrows)))


# -- fraction-free elimination --------------------------------------------------


def _primitive_int_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(c.denominator for c in row)) if row else 1
    ints = [int(c * den) for c in row]
    g = gcd(*ints) if len(ints) > 1 else abs(ints[0]) if ints else 0
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _extract_content(row: list[int]) -> list[int]:
    g = 0
    for c in row:
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return [c // g for c in row]
    return row


@dataclass(frozen=True)
class RrefResult:
    matrix: MatQ
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(m: MatQ) -> RrefResult:
    """Reduced row echelon form with pivot columns.

    Fraction-free: the elimination works on primitive integer rows with
    cross-multiplication and content extraction; pivots are divided out
    only when assembling the final matrix.
    """
    rows = [_primitive_int_row(r) for r in m.rows]
    ncols = m.ncols
    pivots: list[int] = []
    pr = 0
    for col in range(ncols):
        piv = next((i for i in range(pr, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        pv = rows[pr][col]
        for i in range(len(rows)):
            if i != pr and rows[i][col]:
                f = rows[i][col]
                rows[i] = _extract_content([pv * a - f * b for a, b in zip(rows[i], rows[pr])])
        pivots.append(col)
        pr += 1
        if pr == len(rows):
            break
    out_rows = []
    for k, col in enumerate(pivots):
        pv = Fraction(rows[k][col])
        out_rows.append(tuple(Fraction(x) / pv for x in rows[k]))
    reduced = MatQ(tuple(out_rows) + tuple(zero_vec(ncols) for _ in range(len(rows) - len(pivots))))
    return RrefResult(reduced, tuple(pivots))


def rank(m: MatQ) -> int:
    return rref(m).rank


def kernel(m: MatQ) -> MatQ:
    """Basis of the right null space {x : m @ x^T = 0}, one vector per row."""
    res = rref(m)
    piv = res.pivots
    free = [j for j in range(m.ncols) if j not in piv]
    rows = []
    for f in free:
        x = [Fraction(0)] * m.ncols
        x[f] = Fraction(1)
        for k, col in enumerate(piv):
            x[col] = -res.matrix.rows[k][f]
        rows.append(tuple(x))
    return MatQ(tuple(rows))


def left_kernel(m: MatQ) -> MatQ:
    """Basis of {x : x @ m = 0}, one vector per row."""
    return kernel(m.transpose())


def inverse(m: MatQ) -> MatQ:
    if m.nrows != m.ncols:
        raise DimensionMismatch("only square matrices invert")
    n = m.nrows
    aug = rref(mat_hstack(m, MatQ.identity(n)))
    if aug.pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return MatQ(tuple(r[n:] for r in aug.matrix.rows[:n]))


class RowSolver:
    """Factored row basis for solving x @ basis = v against many v.

    Building the solver does the one rref of the augmented system; each
    solve is then a single elimination pass.
    """

    def __init__(self, basis: MatQ):
        self._nrows = basis.nrows
        self._ncols = basis.ncols
        if basis.nrows:
            res = rref(mat_hstack(basis, MatQ.identity(basis.nrows)))
            self._rows = res.matrix.rows
            self._pivots = res.pivots
        else:
            self._rows = ()
            self._pivots = ()

    def solve(self, v: Sequence) -> Vec | None:
        if self._nrows == 0:
            return () if is_zero_vec(v) else None
        n = self._ncols
        residual = list(vec(v))
        coeffs = [Fraction(0)] * self._nrows
        for k, col in enumerate(self._pivots):
            if col >= n:
                break
            c = residual[col]
            if c:
                row = self._rows[k]
                for j in range(n):
                    if row[j]:
                        residual[j] -= c * row[j]
                for j in range(self._nrows):
                    if row[n + j]:
                        coeffs[j] += c * row[n + j]
        if not is_zero_vec(residual):
            return None
        return tuple(coeffs)


def solve_row(basis: MatQ, v: Sequence) -> Vec | None:
    """Coefficients x with x @ basis = v, or None if v is outside the span."""
    return RowSolver(basis).solve(v)


# -- subspaces -------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient held as its canonical RREF basis."""

    ambient: int
    basis: MatQ

    @staticmethod
    def from_rows(ambient: int, rows: Iterable[Iterable]) -> "Subspace":
        mat = MatQ.from_rows(rows)
        if mat.nrows and mat.ncols != ambient:
            raise DimensionMismatch(f"rows of width {mat.ncols} in ambient {ambient}")
        res = rref(mat)
        return Subspace(ambient, MatQ(res.matrix.rows[: res.rank]))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, MatQ(()))

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, MatQ.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for r in self.basis.rows:
            out.append(next(j for j, x in enumerate(r) if x != 0))
        return tuple(out)

    def reduce_vec(self, v: Sequence) -> Vec:
        """Residual of v after eliminating along the basis pivots."""
        residual = list(vec(v))
        if len(residual) != self.ambient:
            raise DimensionMismatch("vector/ambient mismatch")
        for row, p in zip(self.basis.rows, self.pivots):
            c = residual[p]
            if c:
                for j in range(self.ambient):
                    residual[j] -= c * row[j]
        return tuple(residual)

    def contains_vec(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce_vec(v))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        return all(self.contains_vec(r) for r in other.basis.rows)

    def coords_of(self, v: Sequence) -> Vec:
        """Coordinates of v in the RREF basis (pivot entries), error if outside."""
        v = vec(v)
        if not self.contains_vec(v):
            raise ValueError("vector outside subspace")
        return tuple(v[p] for p in self.pivots)

    def add(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        return Subspace.from_rows(self.ambient, self.basis.rows + other.basis.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        stacked = mat_vstack(self.basis, other.basis)
        relations = left_kernel(stacked)
        rows = [row_times_mat(rel[: self.dim], self.basis) for rel in relations.rows]
        return Subspace.from_rows(self.ambient, rows)

    def sort_key(self):
        return (self.dim, self.basis.rows)


# -- integer lattices ------------------------------------------------------------


def hnf(rows: Iterable[Sequence[int]]) -> tuple[IntVec, ...]:
    """Row Hermite normal form: canonical upper-echelon basis of the row span."""
    mat = [list(map(int, r)) for r in rows if not is_zero_vec(r)]
    if not mat:
        return ()
    ncols = len(mat[0])
    pr = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(pr, len(mat)) if mat[i][col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(mat[i][col]))
            base = nz[0]
            for i in nz[1:]:
                q = mat[i][col] // mat[base][col]
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[base])]
        nz = [i for i in range(pr, len(mat)) if mat[i][col]]
        if not nz:
            continue
        mat[pr], mat[nz[0]] = mat[nz[0]], mat[pr]
        if mat[pr][col] < 0:
            mat[pr] = [-a for a in mat[pr]]
        for i in range(pr):
            q = mat[i][col] // mat[pr][col]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[pr])]
        pr += 1
        if pr == len(mat):
            break
    return tuple(tuple(r) for r in mat if any(r))


def int_kernel(mat: Sequence[Sequence[int]]) -> tuple[IntVec, ...]:
    """Basis of the saturated lattice {x in Z^m : x @ mat = 0}."""
    m = len(mat)
    if m == 0:
        return ()
    k = len(mat[0])
    aug = [list(mat[i]) + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    reduced = hnf(aug)
    out = [r[k:] for r in reduced if is_zero_vec(r[:k])]
    # rows with zero data part may not be in canonical form as a set of tails
    return hnf(out)


@dataclass(frozen=True)
class Lattice:
    """A full or partial rank sublattice of Z^ambient in canonical HNF."""

    ambient: int
    basis: tuple[IntVec, ...]

    @staticmethod
    def from_rows(ambient: int, rows: Iterable[Sequence]) -> "Lattice":
        int_rows = []
        for r in rows:
            rr = []
            for x in r:
                f = Fraction(x)
                if f.denominator != 1:
                    raise ValueError("lattice rows must be integral")
                rr.append(f.numerator)
            if len(rr) != ambient:
                raise DimensionMismatch("row width vs ambient")
            int_rows.append(rr)
        return Lattice(ambient, hnf(int_rows))

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice(n, tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(ambient: int) -> "Lattice":
        return Lattice(ambient, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def basis_mat(self) -> MatQ:
        return MatQ.from_rows(self.basis)

    def span(self) -> Subspace:
        return Subspace.from_rows(self.ambient, self.basis)

    def coords_of(self, v: Sequence) -> IntVec | None:
        """Integer coefficients against the HNF basis, or None if outside."""
        residual = [Fraction(x) for x in v]
        if len(residual) != self.ambient:
            raise DimensionMismatch("vector/ambient mismatch")
        coeffs = []
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            c = residual[p] / row[p]
            if c.denominator != 1:
                return None
            coeffs.append(c.numerator)
            for j in range(self.ambient):
                residual[j] -= c * row[j]
        if not is_zero_vec(residual):
            return None
        return tuple(coeffs)

    def contains_vec(self, v: Sequence) -> bool:
        return self.coords_of(v) is not None

    def contains(self, other: "Lattice") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        return all(self.contains_vec(r) for r in other.basis)

    def add(self, other: "Lattice") -> "Lattice":
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        return Lattice(self.ambient, hnf(list(self.basis) + list(other.basis)))

    def intersect(self, other: "Lattice") -> "Lattice":
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        if self.is_zero or other.is_zero:
            return Lattice.zero(self.ambient)
        stacked = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        rows = []
        for rel in int_kernel(stacked):
            a = rel[: self.rank]
            rows.append([sum(a[i] * self.basis[i][j] for i in range(self.rank))
                         for j in range(self.ambient)])
        return Lattice(self.ambient, hnf(rows))

    def sort_key(self):
        return (self.rank, self.basis)


def lattice_intersect_subspace(lat: Lattice, sub: Subspace) -> Lattice:
    """The lattice {x in lat : x in sub}; saturated in lat by construction."""
    if lat.ambient != sub.ambient:
        raise DimensionMismatch("lattice/subspace ambient mismatch")
    if lat.is_zero or sub.dim == 0:
        return Lattice.zero(lat.ambient)
    normals = kernel(sub.basis)  # rows w with sub.basis @ w^T = 0
    if normals.nrows == 0:
        return lat  # subspace is everything
    cond = MatQ.from_rows(lat.basis) * normals.transpose()
    int_cols = []
    for j in range(cond.ncols):
        col = [cond.rows[i][j] for i in range(cond.nrows)]
        den = lcm(*(c.denominator for c in col))
        int_cols.append([int(c * den) for c in col])
    cond_int = [[int_cols[j][i] for j in range(len(int_cols))] for i in range(cond.nrows)]
    rows = []
    for c in int_kernel(cond_int):
        rows.append([sum(c[i] * lat.basis[i][j] for i in range(lat.rank))
                     for j in range(lat.ambient)])
    return Lattice(lat.ambient, hnf(rows))


def saturation(lat: Lattice, sub: "Lattice") -> Lattice:
    """Saturation of sub inside lat: lat's vectors in the rational span of sub."""
    return lattice_intersect_subspace(lat, sub.span())


# -- Smith normal form ------------------------------------------------------------


def snf(rows: Sequence[Sequence[int]]) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...], tuple[IntVec, ...]]:
    """Smith normal form with transforms: returns (D, U, V) with U @ A @ V = D.

    U and V are unimodular; D is diagonal with d1 | d2 | ... >= 0.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_sub(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, m)) \
                    and all(a[t][j] == 0 for j in range(t + 1, n)):
                break
        # divisibility: a[t][t] must divide the rest of the block
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    row_sub(t, i, -1)  # add row i to row t, then restart this t
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (tuple(tuple(r) for r in a),
            tuple(tuple(r) for r in u),
            tuple(tuple(r) for r in v))
