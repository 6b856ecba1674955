"""Exact matrices, reduced row-echelon forms and the subspace lattice.

All elimination goes through :class:`Echelon`, an incremental sparse
row-reducer that keeps its rows in reduced row-echelon form.  Linear systems
built by the other modules are fed row by row as ``{column: coefficient}``
dicts, which keeps the large but very sparse systems (thousands of equations
in a few hundred unknowns) cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DimensionMismatch, IndexOutOfRange
from .scalars import QQ, Field


class Matrix:
    """Immutable ``nrows x ncols`` matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "data", "_hash")

    def __init__(self, field: Field, data: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in data)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.data = rows
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.data = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, d: int, field: Field = QQ) -> "Matrix":
        one, zero = field.one, field.zero
        return cls._raw(field, tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d)), d)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        zero = field.zero
        return cls._raw(field, tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_vec(cls, vec: Sequence, d: int, field: Field = QQ) -> "Matrix":
        """Inverse of :meth:`vec`: reshape a length ``d*d`` row-major vector."""
        if len(vec) != d * d:
            raise DimensionMismatch("expected %d entries, got %d" % (d * d, len(vec)))
        return cls(field, [vec[i * d:(i + 1) * d] for i in range(d)], d)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field: Field = QQ) -> "Matrix":
        return cls(field, list(zip(*cols)), len(cols))

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def vec(self) -> tuple:
        return self.entries

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.data)
        return "Matrix([%s])" % body

    def _check_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape %dx%d vs %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._raw(self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._raw(self.field, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.data), self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.data), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("cannot multiply %dx%d by %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        zero = self.field.zero
        sparse_rows = [[(j, b) for j, b in enumerate(r) if b] for r in other.data]
        rows = []
        for r in self.data:
            acc = [zero] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in sparse_rows[k]:
                        acc[j] += a * b
            rows.append(tuple(acc))
        return Matrix._raw(self.field, tuple(rows), other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch("vector of length %d for %d columns" % (len(v), self.ncols))
        zero = self.field.zero
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((row[k] * a for k, a in nz), zero) for row in self.data)

    def transpose(self) -> "Matrix":
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0, self.field)
        return Matrix._raw(self.field, tuple(zip(*self.data)), self.nrows)

    T = property(transpose)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of a non-square matrix")
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "Matrix":
        d, F = self.nrows, self.field
        if d != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        eye = Matrix.identity(d, F).data
        R, piv = rref(Matrix._raw(F, tuple(r + e for r, e in zip(self.data, eye)), 2 * d))
        if piv[:d] != list(range(d)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(F, tuple(row[d:] for row in R.data[:d]), d)

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


class Echelon:
    """Incrementally maintained reduced row-echelon form of sparse rows.

    Rows are dicts ``{column: value}`` without zero entries.  Every stored row
    has a leading 1 at its pivot and no entries in any other pivot column.
    """

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        for c in [c for c in row if c in self.rows]:
            a = row.get(c)
            if not a:
                continue
            for k, v in self.rows[c].items():
                x = row.get(k, 0) - a * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it raised the rank."""
        row = self.reduce({k: v for k, v in row.items() if v})
        if not row:
            return False
        p = min(row)
        inv = self.field.one / row[p]
        row = {k: v * inv for k, v in row.items()}
        for q, other in self.rows.items():
            a = other.get(p)
            if a:
                for k, v in row.items():
                    x = other.get(k, 0) - a * v
                    if x:
                        other[k] = x
                    else:
                        other.pop(k, None)
        self.rows[p] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self) -> tuple:
        zero = self.field.zero
        out = []
        for p in sorted(self.rows):
            r = [zero] * self.ncols
            for k, v in self.rows[p].items():
                r[k] = v
            out.append(tuple(r))
        return tuple(out)

    def kernel_rows(self) -> list[tuple]:
        """A (not yet canonical) basis of the solutions of ``rows . x = 0``."""
        zero, one = self.field.zero, self.field.one
        free = [c for c in range(self.ncols) if c not in self.rows]
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for p, row in self.rows.items():
                a = row.get(f)
                if a:
                    v[p] = -a
            basis.append(tuple(v))
        return basis


def _sparse(v: Sequence) -> dict:
    return {k: x for k, x in enumerate(v) if x}


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (same shape as ``m``) and its pivot columns."""
    e = Echelon(m.ncols, m.field)
    for row in m.data:
        e.add(_sparse(row))
    rows = e.dense_rows()
    zero_row = (m.field.zero,) * m.ncols
    rows = rows + (zero_row,) * (m.nrows - len(rows))
    return Matrix._raw(m.field, rows, m.ncols), e.pivots()


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` held by its canonical RREF basis.

    Two subspaces are equal iff their RREF bases coincide, so ``==`` is
    subspace equality.  Build instances with :func:`span` or
    :meth:`Subspace.zero`/``full``; the constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple
    field: Field = dc_field(default=QQ, compare=True)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ) -> "Subspace":
        return cls(ambient_dim, (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim, field).data, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> list[int]:
        return [next(k for k, x in enumerate(row) if x) for row in self.basis]

    def basis_matrix(self) -> Matrix:
        return Matrix._raw(self.field, self.basis, self.ambient_dim)

    @cached_property
    def _echelon(self) -> Echelon:
        """Read-only: callers must not add rows to it."""
        e = Echelon(self.ambient_dim, self.field)
        for p, row in zip(self.pivots, self.basis):
            e.rows[p] = _sparse(row)
        return e

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return subspace_leq(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(self.field.format(x) for x in r) + ")" for r in self.basis)
        return "Subspace(%d, [%s])" % (self.ambient_dim, rows)


def span(vectors: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> Subspace:
    e = Echelon(ambient_dim, field)
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch("vector of length %d in %d-space" % (len(v), ambient_dim))
        e.add(_sparse([field(x) for x in v]))
    return Subspace(ambient_dim, e.dense_rows(), field)


def solve_homogeneous(rows: Iterable[dict], ncols: int, field: Field = QQ) -> Subspace:
    """Solution space of a homogeneous system given as sparse coefficient rows."""
    e = Echelon(ncols, field)
    for row in rows:
        e.add(row)
    return span(e.kernel_rows(), ncols, field)


def nullspace(m: Matrix) -> Subspace:
    """``{v : m v = 0}`` as a canonical subspace of ``field^m.ncols``."""
    return solve_homogeneous((_sparse(r) for r in m.data), m.ncols, m.field)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch("ambient dimensions %d and %d differ" % (a.ambient_dim, b.ambient_dim))
    if a.field != b.field:
        raise AmbientMismatch("subspaces over %s and %s" % (a.field, b.field))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return span(a.basis + b.basis, a.ambient_dim, a.field)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: row-reduce ``[[a, a], [b, 0]]``; rows ``(0, w)`` span a & b."""
    _check_ambient(a, b)
    n = a.ambient_dim
    zero = a.field.zero
    e = Echelon(2 * n, a.field)
    for row in a.basis:
        e.add(_sparse(row + row))
    for row in b.basis:
        e.add(_sparse(row + (zero,) * n))
    meet = [r[n:] for r in e.dense_rows() if not any(r[:n])]
    return span(meet, n, a.field)


def subspace_project(a: Subspace, coords: Sequence[int]) -> Subspace:
    """Image of ``a`` under the coordinate projection onto ``coords``."""
    for c in coords:
        if not 0 <= c < a.ambient_dim:
            raise IndexOutOfRange("coordinate %d outside [0, %d)" % (c, a.ambient_dim))
    return span([tuple(row[c] for c in coords) for row in a.basis], len(coords), a.field)


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise AmbientMismatch("vector of length %d in %d-space" % (len(v), a.ambient_dim))
    kind = type(a.field.zero)
    if not all(type(x) is kind for x in v):
        v = [a.field(x) for x in v]
    return not a._echelon.reduce(_sparse(v))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    _check_ambient(a, b)
    e = b._echelon
    return all(not e.reduce(_sparse(row)) for row in a.basis)


def coordinates(a: Subspace, v: Sequence) -> tuple:
    """Coefficients of ``v`` in the canonical basis of ``a`` (``v`` must lie in ``a``)."""
    if not contains(a, v):
        raise ValueError("vector is not in the subspace")
    return tuple(v[p] for p in a.pivots)
