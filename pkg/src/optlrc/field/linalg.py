"""Dense exact linear algebra over any field object.

A field object exposes ``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``
and ``inv``; both :class:`BaseField` and :class:`ExtField` qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import ShapeError, SingularMatrixError


@dataclass(frozen=True)
class Matrix:
    field: object
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        columns = [tuple(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls(field, tuple(tuple(c[i] for c in columns) for i in range(nrows)))

    @classmethod
    def identity(cls, field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, field, values: Sequence) -> Matrix:
        n = len(values)
        z = field.zero
        return cls(field, tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, cols: Iterable[int]) -> Matrix:
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.ncols:
                raise ShapeError(f"column index {j} out of range for {self.ncols} columns")
        return Matrix(self.field, tuple(tuple(row[j] for j in cols) for row in self.rows))

    def transpose(self) -> Matrix:
        return Matrix.from_columns(self.field, self.rows, self.ncols)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(self.field, tuple(tuple(dot(self.field, row, c) for c in cols) for row in self.rows))


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise ShapeError("blocks have different row counts")
    return Matrix(field, tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows)))


def dot(field, u, v):
    acc = field.zero
    zero = field.zero
    for a, b in zip(u, v):
        if a != zero and b != zero:
            acc = field.add(acc, field.mul(a, b))
    return acc


def vecmat(v: Sequence, M: Matrix) -> tuple:
    """Row vector times matrix: ``v · M``."""
    if len(v) != M.nrows:
        raise ShapeError(f"vector of length {len(v)} cannot multiply a {M.shape} matrix")
    return tuple(dot(M.field, v, c) for c in M.columns())


def matvec(M: Matrix, v: Sequence) -> tuple:
    """Matrix times column vector: ``M · v``."""
    if len(v) != M.ncols:
        raise ShapeError(f"{M.shape} matrix cannot multiply a vector of length {len(v)}")
    return tuple(dot(M.field, row, v) for row in M.rows)


class Basis:
    """Incrementally built echelon basis of a subspace.

    Each stored row has a one at its pivot and zeros at the pivots of the
    rows stored before it, so reducing a vector against the rows in
    insertion order clears every pivot.
    """

    def __init__(self, field):
        self.field = field
        self._rows: list[tuple[int, list]] = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def copy(self) -> Basis:
        other = Basis(self.field)
        other._rows = list(self._rows)
        return other

    def reduce(self, v) -> list:
        F = self.field
        zero = F.zero
        v = list(v)
        for piv, row in self._rows:
            c = v[piv]
            if c != zero:
                for j, x in enumerate(row):
                    if x != zero:
                        v[j] = F.sub(v[j], F.mul(c, x))
        return v

    def contains(self, v) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.reduce(v))

    def add(self, v) -> bool:
        """Insert ``v``; return False (and leave the basis unchanged) if dependent."""
        F = self.field
        zero = F.zero
        v = self.reduce(v)
        for piv, x in enumerate(v):
            if x != zero:
                inv = F.inv(x)
                self._rows.append((piv, [F.mul(inv, y) if y != zero else zero for y in v]))
                return True
        return False


def rank_of(M: Matrix, cols: Iterable[int] | None = None) -> int:
    """Rank of the selected columns of ``M`` (all columns when ``cols`` is None)."""
    if cols is None:
        cols = range(M.ncols)
    basis = Basis(M.field)
    for j in cols:
        if not 0 <= j < M.ncols:
            raise ShapeError(f"column index {j} out of range for {M.ncols} columns")
        basis.add(M.column(j))
        if basis.rank == M.nrows:
            break
    return basis.rank


def solve_square(M: Matrix, y: Sequence) -> tuple:
    """Unique ``x`` with ``M · x = y`` for square invertible ``M``."""
    n = M.nrows
    if M.ncols != n:
        raise ShapeError(f"solve_square needs a square matrix, got {M.shape}")
    if len(y) != n:
        raise ShapeError(f"right-hand side has length {len(y)}, expected {n}")
    F = M.field
    aug = [list(row) + [yi] for row, yi in zip(M.rows, y)]
    _gauss_jordan(F, aug, n)
    return tuple(row[n] for row in aug)


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if M.ncols != n:
        raise ShapeError(f"inverse needs a square matrix, got {M.shape}")
    F = M.field
    eye = Matrix.identity(F, n).rows
    aug = [list(row) + list(e) for row, e in zip(M.rows, eye)]
    _gauss_jordan(F, aug, n)
    return Matrix(F, tuple(tuple(row[n:]) for row in aug))


def _gauss_jordan(F, aug, n):
    zero = F.zero
    width = len(aug[0]) if aug else 0
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != zero), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (rank < {n})")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        prow = [F.mul(inv, x) if x != zero else zero for x in aug[col]]
        aug[col] = prow
        for i in range(n):
            if i == col:
                continue
            c = aug[i][col]
            if c != zero:
                row = aug[i]
                for j in range(col, width):
                    if prow[j] != zero:
                        row[j] = F.sub(row[j], F.mul(c, prow[j]))


def determinant(M: Matrix):
    """Determinant by Gaussian elimination."""
    n = M.nrows
    if M.ncols != n:
        raise ShapeError("determinant needs a square matrix")
    F = M.field
    zero = F.zero
    a = [list(r) for r in M.rows]
    det = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != zero), None)
        if piv is None:
            return zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = F.neg(det)
        det = F.mul(det, a[col][col])
        inv = F.inv(a[col][col])
        for i in range(col + 1, n):
            c = a[i][col]
            if c != zero:
                f = F.mul(c, inv)
                for j in range(col, n):
                    a[i][j] = F.sub(a[i][j], F.mul(f, a[col][j]))
    return det
