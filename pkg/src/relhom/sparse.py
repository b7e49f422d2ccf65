"""Sparse column-major matrices over GF(p).

Every matrix in the factorization pipelines is stored in one format: a tuple
of columns, each column a tuple of (row, value) pairs with strictly
increasing row indices and nonzero values.  Matrices are immutable after
construction and all operations here are pure functions.

The text format used by the command line is::

    nrows ncols p
    i j v

with one ``i j v`` line per nonzero entry (0-indexed, v in {1, ..., p-1}),
entries in any order.  A duplicate (i, j) position is an input error.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .field import PrimeField

Column = tuple[tuple[int, int], ...]


class Permutation:
    """Bijection on {0, ..., n-1}. ``forward`` maps position to original index."""

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: Iterable[int]):
        fwd = tuple(forward)
        n = len(fwd)
        inv = [-1] * n
        for pos, orig in enumerate(fwd):
            if not 0 <= orig < n or inv[orig] != -1:
                raise ValueError("sequence is not a permutation")
            inv[orig] = pos
        self.forward = fwd
        self.inverse = tuple(inv)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.forward)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and other.forward == self.forward

    def __hash__(self) -> int:
        return hash(self.forward)

    def __repr__(self) -> str:
        return f"Permutation({list(self.forward)})"

    def inverted(self) -> "Permutation":
        return Permutation(self.inverse)


class SparseMatrix:
    """Immutable sparse matrix over a prime field, stored by columns."""

    __slots__ = ("nrows", "ncols", "field", "columns")

    def __init__(self, nrows: int, ncols: int, field: PrimeField,
                 columns: Sequence[Iterable[tuple[int, int]]]):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        p = field.p
        clean = []
        for j, col in enumerate(columns):
            prev = -1
            out = []
            for row, val in col:
                if not 0 <= row < nrows:
                    raise ValueError(f"row {row} out of range in column {j}")
                if row <= prev:
                    raise ValueError(f"rows not strictly increasing in column {j}")
                v = val % p
                if v == 0:
                    raise ValueError(f"zero coefficient stored at ({row}, {j})")
                out.append((row, v))
                prev = row
            clean.append(tuple(out))
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.columns = tuple(clean)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: PrimeField) -> "SparseMatrix":
        return cls(nrows, ncols, field, [()] * ncols)

    @classmethod
    def identity(cls, n: int, field: PrimeField) -> "SparseMatrix":
        return cls(n, n, field, [((i, 1),) for i in range(n)])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, field: PrimeField,
                     entries: Iterable[tuple[int, int, int]]) -> "SparseMatrix":
        """Build from (row, col, value) triples; duplicate positions are an error."""
        cols: list[dict[int, int]] = [dict() for _ in range(ncols)]
        for i, j, v in entries:
            if not 0 <= j < ncols:
                raise ValueError(f"column {j} out of range")
            if i in cols[j]:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            cols[j][i] = v
        return cls(nrows, ncols, field, [sorted(c.items()) for c in cols])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], field: PrimeField) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = []
        for j in range(ncols):
            col = [(i, rows[i][j] % field.p) for i in range(nrows) if rows[i][j] % field.p]
            cols.append(col)
        return cls(nrows, ncols, field, cols)

    def column(self, j: int) -> Column:
        return self.columns[j]

    def entry(self, i: int, j: int) -> int:
        for row, val in self.columns[j]:
            if row == i:
                return val
            if row > i:
                break
        return 0

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col:
                out[i][j] = v
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix)
                and other.nrows == self.nrows
                and other.ncols == self.ncols
                and other.field == self.field
                and other.columns == self.columns)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.field, self.columns))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols} over GF({self.field.p}), nnz={self.nnz})"


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Exact product a @ b over the shared field."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.ncols != b.nrows:
        raise ValueError(f"dimension mismatch: {a.ncols} columns vs {b.nrows} rows")
    p = a.field.p
    cols = []
    for j in range(b.ncols):
        acc: dict[int, int] = {}
        for r, v in b.columns[j]:
            for i, w in a.columns[r]:
                nv = (acc.get(i, 0) + v * w) % p
                if nv:
                    acc[i] = nv
                else:
                    acc.pop(i, None)
        cols.append(sorted(acc.items()))
    return SparseMatrix(a.nrows, b.ncols, a.field, cols)


def permute_columns(a: SparseMatrix, perm: Permutation) -> SparseMatrix:
    """Column j of the result is column perm.forward[j] of ``a``."""
    if len(perm) != a.ncols:
        raise ValueError("permutation size does not match column count")
    return SparseMatrix(a.nrows, a.ncols, a.field,
                        [a.columns[perm.forward[j]] for j in range(a.ncols)])


def permute_rows(a: SparseMatrix, perm: Permutation) -> SparseMatrix:
    """Row i of the result is row perm.forward[i] of ``a``."""
    if len(perm) != a.nrows:
        raise ValueError("permutation size does not match row count")
    inv = perm.inverse
    cols = [sorted((inv[r], v) for r, v in col) for col in a.columns]
    return SparseMatrix(a.nrows, a.ncols, a.field, cols)


def is_unit_upper_triangular(t: SparseMatrix) -> bool:
    """True iff ``t`` is square with ones on the diagonal and zeros below it."""
    if t.nrows != t.ncols:
        return False
    for j, col in enumerate(t.columns):
        # rows are sorted, so the last entry is the lowest nonzero
        if not col or col[-1] != (j, 1):
            return False
    return True


def _column_bits(col: Column) -> int:
    x = 0
    for r, _ in col:
        x |= 1 << r
    return x


def _solve_column_gfp(tcols, items, p: int) -> Column:
    # Back substitution from the bottom row up; tcols must be unit upper
    # triangular, so consuming row i only touches rows above i.
    work = dict(items)
    heap = [-r for r in work]
    heapq.heapify(heap)
    out = []
    while heap:
        i = -heapq.heappop(heap)
        v = work.pop(i, 0)
        if not v:
            continue
        out.append((i, v))
        for r, w in tcols[i]:
            if r == i:
                continue
            cur = work.get(r, 0)
            nv = (cur - v * w) % p
            if nv:
                if cur == 0:
                    heapq.heappush(heap, -r)
                work[r] = nv
            else:
                work.pop(r, None)
    out.sort()
    return tuple(out)


def solve_upper_unitriangular(t: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Solve t @ x = b by per-column back substitution.

    ``t`` must be square, upper triangular with unit diagonal.
    """
    if not is_unit_upper_triangular(t):
        raise ValueError("matrix is not unit upper triangular")
    if t.field != b.field:
        raise ValueError("field mismatch")
    if t.ncols != b.nrows:
        raise ValueError("dimension mismatch")
    p = t.field.p
    if p == 2:
        tbits = [_column_bits(c) for c in t.columns]
        cols = []
        for j in range(b.ncols):
            rem = _column_bits(b.columns[j])
            rows = []
            while rem:
                i = rem.bit_length() - 1
                rows.append(i)
                rem ^= tbits[i]
            rows.sort()
            cols.append([(i, 1) for i in rows])
        return SparseMatrix(t.nrows, b.ncols, t.field, cols)
    cols = [_solve_column_gfp(t.columns, col, p) for col in b.columns]
    return SparseMatrix(t.nrows, b.ncols, t.field, cols)


def invert_upper_unitriangular(t: SparseMatrix) -> SparseMatrix:
    return solve_upper_unitriangular(t, SparseMatrix.identity(t.nrows, t.field))


def write_matrix(m: SparseMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m.nrows} {m.ncols} {m.field.p}\n")
        for j, col in enumerate(m.columns):
            for i, v in col:
                fh.write(f"{i} {j} {v}\n")


def read_matrix(path) -> SparseMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        header = None
        entries = []
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 3:
                    raise ValueError(f"{path}:{lineno}: header must be 'nrows ncols p'")
                header = tuple(int(x) for x in parts)
                continue
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: entry must be 'i j v'")
            entries.append(tuple(int(x) for x in parts))
    if header is None:
        raise ValueError(f"{path}: empty matrix file")
    nrows, ncols, p = header
    field = PrimeField(p)
    for i, j, v in entries:
        if not 0 <= i < nrows or not 0 <= j < ncols:
            raise ValueError(f"{path}: entry ({i}, {j}) out of range")
        if not 1 <= v < p:
            raise ValueError(f"{path}: value {v} outside {{1, ..., {p - 1}}}")
    return SparseMatrix.from_entries(nrows, ncols, field, entries)
