"""U-match factorization of sparse matrices over GF(p).

A U-match decomposition of a matrix D is a triple (T, M, S) with
T @ M = D @ S, where T and S are unit upper triangular and M is a
generalized matching matrix (at most one nonzero per row and per column).
It is computed here from a left-to-right column reduction R = D @ V with
pivots at the lowest nonzero row of each column.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .field import PrimeField
from .sparse import SparseMatrix, is_unit_upper_triangular, matmul


@dataclass(frozen=True)
class UmatchFactors:
    """Factors (t, m, s) with t @ m = d @ s for the decomposed matrix d.

    ``pairing`` records the reduction provenance: it maps column j of d to
    the pivot row i carrying the nonzero entry m[i, j].
    """

    t: SparseMatrix
    m: SparseMatrix
    s: SparseMatrix
    pairing: dict[int, int] = dataclass_field(default_factory=dict)


def _reduce_gf2(cols: list[int]) -> tuple[list[int], list[int], dict[int, int]]:
    """Column reduction over GF(2) on columns packed as int bitmasks."""
    rcols = list(cols)
    vcols = [1 << j for j in range(len(cols))]
    low_owner: dict[int, int] = {}
    for j in range(len(rcols)):
        col = rcols[j]
        while col:
            i = col.bit_length() - 1
            k = low_owner.get(i)
            if k is None:
                low_owner[i] = j
                break
            col ^= rcols[k]
            vcols[j] ^= vcols[k]
        rcols[j] = col
    return rcols, vcols, low_owner


def _reduce_gfp(cols: list[dict[int, int]], field: PrimeField):
    """Column reduction over GF(p) on columns stored as row -> value dicts."""
    p = field.p
    rcols = [dict(c) for c in cols]
    vcols: list[dict[int, int]] = [{j: 1} for j in range(len(cols))]
    low_owner: dict[int, int] = {}
    for j in range(len(rcols)):
        col = rcols[j]
        while col:
            i = max(col)
            k = low_owner.get(i)
            if k is None:
                low_owner[i] = j
                break
            f = (col[i] * field.inv(rcols[k][i])) % p
            for r, w in rcols[k].items():
                nv = (col.get(r, 0) - f * w) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
            vj = vcols[j]
            for r, w in vcols[k].items():
                nv = (vj.get(r, 0) - f * w) % p
                if nv:
                    vj[r] = nv
                else:
                    vj.pop(r, None)
    return rcols, vcols, low_owner


def _bits_to_dict(x: int) -> dict[int, int]:
    out = {}
    i = 0
    while x:
        tz = (x & -x).bit_length() - 1
        i += tz
        out[i] = 1
        x >>= tz + 1
        i += 1
    return out


def reduce_columns(d: SparseMatrix):
    """Left-to-right reduction of d; returns (rcols, vcols, low_owner).

    rcols and vcols are dicts mapping row to value; low_owner maps each
    pivot row to the column it owns.  R = D @ V holds exactly, V is unit
    upper triangular, and the nonzero columns of R have pairwise distinct
    lowest nonzero rows.
    """
    if d.field.p == 2:
        bits = [sum(1 << r for r, _ in col) for col in d.columns]
        rcols, vcols, low_owner = _reduce_gf2(bits)
        return ([_bits_to_dict(c) for c in rcols],
                [_bits_to_dict(c) for c in vcols],
                low_owner)
    cols = [dict(col) for col in d.columns]
    return _reduce_gfp(cols, d.field)


def umatch_decompose(d: SparseMatrix) -> UmatchFactors:
    """Compute a U-match decomposition of an arbitrary matrix.

    Deterministic for a fixed input.  The result satisfies all three
    axioms by construction; ``validate`` checks them independently.
    """
    field = d.field
    rcols, vcols, low_owner = reduce_columns(d)
    tcols: list = [((i, 1),) for i in range(d.nrows)]
    mcols: list = [()] * d.ncols
    pairing: dict[int, int] = {}
    for i, j in low_owner.items():
        rj = rcols[j]
        piv = rj[i]
        inv = field.inv(piv)
        tcols[i] = tuple(sorted((r, (w * inv) % field.p) for r, w in rj.items()))
        mcols[j] = ((i, piv),)
        pairing[j] = i
    scols = [tuple(sorted(vc.items())) for vc in vcols]
    t = SparseMatrix(d.nrows, d.nrows, field, tcols)
    m = SparseMatrix(d.nrows, d.ncols, field, mcols)
    s = SparseMatrix(d.ncols, d.ncols, field, scols)
    return UmatchFactors(t, m, s, pairing)


def is_matching_matrix(m: SparseMatrix) -> bool:
    """True iff m has at most one nonzero per row and per column."""
    seen_rows: set[int] = set()
    for col in m.columns:
        if len(col) > 1:
            return False
        for r, _ in col:
            if r in seen_rows:
                return False
            seen_rows.add(r)
    return True


def validate(factors: UmatchFactors, d: SparseMatrix) -> bool:
    """Exact check of the three factorization axioms against d."""
    t, m, s = factors.t, factors.m, factors.s
    if (t.nrows, t.ncols) != (d.nrows, d.nrows):
        raise ValueError("t has wrong shape")
    if (s.nrows, s.ncols) != (d.ncols, d.ncols):
        raise ValueError("s has wrong shape")
    if (m.nrows, m.ncols) != (d.nrows, d.ncols):
        raise ValueError("m has wrong shape")
    if not (is_unit_upper_triangular(t) and is_unit_upper_triangular(s)):
        return False
    if not is_matching_matrix(m):
        return False
    return matmul(t, m) == matmul(d, s)
