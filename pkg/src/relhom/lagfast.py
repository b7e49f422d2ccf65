"""Fast path for lag pairs: one factorization instead of two.

When the subfiltration is the ambient filtration delayed by a constant lag,
the boundary matrix sorted by b_f on both sides is strictly upper
triangular and admits a U-match decomposition of the symmetric form
J @ M = D @ J with a single triangular factor J.  The columns of J contain
bases for every relative cycle space and every relative boundary space at
once, so each column yields at most one bar directly, with birth and death
read off the matching exactly as in the general pipeline but with
b_g = b_f + lag substituted symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import Filtration
from .prh import Bar, Barcode, InvariantError, _bar_sort_key
from .sparse import Permutation, SparseMatrix
from .umatch import UmatchFactors, reduce_columns, validate as umatch_validate


@dataclass(frozen=True)
class LagFactors:
    """Single-factor decomposition j @ m = d @ j in ambient birth order."""

    j: SparseMatrix
    m: SparseMatrix
    ordering: Permutation  # position -> cell id, sorted by (b_f, dim, id)


def _ordered_boundary(filtration: Filtration) -> tuple[SparseMatrix, Permutation]:
    cells = filtration.cells
    m = len(cells)
    order = Permutation(sorted(range(m), key=lambda k: (cells[k].b_f, cells[k].dim, k)))
    pos_of = order.inverse
    cols = []
    for j in range(m):
        cell = cells[order.forward[j]]
        col = sorted((pos_of[f], v) for f, v in cell.boundary)
        if col and col[-1][0] >= j:
            raise ValueError("filtration is not face-monotone")
        cols.append(col)
    return SparseMatrix(m, m, filtration.field, cols), order


def lag_decompose(filtration: Filtration) -> LagFactors:
    """Symmetric U-match decomposition of the b_f-ordered boundary matrix.

    Derived from the same column reduction as the general factorization;
    because the input is a strictly upper triangular boundary matrix, every
    pivot row owns a zero reduced column, so the reduced pivot chains can
    replace the corresponding columns of the basis factor, giving one
    triangular factor that serves on both sides.
    """
    d, order = _ordered_boundary(filtration)
    field = filtration.field
    m = d.ncols
    rcols, vcols, low_owner = reduce_columns(d)
    jcols = [tuple(sorted(vc.items())) for vc in vcols]
    mcols: list = [()] * m
    for i, j in low_owner.items():
        if rcols[i]:
            raise InvariantError("pivot row owns a nonzero reduced column")
        rj = rcols[j]
        piv = rj[i]
        inv = field.inv(piv)
        jcols[i] = tuple(sorted((r, (w * inv) % field.p) for r, w in rj.items()))
        mcols[j] = ((i, piv),)
    jmat = SparseMatrix(m, m, field, jcols)
    mmat = SparseMatrix(m, m, field, mcols)
    return LagFactors(jmat, mmat, order)


def compute_prh_lag(filtration: Filtration, lag: float) -> Barcode:
    """Barcode of the pair (filtration, filtration delayed by lag).

    Produces the same bar multiset as the general pipeline run on the
    corresponding lag pair; representatives are the columns of the single
    triangular factor.  The lag is added symbolically in the birth/death
    lookups, never materialized per cell.
    """
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    factors = lag_decompose(filtration)
    d, _ = _ordered_boundary(filtration)
    shim = UmatchFactors(factors.j, factors.m, factors.j)
    if not umatch_validate(shim, d):
        raise InvariantError("lag factorization failed validation")

    cells = filtration.cells
    m = len(cells)
    order = factors.ordering
    b_f = [cells[order.forward[k]].b_f for k in range(m)]
    col_pair: dict[int, int] = {}
    row_pair: dict[int, int] = {}
    for j, col in enumerate(factors.m.columns):
        for i, _ in col:
            col_pair[j] = i
            row_pair[i] = j

    p = filtration.field.p
    bars = []
    for a in range(m):
        rho = col_pair.get(a)
        birth = b_f[a] if rho is None else max(b_f[a], b_f[rho] + lag)
        eta = row_pair.get(a)
        death = b_f[a] + lag if eta is None else min(b_f[a] + lag, b_f[eta])
        if not birth < death:
            continue
        chain = tuple(sorted((order.forward[r], v) for r, v in factors.j.column(a)))
        rep_dims = {cells[cid].dim for cid, _ in chain}
        if len(rep_dims) != 1:
            raise InvariantError("column chain is not homogeneous in dimension")
        bars.append(Bar(rep_dims.pop(), birth, death, chain))
    bars.sort(key=_bar_sort_key)
    return Barcode(tuple(bars), p, m, "lag")
