"""Brute-force verification by dense linear algebra over GF(p).

Everything here is computed straight from the definitions, with no matrix
factorization: a relative p-cycle is a p-chain of the ambient complex at
time t whose boundary lies in the subcomplex at time t, and a relative
p-boundary is a boundary of an ambient (p+1)-chain plus a chain of the
subcomplex.  Subspaces are handled as explicit row-vector bases in the full
cell coordinate space, and barcodes are recovered from persistent Betti
numbers by inclusion-exclusion over the grid of critical values.

This module deliberately shares no code with the factorization pipelines
beyond the field and complex data model; it exists for trust, not speed.
Instances are capped at MAX_ORACLE_CELLS cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import FilteredPair, ensure_valid

MAX_ORACLE_CELLS = 2000


def _check_size(pair: FilteredPair) -> None:
    if len(pair.cells) > MAX_ORACLE_CELLS:
        raise ValueError(
            f"oracle capped at {MAX_ORACLE_CELLS} cells, got {len(pair.cells)}")


def _rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat, p: int) -> int:
    """Rank of a dense integer matrix over GF(p)."""
    a = np.atleast_2d(np.array(mat, dtype=np.int64))
    if a.size == 0:
        return 0
    return len(_rref(a, p)[1])


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Rows of the result form a basis of the kernel of mat over GF(p)."""
    a = np.atleast_2d(np.array(mat, dtype=np.int64))
    ncols = a.shape[1]
    if a.shape[0] == 0 or a.size == 0:
        return np.eye(ncols, dtype=np.int64)
    rref, pivots = _rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(pivots):
            basis[k, c] = (-rref[r, f]) % p
    return basis


@dataclass(frozen=True)
class SubspaceBasis:
    """Basis of a subspace of the full chain coordinate space."""

    ambient: int
    vectors: np.ndarray  # shape (dim, ambient), rows linearly independent

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def contains(self, vector: np.ndarray, p: int) -> bool:
        if self.dim == 0:
            return not np.any(np.asarray(vector) % p)
        stacked = np.vstack([self.vectors, np.asarray(vector, dtype=np.int64)])
        return rank_mod_p(stacked, p) == self.dim


def _empty_basis(m: int) -> SubspaceBasis:
    return SubspaceBasis(m, np.zeros((0, m), dtype=np.int64))


def _row_space(rows: np.ndarray, m: int, p: int) -> SubspaceBasis:
    if rows.shape[0] == 0:
        return _empty_basis(m)
    rref, pivots = _rref(rows, p)
    return SubspaceBasis(m, rref[: len(pivots)])


def relative_cycles(pair: FilteredPair, t: float, dim: int) -> SubspaceBasis:
    """Basis of the chains of dimension ``dim`` present at time t whose
    boundary lies in the subcomplex at time t."""
    _check_size(pair)
    cells = pair.cells
    m = len(cells)
    generators = [c.id for c in cells if c.dim == dim and c.b_f <= t]
    if not generators:
        return _empty_basis(m)
    constrained_rows = [c.id for c in cells if c.dim == dim - 1 and c.b_g > t]
    row_of = {cid: k for k, cid in enumerate(constrained_rows)}
    a = np.zeros((len(constrained_rows), len(generators)), dtype=np.int64)
    for col, cid in enumerate(generators):
        for f, v in cells[cid].boundary:
            r = row_of.get(f)
            if r is not None:
                a[r, col] = v
    kernel = nullspace_mod_p(a, pair.field.p)
    vectors = np.zeros((kernel.shape[0], m), dtype=np.int64)
    vectors[:, generators] = kernel
    return _row_space(vectors, m, pair.field.p)


def relative_boundaries(pair: FilteredPair, t: float, dim: int) -> SubspaceBasis:
    """Basis of boundaries of ambient (dim+1)-chains at time t plus chains
    of the subcomplex at time t, in dimension ``dim``."""
    _check_size(pair)
    cells = pair.cells
    m = len(cells)
    rows = []
    for c in cells:
        if c.dim == dim + 1 and c.b_f <= t:
            vec = np.zeros(m, dtype=np.int64)
            for f, v in c.boundary:
                vec[f] = v
            rows.append(vec)
        elif c.dim == dim and c.b_g <= t:
            vec = np.zeros(m, dtype=np.int64)
            vec[c.id] = 1
            rows.append(vec)
    if not rows:
        return _empty_basis(m)
    return _row_space(np.array(rows, dtype=np.int64), m, pair.field.p)


def relative_homology_dim(pair: FilteredPair, t: float, dim: int) -> int:
    """Dimension of the relative homology of the pair at time t."""
    z = relative_cycles(pair, t, dim)
    b = relative_boundaries(pair, t, dim)
    # dim Z - dim(Z intersect B), computed as dim(Z + B) - dim B
    return _sum_dim(z, b, pair.field.p) - b.dim


def _sum_dim(u: SubspaceBasis, w: SubspaceBasis, p: int) -> int:
    if u.dim == 0:
        return w.dim
    if w.dim == 0:
        return u.dim
    return rank_mod_p(np.vstack([u.vectors, w.vectors]), p)


def persistent_betti(pair: FilteredPair, s: float, t: float, dim: int) -> int:
    """Rank of the map on relative homology induced by inclusion, s <= t."""
    if s > t:
        raise ValueError("persistent Betti number requires s <= t")
    z = relative_cycles(pair, s, dim)
    b = relative_boundaries(pair, t, dim)
    return _sum_dim(z, b, pair.field.p) - b.dim


def critical_values(pair: FilteredPair) -> list[float]:
    """Sorted distinct birth values of both filtrations plus the terminal value."""
    vals = {c.b_f for c in pair.cells} | {c.b_g for c in pair.cells}
    vals.add(pair.t_end)
    return sorted(vals)


def reference_barcode(pair: FilteredPair) -> list[tuple[int, float, float]]:
    """Barcode multiset (dim, birth, death) by inclusion-exclusion on
    persistent Betti numbers across consecutive critical values.

    Bars with birth equal to death are discarded.  The result is sorted.
    """
    _check_size(pair)
    ensure_valid(pair)
    cells = pair.cells
    if not cells:
        return []
    grid = critical_values(pair)
    k = len(grid)
    p = pair.field.p
    maxdim = max(c.dim for c in cells)
    bars: list[tuple[int, float, float]] = []
    for dim in range(maxdim + 1):
        zs = [relative_cycles(pair, v, dim) for v in grid]
        bs = [relative_boundaries(pair, v, dim) for v in grid]
        beta = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(a, k):
                beta[a][b] = _sum_dim(zs[a], bs[b], p) - bs[b].dim
        for a in range(k):
            for b in range(a + 1, k):
                mult = beta[a][b - 1] - beta[a][b]
                if a > 0:
                    mult -= beta[a - 1][b - 1] - beta[a - 1][b]
                if mult < 0:
                    raise RuntimeError("negative bar multiplicity; oracle bug")
                bars.extend((dim, grid[a], grid[b]) for _ in range(mult))
    bars.sort()
    return bars


def verify_representative(pair: FilteredPair, bar) -> bool:
    """Check that a bar's representative witnesses its interval.

    The chain must be a relative cycle at the birth value, must not be a
    relative boundary anywhere on [birth, death) (tested at midpoints
    between consecutive critical values), and must be a relative boundary
    at the death value.
    """
    _check_size(pair)
    cells = pair.cells
    m = len(cells)
    p = pair.field.p
    chain = list(bar.representative)
    if not chain:
        return False
    dims = {cells[cid].dim for cid, _ in chain if 0 <= cid < m}
    if len(dims) != 1 or dims != {bar.dim}:
        return False
    vec = np.zeros(m, dtype=np.int64)
    for cid, v in chain:
        if not 0 <= cid < m or v % p == 0:
            return False
        vec[cid] = v % p

    if not relative_cycles(pair, bar.birth, bar.dim).contains(vec, p):
        return False
    samples = [bar.birth]
    samples += [v for v in critical_values(pair) if bar.birth < v < bar.death]
    samples.append(bar.death)
    for u, w in zip(samples, samples[1:]):
        mid = (u + w) / 2
        if relative_boundaries(pair, mid, bar.dim).contains(vec, p):
            return False
    return relative_boundaries(pair, bar.death, bar.dim).contains(vec, p)
