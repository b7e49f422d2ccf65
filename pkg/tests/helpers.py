"""Shared generators for randomized tests.

All randomness flows through an explicit numpy Generator so every test run
is reproducible from its documented seed.  Birth values are drawn from a
coarse grid of exact binary fractions, which creates plenty of ties and
keeps float comparisons exact.
"""

from __future__ import annotations

import itertools

import numpy as np

from relhom import Cell, FilteredPair, Filtration, PrimeField, SparseMatrix

VALUE_GRID = (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5)
FIELDS = (2, 3, 7)


def random_sparse(rng: np.random.Generator, nrows: int, ncols: int,
                  density: float, field: PrimeField) -> SparseMatrix:
    """Random matrix with independent entries, values uniform in 1..p-1."""
    entries = []
    for j in range(ncols):
        for i in range(nrows):
            if rng.random() < density:
                entries.append((i, j, int(rng.integers(1, field.p))))
    return SparseMatrix.from_entries(nrows, ncols, field, entries)


def _boundary_of(simplex: tuple[int, ...], index: dict, p: int):
    if len(simplex) == 1:
        return ()
    terms = []
    for k in range(len(simplex)):
        face = simplex[:k] + simplex[k + 1:]
        terms.append((index[face], (-1) ** k % p))
    return tuple(sorted(terms))


def random_simplicial_skeleton(rng: np.random.Generator, max_cells: int = 40,
                               n_vertices: int | None = None):
    """Random downward-closed 2-complex as a sorted simplex list."""
    n = int(rng.integers(3, 8)) if n_vertices is None else n_vertices
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
    edge_set = set(edges)
    triangles = [t for t in itertools.combinations(range(n), 3)
                 if all(e in edge_set for e in itertools.combinations(t, 2))
                 and rng.random() < 0.5]
    while n + len(edges) + len(triangles) > max_cells:
        if triangles:
            triangles.pop()
        else:
            edges.pop()
            edge_set = set(edges)
    simplices = [(v,) for v in range(n)] + edges + triangles
    simplices.sort(key=lambda s: (len(s), s))
    return simplices


def random_filtration(rng: np.random.Generator, field: PrimeField,
                      max_cells: int = 40) -> Filtration:
    """Random complex with a face-monotone b_f drawn from VALUE_GRID."""
    simplices = random_simplicial_skeleton(rng, max_cells)
    index = {s: k for k, s in enumerate(simplices)}
    b_f: dict[tuple, float] = {}
    cells = []
    for s in simplices:
        faces = [s[:k] + s[k + 1:] for k in range(len(s))] if len(s) > 1 else []
        bf = max([float(rng.choice(VALUE_GRID))] + [b_f[fc] for fc in faces])
        b_f[s] = bf
        cells.append(Cell(index[s], len(s) - 1,
                          _boundary_of(s, index, field.p), bf))
    return Filtration(cells, field)


def random_pair(rng: np.random.Generator, field: PrimeField,
                max_cells: int = 40) -> FilteredPair:
    """Random pair with independent face-monotone b_f and b_g, b_f <= b_g."""
    simplices = random_simplicial_skeleton(rng, max_cells)
    index = {s: k for k, s in enumerate(simplices)}
    b_f: dict[tuple, float] = {}
    b_g: dict[tuple, float] = {}
    cells = []
    for s in simplices:
        faces = [s[:k] + s[k + 1:] for k in range(len(s))] if len(s) > 1 else []
        bf = max([float(rng.choice(VALUE_GRID))] + [b_f[fc] for fc in faces])
        bg = max([bf + float(rng.choice(VALUE_GRID))] + [b_g[fc] for fc in faces])
        b_f[s], b_g[s] = bf, bg
        cells.append(Cell(index[s], len(s) - 1,
                          _boundary_of(s, index, field.p), bf, bg))
    return FilteredPair(cells, field)


def random_points(rng: np.random.Generator, n: int, dim: int = 2):
    return [tuple(float(x) for x in q) for q in rng.random((n, dim))]


def grid_points(spacing: float = 0.5, side: int = 3):
    return [(i * spacing, j * spacing) for i in range(side) for j in range(side)]
