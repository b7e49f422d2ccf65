"""Filtered cell complexes and the pair of filtrations they carry.

A :class:`Filtration` is a finite cell complex in which every cell has a
real birth value ``b_f``.  A :class:`FilteredPair` additionally carries a
second birth function ``b_g`` describing a nested subfiltration: a cell
belongs to the subcomplex at time t iff ``b_g <= t``, and the pair axioms
require ``b_f <= b_g`` cellwise (the subcomplex is contained in the ambient
complex at every level) plus face monotonicity of both birth functions.

File formats
------------
Point cloud: one point per line, whitespace- or comma-separated decimal
coordinates, uniform dimension.

Explicit complex: one cell per line::

    id dim b_f b_g face_id:coeff,face_id:coeff,...

with an empty boundary field for vertices and ids dense from 0.  A ``b_g``
of ``inf`` marks a cell that never enters the subfiltration; loading
replaces it with the terminal value (the maximum finite birth), which makes
every pair terminate with the subcomplex equal to the whole complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .field import PrimeField
from .sparse import Permutation, SparseMatrix


@dataclass(frozen=True)
class Cell:
    """One cell: dense id, dimension, boundary chain, and birth values."""

    id: int
    dim: int
    boundary: tuple[tuple[int, int], ...]
    b_f: float
    b_g: float | None = None


@dataclass(frozen=True)
class Violation:
    kind: str
    cell: int
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} (cell {self.cell}): {self.detail}"


class InvalidPairError(ValueError):
    """Raised when an operation requires a pair that fails validation."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid filtered pair: {lines}{more}")


class Filtration:
    """Cell complex filtered by a single birth function b_f."""

    __slots__ = ("cells", "field")

    def __init__(self, cells: Iterable[Cell], field: PrimeField):
        self.cells = tuple(cells)
        self.field = field

    def __len__(self) -> int:
        return len(self.cells)


class FilteredPair:
    """Cell complex with two nested filtrations and a terminal value.

    ``t_end`` defaults to the maximum birth value over both filtrations, so
    the subcomplex equals the whole complex at ``t_end`` and every homology
    class eventually dies.
    """

    __slots__ = ("cells", "field", "t_end")

    def __init__(self, cells: Iterable[Cell], field: PrimeField,
                 t_end: float | None = None):
        self.cells = tuple(cells)
        self.field = field
        if t_end is None:
            t_end = 0.0
            for c in self.cells:
                if c.b_f > t_end:
                    t_end = c.b_f
                if c.b_g is not None and c.b_g > t_end:
                    t_end = c.b_g
        self.t_end = t_end

    def __len__(self) -> int:
        return len(self.cells)


def validate_pair(pair: FilteredPair) -> list[Violation]:
    """All structural violations of the pair axioms, as data.

    An empty list means the pair is valid: dense ids, faces one dimension
    down, both birth functions face-monotone, b_f <= b_g on every cell,
    boundary-of-boundary zero over GF(p), and all births at most t_end.
    """
    cells = pair.cells
    p = pair.field.p
    out: list[Violation] = []
    for pos, c in enumerate(cells):
        if c.id != pos:
            out.append(Violation("cell-id", c.id, f"expected dense id {pos}"))
    if out:
        return out

    for c in cells:
        if not math.isfinite(c.b_f):
            out.append(Violation("birth-not-finite", c.id, f"b_f = {c.b_f}"))
        if c.b_g is None or not math.isfinite(c.b_g):
            out.append(Violation("birth-not-finite", c.id, f"b_g = {c.b_g}"))
    if out:
        return out

    for c in cells:
        seen = set()
        for f, coeff in c.boundary:
            if not 0 <= f < len(cells):
                out.append(Violation("face-out-of-range", c.id, f"face {f}"))
                continue
            if f in seen:
                out.append(Violation("duplicate-face", c.id, f"face {f}"))
            seen.add(f)
            face = cells[f]
            if face.dim != c.dim - 1:
                out.append(Violation(
                    "face-dimension", c.id,
                    f"face {f} has dim {face.dim}, expected {c.dim - 1}"))
            if coeff % p == 0:
                out.append(Violation("zero-coefficient", c.id, f"face {f}"))
            if face.b_f > c.b_f:
                out.append(Violation(
                    "face-monotone-f", c.id,
                    f"face {f} born at {face.b_f} after {c.b_f}"))
            if face.b_g > c.b_g:
                out.append(Violation(
                    "face-monotone-g", c.id,
                    f"face {f} enters subcomplex at {face.b_g} after {c.b_g}"))
        if c.b_g < c.b_f:
            out.append(Violation(
                "pair-containment", c.id, f"b_g = {c.b_g} < b_f = {c.b_f}"))
        if c.b_f > pair.t_end or c.b_g > pair.t_end:
            out.append(Violation(
                "terminal", c.id, f"birth after t_end = {pair.t_end}"))
    if out:
        return out

    # boundary of boundary must vanish over GF(p)
    for c in cells:
        acc: dict[int, int] = {}
        for f, a in c.boundary:
            for g, b in cells[f].boundary:
                nv = (acc.get(g, 0) + a * b) % p
                if nv:
                    acc[g] = nv
                else:
                    acc.pop(g, None)
        if acc:
            out.append(Violation("boundary-square", c.id,
                                 "boundary of boundary is nonzero"))
    return out


def ensure_valid(pair: FilteredPair) -> None:
    violations = validate_pair(pair)
    if violations:
        raise InvalidPairError(violations)


def build_rips(points: Sequence[Sequence[float]], max_dim: int,
               max_radius: float, field: PrimeField) -> Filtration:
    """Vietoris-Rips filtration of a point cloud.

    Contains every simplex of dimension at most ``max_dim`` whose vertex set
    has pairwise Euclidean distance at most ``max_radius``; the birth value
    of a simplex is its diameter (0 for vertices).  Boundary coefficients
    follow the alternating-sign convention on ascending vertex order,
    reduced mod p.
    """
    pts = [tuple(float(x) for x in q) for q in points]
    if not pts:
        raise ValueError("empty point cloud")
    d0 = len(pts[0])
    if any(len(q) != d0 for q in pts):
        raise ValueError("points must share one coordinate dimension")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points in cloud")
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if max_radius < 0:
        raise ValueError("max_radius must be nonnegative")

    n = len(pts)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = math.dist(pts[i], pts[j])
            dist[i][j] = d
            dist[j][i] = d
    upper = [frozenset(j for j in range(i + 1, n) if dist[i][j] <= max_radius)
             for i in range(n)]

    simplices: list[tuple[tuple[int, ...], float]] = [((i,), 0.0) for i in range(n)]
    frontier = simplices
    for _ in range(max_dim):
        grown = []
        for verts, diam in frontier:
            cands = upper[verts[0]]
            for v in verts[1:]:
                cands = cands & upper[v]
            for w in sorted(cands):
                grown.append((verts + (w,), max(diam, max(dist[v][w] for v in verts))))
        simplices.extend(grown)
        frontier = grown

    simplices.sort(key=lambda s: (len(s[0]), s[0]))
    index = {verts: k for k, (verts, _) in enumerate(simplices)}
    p = field.p
    cells = []
    for k, (verts, diam) in enumerate(simplices):
        if len(verts) == 1:
            bnd: tuple[tuple[int, int], ...] = ()
        else:
            faces = []
            for drop in range(len(verts)):
                face = verts[:drop] + verts[drop + 1:]
                faces.append((index[face], (-1) ** drop % p))
            bnd = tuple(sorted(faces))
        cells.append(Cell(id=k, dim=len(verts) - 1, boundary=bnd, b_f=diam))
    return Filtration(cells, field)


def apply_lag(filtration: Filtration, lag: float) -> FilteredPair:
    """Pair a filtration with its own copy delayed by a constant lag.

    Every cell enters the subfiltration ``lag`` later than the ambient
    filtration: b_g = b_f + lag.  The terminal value is max(b_f) + lag.
    """
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    cells = [replace(c, b_g=c.b_f + lag) for c in filtration.cells]
    return FilteredPair(cells, filtration.field)


def boundary_matrix(pair: FilteredPair) -> tuple[SparseMatrix, Permutation, Permutation]:
    """Boundary matrix with rows in b_g order and columns in b_f order.

    Returns (d, tau, sigma) where sigma sorts cells by ascending b_f and tau
    by ascending b_g, ties broken by (dimension, cell id) so faces precede
    cofaces within equal birth values.  Entry (i, j) of d is the coefficient
    of cell tau.forward[i] in the boundary of cell sigma.forward[j].
    """
    ensure_valid(pair)
    cells = pair.cells
    m = len(cells)
    sigma = Permutation(sorted(range(m), key=lambda k: (cells[k].b_f, cells[k].dim, k)))
    tau = Permutation(sorted(range(m), key=lambda k: (cells[k].b_g, cells[k].dim, k)))
    row_of = tau.inverse
    cols = []
    for j in range(m):
        cell = cells[sigma.forward[j]]
        cols.append(sorted((row_of[f], v) for f, v in cell.boundary))
    return SparseMatrix(m, m, pair.field, cols), tau, sigma


def load_points(path) -> list[tuple[float, ...]]:
    """Parse a point cloud file (one point per line)."""
    pts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.replace(",", " ").split()
            try:
                pts.append(tuple(float(x) for x in parts))
            except ValueError as e:
                raise ValueError(f"{path}:{lineno}: bad coordinate: {e}") from e
    if not pts:
        raise ValueError(f"{path}: no points found")
    return pts


def load_pair(path, field: PrimeField) -> tuple[FilteredPair, bool]:
    """Parse an explicit complex file into a pair.

    Returns (pair, extended) where ``extended`` reports whether any b_g was
    ``inf`` and got replaced by the terminal value.
    """
    rows: dict[int, Cell] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(maxsplit=4)
            if len(parts) < 4:
                raise ValueError(f"{path}:{lineno}: need 'id dim b_f b_g [faces]'")
            try:
                cid = int(parts[0])
                dim = int(parts[1])
                b_f = float(parts[2])
                b_g = float(parts[3])
            except ValueError as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
            boundary = []
            if len(parts) == 5 and parts[4]:
                for item in parts[4].split(","):
                    try:
                        fid, coeff = item.split(":")
                        boundary.append((int(fid), int(coeff)))
                    except ValueError as e:
                        raise ValueError(
                            f"{path}:{lineno}: bad boundary term {item!r}") from e
            if cid in rows:
                raise ValueError(f"{path}:{lineno}: duplicate cell id {cid}")
            rows[cid] = Cell(id=cid, dim=dim, boundary=tuple(sorted(boundary)),
                             b_f=b_f, b_g=b_g)
    cells = [rows[k] for k in sorted(rows)]
    if [c.id for c in cells] != list(range(len(cells))):
        raise ValueError(f"{path}: cell ids must be dense from 0")

    finite = [v for c in cells for v in (c.b_f, c.b_g) if math.isfinite(v)]
    t_end = max(finite) if finite else 0.0
    extended = False
    fixed = []
    for c in cells:
        if math.isinf(c.b_g):
            fixed.append(replace(c, b_g=t_end))
            extended = True
        else:
            fixed.append(c)
    return FilteredPair(fixed, field), extended
