"""Persistent relative homology of a filtered pair, with representatives.

The pipeline runs two U-match factorizations.  The first factors the
boundary matrix with rows sorted by the subfiltration births and columns by
the ambient births; its triangular factors carry bases for the relative
boundary spaces (left factor, T) and relative cycle spaces (right factor,
S).  Two lookup values attach filtration data to their columns:

* ``fim`` of a column of T is the time its chain becomes a relative
  boundary: min(b_g of the column cell, b_f of the matched column) when the
  matching pairs that row, else b_g of the column cell.
* ``fker`` of a column of S is the time its chain becomes a relative
  cycle: max(b_f of the column cell, b_g of the matched row) when the
  matching pairs that column, else b_f of the column cell (an empty
  boundary imposes no subcomplex constraint).

Re-sorting the columns of T by fim and of S by fker and factoring the
quotient of the two re-sorted factors yields a single matrix whose columns
generate both filtrations of subspaces at once; each matched column gives a
bar (birth = fker, death = fim) with the column chain as representative.
Zero-length bars are discarded.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .complexes import FilteredPair, boundary_matrix
from .sparse import Permutation, permute_columns, permute_rows, solve_upper_unitriangular
from .umatch import umatch_decompose, validate as umatch_validate

Chain = tuple[tuple[int, int], ...]


class InvariantError(RuntimeError):
    """A pipeline postcondition failed; this indicates an internal bug."""


@dataclass(frozen=True)
class Bar:
    """Half-open interval [birth, death) with a relative cycle representative."""

    dim: int
    birth: float
    death: float
    representative: Chain


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]
    field_modulus: int
    cell_count: int
    pipeline: str

    def triples(self) -> list[tuple[int, float, float]]:
        """Sorted (dim, birth, death) multiset, ignoring representatives."""
        return sorted((b.dim, b.birth, b.death) for b in self.bars)


def fim_of_t_column(i: int, row_pair: dict[int, int],
                    b_g_rows: list[float], b_f_cols: list[float]) -> float:
    """Relative-boundary value of column i of the left triangular factor."""
    j = row_pair.get(i)
    if j is None:
        return b_g_rows[i]
    return min(b_g_rows[i], b_f_cols[j])


def fker_of_s_column(j: int, col_pair: dict[int, int],
                     b_g_rows: list[float], b_f_cols: list[float]) -> float:
    """Relative-cycle value of column j of the right triangular factor."""
    i = col_pair.get(j)
    if i is None:
        return b_f_cols[j]
    return max(b_f_cols[j], b_g_rows[i])


def _bar_sort_key(bar: Bar):
    return (bar.dim, bar.birth, bar.death, bar.representative)


def compute_prh(pair: FilteredPair) -> Barcode:
    """Barcode of a filtered pair via two U-match factorizations.

    Both factorizations are re-validated on every run and any violated
    postcondition raises :class:`InvariantError`.  Deterministic for a
    fixed input.
    """
    dbar, tau, sigma = boundary_matrix(pair)
    field = pair.field
    cells = pair.cells
    m = len(cells)

    first = umatch_decompose(dbar)
    if not umatch_validate(first, dbar):
        raise InvariantError("first factorization failed validation")

    b_g_rows = [cells[tau.forward[i]].b_g for i in range(m)]
    b_f_cols = [cells[sigma.forward[j]].b_f for j in range(m)]
    col_pair = first.pairing
    row_pair = {i: j for j, i in col_pair.items()}
    fim = [fim_of_t_column(i, row_pair, b_g_rows, b_f_cols) for i in range(m)]
    fker = [fker_of_s_column(j, col_pair, b_g_rows, b_f_cols) for j in range(m)]

    beta = sorted(range(m), key=lambda i: (fim[i], i))
    gamma = sorted(range(m), key=lambda j: (fker[j], j))

    # Right factor with rows re-indexed from ambient order to subcomplex
    # order and columns re-sorted by fker; the quotient against the fim-
    # sorted left factor is materialized with solves against the genuinely
    # triangular T, then a row permutation.
    row_map = Permutation([sigma.inverse[tau.forward[i]] for i in range(m)])
    b_sorted = permute_rows(permute_columns(first.s, Permutation(gamma)), row_map)
    x = solve_upper_unitriangular(first.t, b_sorted)
    quotient = permute_rows(x, Permutation(beta))

    second = umatch_decompose(quotient)
    if not umatch_validate(second, quotient):
        raise InvariantError("second factorization failed validation")
    if len(second.pairing) != m:
        raise InvariantError("second matching is not a bijection")

    p = field.p
    tcols = first.t.columns
    bars = []
    for j, i in sorted(second.pairing.items()):
        birth = fker[gamma[j]]
        death = fim[beta[i]]
        if birth == death:
            continue
        if birth > death:
            raise InvariantError("bar born after its death")
        rep: dict[int, int] = {}
        for k, w in second.t.column(i):
            for r, u in tcols[beta[k]]:
                nv = (rep.get(r, 0) + w * u) % p
                if nv:
                    rep[r] = nv
                else:
                    rep.pop(r, None)
        chain = tuple(sorted((tau.forward[r], v) for r, v in rep.items()))
        rep_dims = {cells[cid].dim for cid, _ in chain}
        if len(rep_dims) != 1:
            raise InvariantError("representative is not homogeneous in dimension")
        bars.append(Bar(rep_dims.pop(), birth, death, chain))
    bars.sort(key=_bar_sort_key)
    return Barcode(tuple(bars), p, m, "general")


def betti_curve(barcode: Barcode, t: float, dim: int) -> int:
    """Number of bars of the given dimension containing t (half-open)."""
    return sum(1 for b in barcode.bars if b.dim == dim and b.birth <= t < b.death)


def format_barcode(barcode: Barcode) -> str:
    """Render a barcode in the delimited text format.

    One record per bar: dimension, birth, death, then the representative as
    comma-separated ``cell:coeff`` terms.  Birth and death use shortest
    round-trip decimal rendering, so re-reading reproduces them bit-exactly.
    """
    out = io.StringIO()
    out.write("# relhom barcode\n")
    out.write(f"# field {barcode.field_modulus}\n")
    out.write(f"# cells {barcode.cell_count}\n")
    out.write(f"# pipeline {barcode.pipeline}\n")
    out.write("# bar: dim birth death representative\n")
    for bar in sorted(barcode.bars, key=_bar_sort_key):
        rep = ",".join(f"{cid}:{v}" for cid, v in bar.representative)
        out.write(f"{bar.dim} {bar.birth!r} {bar.death!r} {rep}\n")
    return out.getvalue()


def write_barcode(barcode: Barcode, target) -> None:
    """Write to a path or a text file object."""
    text = format_barcode(barcode)
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def read_barcode(source) -> Barcode:
    """Parse the delimited barcode format back into a :class:`Barcode`."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    meta = {"field": 0, "cells": 0, "pipeline": "general"}
    bars = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] in ("field", "cells"):
                meta[parts[0]] = int(parts[1])
            elif len(parts) == 2 and parts[0] == "pipeline":
                meta["pipeline"] = parts[1]
            continue
        parts = line.split(" ", 3)
        if len(parts) != 4:
            raise ValueError(f"barcode line {lineno}: need 'dim birth death rep'")
        dim = int(parts[0])
        birth = float(parts[1])
        death = float(parts[2])
        rep = tuple(
            (int(cid), int(v))
            for cid, v in (term.split(":") for term in parts[3].split(",")))
        bars.append(Bar(dim, birth, death, rep))
    bars.sort(key=_bar_sort_key)
    return Barcode(tuple(bars), meta["field"], meta["cells"], meta["pipeline"])
