"""Persistent relative homology barcodes with cycle representatives.

Core pipeline: factor the boundary matrix of a filtered pair (rows sorted
by the subfiltration, columns by the ambient filtration) as T @ M = D @ S
with T, S unit upper triangular and M a matching matrix, re-sort the
triangular factors by the derived relative-boundary and relative-cycle
values, and factor their quotient once more; the second matching pairs
births with deaths and its basis columns are the representatives.  For lag
pairs (subfiltration = ambient filtration delayed by a constant) a single
symmetric factorization suffices.  A dense brute-force oracle verifies
barcodes and representatives directly from the definitions.
"""

from .complexes import (Cell, FilteredPair, Filtration, InvalidPairError,
                        Violation, apply_lag, boundary_matrix, build_rips,
                        load_pair, load_points, validate_pair)
from .field import PrimeField
from .lagfast import LagFactors, compute_prh_lag, lag_decompose
from .prh import (Bar, Barcode, InvariantError, betti_curve, compute_prh,
                  fim_of_t_column, fker_of_s_column, format_barcode,
                  read_barcode, write_barcode)
from .report import barcode_svg, emit_svg, render_figure
from .sparse import (Permutation, SparseMatrix, invert_upper_unitriangular,
                     is_unit_upper_triangular, matmul, permute_columns,
                     permute_rows, read_matrix, solve_upper_unitriangular,
                     write_matrix)
from .umatch import UmatchFactors, umatch_decompose
from .umatch import validate as validate_umatch

__version__ = "0.1.0"

__all__ = [
    "Bar", "Barcode", "Cell", "FilteredPair", "Filtration", "InvalidPairError",
    "InvariantError", "LagFactors", "Permutation", "PrimeField", "SparseMatrix",
    "UmatchFactors", "Violation", "apply_lag", "barcode_svg", "betti_curve",
    "boundary_matrix", "build_rips", "compute_prh", "compute_prh_lag",
    "emit_svg", "fim_of_t_column", "fker_of_s_column", "format_barcode",
    "invert_upper_unitriangular", "is_unit_upper_triangular", "lag_decompose",
    "load_pair", "load_points", "matmul", "permute_columns", "permute_rows",
    "read_barcode", "read_matrix", "render_figure", "solve_upper_unitriangular",
    "umatch_decompose", "validate_pair", "validate_umatch", "write_barcode",
    "write_matrix",
]
