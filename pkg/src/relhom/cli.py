"""Command-line interface.

Subcommands:

* ``rips``   build a Vietoris-Rips filtration from a point cloud, pair it
  with a lag, and write the barcode (optionally SVG and figure files).
* ``prh``    run the general pipeline on an explicit complex file.
* ``umatch`` factor a sparse matrix file and write the three factors.
* ``verify`` cross-check the pipelines against the brute-force oracle.

Exit codes: 0 success, 2 input or configuration error, 3 internal
invariant violation (including verification failures).
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import oracle
from .complexes import (InvalidPairError, apply_lag, build_rips, load_pair,
                        load_points, validate_pair)
from .field import PrimeField
from .lagfast import compute_prh_lag
from .prh import Barcode, InvariantError, compute_prh, write_barcode
from .report import emit_svg, render_figure
from .sparse import read_matrix, write_matrix
from .umatch import umatch_decompose, validate as umatch_validate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", default="-", metavar="PATH",
                     help="barcode output file ('-' for stdout)")
    sub.add_argument("--svg", metavar="PATH", help="write an SVG barcode plot")
    sub.add_argument("--plot", metavar="PATH",
                     help="render a matplotlib figure (png/pdf by extension)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relhom",
        description="Persistent relative homology barcodes with "
                    "cycle representatives over GF(p).")
    subs = parser.add_subparsers(dest="command", required=True)

    rips = subs.add_parser("rips", help="Rips filtration of a point cloud, "
                                        "paired with a lag")
    rips.add_argument("points", help="point cloud file, one point per line")
    rips.add_argument("--field", type=int, default=2, metavar="P",
                      help="prime field modulus (default 2)")
    rips.add_argument("--max-dim", type=int, default=2, metavar="D",
                      help="maximum simplex dimension (default 2)")
    rips.add_argument("--max-radius", type=float, required=True, metavar="R",
                      help="maximum simplex diameter")
    rips.add_argument("--lag", type=float, default=0.0, metavar="L",
                      help="lag between the two filtrations (default 0)")
    rips.add_argument("--pipeline", choices=("general", "lag", "both"),
                      default="both",
                      help="which pipeline to run; 'both' cross-validates "
                           "and writes the lag-path barcode (default)")
    _add_output_flags(rips)
    rips.set_defaults(func=cmd_rips)

    prh = subs.add_parser("prh", help="general pipeline on an explicit "
                                      "complex file")
    prh.add_argument("complex", help="explicit complex file")
    prh.add_argument("--field", type=int, default=2, metavar="P",
                     help="prime field modulus (default 2)")
    _add_output_flags(prh)
    prh.set_defaults(func=cmd_prh)

    um = subs.add_parser("umatch", help="factor a sparse matrix file")
    um.add_argument("matrix", help="matrix file: 'nrows ncols p' then 'i j v' lines")
    um.add_argument("--out", required=True, metavar="PREFIX",
                    help="write PREFIX.T.txt, PREFIX.M.txt, PREFIX.S.txt")
    um.set_defaults(func=cmd_umatch)

    ver = subs.add_parser("verify", help="cross-check pipelines against the "
                                         "brute-force oracle")
    src = ver.add_mutually_exclusive_group(required=True)
    src.add_argument("--points", metavar="PATH", help="point cloud file")
    src.add_argument("--pair", metavar="PATH", help="explicit complex file")
    ver.add_argument("--field", type=int, default=2, metavar="P")
    ver.add_argument("--max-dim", type=int, default=2, metavar="D")
    ver.add_argument("--max-radius", type=float, default=None, metavar="R")
    ver.add_argument("--lag", type=float, default=0.0, metavar="L")
    ver.set_defaults(func=cmd_verify)

    return parser


def _write_outputs(barcode: Barcode, args) -> None:
    if args.out == "-":
        write_barcode(barcode, sys.stdout)
    else:
        write_barcode(barcode, args.out)
        print(f"wrote {len(barcode.bars)} bars to {args.out}")
    if args.svg:
        emit_svg(barcode, args.svg)
        print(f"wrote SVG plot to {args.svg}")
    if args.plot:
        render_figure(barcode, args.plot)
        print(f"wrote figure to {args.plot}")


def cmd_rips(args) -> int:
    field = PrimeField(args.field)
    points = load_points(args.points)
    filtration = build_rips(points, args.max_dim, args.max_radius, field)
    print(f"rips: {len(points)} points, {len(filtration)} cells, "
          f"lag {args.lag}, GF({field.p})")

    barcodes = {}
    if args.pipeline in ("general", "both"):
        barcodes["general"] = compute_prh(apply_lag(filtration, args.lag))
    if args.pipeline in ("lag", "both"):
        barcodes["lag"] = compute_prh_lag(filtration, args.lag)

    if args.pipeline == "both":
        same = barcodes["general"].triples() == barcodes["lag"].triples()
        print(f"pipeline equivalence: {'PASS' if same else 'FAIL'}")
        if not same:
            raise InvariantError("general and lag pipelines disagree")
    chosen = barcodes["lag"] if "lag" in barcodes else barcodes["general"]
    _write_outputs(chosen, args)
    return EXIT_OK


def cmd_prh(args) -> int:
    field = PrimeField(args.field)
    pair, extended = load_pair(args.complex, field)
    if extended:
        print(f"terminal extension applied: cells with unbounded b_g set "
              f"to t_end = {pair.t_end!r}")
    violations = validate_pair(pair)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INPUT
    barcode = compute_prh(pair)
    print(f"prh: {len(pair.cells)} cells, t_end {pair.t_end!r}, GF({field.p})")
    _write_outputs(barcode, args)
    return EXIT_OK


def cmd_umatch(args) -> int:
    d = read_matrix(args.matrix)
    factors = umatch_decompose(d)
    ok = umatch_validate(factors, d)
    for name, mat in (("T", factors.t), ("M", factors.m), ("S", factors.s)):
        path = f"{args.out}.{name}.txt"
        write_matrix(mat, path)
        print(f"wrote {name} ({mat.nrows}x{mat.ncols}, nnz={mat.nnz}) to {path}")
    print(f"umatch validation: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    field = PrimeField(args.field)
    checks: list[tuple[str, bool, str]] = []

    if args.points:
        if args.max_radius is None:
            print("--max-radius is required with --points", file=sys.stderr)
            return EXIT_INPUT
        points = load_points(args.points)
        filtration = build_rips(points, args.max_dim, args.max_radius, field)
        pair = apply_lag(filtration, args.lag)
        lag_barcode = compute_prh_lag(filtration, args.lag)
    else:
        pair, extended = load_pair(args.pair, field)
        if extended:
            print(f"terminal extension applied at t_end = {pair.t_end!r}")
        lag_barcode = None

    violations = validate_pair(pair)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INPUT
    if len(pair.cells) > oracle.MAX_ORACLE_CELLS:
        print(f"pair has {len(pair.cells)} cells; oracle is capped at "
              f"{oracle.MAX_ORACLE_CELLS}", file=sys.stderr)
        return EXIT_INPUT

    general = compute_prh(pair)
    reference = oracle.reference_barcode(pair)
    same = Counter(general.triples()) == Counter(reference)
    checks.append(("barcode-vs-oracle", same,
                   f"{len(general.bars)} bars vs {len(reference)} reference"))

    reps_ok = sum(1 for b in general.bars if oracle.verify_representative(pair, b))
    checks.append(("representatives-general", reps_ok == len(general.bars),
                   f"{reps_ok}/{len(general.bars)} valid"))

    if lag_barcode is not None:
        checks.append(("pipeline-equivalence",
                       lag_barcode.triples() == general.triples(),
                       f"{len(lag_barcode.bars)} bars each"))
        lag_reps = sum(1 for b in lag_barcode.bars
                       if oracle.verify_representative(pair, b))
        checks.append(("representatives-lag", lag_reps == len(lag_barcode.bars),
                       f"{lag_reps}/{len(lag_barcode.bars)} valid"))

    all_ok = True
    for name, ok, detail in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_INTERNAL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidPairError as e:
        for v in e.violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
