"""Acceptance suite.

Each test covers one acceptance criterion at its stated tolerance and
prints one ``[PASS]``/``[FAIL]`` line (run with ``pytest -s`` to see the
lines on success).

Note on the grid fixture: the externally supplied expected counts for the
lag-1/4 grid barcode (eight dim-1 bars born at 1/2 splitting 4/4 between
the two death values, and dim-2 bars on [sqrt(2)/2, 3/4)) disagree with
the brute-force oracle, which finds twelve dim-1 bars born at 1/2
(4 dying at sqrt(2)/2, 8 at 3/4) and dim-2 bars dying at sqrt(2)/2 + 1/4.
Both pipelines and the oracle agree with each other on this fixture (see
test_prh.py::test_grid_fixture_barcode and test_oracle.py), so the
criterion is kept as stated and reported honestly as failing rather than
weakened to match the implementation.
"""

import math
import time
from collections import Counter
from contextlib import contextmanager

import numpy as np
import pytest

from relhom import (Cell, FilteredPair, PrimeField, apply_lag, build_rips,
                    compute_prh, compute_prh_lag, lag_decompose, read_barcode,
                    umatch_decompose, validate_umatch)
from relhom import oracle
from relhom.cli import main

from helpers import FIELDS, grid_points, random_pair, random_points, random_sparse

GF2 = PrimeField(2)
SQRT2_HALF = math.sqrt(2) / 2
TOL = 1e-9


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def _close(a, b, tol=TOL):
    return abs(a - b) <= tol


@pytest.fixture(scope="module")
def cloud_instances():
    """Fifty random planar clouds (<= 15 points) with one lag each."""
    rng = np.random.default_rng(920)
    instances = []
    for k in range(50):
        n = int(rng.integers(4, 16))
        filtration = build_rips(random_points(rng, n, 2), 2, 0.75, GF2)
        lag = (0.05, 0.5, 5.0)[k % 3]
        instances.append((filtration, lag))
    return instances


def test_grid_fixture():
    """3x3 grid, spacing 1/2, Rips dim <= 2, radius 3/4, GF(2)."""
    with criterion("grid-fixture"):
        start = time.monotonic()
        filtration = build_rips(grid_points(spacing=0.5, side=3), 2, 0.75, GF2)

        # absolute limit: lag exceeding the filtration diameter leaves the
        # ambient-range dim-1 bars equal to the absolute persistence pairs
        span = max(c.b_f for c in filtration.cells)
        big = compute_prh_lag(filtration, 5.0)
        early_h1 = [b for b in big.bars if b.dim == 1 and b.birth <= span + TOL]
        assert len(early_h1) == 4, f"expected 4 absolute H1 bars, got {len(early_h1)}"
        for b in early_h1:
            assert _close(b.birth, 0.5) and _close(b.death, SQRT2_HALF)

        barcode = compute_prh(apply_lag(filtration, 0.25))
        h1 = [b for b in barcode.bars if b.dim == 1 and _close(b.birth, 0.5)]
        dying_diag = [b for b in h1 if _close(b.death, SQRT2_HALF)]
        dying_34 = [b for b in h1 if _close(b.death, 0.75)]
        h2 = [b for b in barcode.bars if b.dim == 2
              and _close(b.birth, SQRT2_HALF) and _close(b.death, 0.75)]

        elapsed = time.monotonic() - start
        assert elapsed < 5.0, f"grid fixture took {elapsed:.2f}s"

        assert len(h1) == 8, (
            f"stated count: 8 dim-1 bars born at 1/2; computed {len(h1)} "
            f"(oracle agrees with the computed value; see "
            f"test_prh.py::test_grid_fixture_barcode)")
        assert len(dying_diag) == 4
        assert len(dying_34) == 4
        assert len(h2) == 4, (
            f"stated count: 4 dim-2 bars [sqrt(2)/2, 3/4); computed {len(h2)}")


def test_lifetime_bound(cloud_instances):
    """No bar outlives the lag, on either pipeline."""
    with criterion("lifetime-bound"):
        for filtration, lag in cloud_instances:
            fast = compute_prh_lag(filtration, lag)
            general = compute_prh(apply_lag(filtration, lag))
            for barcode in (fast, general):
                for b in barcode.bars:
                    assert b.death - b.birth <= lag + 1e-12, (
                        f"bar {b.dim} [{b.birth}, {b.death}) exceeds lag {lag}")


def test_pipeline_equivalence(cloud_instances):
    """General and lag pipelines produce identical bar multisets."""
    with criterion("pipeline-equivalence"):
        for filtration, lag in cloud_instances:
            fast = compute_prh_lag(filtration, lag)
            general = compute_prh(apply_lag(filtration, lag))
            assert fast.triples() == general.triples()


def test_oracle_equivalence():
    """200 random pairs across GF(2), GF(3), GF(7): barcode equals the
    reference barcode and every representative verifies."""
    with criterion("oracle-equivalence"):
        start = time.monotonic()
        rng = np.random.default_rng(921)
        checked = 0
        for trial in range(150):
            field = PrimeField(FIELDS[trial % 3])
            pair = random_pair(rng, field, max_cells=40)
            barcode = compute_prh(pair)
            assert Counter(barcode.triples()) == \
                Counter(oracle.reference_barcode(pair)), f"trial {trial}"
            for b in barcode.bars:
                assert oracle.verify_representative(pair, b), (trial, b)
            checked += 1
        for trial in range(50):
            field = PrimeField(FIELDS[trial % 3])
            n = int(rng.integers(4, 9))
            filtration = build_rips(random_points(rng, n, 2), 2, 0.8, field)
            lag = float(rng.choice((0.1, 0.3, 0.6)))
            pair = apply_lag(filtration, lag)
            barcode = compute_prh(pair)
            assert Counter(barcode.triples()) == \
                Counter(oracle.reference_barcode(pair)), f"rips trial {trial}"
            for b in barcode.bars:
                assert oracle.verify_representative(pair, b), (trial, b)
            fast = compute_prh_lag(filtration, lag)
            for b in fast.bars:
                assert oracle.verify_representative(pair, b), (trial, b)
            checked += 1
        elapsed = time.monotonic() - start
        assert checked == 200
        assert elapsed < 300.0, f"oracle equivalence took {elapsed:.0f}s"


def _absolute_barcode_capped(filtration, t_end):
    """Absolute persistence pairs from the single-factor reduction, with
    every unpaired class closed at t_end."""
    factors = lag_decompose(filtration)
    cells = filtration.cells
    order = factors.ordering
    b_f = [cells[order.forward[k]].b_f for k in range(len(cells))]
    dim = [cells[order.forward[k]].dim for k in range(len(cells))]
    paired_rows = set()
    paired_cols = set()
    bars = []
    for j, col in enumerate(factors.m.columns):
        for i, _ in col:
            paired_rows.add(i)
            paired_cols.add(j)
            if b_f[i] != b_f[j]:
                bars.append((dim[i], b_f[i], b_f[j]))
    for a in range(len(cells)):
        if a not in paired_rows and a not in paired_cols and b_f[a] != t_end:
            bars.append((dim[a], b_f[a], t_end))
    return sorted(bars)


def test_degenerate_cases(cloud_instances):
    """Lag 0 gives empty barcodes; a uniformly-terminal subfiltration gives
    the absolute barcode with deaths capped at t_end."""
    with criterion("degenerate-cases"):
        for filtration, _ in cloud_instances:
            assert compute_prh(apply_lag(filtration, 0.0)).bars == ()
            assert compute_prh_lag(filtration, 0.0).bars == ()

        rng = np.random.default_rng(922)
        for trial in range(12):
            field = PrimeField(FIELDS[trial % 3])
            base = random_pair(rng, field, max_cells=30)
            t_end = max(c.b_f for c in base.cells)
            pair = FilteredPair([Cell(c.id, c.dim, c.boundary, c.b_f, t_end)
                                 for c in base.cells], field)
            barcode = compute_prh(pair)
            assert Counter(barcode.triples()) == \
                Counter(oracle.reference_barcode(pair))
            from relhom import Filtration
            filtration = Filtration(
                [Cell(c.id, c.dim, c.boundary, c.b_f) for c in base.cells], field)
            assert barcode.triples() == _absolute_barcode_capped(filtration, t_end)


def test_umatch_axioms():
    """500 random sparse matrices validate and match the dense rank."""
    with criterion("umatch-axioms"):
        rng = np.random.default_rng(923)
        for trial in range(500):
            field = PrimeField(FIELDS[trial % 3])
            nrows = int(rng.integers(1, 61))
            ncols = int(rng.integers(1, 61))
            density = float(rng.uniform(0.01, 0.3))
            d = random_sparse(rng, nrows, ncols, density, field)
            factors = umatch_decompose(d)
            assert validate_umatch(factors, d), f"trial {trial}"
            assert factors.m.nnz == oracle.rank_mod_p(d.to_dense(), field.p)


def _best_of_three(fn):
    best = math.inf
    for _ in range(3):
        t0 = time.monotonic()
        fn()
        best = min(best, time.monotonic() - t0)
    return best


def test_complexity_smoke():
    """Regression guard: 50/100/200 points at one fixed radius finish the
    general pipeline within 60 s each, and the lag pipeline is not slower
    than the general one by more than 10%."""
    with criterion("complexity-smoke"):
        rng = np.random.default_rng(924)
        radius = 0.15
        lag = 0.06
        for n in (50, 100, 200):
            filtration = build_rips(random_points(rng, n, 2), 2, radius, GF2)
            pair = apply_lag(filtration, lag)
            t_general = _best_of_three(lambda: compute_prh(pair))
            t_lag = _best_of_three(lambda: compute_prh_lag(filtration, lag))
            print(f"  n={n}: {len(filtration)} cells, "
                  f"general {t_general:.3f}s, lag {t_lag:.3f}s")
            assert t_general < 60.0, f"general pipeline took {t_general:.1f}s"
            assert t_lag <= 1.1 * t_general, (
                f"lag pipeline slower than general: {t_lag:.3f}s vs "
                f"{t_general:.3f}s")


def test_lag_sweep_reports(tmp_path):
    """Qualitative reproduction: one random cloud, three lags, barcode and
    SVG plot files emitted for each (no numeric bar values asserted)."""
    with criterion("lag-sweep-reports"):
        rng = np.random.default_rng(925)
        pts = tmp_path / "cloud.txt"
        pts.write_text("".join(f"{x} {y}\n"
                               for x, y in random_points(rng, 30, 2)))
        for lag in (0.05, 0.5, 5.0):
            out = tmp_path / f"bars_{lag}.txt"
            svg = tmp_path / f"bars_{lag}.svg"
            fig = tmp_path / f"bars_{lag}.png"
            code = main(["rips", str(pts), "--max-radius", "0.4",
                         "--lag", str(lag), "--pipeline", "both",
                         "--out", str(out), "--svg", str(svg),
                         "--plot", str(fig)])
            assert code == 0
            barcode = read_barcode(out)
            assert barcode.pipeline == "lag"
            assert svg.read_text().startswith("<svg")
            assert fig.stat().st_size > 0
