"""Barcode rendering: deterministic SVG and matplotlib figures.

The SVG path emits plain hand-written markup with fixed formatting so that
identical barcodes produce byte-identical files; the figure path renders
through matplotlib for report-quality output next to the delimited barcode
files.
"""

from __future__ import annotations

import io

from .prh import Barcode, _bar_sort_key

_PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")

_BAR_HEIGHT = 8
_BAR_GAP = 4
_GROUP_GAP = 16
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 25
_MARGIN_TOP = 20
_AXIS_HEIGHT = 45
_WIDTH = 640


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.6g}"


def barcode_svg(barcode: Barcode) -> str:
    """Standalone SVG: one horizontal segment per bar, grouped and colored
    by dimension, with the axis annotated at every critical value."""
    bars = sorted(barcode.bars, key=_bar_sort_key)
    if bars:
        lo = min(b.birth for b in bars)
        hi = max(b.death for b in bars)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
    else:
        lo, hi = 0.0, 1.0
    span = hi - lo
    inner = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT

    def sx(v: float) -> float:
        return _MARGIN_LEFT + (v - lo) / span * inner

    groups: dict[int, list] = {}
    for b in bars:
        groups.setdefault(b.dim, []).append(b)

    rows = len(bars)
    height = (_MARGIN_TOP + rows * (_BAR_HEIGHT + _BAR_GAP)
              + len(groups) * _GROUP_GAP + _AXIS_HEIGHT)
    out = io.StringIO()
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
              f'height="{height}" viewBox="0 0 {_WIDTH} {height}">\n')
    out.write(f'<rect width="{_WIDTH}" height="{height}" fill="white"/>\n')

    y = _MARGIN_TOP
    for dim in sorted(groups):
        color = _PALETTE[dim % len(_PALETTE)]
        out.write(f'<text x="10" y="{y + 10}" font-size="12" '
                  f'font-family="monospace" fill="{color}">H{dim}</text>\n')
        for b in groups[dim]:
            cy = y + _BAR_HEIGHT / 2
            out.write(f'<line x1="{_fmt(sx(b.birth))}" y1="{_fmt(cy)}" '
                      f'x2="{_fmt(sx(b.death))}" y2="{_fmt(cy)}" '
                      f'stroke="{color}" stroke-width="{_BAR_HEIGHT - 2}"/>\n')
            y += _BAR_HEIGHT + _BAR_GAP
        y += _GROUP_GAP

    axis_y = height - _AXIS_HEIGHT + 10
    out.write(f'<line x1="{_MARGIN_LEFT}" y1="{axis_y}" '
              f'x2="{_WIDTH - _MARGIN_RIGHT}" y2="{axis_y}" '
              f'stroke="black" stroke-width="1"/>\n')
    ticks = sorted({b.birth for b in bars} | {b.death for b in bars}) or [lo, hi]
    for v in ticks:
        x = _fmt(sx(v))
        out.write(f'<line x1="{x}" y1="{axis_y}" x2="{x}" y2="{axis_y + 5}" '
                  f'stroke="black" stroke-width="1"/>\n')
        out.write(f'<text x="{x}" y="{axis_y + 18}" font-size="10" '
                  f'font-family="monospace" text-anchor="middle">'
                  f'{_tick_label(v)}</text>\n')
    out.write("</svg>\n")
    return out.getvalue()


def emit_svg(barcode: Barcode, path) -> None:
    """Write the deterministic SVG plot of a barcode."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(barcode_svg(barcode))


def render_figure(barcode: Barcode, path, dpi: int = 150) -> None:
    """Render the barcode with matplotlib (format chosen by extension)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    bars = sorted(barcode.bars, key=_bar_sort_key)
    height = min(12.0, max(2.0, 0.12 * len(bars) + 1.2))
    fig, ax = plt.subplots(figsize=(6.4, height))
    seen_dims = []
    y = 0
    for b in bars:
        color = _PALETTE[b.dim % len(_PALETTE)]
        label = None
        if b.dim not in seen_dims:
            seen_dims.append(b.dim)
            label = f"H{b.dim}"
        ax.hlines(y, b.birth, b.death, color=color, linewidth=3, label=label)
        y += 1
    ax.set_xlabel("filtration value")
    ax.set_yticks([])
    ax.set_title(f"{barcode.pipeline} pipeline, GF({barcode.field_modulus}), "
                 f"{len(bars)} bars")
    if seen_dims:
        ax.legend(loc="lower right", fontsize=8)
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
