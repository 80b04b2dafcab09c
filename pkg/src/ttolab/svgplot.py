"""Hand-emitted SVG plots for scan reports (no charting dependency).

Two kinds: `eig-scatter` draws eigenvalues in the closed unit disk with
the circle and the family's accumulation point marked; `sv-decay` draws
log10 singular values against index, one polyline per degree.  Output is
a fixed 800x800 viewport with no timestamps, so artifacts reproduce
byte-identically.
"""

from __future__ import annotations

import io

import numpy as np

from .errors import EmptyReport
from .harness import ScanReport
from ._util import format_float

SIZE = 800
MARGIN = 60

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#7f7f7f",
)


def _header(title: str) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n'
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n'
        f'<text x="{SIZE // 2}" y="30" text-anchor="middle" '
        f'font-family="monospace" font-size="16">{title}</text>\n'
    )


def eig_scatter(report: ScanReport) -> tuple[str, str]:
    """SVG of eigenvalues in the disk; returns (svg, raw_csv).

    Raises
    ------
    EmptyReport
        If no row carries eigenvalues.
    """
    rows = [r for r in report.rows if r.ok() and r.eigenvalues]
    if not rows:
        raise EmptyReport("no eigenvalue rows to plot")

    def to_px(z: complex) -> tuple[float, float]:
        half = (SIZE - 2 * MARGIN) / 2
        cx = SIZE / 2 + z.real * half
        cy = SIZE / 2 - z.imag * half
        return cx, cy

    buf = io.StringIO()
    buf.write(_header(f"eigenvalues ({report.scenario.kind})"))
    buf.write(
        f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{(SIZE - 2 * MARGIN) / 2}" '
        'fill="none" stroke="black" stroke-width="1"/>\n'
    )
    xi = complex(report.scenario.family.accumulation_point)
    cx, cy = to_px(xi)
    buf.write(
        f'<path d="M {cx - 8} {cy} L {cx + 8} {cy} M {cx} {cy - 8} L {cx} {cy + 8}" '
        'stroke="#d62728" stroke-width="2"/>\n'
    )
    csv = io.StringIO()
    csv.write("degree,re,im\n")
    for i, row in enumerate(rows):
        color = _PALETTE[i % len(_PALETTE)]
        for z in row.eigenvalues:
            px, py = to_px(complex(z))
            buf.write(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>\n')
            csv.write(f"{row.degree},{format_float(z.real)},{format_float(z.imag)}\n")
    legend_y = MARGIN
    for i, row in enumerate(rows):
        color = _PALETTE[i % len(_PALETTE)]
        buf.write(
            f'<text x="{SIZE - MARGIN - 80}" y="{legend_y + 16 * i}" '
            f'font-family="monospace" font-size="12" fill="{color}">'
            f"n={row.degree}</text>\n"
        )
    buf.write("</svg>\n")
    return buf.getvalue(), csv.getvalue()


def sv_decay(report: ScanReport) -> tuple[str, str]:
    """SVG of log10 singular values vs index; returns (svg, raw_csv).

    Raises
    ------
    EmptyReport
        If no row carries singular values.
    """
    rows = [r for r in report.rows if r.ok() and r.singular_values]
    if not rows:
        raise EmptyReport("no singular-value rows to plot")
    floor = 1e-17
    logs = [np.log10(np.maximum(np.asarray(r.singular_values), floor)) for r in rows]
    lo = min(float(v.min()) for v in logs)
    hi = max(float(v.max()) for v in logs)
    lo, hi = min(lo, hi - 1e-9), max(hi, lo + 1e-9)
    max_index = max(len(r.singular_values) for r in rows)

    def to_px(i: int, value: float) -> tuple[float, float]:
        x = MARGIN + (SIZE - 2 * MARGIN) * (i / max(max_index - 1, 1))
        y = SIZE - MARGIN - (SIZE - 2 * MARGIN) * ((value - lo) / (hi - lo))
        return x, y

    buf = io.StringIO()
    buf.write(_header(f"log10 singular values ({report.scenario.kind})"))
    buf.write(
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE - 2 * MARGIN}" '
        f'height="{SIZE - 2 * MARGIN}" fill="none" stroke="#cccccc"/>\n'
    )
    csv = io.StringIO()
    csv.write("degree,index,sigma\n")
    for i, (row, lv) in enumerate(zip(rows, logs)):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{x:.2f},{y:.2f}"
            for x, y in (to_px(j, float(v)) for j, v in enumerate(lv))
        )
        buf.write(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>\n'
        )
        for j, s in enumerate(row.singular_values):
            csv.write(f"{row.degree},{j + 1},{format_float(s)}\n")
        buf.write(
            f'<text x="{SIZE - MARGIN - 80}" y="{MARGIN + 16 * i}" '
            f'font-family="monospace" font-size="12" fill="{color}">'
            f"n={row.degree}</text>\n"
        )
    buf.write("</svg>\n")
    return buf.getvalue(), csv.getvalue()


def emit_plot(report: ScanReport, kind: str) -> tuple[str, str]:
    """Dispatch on plot kind; returns (svg_text, raw_csv_text)."""
    if kind == "eig-scatter":
        return eig_scatter(report)
    if kind == "sv-decay":
        return sv_decay(report)
    raise ValueError(f"unknown plot kind {kind!r}")
