"""Minimal self-contained SVG line plots of CSV columns."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import MissingColumn

WIDTH, HEIGHT = 720, 440
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 55

AXIS_LABELS = {
    "k": "k",
    "t_prob": "|φ|²",
    "r_prob": "|β|²",
    "time": "t",
    "trapped_fraction": "trapped fraction",
}
PROBABILITY_COLUMNS = {"t_prob", "r_prob", "trapped_fraction"}


@dataclass(frozen=True)
class PlotSpec:
    x_col: str = "k"
    y_col: str = "t_prob"
    zoom: tuple[float, float] | None = None  # (centre, half width) on the x axis
    title: str = ""


def read_columns(csv_path: str | Path, x_col: str, y_col: str) -> tuple[list[float], list[float]]:
    """Numeric (x, y) pairs; rows with an empty field (flagged singular points) are skipped."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for col in (x_col, y_col):
            if col not in fields:
                raise MissingColumn(f"{csv_path}: column {col!r} not found (have {fields})")
        xs, ys = [], []
        for row in reader:
            if not row[x_col] or not row[y_col]:
                continue
            xs.append(float(row[x_col]))
            ys.append(float(row[y_col]))
    if not xs:
        raise MissingColumn(f"{csv_path}: no data rows")
    return xs, ys


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def render_svg(csv_path: str | Path, svg_path: str | Path, spec: PlotSpec = PlotSpec()) -> Path:
    xs, ys = read_columns(csv_path, spec.x_col, spec.y_col)
    if spec.zoom is not None:
        centre, half = spec.zoom
        pairs = [(x, y) for x, y in zip(xs, ys) if abs(x - centre) <= half]
        if not pairs:
            raise MissingColumn(f"{csv_path}: no rows inside zoom window {spec.zoom}")
        xs, ys = map(list, zip(*pairs))
        x_lo, x_hi = centre - half, centre + half
    else:
        x_lo, x_hi = min(xs), max(xs)
    if spec.y_col in PROBABILITY_COLUMNS:
        y_lo, y_hi = 0.0, 1.0
    else:
        y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x: float) -> float:
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y: float) -> float:
        return TOP + (y_hi - y) / (y_hi - y_lo) * ph

    pts = " ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in zip(xs, ys) if math.isfinite(y))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        out.append(f'<line x1="{x:.3f}" y1="{TOP + ph}" x2="{x:.3f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.3f}" y="{TOP + ph + 20}" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{y:.3f}" x2="{LEFT}" y2="{y:.3f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y + 4:.3f}" text-anchor="end">{_fmt(t)}</text>')
    xl = escape(AXIS_LABELS.get(spec.x_col, spec.x_col))
    yl = escape(AXIS_LABELS.get(spec.y_col, spec.y_col))
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{xl}</text>')
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{yl}</text>'
    )
    if spec.title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="14">{escape(spec.title)}</text>')
    out.append(
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.2" '
        f'data-x-range="{x_lo!r} {x_hi!r}" data-y-range="{y_lo!r} {y_hi!r}" points="{pts}"/>'
    )
    out.append("</svg>")
    svg_path = Path(svg_path)
    svg_path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return svg_path
