"""Minimal self-contained SVG scatter/line plots.

Deliberately dependency-free: experiment sweeps emit small, diff-able
SVG files with inline axes, data markers, and reference curves. Data
markers carry class="pt" so tooling can count one marker per aggregate
point without pixel comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

WIDTH = 720
HEIGHT = 480
MARGIN_L = 72
MARGIN_R = 24
MARGIN_T = 40
MARGIN_B = 56

_CURVE_COLORS = ("#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


@dataclass
class Plot:
    title: str
    xlabel: str
    ylabel: str
    logx: bool = False
    logy: bool = False
    points: list[tuple[float, float]] = field(default_factory=list)
    curves: list[tuple[str, list[tuple[float, float]]]] = field(default_factory=list)

    def add_points(self, pts: list[tuple[float, float]]) -> None:
        self.points.extend(pts)

    def add_curve(self, label: str, pts: list[tuple[float, float]]) -> None:
        self.curves.append((label, pts))

    def render(self) -> str:
        return _render(self)


def _usable(plot: Plot, x: float, y: float) -> bool:
    if plot.logx and x <= 0:
        return False
    if plot.logy and y <= 0:
        return False
    return math.isfinite(x) and math.isfinite(y)


def _render(plot: Plot) -> str:
    pts = [(x, y) for x, y in plot.points if _usable(plot, x, y)]
    curve_pts = [
        (label, [(x, y) for x, y in pts_ if _usable(plot, x, y)])
        for label, pts_ in plot.curves
    ]
    everything = list(pts)
    for _, cp in curve_pts:
        everything.extend(cp)
    if not everything:
        everything = [(1.0, 1.0)]
    tx = (lambda v: math.log10(v)) if plot.logx else (lambda v: float(v))
    ty = (lambda v: math.log10(v)) if plot.logy else (lambda v: float(v))
    xs = [tx(x) for x, _ in everything]
    ys = [ty(y) for _, y in everything]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x: float) -> float:
        return MARGIN_L + (tx(x) - x0) / (x1 - x0) * plot_w

    def py(y: float) -> float:
        return HEIGHT - MARGIN_B - (ty(y) - y0) / (y1 - y0) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{_esc(plot.title)}</text>',
    ]
    # frame
    out.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333" stroke-width="1"/>'
    )
    out.extend(_axis_ticks(x0, x1, plot.logx, True, px, py))
    out.extend(_axis_ticks(y0, y1, plot.logy, False, px, py))
    out.append(
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 14}" text-anchor="middle" '
        f'font-family="monospace" font-size="12">{_esc(plot.xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="monospace" font-size="12" '
        f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.1f})">{_esc(plot.ylabel)}</text>'
    )
    for i, (label, cp) in enumerate(curve_pts):
        if not cp:
            continue
        color = _CURVE_COLORS[i % len(_CURVE_COLORS)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in cp)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            'stroke-width="1.5" stroke-dasharray="5,3"/>'
        )
        ly = MARGIN_T + 16 + 16 * i
        out.append(
            f'<line x1="{MARGIN_L + 8}" y1="{ly - 4}" x2="{MARGIN_L + 34}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5" stroke-dasharray="5,3"/>'
        )
        out.append(
            f'<text x="{MARGIN_L + 40}" y="{ly}" font-family="monospace" '
            f'font-size="11">{_esc(label)}</text>'
        )
    for x, y in pts:
        out.append(
            f'<circle class="pt" cx="{px(x):.2f}" cy="{py(y):.2f}" r="4" '
            'fill="#1f77b4" stroke="none"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _axis_ticks(lo, hi, logscale, is_x, px, py):
    marks = []
    if logscale:
        ticks = []
        for e in range(math.floor(lo), math.ceil(hi) + 1):
            if lo - 1e-9 <= e <= hi + 1e-9:
                ticks.append((10.0**e, _fmt(10.0**e)))
    else:
        ticks = []
        step = (hi - lo) / 4.0
        for i in range(5):
            v = lo + i * step
            ticks.append((v, _fmt(v)))
    for v, label in ticks:
        if is_x:
            x = px(v)
            marks.append(
                f'<line x1="{x:.1f}" y1="{HEIGHT - MARGIN_B}" x2="{x:.1f}" '
                f'y2="{HEIGHT - MARGIN_B + 5}" stroke="#333"/>'
            )
            marks.append(
                f'<text x="{x:.1f}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle" '
                f'font-family="monospace" font-size="10">{label}</text>'
            )
        else:
            y = py(v)
            marks.append(
                f'<line x1="{MARGIN_L - 5}" y1="{y:.1f}" x2="{MARGIN_L}" y2="{y:.1f}" '
                'stroke="#333"/>'
            )
            marks.append(
                f'<text x="{MARGIN_L - 8}" y="{y + 3:.1f}" text-anchor="end" '
                f'font-family="monospace" font-size="10">{label}</text>'
            )
    return marks


def _fmt(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e5 or abs(v) < 1e-3:
        return f"{v:.1e}"
    if abs(v - round(v)) < 1e-9:
        return str(int(round(v)))
    return f"{v:.3g}"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
