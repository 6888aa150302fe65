"""Hand-written SVG step chart for region scans (byte-deterministic, no plotting dependency)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .bounds import RegionRow

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 90, 180, 40, 70

PALETTE = {
    "elementary": "#7f7f7f",
    "dum": "#bcbd22",
    "ahr": "#1f77b4",
    "bukh-chao": "#d62728",
    "cover-free-k": "#2ca02c",
    "large-eps": "#9467bd",
}
FALLBACK = ("#8c564b", "#e377c2", "#17becf", "#ff7f0e")


def _colour(name: str, extra: dict[str, str]) -> str:
    if name in PALETTE:
        return PALETTE[name]
    if name not in extra:
        extra[name] = FALLBACK[len(extra) % len(FALLBACK)]
    return extra[name]


def render_regions_svg(rows: list[RegionRow], d: int) -> str:
    """Log-log chart: winner value vs eps, background tinted by the winning bound,
    and one polyline per bound over the grid points where it is rigorous."""
    extra: dict[str, str] = {}
    log_eps = [math.log10(r.eps) for r in rows]
    series: dict[str, list[tuple[float, float]]] = {}
    for r, le in zip(rows, log_eps):
        for b in r.bounds:
            if b.value > 0:
                series.setdefault(b.name, []).append((le, math.log10(b.value)))
    all_y = [y for pts in series.values() for _, y in pts] or [0.0, 1.0]
    x0, x1 = min(log_eps), max(log_eps)
    y0, y1 = math.floor(min(all_y)), math.ceil(max(all_y))
    if y1 == y0:
        y1 = y0 + 1
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(v: float) -> float:
        return LEFT + (v - x0) / (x1 - x0) * pw

    def sy(v: float) -> float:
        return TOP + (y1 - v) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f"<title>Best lower bound on N(eps, d), d = {d}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    # Region tint: each grid point owns the span to the midpoints with its neighbours.
    edges = [x0] + [(a + b) / 2 for a, b in zip(log_eps, log_eps[1:])] + [x1]
    out.append('<g class="regions" opacity="0.15">')
    for r, a, b in zip(rows, edges, edges[1:]):
        out.append(
            f'<rect class="region" data-bound="{escape(r.winner)}" x="{sx(a):.2f}" y="{TOP}" '
            f'width="{sx(b) - sx(a):.2f}" height="{ph}" fill="{_colour(r.winner, extra)}"/>'
        )
    out.append("</g>")

    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for t in range(math.ceil(x0), math.floor(x1) + 1):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{TOP + ph}" x2="{x:.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{TOP + ph + 20}" text-anchor="middle">1e{t}</text>')
    ystep = max(1, (y1 - y0) // 10)
    for t in range(y0, y1 + 1, ystep):
        y = sy(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{y:.2f}" x2="{LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">1e{t}</text>')
    out.append(
        f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 20}" text-anchor="middle">eps</text>'
    )
    out.append(
        f'<text x="20" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {TOP + ph / 2:.2f})">lower bound on N(eps, d)</text>'
    )

    for name in sorted(series):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in series[name])
        width = 2.5 if any(r.winner == name for r in rows) else 1.2
        out.append(
            f'<polyline class="bound" data-bound="{escape(name)}" points="{pts}" fill="none" '
            f'stroke="{_colour(name, extra)}" stroke-width="{width}"/>'
        )

    lx, ly = WIDTH - RIGHT + 15, TOP + 10
    out.append('<g class="legend">')
    for j, name in enumerate(sorted(series)):
        y = ly + 20 * j
        out.append(f'<rect x="{lx}" y="{y}" width="14" height="10" fill="{_colour(name, extra)}"/>')
        out.append(f'<text x="{lx + 20}" y="{y + 10}">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
