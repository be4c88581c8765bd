"""Minimal SVG drawing of planar box families (presentation only)."""

from __future__ import annotations

from .geometry import BoxFamily, PointSet

_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]


def family_svg(family: BoxFamily, S: PointSet = None, size: int = 400, margin: int = 20) -> str:
    if family.dimension != 2:
        raise ValueError("only planar families can be drawn")
    xs = [x for b in family.boxes for x in (b.mins[0], b.maxs[0])]
    ys = [y for b in family.boxes for y in (b.mins[1], b.maxs[1])]
    if S is not None:
        xs += [p[0] for p in S]
        ys += [p[1] for p in S]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    scale = (size - 2 * margin) / float(max(x1 - x0, y1 - y0, 1))

    def X(x):
        return margin + float(x - x0) * scale

    def Y(y):
        return size - margin - float(y - y0) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for j, b in enumerate(family.boxes):
        c = _COLORS[j % len(_COLORS)]
        w = float(b.maxs[0] - b.mins[0]) * scale
        h = float(b.maxs[1] - b.mins[1]) * scale
        parts.append(
            f'<rect x="{X(b.mins[0]):.2f}" y="{Y(b.maxs[1]):.2f}" width="{w:.2f}" height="{h:.2f}" '
            f'fill="{c}" fill-opacity="0.15" stroke="{c}"><title>B{j + 1}</title></rect>'
        )
    for p in S or ():
        parts.append(f'<circle cx="{X(p[0]):.2f}" cy="{Y(p[1]):.2f}" r="3" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
