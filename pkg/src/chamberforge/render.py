"""SVG picture of a fan, the subset-sum rays of a tangency, and their circle of directions."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .fan import Fan2D
from .tangency import as_tangency, cyclic_order, direction

SIZE = 480
CENTER = SIZE / 2
RAY_LEN = 200
CIRCLE = 150


def _unit(v):
    r = math.hypot(v[0], v[1])
    return v[0] / r, v[1] / r


def _pt(x, y) -> str:
    # svg y axis points down
    return f"{CENTER + x:.3f},{CENTER - y:.3f}"


def render_svg(fan: Fan2D, alpha, permissive: bool = False) -> str:
    alpha = as_tangency(alpha)
    order = cyclic_order(fan, alpha, permissive)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<circle cx="{CENTER:.3f}" cy="{CENTER:.3f}" r="{CIRCLE}" fill="none" stroke="#999" stroke-dasharray="4 3"/>',
    ]
    drawn = set()
    for m in alpha.proper_subsets(permissive):
        ux, uy = _unit(alpha.subset_sum(m))
        key = (round(ux, 9), round(uy, 9))
        if key in drawn:
            continue
        drawn.add(key)
        out.append(
            f'<line x1="{CENTER:.3f}" y1="{CENTER:.3f}" x2="{CENTER + RAY_LEN * ux:.3f}" '
            f'y2="{CENTER - RAY_LEN * uy:.3f}" stroke="#d62728" stroke-width="1.5"/>'
        )
    for v in fan.rays:
        ux, uy = _unit(v)
        out.append(
            f'<line x1="{CENTER:.3f}" y1="{CENTER:.3f}" x2="{CENTER + RAY_LEN * ux:.3f}" '
            f'y2="{CENTER - RAY_LEN * uy:.3f}" stroke="black" stroke-width="2.5"/>'
        )
    for group in order.groups:
        ux, uy = _unit(direction(group[0], alpha))
        colour = "black" if all(e.kind == "rho" for e in group) else "#d62728"
        out.append(f'<circle cx="{CENTER + CIRCLE * ux:.3f}" cy="{CENTER - CIRCLE * uy:.3f}" r="4" fill="{colour}"/>')
        label = escape(" ".join(e.label() for e in group))
        lx, ly = CENTER + (CIRCLE + 14) * ux, CENTER - (CIRCLE + 14) * uy
        anchor = "start" if ux > 0.2 else ("end" if ux < -0.2 else "middle")
        out.append(
            f'<text x="{lx:.3f}" y="{ly:.3f}" font-size="10" font-family="monospace" '
            f'text-anchor="{anchor}">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
