"""Static SVG drawing of an instance, one horizontal band per layer."""

from __future__ import annotations

import math
from html import escape

from .lattice import scaled_position

FILLS = ("#e4572e", "#29335c", "#f3a712", "#669bbc")  # by base colour 0..3
UNIT = 40.0  # pixels per sphere diameter
MARGIN = 20.0
TITLE_H = 18.0


def _xy(p):
    # scaled lattice coordinates (thirds of p and q) to pixels
    x = (p.X + p.Y / 2.0) * UNIT / 3.0
    y = p.Y * (math.sqrt(3) / 2.0) * UNIT / 3.0
    return x, y


def render_svg(g, f=None) -> str:
    """Every grid vertex of the window is drawn; zero-demand ones are faded.

    Labels read ``d`` or, with a colouring, ``d/|f(v)|``.
    """
    s = g.stacking
    bands = []
    for z in range(len(s)):
        verts = [v for v in g.region.vertices() if v[0] == z]
        pts = [(v, _xy(scaled_position(v, s))) for v in verts]
        bands.append((z, pts))

    all_pts = [xy for _, pts in bands for _, xy in pts]
    if all_pts:
        x0 = min(x for x, _ in all_pts)
        x1 = max(x for x, _ in all_pts)
    else:
        x0 = x1 = 0.0
    width = x1 - x0 + UNIT + 2 * MARGIN

    body = []
    top = MARGIN
    r = UNIT / 2.0
    for z, pts in bands:
        ys = [y for _, (_, y) in pts] or [0.0]
        y0, y1 = min(ys), max(ys)
        band_h = y1 - y0 + UNIT + TITLE_H
        body.append(f'<g class="layer" data-layer="{z}">')
        body.append(
            f'<text x="{MARGIN:.2f}" y="{top + 12:.2f}" font-size="12">'
            f"layer {z} ({escape(s[z])})</text>"
        )
        for v, (x, y) in pts:
            cx = x - x0 + MARGIN + r
            cy = y - y0 + top + TITLE_H + r
            d = g.d(v)
            bc = g.base_color(v)
            opacity = "1" if d > 0 else "0.2"
            label = str(d) if f is None else f"{d}/{len(f.get(v, ()))}"
            body.append(
                f'<circle class="vertex" data-key="{v[0]},{v[1]},{v[2]}" data-bc="{bc}" '
                f'cx="{cx:.2f}" cy="{cy:.2f}" r="{r - 1:.2f}" fill="{FILLS[bc]}" '
                f'fill-opacity="{opacity}" stroke="#222" stroke-width="0.5"/>'
            )
            if d > 0:
                body.append(
                    f'<text x="{cx:.2f}" y="{cy + 4:.2f}" font-size="10" '
                    f'text-anchor="middle" fill="#fff">{escape(label)}</text>'
                )
        body.append("</g>")
        top += band_h + MARGIN

    height = top
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" '
        f'height="{height:.2f}" viewBox="0 0 {width:.2f} {height:.2f}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"
