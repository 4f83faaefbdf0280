"""SVG drawings of arrangements.

Flat surfaces are drawn in the unit square with arrows marking how opposite
sides are glued; the sphere as its two hemispheres, the projective plane as one
hemisphere whose boundary points are glued to their antipodes.  Floating point
is used only here, for pixel coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geodesic_arrangements import (
    KLEIN,
    RP2,
    SPHERE,
    Arrangement,
    deck_apply,
    period,
    reduce_to_domain,
)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class RenderSpec:
    width: int = 480
    height: int = 480
    colors: tuple = PALETTE
    arrow_size: float = 9.0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"render size must be positive, got {self.width}x{self.height}")
        if not self.colors:
            raise ValueError("empty color cycle")


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


class _Doc:
    def __init__(self, width, height, title):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f"<title>{title}</title>",
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def add(self, s):
        self.parts.append(s)

    def text(self):
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _arrow(doc, x0, y0, x1, y1, size, double=False):
    doc.add(f'<line class="side" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y1)}" '
            f'stroke="black" stroke-width="1"/>')
    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    dx, dy = x1 - x0, y1 - y0
    n = math.hypot(dx, dy)
    ux, uy = dx / n, dy / n
    tips = [(mx, my)] + ([(mx - ux * size, my - uy * size)] if double else [])
    for tx, ty in tips:
        bx, by = tx - ux * size, ty - uy * size
        pts = [(tx, ty), (bx - uy * size / 2, by + ux * size / 2), (bx + uy * size / 2, by - ux * size / 2)]
        doc.add('<path class="arrow" d="M ' + " L ".join(f"{_f(a)} {_f(b)}" for a, b in pts)
                + ' Z" fill="black"/>')


def render(arr: Arrangement, spec: RenderSpec = RenderSpec()) -> str:
    if arr.surface in (SPHERE, RP2):
        return _render_round(arr, spec)
    return _render_flat(arr, spec)


def _flat_segments(geo, surface):
    T, _ = period(geo, surface)
    events = {0, T}
    base = geo.base_point()
    for axis in (0, 1):
        comp = geo.direction[axis]
        if comp == 0:
            continue
        lo, hi = sorted((base[axis], base[axis] + T * comp))
        for n in range(math.floor(lo), math.ceil(hi) + 1):
            u = (n - base[axis]) / comp
            if 0 < u < T:
                events.add(u)
    events = sorted(events)
    segs = []
    for u0, u1 in zip(events, events[1:]):
        h, _ = reduce_to_domain(geo.point((u0 + u1) / 2), surface)
        segs.append((deck_apply(h, geo.point(u0)), deck_apply(h, geo.point(u1))))
    return segs


def _render_flat(arr, spec):
    margin = 30
    side = min(spec.width, spec.height) - 2 * margin
    if side <= 0:
        raise ValueError("render size too small")

    def px(pt):
        return margin + float(pt[0]) * side, margin + (1 - float(pt[1])) * side

    doc = _Doc(spec.width, spec.height, f"closed geodesics on the {arr.surface.label}")
    x0, y0 = px((0, 0))
    x1, y1 = px((1, 1))
    size = spec.arrow_size
    _arrow(doc, x0, y0, x1, y0, size)                 # bottom, left to right
    if arr.surface is KLEIN:
        _arrow(doc, x1, y1, x0, y1, size)             # top glued reversed
    else:
        _arrow(doc, x0, y1, x1, y1, size)
    _arrow(doc, x0, y0, x0, y1, size, double=True)    # left and right glued directly
    _arrow(doc, x1, y0, x1, y1, size, double=True)

    for k, geo in enumerate(arr.specs):
        color = spec.colors[k % len(spec.colors)]
        doc.add(f'<g class="geodesic" id="geodesic-{k}" stroke="{color}" stroke-width="2.5" '
                f'fill="none">')
        doc.add(f"<desc>{geo}</desc>")
        for a, b in _flat_segments(geo, arr.surface):
            (ax, ay), (bx, by) = px(a), px(b)
            doc.add(f'<polyline points="{_f(ax)},{_f(ay)} {_f(bx)},{_f(by)}"/>')
        doc.add("</g>")
    for v, pt in enumerate(arr.vertices):
        x, y = px(pt)
        doc.add(f'<circle class="vertex" id="vertex-{v}" cx="{_f(x)}" cy="{_f(y)}" r="5" fill="black"/>')
    return doc.text()


def _basis(n):
    n = [float(x) for x in n]
    norm = math.sqrt(sum(x * x for x in n))
    n = [x / norm for x in n]
    helper = (1.0, 0.0, 0.0) if abs(n[0]) < 0.9 else (0.0, 1.0, 0.0)
    u = [helper[i] - n[i] * sum(h * m for h, m in zip(helper, n)) for i in range(3)]
    un = math.sqrt(sum(x * x for x in u))
    u = [x / un for x in u]
    w = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]]
    return u, w


def _render_round(arr, spec, samples=240):
    sphere = arr.surface is SPHERE
    ndisc = 2 if sphere else 1
    margin = 25
    radius = min(spec.width / ndisc, spec.height) / 2 - margin
    if radius <= 0:
        raise ValueError("render size too small")
    centers = [((2 * i + 1) * spec.width / (2 * ndisc), spec.height / 2) for i in range(ndisc)]

    def disc_of(z):
        return 0 if z >= 0 else 1

    def px(p, disc):
        cx, cy = centers[disc]
        x = p[0] if disc == 0 else -p[0]  # southern hemisphere seen from below
        return cx + x * radius, cy - p[1] * radius

    title = "great circles on the sphere" if sphere else "lines in the projective plane"
    doc = _Doc(spec.width, spec.height, title)
    for cx, cy in centers:
        doc.add(f'<circle class="boundary" cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(radius)}" '
                f'fill="none" stroke="black"/>')
    if not sphere:
        cx, cy = centers[0]
        size = spec.arrow_size
        _arrow(doc, cx - radius, cy + size, cx - radius, cy - size, size)
        _arrow(doc, cx + radius, cy - size, cx + radius, cy + size, size)

    for k, geo in enumerate(arr.specs):
        color = spec.colors[k % len(spec.colors)]
        u, w = _basis(geo.normal)
        doc.add(f'<g class="geodesic" id="geodesic-{k}" stroke="{color}" stroke-width="2.5" '
                f'fill="none">')
        doc.add(f"<desc>{geo}</desc>")
        runs, cur, cur_disc = [], [], None
        for i in range(samples + 1):
            th = 2 * math.pi * i / samples
            p = [math.cos(th) * u[j] + math.sin(th) * w[j] for j in range(3)]
            if not sphere and p[2] < 0:
                if len(cur) > 1:
                    runs.append(cur)
                cur, cur_disc = [], None
                continue
            d = disc_of(p[2]) if sphere else 0
            if d != cur_disc:
                if len(cur) > 1:
                    runs.append(cur)
                cur, cur_disc = [], d
            cur.append(px(p, d))
        if len(cur) > 1:
            runs.append(cur)
        for run in runs:
            doc.add('<polyline points="' + " ".join(f"{_f(a)},{_f(b)}" for a, b in run) + '"/>')
        doc.add("</g>")

    for v, pt in enumerate(arr.vertices):
        p = [float(x) for x in pt]
        norm = math.sqrt(sum(x * x for x in p))
        p = [x / norm for x in p]
        if not sphere and p[2] < 0:
            p = [-x for x in p]
        d = disc_of(p[2]) if sphere else 0
        x, y = px(p, d)
        doc.add(f'<circle class="vertex" id="vertex-{v}" cx="{_f(x)}" cy="{_f(y)}" r="5" fill="black"/>')
    return doc.text()
