"""SVG rendering of patches: one polygon per tile, fills keyed by label,
optional pseudoline overlay and canonical edge-orientation arrows."""

from __future__ import annotations

import math
from typing import Iterable

from .seqboundary import canonical_orientation
from .tiler import Patch, PatchArrangement, PlacedTile, pseudolines_of_patch


def _fill_for(label: int, n: int) -> str:
    hue = int(360 * (label / (n + 1)))
    return f"hsl({hue}, 65%, 72%)"


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def render_svg(
    patch: Patch,
    pseudolines: bool = False,
    arrows: bool = False,
    scale: float = 40.0,
    margin: float = 0.75,
) -> str:
    """A standalone SVG document for a finite patch (possibly empty)."""
    tiles = patch.sorted_tiles()
    pts = [v.to_xy() for t in tiles for v in t.vertices()]
    if pts:
        min_x = min(p[0] for p in pts) - margin
        max_x = max(p[0] for p in pts) + margin
        min_y = min(p[1] for p in pts) - margin
        max_y = max(p[1] for p in pts) + margin
    else:
        min_x, max_x, min_y, max_y = -1.0, 1.0, -1.0, 1.0
    width = (max_x - min_x) * scale
    height = (max_y - min_y) * scale

    def to_px(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - min_x) * scale, (max_y - p[1]) * scale)

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    n = patch.spec.n
    for t in tiles:
        corners = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (to_px(v.to_xy()) for v in t.vertices())
        )
        out.append(
            f'  <polygon points="{corners}" fill="{_fill_for(t.label, n)}" '
            f'stroke="#333" stroke-width="1"/>'
        )
    if arrows:
        out.extend(_arrow_elements(tiles, to_px, scale))
    if pseudolines and tiles:
        out.extend(_pseudoline_elements(patch, to_px))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _tile_center(t: PlacedTile) -> tuple[float, float]:
    xs = [v.to_xy() for v in t.vertices()]
    return (sum(x for x, _ in xs) / 4.0, sum(y for _, y in xs) / 4.0)


def _pseudoline_elements(patch: Patch, to_px) -> Iterable[str]:
    arrangement: PatchArrangement = pseudolines_of_patch(patch)
    out = []
    for family in arrangement.families:
        spec = patch.spec
        points = []
        first_edge, last_edge = family.end_edges
        points.append(_edge_midpoint(spec, first_edge))
        points.extend(_tile_center(t) for t in family.tiles)
        points.append(_edge_midpoint(spec, last_edge))
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_px, points))
        out.append(
            f'  <polyline points="{path}" fill="none" stroke="#0044cc" '
            f'stroke-width="2" opacity="0.7"/>'
        )
    return out


def _edge_midpoint(spec, edge_key: frozenset) -> tuple[float, float]:
    from .cyclo import Cyclo

    a, b = (Cyclo(spec, coeffs).to_xy() for coeffs in edge_key)
    return ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)


def _arrow_elements(tiles, to_px, scale: float) -> Iterable[str]:
    out = []
    seen = set()
    for t in tiles:
        spec = t.spec
        n = spec.n
        for key, klass in t.edges():
            if key in seen:
                continue
            seen.add(key)
            from .cyclo import Cyclo

            a, b = (Cyclo(spec, coeffs) for coeffs in key)
            k = canonical_orientation(n, klass)
            angle = k * math.pi / n
            ux, uy = math.cos(angle), math.sin(angle)
            ax, ay = a.to_xy()
            bx, by = b.to_xy()
            if (bx - ax) * ux + (by - ay) * uy < 0:
                ax, ay, bx, by = bx, by, ax, ay
            mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
            tip = (mx + 0.18 * ux, my + 0.18 * uy)
            left = (mx - 0.06 * uy, my + 0.06 * ux)
            right = (mx + 0.06 * uy, my - 0.06 * ux)
            pts = " ".join(
                f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_px, (tip, left, right))
            )
            out.append(f'  <polygon points="{pts}" fill="#222"/>')
    return out
