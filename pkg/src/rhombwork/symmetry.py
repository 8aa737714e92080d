"""Detecting n-fold symmetric structures and growing fixed-point seeds.

A star is n label-2 rhombs around a common vertex, each contributing its
small angle 2*pi/n; a patch containing a star (label-aware rotation
invariance) seeds an n-fold symmetric tiling once it is contained in a
later substitution image of itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import Cyclo, zero
from .cyclo import RingSpec
from .subst import Substitution, substitute_patch
from .tiler import Patch, PlacedTile


def rotate_tile(t: PlacedTile, center: Cyclo, steps: int) -> PlacedTile:
    """Rotate a placed tile by steps*pi/n about an arbitrary ring point."""
    new_trans = (t.trans - center).mul_zeta(steps) + center
    return PlacedTile(t.spec, t.label, t.rot + steps, new_trans)


def rotate_patch(p: Patch, center: Cyclo, steps: int) -> Patch:
    return Patch.of(p.spec, (rotate_tile(t, center, steps) for t in p.tiles))


def is_rotation_invariant(p: Patch, center: Cyclo) -> bool:
    """True iff rotation by 2*pi/n about center maps the patch to itself,
    labels included."""
    return rotate_patch(p, center, 2).tiles == p.tiles


def find_stars(p: Patch) -> list[Cyclo]:
    """Centers where exactly n label-2 tiles meet small-angle-first and the
    configuration is invariant under rotation by 2*pi/n."""
    n = p.spec.n
    candidates: dict[tuple, list[PlacedTile]] = {}
    for t in p.tiles:
        if t.label != 2:
            continue
        for v in t.small_angle_vertices():
            candidates.setdefault(v.coeffs, []).append(t)
    centers = []
    for coeffs, tiles in candidates.items():
        if len(tiles) != n:
            continue
        center = Cyclo(p.spec, coeffs)
        star = Patch.of(p.spec, tiles)
        if rotate_patch(star, center, 2).tiles == star.tiles:
            centers.append(center)
    centers.sort(key=lambda c: c.to_xy())
    return centers


def make_star(spec: RingSpec, center: Cyclo | None = None) -> Patch:
    """The star of n label-2 tiles with small angles meeting at center."""
    if center is None:
        center = zero(spec)
    return Patch.of(
        spec, (PlacedTile(spec, 2, 2 * j, center) for j in range(spec.n))
    )


@dataclass(frozen=True)
class SymmetryReport:
    n: int
    stars: dict[int, list[Cyclo]]
    corner_flags: dict[int, tuple[bool, bool, bool, bool]]
    invariant_centers: list[tuple[int, Cyclo, int]]
    level2_stars: dict[int, list[Cyclo]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "stars": {
                str(lbl): [list(c.coeffs) for c in centers]
                for lbl, centers in self.stars.items()
            },
            "corner_flags": {
                str(lbl): list(flags) for lbl, flags in self.corner_flags.items()
            },
            "invariant_centers": [
                {"label": lbl, "center": list(c.coeffs), "order": order}
                for lbl, c, order in self.invariant_centers
            ],
            "level2_stars": {
                str(lbl): [list(c.coeffs) for c in centers]
                for lbl, centers in self.level2_stars.items()
            },
        }

    def to_text(self) -> str:
        lines = [f"symmetry report (n={self.n})"]
        for lbl in sorted(self.corner_flags):
            flags = " ".join(
                name + ("+" if ok else "-")
                for name, ok in zip(("c0", "c1", "c2", "c3"), self.corner_flags[lbl])
            )
            stars = self.stars.get(lbl, [])
            lines.append(
                f"label {lbl}: corners {flags} stars {len(stars)}"
                + (
                    " at " + "; ".join(f"({c.x:.4f},{c.y:.4f})" for c in stars)
                    if stars
                    else ""
                )
            )
            if lbl in self.level2_stars:
                lines.append(
                    f"label {lbl}: depth-2 stars {len(self.level2_stars[lbl])}"
                )
        return "\n".join(lines)


def corner_report(sub: Substitution, depth: int = 1) -> SymmetryReport:
    """Which boundary corners of each image carry a small-angle label-2 tile,
    plus any stars inside the images (and inside second images at depth 2)."""
    stars: dict[int, list[Cyclo]] = {}
    corner_flags: dict[int, tuple[bool, bool, bool, bool]] = {}
    invariant: list[tuple[int, Cyclo, int]] = []
    level2: dict[int, list[Cyclo]] = {}
    for label in sub.labels():
        patch = sub.images[label]
        corners = sub.boundaries[label].corners
        small_vertices = set()
        for t in patch.tiles:
            if t.label == 2:
                small_vertices.update(v.coeffs for v in t.small_angle_vertices())
        corner_flags[label] = tuple(c.coeffs in small_vertices for c in corners)
        found = find_stars(patch)
        stars[label] = found
        invariant.extend((label, c, sub.n) for c in found)
        if depth >= 2:
            level2[label] = find_stars(substitute_patch(sub, patch))
    return SymmetryReport(
        n=sub.n,
        stars=stars,
        corner_flags=corner_flags,
        invariant_centers=invariant,
        level2_stars=level2,
    )


@dataclass(frozen=True)
class FixedPointWitness:
    depth: int
    rotation: int


def grow_fixed_point(
    sub: Substitution, seed: Patch, center: Cyclo, max_depth: int
) -> FixedPointWitness | None:
    """Smallest k <= max_depth with a center-fixing placement of seed inside
    its k-th substitution image; None when no such k exists in range."""
    if not is_rotation_invariant(seed, center):
        raise ValueError("seed is not rotation-invariant about the given center")
    if not center.is_zero():
        raise ValueError("fixed-point growth is anchored at the origin")
    two_n = 2 * sub.n
    current = seed
    for k in range(1, max_depth + 1):
        current = substitute_patch(sub, current)
        for j in range(two_n):
            placed = rotate_patch(seed, center, j) if j else seed
            if placed.tiles <= current.tiles:
                return FixedPointWitness(depth=k, rotation=j)
    return None
