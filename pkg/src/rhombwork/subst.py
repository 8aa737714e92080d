"""Substitution rules: per-prototile image patches, extension, iteration.

A substitution carries one patch per prototile, each filling the region
inside that prototile's distorted inflated boundary.  Extending it to a
placed tile means rotating the image patch by the unique rotation that
respects the canonical edge orientations (so shared edges of adjacent
tiles inflate to identical distorted chains) and scaling the tile's
translation by the inflation factor, exactly, as multiplication by the
ring element T(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .cyclo import Cyclo, RingSpec, direction
from .errors import InternalError
from .seqboundary import (
    Boundary,
    build_boundary,
    canonical_orientation,
    enclosed_area,
    is_good_curve,
    is_standard,
    total,
)
from .tiler import Patch, PlacedTile


def inflation_factor(spec: RingSpec, seq) -> float:
    """lambda = ||T(s)||; T(s) is on the positive x-axis for standard s."""
    if not is_standard(tuple(seq), spec.n):
        raise ValueError("sequence is not standard")
    x, y = total(spec, tuple(seq)).to_xy()
    return math.hypot(x, y)


def compatible_rotation(spec: RingSpec, label: int, rot: int) -> int:
    """The member of {rot, rot+n} that maps canonical edge orientations
    to canonical edge orientations (for odd n this is the even member)."""
    two_n = 2 * spec.n
    for candidate in (rot % two_n, (rot + spec.n) % two_n):
        ok = True
        for klass in (0, label % spec.n):
            source = canonical_orientation(spec.n, klass)
            target = canonical_orientation(spec.n, (klass + candidate) % spec.n)
            if (source + candidate) % two_n != target:
                ok = False
                break
        if ok:
            return candidate
    raise InternalError(f"no orientation-compatible rotation for {label}, {rot}")


@dataclass(frozen=True)
class Substitution:
    spec: RingSpec
    seq: tuple[int, ...]
    images: Mapping[int, Patch]
    boundaries: Mapping[int, Boundary] = field(compare=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def infl(self) -> float:
        return inflation_factor(self.spec, self.seq)

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.images))

    def scale(self) -> Cyclo:
        """T(s) as a ring element; multiplying by it is exact lambda-scaling."""
        return total(self.spec, self.seq)


class BoundaryMismatchError(ValueError):
    def __init__(self, label: int, detail: str):
        super().__init__(f"image patch for label {label} does not fill its boundary: {detail}")
        self.label = label


class OverlapError(ValueError):
    def __init__(self, label: int, detail: str):
        super().__init__(f"image patch for label {label} is not a valid patch: {detail}")
        self.label = label


def make_substitution(
    spec: RingSpec, seq, images: Mapping[int, Patch]
) -> Substitution:
    """Validate the image patches against their boundaries and assemble."""
    terms = tuple(seq)
    if not is_standard(terms, spec.n):
        raise ValueError(f"sequence {terms} is not standard for n={spec.n}")
    expected_labels = tuple(range(2, spec.n, 2))
    if tuple(sorted(images)) != expected_labels:
        raise ValueError(f"images must cover labels {expected_labels}")
    boundaries = {}
    for label in expected_labels:
        b = build_boundary(spec, terms, label)
        if not is_good_curve(b):
            raise ValueError(f"boundary for label {label} is not a good curve")
        patch = images[label]
        for key, count in patch.edge_census().items():
            if count > 2:
                raise OverlapError(label, f"edge {sorted(key)} shared by {count} tiles")
        if not patch.support_matches(b):
            curve = {
                s.undirected_key()
                for s in b.chain.segs
            }
            extra = sorted(
                map(sorted, patch.boundary_edge_keys() - curve), key=str
            )
            missing = sorted(
                map(sorted, curve - patch.boundary_edge_keys()), key=str
            )
            first = (extra + missing)[0] if (extra or missing) else "?"
            raise BoundaryMismatchError(label, f"first differing segment {first}")
        area = enclosed_area(b)
        if abs(patch.area() - area) > 1e-9 * max(1.0, area):
            raise BoundaryMismatchError(
                label, f"area {patch.area():.12f} != region {area:.12f}"
            )
        boundaries[label] = b
    return Substitution(spec=spec, seq=terms, images=dict(images), boundaries=boundaries)


def substitute_tile(sub: Substitution, t: PlacedTile) -> Patch:
    """The image patch of one placed tile under the substitution.

    The image sits exactly over lambda times the tile: the reference
    prototile inflates in place, and for any other placement the unique
    orientation-respecting rotation plus the exactly scaled translation
    carry the reference image onto the tile's image.
    """
    if t.label not in sub.images:
        raise KeyError(f"unknown label {t.label}")
    spec = sub.spec
    rho = compatible_rotation(spec, t.label, t.rot)
    trans = t.trans
    if rho != t.rot:
        diag = direction(spec, t.rot) + direction(spec, t.rot - t.label)
        trans = trans + diag
    lam_v = sub.scale() * trans
    out = []
    for tau in sub.images[t.label].tiles:
        out.append(
            PlacedTile(
                spec,
                tau.label,
                tau.rot + rho,
                tau.trans.mul_zeta(rho) + lam_v,
            )
        )
    return Patch.of(spec, out)


def substitute_patch(sub: Substitution, p: Patch) -> Patch:
    """Apply the substitution to every tile; result is again a patch."""
    tiles: set[PlacedTile] = set()
    expected = 0
    for t in sorted(p.tiles, key=PlacedTile.sort_key):
        img = substitute_tile(sub, t)
        expected += len(img)
        tiles.update(img.tiles)
    if len(tiles) != expected:
        raise InternalError("substituted images collide tile-for-tile")
    result = Patch.of(sub.spec, tiles)
    for key, count in result.edge_census().items():
        if count > 2:
            raise InternalError(
                f"substituted patch has edge {sorted(key)} shared by {count} tiles"
            )
    return result


def substitution_matrix(sub: Substitution) -> dict[int, dict[int, int]]:
    """M[i][j] = number of label-j tiles in the image of R_i."""
    return {
        label: dict(sorted(patch.label_counts().items()))
        for label, patch in sorted(sub.images.items())
    }


def matrix_power_counts(sub: Substitution, label: int, k: int) -> dict[int, int]:
    """Predicted per-label tile counts of the k-th image of R_label."""
    m = substitution_matrix(sub)
    counts = {label: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for src, cnt in counts.items():
            for dst, mult in m[src].items():
                nxt[dst] = nxt.get(dst, 0) + cnt * mult
        counts = nxt
    return dict(sorted(counts.items()))
