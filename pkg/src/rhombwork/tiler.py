"""Constructing and enumerating rhomb tilings of a bounded region.

construct_tiling realizes a tiling from the pseudoline pairing by a
left-to-right sweep over the boundary: pseudolines become arcs anchored
at their boundary segments, every forced crossing is performed as a swap
of adjacent arcs, and each swap deposits one rhomb.  enumerate_tilings
is an independent exhaustive backtracker used as the ground-truth oracle
for the tilability criterion and for flip-graph experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .cyclo import Cyclo, RingSpec, cross_sign, direction, zero
from .errors import InternalError, UntilableError
from .ksk import PseudolinePairing, crossings, ksk_check, pair_segments
from .seqboundary import Boundary, ClosedChain, Segment, as_chain, is_good_curve


@lru_cache(maxsize=None)
def _dir_lookup(spec: RingSpec) -> dict[tuple[int, ...], int]:
    return {spec.zeta_powers[k]: k for k in range(2 * spec.n)}


def direction_index(vec: Cyclo) -> int:
    """The k with vec == e_k; raises if vec is not a unit direction."""
    try:
        return _dir_lookup(vec.spec)[vec.coeffs]
    except KeyError:
        raise ValueError("vector is not one of the 2n unit directions") from None


class PlacedTile:
    """A prototile placed by label, rotation and exact translation.

    The reference prototile for label i is the unit rhomb spanned by e_0
    and e_{-i} (vertices 0, e_0, e_0+e_{-i}, e_{-i}); a placed tile is
    its rotation by rot*pi/n plus a translation.  This is the placement
    an edge sequence inflates in place: the region inside the distorted
    boundary of label i is exactly lambda times the reference prototile.

    The stored rotation lives in [0, n): the prototiles are symmetric
    under a half turn, so (label, rot, trans) and its half-turn twin
    describe the same rhomb and are collapsed to one canonical triple.
    """

    __slots__ = ("spec", "label", "rot", "trans", "_hash")

    def __init__(self, spec: RingSpec, label: int, rot: int, trans: Cyclo):
        n = spec.n
        if label % 2 != 0 or not 2 <= label <= n - 1:
            raise ValueError(f"label must be even in [2, n-1], got {label}")
        rot %= 2 * n
        if rot >= n:
            rot -= n
            diag = direction(spec, rot) + direction(spec, rot - label)
            trans = trans - diag
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "rot", rot)
        object.__setattr__(self, "trans", trans)
        object.__setattr__(self, "_hash", hash((label, rot, trans.coeffs)))

    def __setattr__(self, *_):  # pragma: no cover - guard only
        raise AttributeError("PlacedTile is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PlacedTile)
            and self.label == other.label
            and self.rot == other.rot
            and self.trans == other.trans
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PlacedTile(R_{self.label}, rot={self.rot}, at={self.trans.to_xy()})"

    def sort_key(self):
        return (self.label, self.rot, self.trans.coeffs)

    @classmethod
    def from_corner(cls, v: Cyclo, d1: int, d2: int) -> "PlacedTile":
        """The rhomb with a corner at v and outgoing edge directions d1, d2."""
        spec = v.spec
        n = spec.n
        w = (d2 - d1) % (2 * n)
        if w == 0 or w == n:
            raise ValueError("degenerate rhomb (parallel edge directions)")
        if w > n:
            d1, d2 = d2, d1
            w = 2 * n - w
        if w % 2 == 0:
            # corner is the base (small-angle) vertex of R_w
            return cls(spec, w, d2, v)
        # corner is a large-angle vertex of R_{n-w}
        return cls(spec, n - w, d1 + n, v + direction(spec, d1))

    def vertices(self) -> tuple[Cyclo, Cyclo, Cyclo, Cyclo]:
        """Corners in order base, base+e_rot, opposite, base+e_{rot-label}."""
        spec = self.spec
        a = direction(spec, self.rot)
        b = direction(spec, self.rot - self.label)
        t = self.trans
        return (t, t + a, t + a + b, t + b)

    def vertices_ccw(self) -> tuple[Cyclo, Cyclo, Cyclo, Cyclo]:
        v0, v1, v2, v3 = self.vertices()
        return (v0, v3, v2, v1)

    def edges(self) -> list[tuple[frozenset, int]]:
        """The four unit edges as (undirected endpoint key, direction class)."""
        spec = self.spec
        n = spec.n
        v0, v1, v2, v3 = self.vertices()
        c_a = self.rot % n
        c_b = (self.rot - self.label) % n
        return [
            (frozenset((v0.coeffs, v1.coeffs)), c_a),
            (frozenset((v3.coeffs, v2.coeffs)), c_a),
            (frozenset((v0.coeffs, v3.coeffs)), c_b),
            (frozenset((v1.coeffs, v2.coeffs)), c_b),
        ]

    def corner_wedges(self) -> list[tuple[Cyclo, int, int]]:
        """(vertex, dir1, dir2) with the interior wedge from dir1 ccw to dir2."""
        n = self.spec.n
        r = self.rot % (2 * n)
        q = (r - self.label) % (2 * n)
        v0, v1, v2, v3 = self.vertices()
        return [
            (v0, q, r),
            (v1, (r + n) % (2 * n), q),
            (v2, (q + n) % (2 * n), (r + n) % (2 * n)),
            (v3, r, (q + n) % (2 * n)),
        ]

    def area(self) -> float:
        import math

        return math.sin(self.label * math.pi / self.spec.n)

    def small_angle_vertices(self) -> tuple[Cyclo, Cyclo]:
        """The two corners carrying the angle label*pi/n."""
        v0, _, v2, _ = self.vertices()
        return (v0, v2)


def tiles_overlap(t1: PlacedTile, t2: PlacedTile) -> bool:
    """Exact positive-area intersection test for two placed rhombs."""
    for a, b in ((t1, t2), (t2, t1)):
        verts = a.vertices_ccw()
        other = b.vertices_ccw()
        for i in range(4):
            p = verts[i]
            d = verts[(i + 1) % 4] - p
            if all(cross_sign(d, q - p) <= 0 for q in other):
                return False
    return True


@dataclass(frozen=True)
class Patch:
    """A set of placed tiles with pairwise disjoint interiors."""

    spec: RingSpec
    tiles: frozenset

    @staticmethod
    def of(spec: RingSpec, tiles: Iterable[PlacedTile]) -> "Patch":
        return Patch(spec=spec, tiles=frozenset(tiles))

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.sorted_tiles())

    def sorted_tiles(self) -> tuple[PlacedTile, ...]:
        return tuple(sorted(self.tiles, key=PlacedTile.sort_key))

    def area(self) -> float:
        return sum(t.area() for t in self.tiles)

    def label_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for t in self.tiles:
            counts[t.label] = counts.get(t.label, 0) + 1
        return counts

    def edge_census(self) -> dict[frozenset, int]:
        census: dict[frozenset, int] = {}
        for t in self.tiles:
            for key, _ in t.edges():
                census[key] = census.get(key, 0) + 1
        return census

    def boundary_edge_keys(self) -> set[frozenset]:
        return {key for key, count in self.edge_census().items() if count == 1}

    def validate(self, deep: bool = False) -> None:
        """Raise if the patch is inconsistent.

        The cheap check rejects any edge shared by three tiles; the deep
        check runs the exact pairwise overlap predicate.
        """
        for key, count in self.edge_census().items():
            if count > 2:
                raise InternalError(f"edge {sorted(key)} shared by {count} tiles")
        if deep:
            tiles = self.sorted_tiles()
            boxes = []
            for t in tiles:
                pts = [v.to_xy() for v in t.vertices()]
                xs = [p[0] for p in pts]
                ys = [p[1] for p in pts]
                boxes.append((min(xs), max(xs), min(ys), max(ys)))
            for i in range(len(tiles)):
                for j in range(i + 1, len(tiles)):
                    bi, bj = boxes[i], boxes[j]
                    if (
                        bi[1] < bj[0] - 1e-6
                        or bj[1] < bi[0] - 1e-6
                        or bi[3] < bj[2] - 1e-6
                        or bj[3] < bi[2] - 1e-6
                    ):
                        continue
                    if tiles_overlap(tiles[i], tiles[j]):
                        raise InternalError(f"tiles overlap: {tiles[i]} {tiles[j]}")

    def support_matches(self, b: Boundary | ClosedChain) -> bool:
        """Exact test: boundary of the tile union == the curve's simple part.

        Doubled curve segments (slits) lie inside the union, shared by the
        two tiles flanking them, so they are excluded on both sides.
        """
        chain = as_chain(b)
        curve_census: dict[frozenset, int] = {}
        for seg in chain.segs:
            key = seg.undirected_key()
            curve_census[key] = curve_census.get(key, 0) + 1
        curve_simple = {k for k, c in curve_census.items() if c == 1}
        return self.boundary_edge_keys() == curve_simple


# ---------------------------------------------------------------------------
# Constructive tiling via the pseudoline sweep


def construct_tiling(b: Boundary | ClosedChain) -> Patch:
    """A tiling of the region inside b; raises UntilableError if none exists."""
    chain = as_chain(b)
    if not is_good_curve(chain):
        raise UntilableError("boundary is not a good curve")
    if not ksk_check(chain):
        raise UntilableError("boundary violates the tilability criterion")
    pairing = pair_segments(chain)
    patch = _sweep_tiling(pairing)
    if len(patch) != len(crossings(pairing)):
        raise InternalError("tile count differs from pseudoline crossing count")
    return patch


def _sweep_tiling(pairing: PseudolinePairing) -> Patch:
    chain = pairing.chain
    segs = chain.segs
    n_pos = len(segs)
    spec = chain.spec
    line_at: dict[int, tuple[int, bool]] = {}
    for line in pairing.lines:
        a, b = line.positions
        lo, hi = min(a, b), max(a, b)
        line_at[lo] = (line.id, True)
        line_at[hi] = (line.id, False)
    cross_ok = {frozenset((l1.id, l2.id)) for l1, l2, _ in crossings(pairing)}

    verts = [seg.start for seg in segs]
    active: list[int] = []
    faces: list[Cyclo] = [verts[0]]
    tiles: list[PlacedTile] = []
    for p in range(n_pos):
        line_id, opening = line_at[p]
        nxt = verts[(p + 1) % n_pos]
        if opening:
            active.insert(0, line_id)
            faces.insert(0, nxt)
            continue
        h = active.index(line_id)
        for step in range(h, 0, -1):
            below = active[step - 1]
            if frozenset((line_id, below)) not in cross_ok:
                raise InternalError("sweep forced a crossing the pairing forbids")
            v_lo, v_mid, v_hi = faces[step - 1], faces[step], faces[step + 1]
            d1 = direction_index(v_lo - v_mid)
            d2 = direction_index(v_hi - v_mid)
            tiles.append(PlacedTile.from_corner(v_mid, d1, d2))
            faces[step] = v_lo + v_hi - v_mid
            active[step - 1], active[step] = active[step], active[step - 1]
        if faces[1] != nxt:
            raise InternalError("sweep face vertex disagrees with boundary walk")
        active.pop(0)
        faces.pop(0)
    if active or len(faces) != 1:
        raise InternalError("sweep terminated with open pseudolines")
    return Patch.of(spec, tiles)


# ---------------------------------------------------------------------------
# Zonogon boundaries (test regions beyond the four-chain boundaries)


def zonogon(spec: RingSpec, classes: Sequence[int]) -> ClosedChain:
    """Counterclockwise convex zonogon with one unit edge per listed class.

    Repeat a class in the list for higher multiplicity.
    """
    if not classes:
        raise ValueError("zonogon needs at least one direction class")
    dirs = sorted(k % spec.n for k in classes)
    order = dirs + [k + spec.n for k in dirs]
    segs = []
    cur = zero(spec)
    for k in order:
        seg = Segment(cur, k)
        segs.append(seg)
        cur = seg.end
    return ClosedChain(spec, tuple(segs))


# ---------------------------------------------------------------------------
# Exhaustive backtracking oracle


@dataclass(frozen=True)
class EnumerationResult:
    tilings: tuple[Patch, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.tilings)

    def __iter__(self):
        return iter(self.tilings)


_FLOAT_GUARD = 1e-7
_sign_cache: dict = {}
_dot_cache: dict = {}


def _sign3(a: Cyclo, b: Cyclo, c: Cyclo) -> int:
    """Orientation of (a, b, c): float fast path, exact near zero, memoized."""
    ax, ay = a.to_xy()
    bx, by = b.to_xy()
    cx, cy = c.to_xy()
    value = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if value > _FLOAT_GUARD:
        return 1
    if value < -_FLOAT_GUARD:
        return -1
    key = (a, b, c)
    hit = _sign_cache.get(key)
    if hit is None:
        if len(_sign_cache) > 2_000_000:
            _sign_cache.clear()
        hit = cross_sign(b - a, c - a)
        _sign_cache[key] = hit
    return hit


def _dot3(a: Cyclo, b: Cyclo, c: Cyclo) -> int:
    """Sign of (c - a) . (b - a): float fast path, exact near zero, memoized."""
    ax, ay = a.to_xy()
    bx, by = b.to_xy()
    cx, cy = c.to_xy()
    value = (bx - ax) * (cx - ax) + (by - ay) * (cy - ay)
    if value > _FLOAT_GUARD:
        return 1
    if value < -_FLOAT_GUARD:
        return -1
    key = (a, b, c)
    hit = _dot_cache.get(key)
    if hit is None:
        from .cyclo import dot_sign

        if len(_dot_cache) > 2_000_000:
            _dot_cache.clear()
        hit = dot_sign(b - a, c - a)
        _dot_cache[key] = hit
    return hit


def _strictly_inside_quad(x: Cyclo, quad: Sequence[Cyclo]) -> bool:
    for i in range(4):
        if _sign3(quad[i], quad[(i + 1) % 4], x) <= 0:
            return False
    return True


def _segment_blocks_quad(seg: Segment, quad: Sequence[Cyclo], wedges) -> bool:
    """True if seg reaches into the open interior of the quad."""
    p, q = seg.start, seg.end
    if _strictly_inside_quad(p, quad) or _strictly_inside_quad(q, quad):
        return True
    for i in range(4):
        a = quad[i]
        b = quad[(i + 1) % 4]
        d1 = _sign3(a, b, p)
        d2 = _sign3(a, b, q)
        if d1 * d2 >= 0:
            continue
        d3 = _sign3(p, q, a)
        d4 = _sign3(p, q, b)
        if d3 * d4 < 0:
            return True
    # segment endpoint sitting on the quad boundary and pointing inward
    two_n = 2 * seg.start.spec.n
    for x, ray in ((p, seg.dir), (q, (seg.dir + seg.start.spec.n) % two_n)):
        if _ray_enters_quad(x, ray, quad, wedges):
            return True
    # quad vertex strictly inside the segment: test both rays of the segment
    for v, w1, w2 in wedges:
        if _on_open_segment(v, seg):
            if _dir_in_open_wedge(seg.dir, w1, w2, two_n) or _dir_in_open_wedge(
                (seg.dir + seg.start.spec.n) % two_n, w1, w2, two_n
            ):
                return True
    return False


def _on_open_segment(x: Cyclo, seg: Segment) -> bool:
    if x == seg.start or x == seg.end:
        return False
    if _sign3(seg.start, seg.end, x) != 0:
        return False
    return _dot3(seg.start, seg.end, x) > 0 and _dot3(seg.end, seg.start, x) > 0


def _dir_in_open_wedge(k: int, w1: int, w2: int, two_n: int) -> bool:
    width = (w2 - w1) % two_n
    return 0 < (k - w1) % two_n < width


def _ray_enters_quad(x: Cyclo, ray: int, quad: Sequence[Cyclo], wedges) -> bool:
    """Does a unit ray from boundary point x point into the quad's interior?"""
    two_n = 2 * x.spec.n
    for v, w1, w2 in wedges:
        if x == v:
            return _dir_in_open_wedge(ray, w1, w2, two_n)
    for i in range(4):
        a = quad[i]
        b = quad[(i + 1) % 4]
        if _sign3(a, b, x) == 0 and _on_open_segment(
            x, Segment(a, direction_index(b - a))
        ):
            return _sign3(a, b, x + direction(x.spec, ray)) > 0
    return False


def _cancel_new_pairs(
    cycles: list[list[Segment]], fresh: list[Segment]
) -> tuple[list[list[Segment]], list[Segment]]:
    """Delete reversal pairs involving freshly created segments.

    A fresh tile edge that retraces an existing boundary segment means
    the strip between them has zero width: both copies disappear and the
    cycle splits into the two lobes on either side.  Pairs of old
    segments are never touched: those are slits with untiled region on
    both sides and must stay as walls.
    """
    removed: list[Segment] = []
    for p in fresh:
        partner = Segment(p.end, p.dir + p.start.spec.n)
        home = None
        for ci, cyc in enumerate(cycles):
            if p in cyc:
                home = ci
                break
        if home is None:
            continue  # already consumed by an earlier pair in this batch
        cyc = cycles[home]
        try:
            q_idx = cyc.index(partner)
        except ValueError:
            continue
        p_idx = cyc.index(p)
        if p_idx == q_idx:
            raise InternalError("segment equals its own reverse")
        lo, hi = min(p_idx, q_idx), max(p_idx, q_idx)
        part_a = cyc[lo + 1 : hi]
        part_b = cyc[hi + 1 :] + cyc[:lo]
        removed.extend((cyc[lo], cyc[hi]))
        new_cycles = cycles[:home] + cycles[home + 1 :]
        if part_a:
            new_cycles.append(part_a)
        if part_b:
            new_cycles.append(part_b)
        cycles = new_cycles
    return cycles, removed


def _lex_key(v: Cyclo) -> tuple[float, float]:
    return v.to_xy()


def class_counts(b: Boundary | ClosedChain) -> dict[int, int] | None:
    """How many tiles of each label any tiling of the region must use.

    The unit-rhomb areas sin(k*pi/n) are linearly independent over Q, so
    the exact enclosed area decomposes uniquely; a region whose
    decomposition is not a vector of non-negative integers has no tiling
    at all (returns None).
    """
    chain = as_chain(b)
    spec = chain.spec
    n = spec.n
    verts = [seg.start for seg in chain.segs]
    area4i = zero(spec)
    for i, v in enumerate(verts):
        w = verts[(i + 1) % len(verts)]
        x = v.conj() * w
        area4i = area4i + (x - x.conj())
    if chain.signed_area() < 0:
        area4i = -area4i
    labels = list(range(2, n, 2))
    columns = []
    for label in labels:
        d_k = direction(spec, label) - direction(spec, -label)
        columns.append((d_k + d_k).coeffs)
    solution = _solve_integer_combination(columns, area4i.coeffs)
    if solution is None or any(c < 0 for c in solution):
        return None
    return dict(zip(labels, solution))


def _solve_integer_combination(
    columns: list[tuple[int, ...]], target: tuple[int, ...]
) -> list[int] | None:
    """Solve sum(c_j * columns[j]) == target for integers c_j (or None)."""
    from fractions import Fraction

    rows = len(target)
    cols = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(cols)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    solution = [Fraction(0)] * cols
    for idx, c in enumerate(pivots):
        solution[c] = mat[idx][cols]
    for i in range(r, rows):
        if mat[i][cols] != 0:
            return None
    # verify (also covers free columns, which would signal dependence)
    for i in range(rows):
        acc = sum(solution[j] * columns[j][i] for j in range(cols))
        if acc != target[i]:
            return None
    out = []
    for value in solution:
        if value.denominator != 1:
            return None
        out.append(int(value))
    return out


def _seg_bbox(seg: Segment) -> tuple[float, float, float, float]:
    return seg.bbox()


class _Enumerator:
    """Backtracking over tile placements at boundary corners.

    The free region is a list of closed cycles (it can pinch apart into
    lobes).  Corners are scanned in leftmost-lowest order; a corner
    admitting no tile prunes the branch, a corner admitting exactly one
    tile is filled immediately (such a tile is part of every
    completion), and otherwise the corner with the fewest fitting tiles
    is branched on.  Geometric fits depend only on boundary segments
    within one unit of the corner, so candidate lists are cached and
    only recomputed near the previous placement.
    """

    def __init__(self, spec: RingSpec, counts: dict[int, int], cap: int):
        self.spec = spec
        self.counts = counts
        self.total = sum(counts.values())
        self.cap = cap
        self.results: list[Patch] = []
        self.hit_cap = False

    def run(self, cycles: list[list[Segment]]) -> None:
        self.recurse([c for c in cycles if c], [], {})

    def geometric_fits(
        self, cycles: list[list[Segment]], ci: int, idx: int
    ) -> list[tuple[PlacedTile, int]]:
        """All tiles hugging the out-edge at a visit that fit the region
        geometrically (label counts are not consulted here)."""
        spec = self.spec
        two_n = 2 * spec.n
        cyc = cycles[ci]
        out_seg = cyc[idx]
        in_seg = cyc[idx - 1]
        v = out_seg.start
        b_dir = out_seg.dir
        omega = ((in_seg.dir + spec.n) % two_n - b_dir) % two_n
        if omega == 0:
            omega = two_n
        found: list[tuple[PlacedTile, int]] = []
        for w in range(1, min(omega, spec.n - 1) + 1):
            d = (b_dir + w) % two_n
            tile = PlacedTile.from_corner(v, b_dir, d)
            quad = tile.vertices_ccw()
            pts = [p.to_xy() for p in quad]
            qx0 = min(p[0] for p in pts) - 1e-6
            qx1 = max(p[0] for p in pts) + 1e-6
            qy0 = min(p[1] for p in pts) - 1e-6
            qy1 = max(p[1] for p in pts) + 1e-6
            wedges = tile.corner_wedges()
            ok = True
            for other in cycles:
                for seg in other:
                    if seg is out_seg:
                        continue
                    bb = seg.bbox()
                    if bb[1] < qx0 or bb[0] > qx1 or bb[3] < qy0 or bb[2] > qy1:
                        continue
                    if _segment_blocks_quad(seg, quad, wedges):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append((tile, w))
        return found

    def place(
        self, cycles: list[list[Segment]], ci: int, idx: int, w: int
    ) -> tuple[list[list[Segment]], tuple[float, float, float, float]]:
        spec = self.spec
        two_n = 2 * spec.n
        cyc = cycles[ci]
        out_seg = cyc[idx]
        v = out_seg.start
        b_dir = out_seg.dir
        d = (b_dir + w) % two_n
        p1 = Segment(v, d)
        p2 = Segment(p1.end, b_dir)
        p3 = Segment(p2.end, (d + spec.n) % two_n)
        new_cycles = (
            cycles[:ci]
            + [cyc[:idx] + [p1, p2, p3] + cyc[idx + 1 :]]
            + cycles[ci + 1 :]
        )
        new_cycles, removed = _cancel_new_pairs(new_cycles, [p1, p2, p3])
        touched = [out_seg, p1, p2, p3] + removed
        pts = [s.start.to_xy() for s in touched] + [s.end.to_xy() for s in touched]
        pad = 2.3  # fits probe at most two unit steps from a visit vertex
        dirt = (
            min(p[0] for p in pts) - pad,
            max(p[0] for p in pts) + pad,
            min(p[1] for p in pts) - pad,
            max(p[1] for p in pts) + pad,
        )
        return new_cycles, dirt

    def visit_order(self, cycles: list[list[Segment]]) -> list[tuple[int, int]]:
        keyed = []
        for ci, cyc in enumerate(cycles):
            for idx, seg in enumerate(cyc):
                x, y = _lex_key(seg.start)
                keyed.append(((x, y, seg.dir, cyc[idx - 1].dir), (ci, idx)))
        keyed.sort()
        return [addr for _, addr in keyed]

    def recurse(
        self,
        cycles: list[list[Segment]],
        placed: list[PlacedTile],
        cache: dict,
        dirty: tuple[float, float, float, float] | None = None,
    ) -> None:
        if self.hit_cap:
            return
        if not cycles:
            self.results.append(Patch.of(self.spec, placed))
            if len(self.results) >= self.cap:
                self.hit_cap = True
            return
        remaining = self.total - len(placed)
        if sum(len(c) for c in cycles) > 4 * remaining:
            return  # every remaining tile provides at most 4 boundary edges
        used: dict[int, int] = {}
        for t in placed:
            used[t.label] = used.get(t.label, 0) + 1

        def live(fits):
            return [
                (tile, w)
                for tile, w in fits
                if self.counts[tile.label] - used.get(tile.label, 0) > 0
            ]

        new_cache: dict = {}
        branch_addr = None
        branch_fits = None
        for ci, idx in self.visit_order(cycles):
            seg = cycles[ci][idx]
            key = (seg.start, seg.dir, cycles[ci][idx - 1].dir)
            fits = None
            if dirty is not None:
                cached = cache.get(key)
                if cached is not None:
                    x, y = seg.start.to_xy()
                    if not (dirty[0] <= x <= dirty[1] and dirty[2] <= y <= dirty[3]):
                        fits = cached
            if fits is None:
                fits = self.geometric_fits(cycles, ci, idx)
            new_cache[key] = fits
            cands = live(fits)
            if not cands:
                return
            if len(cands) == 1:
                tile, w = cands[0]
                new_cycles, dirt = self.place(cycles, ci, idx, w)
                self.recurse(new_cycles, placed + [tile], new_cache, dirt)
                return
            if branch_fits is None or len(cands) < len(branch_fits):
                branch_addr, branch_fits = (ci, idx), cands
        for tile, w in branch_fits:
            new_cycles, dirt = self.place(cycles, *branch_addr, w)
            self.recurse(new_cycles, placed + [tile], new_cache, dirt)
            if self.hit_cap:
                return


def enumerate_tilings(b: Boundary | ClosedChain, cap: int = 10000) -> EnumerationResult:
    """All tilings of the region inside b, exhaustively, up to cap.

    complete=False means the cap stopped the search early; the returned
    list is then a prefix of the full enumeration in canonical order.
    """
    chain = as_chain(b)
    if not is_good_curve(chain):
        raise UntilableError("boundary is not a good curve")
    counts = class_counts(chain)
    if counts is None:
        return EnumerationResult(tilings=(), complete=True)
    segs = list(chain.segs)
    if chain.signed_area() < 0:
        segs = [s.reversed() for s in reversed(segs)]
    engine = _Enumerator(chain.spec, counts, cap)
    engine.run(_split_doubled_pairs([segs]))
    return EnumerationResult(tilings=tuple(engine.results), complete=not engine.hit_cap)


def _split_doubled_pairs(cycles: list[list[Segment]]) -> list[list[Segment]]:
    """Remove every doubled (reversal) pair, splitting cycles at each.

    An outward spike has no area on either side and simply disappears; an
    inward slit pinches the region into lobes that are tiled
    independently, with tiles abutting the slit from both sides.
    """
    out: list[list[Segment]] = []
    work = [c for c in cycles if c]
    while work:
        cyc = work.pop()
        pair = None
        for i in range(len(cyc)):
            rev = Segment(cyc[i].end, cyc[i].dir + cyc[i].start.spec.n)
            for j in range(i + 1, len(cyc)):
                if cyc[j] == rev:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            out.append(cyc)
            continue
        lo, hi = pair
        part_a = cyc[lo + 1 : hi]
        part_b = cyc[hi + 1 :] + cyc[:lo]
        if part_a:
            work.append(part_a)
        if part_b:
            work.append(part_b)
    return out


# ---------------------------------------------------------------------------
# Pseudoline families of an explicit patch


@dataclass(frozen=True)
class PatchFamily:
    klass: int
    tiles: tuple[PlacedTile, ...]
    end_edges: tuple[frozenset, frozenset]


@dataclass(frozen=True)
class PatchArrangement:
    families: tuple[PatchFamily, ...]

    def crossing_count(self) -> int:
        return sum(len(f.tiles) for f in self.families) // 2


def pseudolines_of_patch(p: Patch) -> PatchArrangement:
    """Group tiles into maximal chains linked through parallel edges."""
    edge_map: dict[frozenset, list[PlacedTile]] = {}
    tile_edges: dict[PlacedTile, dict[int, list[frozenset]]] = {}
    for t in p.tiles:
        per_class: dict[int, list[frozenset]] = {}
        for key, klass in t.edges():
            edge_map.setdefault(key, []).append(t)
            per_class.setdefault(klass, []).append(key)
        tile_edges[t] = per_class
    for key, owners in edge_map.items():
        if len(owners) > 2:
            raise InternalError("edge shared by more than two tiles")
    _reject_holes(p)

    seen: set[tuple[int, int, tuple]] = set()
    families: list[PatchFamily] = []
    for t in sorted(p.tiles, key=PlacedTile.sort_key):
        for klass, keys in sorted(tile_edges[t].items()):
            mark = (klass, t.label, t.sort_key())
            if mark in seen:
                continue
            chain = [t]
            ends = []
            for start_key in keys:
                cur_t, cur_key = t, start_key
                while True:
                    owners = edge_map[cur_key]
                    nxt = [o for o in owners if o is not cur_t]
                    if not nxt:
                        ends.append(cur_key)
                        break
                    cur_t = nxt[0]
                    if start_key is keys[0]:
                        chain.insert(0, cur_t)
                    else:
                        chain.append(cur_t)
                    pair = tile_edges[cur_t][klass]
                    cur_key = pair[0] if pair[1] == cur_key else pair[1]
            for member in chain:
                seen.add((klass, member.label, member.sort_key()))
            families.append(
                PatchFamily(klass=klass, tiles=tuple(chain), end_edges=(ends[0], ends[1]))
            )
    for t in p.tiles:
        count = sum(1 for f in families if t in f.tiles)
        if count != 2:
            raise InternalError("tile does not lie in exactly two families")
    return PatchArrangement(families=tuple(families))


def _reject_holes(p: Patch) -> None:
    boundary_keys = p.boundary_edge_keys()
    if not boundary_keys:
        return
    vertex_graph: dict[tuple, set] = {}
    for key in boundary_keys:
        a, b = tuple(key)
        vertex_graph.setdefault(a, set()).add(b)
        vertex_graph.setdefault(b, set()).add(a)
    start = next(iter(vertex_graph))
    stack = [start]
    reached = {start}
    while stack:
        cur = stack.pop()
        for nxt in vertex_graph[cur]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != len(vertex_graph):
        raise InternalError("patch support has a hole")
