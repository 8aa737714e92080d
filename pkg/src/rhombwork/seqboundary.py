"""Edge sequences, distorted prototile boundaries, and the good-curve test.

A prototile R_i (i even, 2 <= i <= n-1) is the unit rhomb with vertices
0, e_0, e_0 + e_{i+n}, e_{i+n}.  An edge sequence s inflates it to a
distorted rhomb whose four sides are chains of unit segments; opposite
sides carry identical distortions, so a patch of such inflated tiles
still fits together edge to edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclo import (
    Cyclo,
    RingSpec,
    cross_sign,
    direction,
    dot_sign,
    sign_of_real,
    zero,
)

EdgeSequence = tuple[int, ...]


def is_standard(seq: Sequence[int], n: int) -> bool:
    """True iff the terms sum to zero and each |k| < n/2 (and seq is nonempty)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    terms = tuple(seq)
    if not terms:
        return False
    return sum(terms) == 0 and all(2 * abs(k) < n for k in terms)


def rotate_sequence(seq: Sequence[int], j: int) -> EdgeSequence:
    """Term-wise rotation: every direction index advances by j."""
    return tuple(k + j for k in seq)


def total(spec: RingSpec, seq: Sequence[int]) -> Cyclo:
    """The exact endpoint sum(e_k) of the chain; real for standard sequences."""
    acc = zero(spec)
    for k in seq:
        acc = acc + direction(spec, k)
    return acc


class Segment:
    """A directed unit segment: start point plus direction index in [0, 2n)."""

    __slots__ = ("start", "dir", "end", "_hash", "_bbox")

    def __init__(self, start: Cyclo, dir_index: int):
        two_n = 2 * start.spec.n
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "dir", dir_index % two_n)
        object.__setattr__(self, "end", start + direction(start.spec, dir_index))
        object.__setattr__(self, "_hash", hash((start, dir_index % two_n)))
        object.__setattr__(self, "_bbox", None)

    def bbox(self) -> tuple[float, float, float, float]:
        cached = self._bbox
        if cached is None:
            x0, y0 = self.start.to_xy()
            x1, y1 = self.end.to_xy()
            cached = (min(x0, x1), max(x0, x1), min(y0, y1), max(y0, y1))
            object.__setattr__(self, "_bbox", cached)
        return cached

    def __setattr__(self, *_):  # pragma: no cover - guard only
        raise AttributeError("Segment is immutable")

    @property
    def klass(self) -> int:
        """Undirected direction class in [0, n)."""
        return self.dir % self.start.spec.n

    def reversed(self) -> "Segment":
        return Segment(self.end, self.dir + self.start.spec.n)

    def undirected_key(self) -> frozenset:
        return frozenset((self.start.coeffs, self.end.coeffs))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Segment)
            and self.dir == other.dir
            and self.start == other.start
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Segment({self.start.to_xy()}, dir={self.dir})"


def chain_segments(spec: RingSpec, start: Cyclo, dirs: Iterable[int]) -> tuple[Segment, ...]:
    """The chain E_s(p): each segment begins where the previous one ends."""
    segs = []
    cur = start
    for k in dirs:
        seg = Segment(cur, k)
        segs.append(seg)
        cur = seg.end
    return tuple(segs)


@dataclass(frozen=True)
class ClosedChain:
    """A closed traversal of unit segments (the curve of a region boundary)."""

    spec: RingSpec
    segs: tuple[Segment, ...]

    def __post_init__(self):
        for a, b in zip(self.segs, self.segs[1:]):
            if a.end != b.start:
                raise ValueError("chain segments are not consecutive")
        if self.segs and self.segs[-1].end != self.segs[0].start:
            raise ValueError("chain is not closed")

    def __len__(self) -> int:
        return len(self.segs)

    def reversed(self) -> "ClosedChain":
        return ClosedChain(self.spec, tuple(s.reversed() for s in reversed(self.segs)))

    def signed_area(self) -> float:
        """Shoelace area of the traversal polygon (floats; CCW positive)."""
        acc = 0.0
        for seg in self.segs:
            x0, y0 = seg.start.to_xy()
            x1, y1 = seg.end.to_xy()
            acc += x0 * y1 - x1 * y0
        return acc / 2.0


@dataclass(frozen=True)
class Boundary:
    """The s-boundary of a prototile: four distorted sides plus traversal.

    bottom and top are translates of each other, as are left and right;
    the traversal runs bottom and right forwards, top and left backwards,
    so the curve is closed.  corners are the vertices of the inflated
    (rotated) copy of R_label.
    """

    spec: RingSpec
    seq: EdgeSequence
    label: int
    bottom: tuple[Segment, ...]
    right: tuple[Segment, ...]
    top: tuple[Segment, ...]
    left: tuple[Segment, ...]
    corners: tuple[Cyclo, Cyclo, Cyclo, Cyclo]
    chain: ClosedChain


def build_boundary(spec: RingSpec, seq: Sequence[int], label: int) -> Boundary:
    """Assemble the four chains of the s-boundary of R_label."""
    terms = tuple(seq)
    if not is_standard(terms, spec.n):
        raise ValueError(f"sequence {terms} is not standard for n={spec.n}")
    if label % 2 != 0 or not (2 <= label <= spec.n - 1):
        raise ValueError(f"label must be even in [2, n-1], got {label}")
    t_s = total(spec, terms)
    rotated = rotate_sequence(terms, -label)
    t_rot = total(spec, rotated)
    origin = zero(spec)
    bottom = chain_segments(spec, origin, terms)
    right = chain_segments(spec, t_s, rotated)
    top = chain_segments(spec, t_rot, terms)
    left = chain_segments(spec, origin, rotated)
    traversal = (
        list(bottom)
        + list(right)
        + [s.reversed() for s in reversed(top)]
        + [s.reversed() for s in reversed(left)]
    )
    corners = (origin, t_s, t_s + t_rot, t_rot)
    return Boundary(
        spec=spec,
        seq=terms,
        label=label,
        bottom=bottom,
        right=right,
        top=top,
        left=left,
        corners=corners,
        chain=ClosedChain(spec, tuple(traversal)),
    )


def as_chain(obj: Boundary | ClosedChain) -> ClosedChain:
    return obj.chain if isinstance(obj, Boundary) else obj


def canonical_orientation(n: int, direction_class: int) -> int:
    """Rule-1 orientation of a direction class: e_k for even k, else e_{k+n}."""
    if n % 2 == 0:
        raise ValueError("canonical orientation is defined for odd n only")
    k = direction_class % n
    return k if k % 2 == 0 else k + n


# ---------------------------------------------------------------------------
# Good-curve test


def _projection(u: Cyclo, x: Cyclo) -> Cyclo:
    """conj(u) * x; its real part is the signed offset of x along unit u."""
    return u.conj() * x


def _strictly_between(lo: Cyclo, hi: Cyclo, x: Cyclo) -> bool:
    """lo < x < hi for real ring elements."""
    return sign_of_real(x - lo) > 0 and sign_of_real(hi - x) > 0


def _collinear_overlap(a: Segment, b: Segment) -> bool:
    """True if two same-class segments share more than a point (as sets)."""
    spec = a.start.spec
    u = direction(spec, a.dir)
    off = _projection(u, b.start - a.start)
    if cross_sign(u, b.start - a.start) != 0:
        return False  # parallel but on different lines
    # params of the two unit intervals along the common line
    pa0 = zero(spec)
    pa1 = _projection(u, a.end - a.start)
    pb0 = off
    pb1 = _projection(u, b.end - a.start)
    lo_a, hi_a = (pa0, pa1) if sign_of_real(pa1 - pa0) > 0 else (pa1, pa0)
    lo_b, hi_b = (pb0, pb1) if sign_of_real(pb1 - pb0) > 0 else (pb1, pb0)
    lo = lo_a if sign_of_real(lo_b - lo_a) < 0 else lo_b
    hi = hi_a if sign_of_real(hi_b - hi_a) > 0 else hi_b
    return sign_of_real(hi - lo) > 0


def _strictly_inside_segment(x: Cyclo, seg: Segment) -> bool:
    """x lies on seg's line strictly between its endpoints (caller checked collinearity)."""
    return (
        dot_sign(x - seg.start, seg.end - seg.start) > 0
        and dot_sign(x - seg.end, seg.start - seg.end) > 0
    )


def _bad_intersection(a: Segment, b: Segment) -> bool:
    """Segments with distinct point sets meeting somewhere that is not a shared endpoint."""
    if a.klass == b.klass:
        return _collinear_overlap(a, b)
    # non-parallel: at most one intersection point
    shared = (
        a.start == b.start or a.start == b.end or a.end == b.start or a.end == b.end
    )
    if shared:
        return False
    d1 = cross_sign(a.end - a.start, b.start - a.start)
    d2 = cross_sign(a.end - a.start, b.end - a.start)
    d3 = cross_sign(b.end - b.start, a.start - b.start)
    d4 = cross_sign(b.end - b.start, a.end - b.start)
    if d1 == 0 and _strictly_inside_segment(b.start, a):
        return True
    if d2 == 0 and _strictly_inside_segment(b.end, a):
        return True
    if d3 == 0 and _strictly_inside_segment(a.start, b):
        return True
    if d4 == 0 and _strictly_inside_segment(a.end, b):
        return True
    return d1 * d2 < 0 and d3 * d4 < 0


def _overlap_census(chain: ClosedChain) -> dict[frozenset, list[Segment]]:
    groups: dict[frozenset, list[Segment]] = {}
    for seg in chain.segs:
        groups.setdefault(seg.undirected_key(), []).append(seg)
    return groups


def is_good_curve(b: Boundary | ClosedChain) -> bool:
    """Decide Definition-style goodness of a closed unit-segment curve.

    (1) Segments may coincide only as doubled opposite-orientation pairs,
        and otherwise meet only at shared endpoints.
    (2) At every vertex the non-doubled incident rays must alternate
        in/out in cyclic order (doubled rays can always be pulled apart
        locally, so they are ignored by the alternation test).
    """
    chain = as_chain(b)
    segs = chain.segs
    groups = _overlap_census(chain)
    for group in groups.values():
        if len(group) > 2:
            return False
        if len(group) == 2 and group[0].dir == group[1].dir:
            return False
    distinct = [g[0] for g in groups.values()]
    boxes = []
    for seg in distinct:
        x0, y0 = seg.start.to_xy()
        x1, y1 = seg.end.to_xy()
        boxes.append((min(x0, x1), max(x0, x1), min(y0, y1), max(y0, y1)))
    margin = 1e-6
    for i in range(len(distinct)):
        bi = boxes[i]
        for j in range(i + 1, len(distinct)):
            bj = boxes[j]
            if (
                bi[1] < bj[0] - margin
                or bj[1] < bi[0] - margin
                or bi[3] < bj[2] - margin
                or bj[3] < bi[2] - margin
            ):
                continue
            if _bad_intersection(distinct[i], distinct[j]):
                return False
    return _vertex_alternation_ok(chain)


_IN = 0
_OUT = 1


def _vertex_alternation_ok(chain: ClosedChain) -> bool:
    two_n = 2 * chain.spec.n
    ends: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for seg in chain.segs:
        ends.setdefault(seg.start.coeffs, []).append((seg.dir, _OUT))
        ends.setdefault(seg.end.coeffs, []).append(((seg.dir + chain.spec.n) % two_n, _IN))
    for rays in ends.values():
        by_ray: dict[int, list[int]] = {}
        for ray, io in rays:
            by_ray.setdefault(ray, []).append(io)
        singles = [
            (ray, ios[0]) for ray, ios in sorted(by_ray.items()) if len(ios) == 1
        ]
        # doubled rays are one in + one out (condition 1 already held)
        for _, ios in by_ray.items():
            if len(ios) > 2:
                return False
        if len(singles) >= 2:
            for (_, io_a), (_, io_b) in zip(singles, singles[1:] + singles[:1]):
                if io_a == io_b:
                    return False
    return True


def enclosed_area(b: Boundary | ClosedChain) -> float:
    """Unsigned area enclosed by the curve (distortions cancel pairwise)."""
    return abs(as_chain(b).signed_area())
