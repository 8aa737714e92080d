from __future__ import annotations

import math

import pytest

from conftest import SEQ_UNTILABLE, SEQ_SEVENFOLD, SEQ_11FOLD
from rhombwork.cyclo import direction, to_cartesian, zero
from rhombwork.seqboundary import (
    ClosedChain,
    build_boundary,
    canonical_orientation,
    chain_segments,
    enclosed_area,
    is_good_curve,
    is_standard,
    rotate_sequence,
    total,
)
from rhombwork.seqboundary import _bad_intersection


def test_is_standard_examples(ring7):
    assert is_standard(SEQ_SEVENFOLD, 7)
    assert is_standard(SEQ_UNTILABLE, 7)
    assert not is_standard((4, -4), 7)
    assert not is_standard((1, -1, 1), 7)
    assert not is_standard((), 7)


def test_rotate_sequence_examples():
    assert rotate_sequence((1, -1, 0), -2) == (-1, -3, -2)
    assert rotate_sequence((1, -1, 0), 0) == (1, -1, 0)
    assert rotate_sequence((0,), 5) == (5,)


def test_total_examples(ring7, ring11):
    assert total(ring7, (0,)) == direction(ring7, 0)
    x, y = to_cartesian(total(ring7, SEQ_SEVENFOLD))
    assert x == pytest.approx(1 + 2 * math.cos(math.pi / 7), abs=1e-12)
    assert abs(y) < 1e-12
    x11, _ = to_cartesian(total(ring11, SEQ_11FOLD))
    assert x11 == pytest.approx(27.2004, abs=1e-3)


def test_total_of_standard_sequence_is_exactly_real(ring7, ring11):
    for spec, seq in ((ring7, SEQ_SEVENFOLD), (ring7, SEQ_UNTILABLE), (ring11, SEQ_11FOLD)):
        t = total(spec, seq)
        assert t.is_real()
        assert t.x > 0


def test_total_rotation_identity(ring7):
    t = total(ring7, SEQ_SEVENFOLD)
    for j in range(-3, 10):
        assert total(ring7, rotate_sequence(SEQ_SEVENFOLD, j)) == t.mul_zeta(j)


def test_build_boundary_segment_counts(ring7):
    assert len(build_boundary(ring7, (0,), 2).chain) == 4
    assert len(build_boundary(ring7, SEQ_SEVENFOLD, 4).chain) == 12
    assert len(build_boundary(ring7, SEQ_UNTILABLE, 4).chain) == 32


def test_build_boundary_rejects_bad_input(ring7):
    with pytest.raises(ValueError):
        build_boundary(ring7, (4, -4), 2)
    with pytest.raises(ValueError):
        build_boundary(ring7, SEQ_SEVENFOLD, 3)
    with pytest.raises(ValueError):
        build_boundary(ring7, SEQ_SEVENFOLD, 0)
    with pytest.raises(ValueError):
        build_boundary(ring7, SEQ_SEVENFOLD, 8)


@pytest.mark.parametrize("label", [2, 4, 6])
def test_boundary_corners_are_exact(ring7, label):
    b = build_boundary(ring7, SEQ_SEVENFOLD, label)
    t_s = total(ring7, SEQ_SEVENFOLD)
    t_rot = total(ring7, rotate_sequence(SEQ_SEVENFOLD, -label))
    assert b.corners == (zero(ring7), t_s, t_s + t_rot, t_rot)
    # chains of opposite sides are translates of each other
    shift = t_rot
    for seg_b, seg_t in zip(b.bottom, b.top):
        assert seg_t.start == seg_b.start + shift
        assert seg_t.dir == seg_b.dir
    shift = t_s
    for seg_l, seg_r in zip(b.left, b.right):
        assert seg_r.start == seg_l.start + shift
        assert seg_r.dir == seg_l.dir


@pytest.mark.parametrize("label", [2, 4, 6])
def test_enclosed_area_matches_inflated_rhomb(ring7, label):
    b = build_boundary(ring7, SEQ_SEVENFOLD, label)
    lam = math.hypot(*to_cartesian(total(ring7, SEQ_SEVENFOLD)))
    assert enclosed_area(b) == pytest.approx(
        lam**2 * math.sin(label * math.pi / 7), abs=1e-9
    )


def test_canonical_orientation_examples():
    assert canonical_orientation(7, 0) == 0
    assert canonical_orientation(7, 1) == 8
    assert canonical_orientation(7, 9) == 2


def test_canonical_orientation_half_turn_invariance():
    for n in (5, 7, 11):
        for k in range(2 * n):
            assert canonical_orientation(n, k) == canonical_orientation(n, k + n)


@pytest.mark.parametrize("label", [2, 4, 6])
def test_sevenfold_boundaries_are_good(ring7, label):
    assert is_good_curve(build_boundary(ring7, SEQ_SEVENFOLD, label))


def test_untilable_boundary_is_still_good(ring7):
    assert is_good_curve(build_boundary(ring7, SEQ_UNTILABLE, 4))


def test_backtracking_boundary_contains_doubled_segment(ring7):
    b = build_boundary(ring7, SEQ_SEVENFOLD, 6)
    keys = [seg.undirected_key() for seg in b.chain.segs]
    doubled = {k for k in keys if keys.count(k) == 2}
    assert doubled
    assert is_good_curve(b)


def test_figure_eight_chain_is_rejected(ring7):
    # two rhomb loops through the origin that cross transversally: the
    # second loop's first edge pierces the first loop's far side
    steps = [1, 10, 8, 3, 4, 13, 11, 6]
    segs = chain_segments(ring7, zero(ring7), steps)
    assert segs[-1].end == zero(ring7)
    chain = ClosedChain(ring7, tuple(segs))
    crossing_pairs = [
        (i, j)
        for i in range(len(segs))
        for j in range(i + 1, len(segs))
        if segs[i].undirected_key() != segs[j].undirected_key()
        and _bad_intersection(segs[i], segs[j])
    ]
    assert crossing_pairs, "construction should contain a transversal crossing"
    assert not is_good_curve(chain)


def test_vertex_touch_needs_alternating_senses(ring7):
    # two rhomb lobes touching only at the origin: accepted when both are
    # traversed counterclockwise, rejected when their senses differ
    lobe_a_ccw = [10, 1, 3, 8]
    lobe_a_cw = [1, 10, 8, 3]
    lobe_b_ccw = [3, 6, 10, 13]
    good = ClosedChain(
        ring7, chain_segments(ring7, zero(ring7), lobe_a_ccw + lobe_b_ccw)
    )
    bad = ClosedChain(
        ring7, chain_segments(ring7, zero(ring7), lobe_a_cw + lobe_b_ccw)
    )
    assert is_good_curve(good)
    assert not is_good_curve(bad)
