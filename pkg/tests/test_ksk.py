from __future__ import annotations

import itertools

from conftest import SEQ_UNTILABLE, SEQ_SEVENFOLD
from rhombwork.ksk import crossing_count, crossings, ksk_check, pair_segments
from rhombwork.seqboundary import build_boundary, is_good_curve, is_standard
from rhombwork.tiler import enumerate_tilings


def test_single_tile_pairing(ring7):
    b = build_boundary(ring7, (0,), 2)
    pairing = pair_segments(b)
    assert len(pairing.lines) == 2


def test_pairing_counts(ring7):
    assert len(pair_segments(build_boundary(ring7, SEQ_SEVENFOLD, 2)).lines) == 6
    assert len(pair_segments(build_boundary(ring7, SEQ_UNTILABLE, 4)).lines) == 16


def test_paired_segments_are_parallel_opposite(ring7):
    for label in (2, 4, 6):
        b = build_boundary(ring7, SEQ_SEVENFOLD, label)
        pairing = pair_segments(b)
        labels = [seg.dir for seg in b.chain.segs]
        for line in pairing.lines:
            a, c = line.positions
            assert (labels[a] - labels[c]) % 14 == 7


def test_single_tile_crossing_angles(ring7):
    b = build_boundary(ring7, (0,), 2)
    found = crossings(pair_segments(b))
    assert len(found) == 1
    _, _, angle = found[0]
    assert {angle, 7 - angle} == {2, 5}


def test_same_class_lines_never_cross(ring7):
    b = build_boundary(ring7, SEQ_UNTILABLE, 4)
    pairing = pair_segments(b)
    for a, c, _ in crossings(pairing):
        assert a.klass != c.klass


def test_crossing_count_equals_brute_force_tile_count(ring7):
    # tile count of every tiling of the region equals the crossing count
    b = build_boundary(ring7, SEQ_SEVENFOLD, 2)
    count = crossing_count(b)
    result = enumerate_tilings(b, cap=100)
    assert result.complete and len(result) > 0
    assert {len(p) for p in result.tilings} == {count}
    assert count == 8


def test_ksk_anchors(ring7):
    for label in (2, 4, 6):
        assert ksk_check(build_boundary(ring7, SEQ_SEVENFOLD, label))
    assert not ksk_check(build_boundary(ring7, SEQ_UNTILABLE, 4))


def test_single_prototile_always_passes(ring7, ring5):
    for spec in (ring5, ring7):
        for label in range(2, spec.n, 2):
            assert ksk_check(build_boundary(spec, (0,), label))


def _standard_sequences(n: int, length: int):
    bound = (n - 1) // 2
    values = range(-bound, bound + 1)
    for terms in itertools.product(values, repeat=length):
        if sum(terms) == 0:
            yield terms


def test_oracle_equivalence_small(ring5):
    # m <= 3 slice of the acceptance sweep, kept quick for the unit suite
    disagreements = []
    for m in (1, 2, 3):
        for seq in _standard_sequences(5, m):
            assert is_standard(seq, 5)
            for label in (2, 4):
                b = build_boundary(ring5, seq, label)
                if not is_good_curve(b):
                    continue
                predicted = ksk_check(b)
                actual = len(enumerate_tilings(b, cap=1)) > 0
                if predicted != actual:
                    disagreements.append((seq, label))
    assert disagreements == []
