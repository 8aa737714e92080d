from __future__ import annotations

import itertools

import pytest

from conftest import SEQ_11FOLD
from rhombwork.search import (
    MultisetSpec,
    PermIterator,
    chunk_concatenations,
    multiset_permutations,
    parallel_sweep,
    prefix_partitions,
    sequence_status,
    sweep_ksk,
)

CHUNKS_11FOLD = MultisetSpec.of(
    ((0,), 5), ((-1, 1), 5), ((2, -2), 4), ((-3, 3), 3), ((4, -4), 2), ((-5, 5), 1)
)


def test_small_examples():
    assert list(multiset_permutations(MultisetSpec.of((0, 2), (1, 1)))) == [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ]
    assert len(list(multiset_permutations(MultisetSpec.of(("a", 2), ("b", 2))))) == 6


def _naive(elements):
    return set(itertools.permutations(elements))


@pytest.mark.parametrize(
    "shape",
    [(1,), (2,), (3,), (1, 1), (2, 1), (2, 2), (3, 2), (1, 1, 1, 1), (3, 2, 1), (2, 2, 2)],
)
def test_matches_naive_generator(shape):
    elements = [i for i, mult in enumerate(shape) for _ in range(mult)]
    got = list(PermIterator(elements))
    assert len(got) == len(set(got)) == MultisetSpec.of(*enumerate(shape)).count()
    assert set(got) == _naive(elements)


def test_empty_multiset_rejected():
    with pytest.raises(ValueError):
        PermIterator([])
    with pytest.raises(ValueError):
        list(chunk_concatenations([]))


def test_resume_from_state_continues_exactly():
    reference = list(PermIterator([0, 0, 1, 1, 2]))
    for stop in (1, 3, 7, len(reference) - 1):
        it = PermIterator([0, 0, 1, 1, 2])
        head = [next(it) for _ in range(stop)]
        tail = list(PermIterator.from_state(it.state))
        assert head + tail == reference


def test_state_token_is_compact():
    # state size grows with sequence length, not with the output count
    elements = list(range(10)) * 2
    it = PermIterator(elements)
    next(it)
    assert len(it.state) < 40 * len(elements)


def test_chunk_concatenations_examples():
    got = list(chunk_concatenations(MultisetSpec.of(((0,), 1), ((-1, 1), 1))))
    assert sorted(got) == [(-1, 1, 0), (0, -1, 1)]


def test_chunk_space_count_and_membership():
    # verified against the multinomial formula: 20 chunks in six groups
    assert CHUNKS_11FOLD.count() == 586637251200
    # the 35-term elevenfold sequence parses into exactly this chunk multiset
    remaining = {chunk: mult for chunk, mult in CHUNKS_11FOLD.items}
    seq = list(SEQ_11FOLD)
    while seq:
        for chunk in list(remaining):
            if remaining[chunk] and tuple(seq[: len(chunk)]) == chunk:
                remaining[chunk] -= 1
                del seq[: len(chunk)]
                break
        else:
            pytest.fail(f"cannot parse remaining sequence {seq[:4]}...")
    assert all(v == 0 for v in remaining.values())


def test_chunk_exhaustion_small_case():
    # a 6-element sub-multiset enumerates to its multinomial count
    sub = MultisetSpec.of(((0,), 2), ((-1, 1), 2), ((2, -2), 2))
    seqs = list(chunk_concatenations(sub))
    assert len(seqs) == sub.count() == 90
    assert len(set(seqs)) == 90


def test_prefix_partitions_cover_everything():
    elements = [0, 0, 1, 2]
    for depth in (0, 1, 2):
        parts = prefix_partitions(elements, depth)
        union = set()
        for prefix, rest in parts:
            if rest:
                for perm in PermIterator(rest):
                    union.add(prefix + perm)
            else:
                union.add(prefix)
        assert union == _naive(elements)


def test_sweep_examples(ring7, ring5):
    log = []
    passing = list(
        sweep_ksk(ring7, PermIterator([1, -1, 0]), sink=lambda s, st: log.append(st))
    )
    assert (1, -1, 0) in passing
    assert any(status.startswith("bad-curve") for status in log)
    assert list(sweep_ksk(ring5, [(0,)])) == [(0,)]
    # the fig-7 sequence is rejected (label 4 fails the criterion)
    assert list(sweep_ksk(ring7, [(0, 3, 1, 2, -1, -2, -3, 0)])) == []
    assert sequence_status(ring7, (0, 3, 1, 2, -1, -2, -3, 0)).startswith("ksk-fail")


def test_sweep_rejects_nonstandard(ring7):
    with pytest.raises(ValueError):
        list(sweep_ksk(ring7, [(1, 1)]))


def test_parallel_sweep_matches_sequential(ring7):
    seq_out, seq_counts = parallel_sweep(ring7, [1, -1, 0, 0], False, depth=1, workers=1)
    par_out, par_counts = parallel_sweep(ring7, [1, -1, 0, 0], False, depth=1, workers=2)
    assert seq_out == par_out
    assert seq_counts == par_counts
    expected = set(
        sweep_ksk(ring7, PermIterator([1, -1, 0, 0]))
    )
    assert set(seq_out) == expected
