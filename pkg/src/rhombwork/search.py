"""Permutation search: constant-memory multiset iteration plus the
tilability filter.

The iterator realizes the prefix-shift ("cool-lex") generation of
multiset permutations: each step removes one element and reinserts it at
the front, so the whole state is the current permutation and one index.
That makes runs over astronomically large permutation spaces resumable
from a one-line token and splittable by fixed prefixes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Sequence

from .cyclo import RingSpec
from .ksk import ksk_check
from .seqboundary import build_boundary, is_good_curve, is_standard


@dataclass(frozen=True)
class MultisetSpec:
    """A multiset given as (value, multiplicity) pairs; values may be
    integers or integer tuples (chunks)."""

    items: tuple[tuple[Any, int], ...]

    def __post_init__(self):
        for value, mult in self.items:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult} for {value!r}")

    @staticmethod
    def of(*pairs) -> "MultisetSpec":
        return MultisetSpec(items=tuple((v, m) for v, m in pairs))

    def expand(self) -> list:
        out = []
        for value, mult in self.items:
            out.extend([value] * mult)
        return out

    def size(self) -> int:
        return sum(m for _, m in self.items)

    def count(self) -> int:
        """Number of distinct permutations (multinomial coefficient)."""
        from math import factorial

        total = factorial(self.size())
        merged: dict[Any, int] = {}
        for value, mult in self.items:
            merged[value] = merged.get(value, 0) + mult
        for mult in merged.values():
            total //= factorial(mult)
        return total


def _as_elements(m: "MultisetSpec | Iterable") -> list:
    if isinstance(m, MultisetSpec):
        return m.expand()
    return list(m)


class PermIterator:
    """Prefix-shift iterator over distinct permutations of a multiset.

    Holds exactly one permutation; emits each distinct permutation once,
    starting from the non-increasing arrangement.  The state property is
    a one-line token from which iteration resumes after the permutation
    most recently emitted.
    """

    def __init__(self, elements: Sequence):
        if not elements:
            raise ValueError("empty multiset")
        self._cur = sorted(elements, reverse=True)
        self._ii = max(len(self._cur) - 2, 0)
        self._started = False

    def __iter__(self) -> Iterator[tuple]:
        return self

    def __next__(self) -> tuple:
        if not self._started:
            self._started = True
            return tuple(self._cur)
        cur = self._cur
        ii = self._ii
        last = len(cur) - 1
        jj = ii + 1
        if jj > last or not (jj < last or cur[jj] < cur[0]):
            raise StopIteration
        if jj < last and cur[ii] >= cur[jj + 1]:
            s = jj
        else:
            s = ii
        t = cur.pop(s + 1)
        shifted = t < cur[0]
        cur.insert(0, t)
        self._ii = 0 if shifted else ii + 1
        return tuple(cur)

    @property
    def state(self) -> str:
        """Resume token: iteration continues after the last emitted value."""
        return json.dumps(
            {"perm": self._cur, "i": self._ii, "started": self._started},
            separators=(",", ":"),
        )

    @classmethod
    def from_state(cls, token: str) -> "PermIterator":
        data = json.loads(token)
        it = cls.__new__(cls)
        it._cur = [tuple(v) if isinstance(v, list) else v for v in data["perm"]]
        it._ii = data["i"]
        it._started = data["started"]
        return it


def multiset_permutations(m: "MultisetSpec | Iterable") -> PermIterator:
    """Every distinct permutation exactly once, one in memory at a time."""
    return PermIterator(_as_elements(m))


def chunk_concatenations(m: "MultisetSpec | Iterable") -> Iterator[tuple[int, ...]]:
    """Concatenations of the chunk permutations, one edge sequence each."""
    elements = _as_elements(m)
    if not elements:
        raise ValueError("empty chunk multiset")
    for chunk in elements:
        if not isinstance(chunk, tuple):
            raise TypeError(f"chunks must be integer tuples, got {chunk!r}")
    for perm in PermIterator(elements):
        yield tuple(x for chunk in perm for x in chunk)


def prefix_partitions(
    m: "MultisetSpec | Iterable", depth: int = 1
) -> list[tuple[tuple, list]]:
    """Split the permutation space by fixed prefixes of the given depth.

    Returns (prefix, remaining elements) pairs; the permutations of each
    remainder, prepended with its prefix, partition the full output set.
    """
    elements = _as_elements(m)
    if depth < 0 or depth > len(elements):
        raise ValueError("bad partition depth")
    out: list[tuple[tuple, list]] = []

    def extend(prefix: tuple, rest: list) -> None:
        if len(prefix) == depth:
            out.append((prefix, rest))
            return
        seen = set()
        for idx, value in enumerate(rest):
            if value in seen:
                continue
            seen.add(value)
            extend(prefix + (value,), rest[:idx] + rest[idx + 1 :])

    extend((), sorted(elements, reverse=True))
    return out


def sequence_status(spec: RingSpec, seq: Sequence[int]) -> str:
    """'pass', or the first failure: 'bad-curve:<label>' / 'ksk-fail:<label>'."""
    terms = tuple(seq)
    if not is_standard(terms, spec.n):
        raise ValueError(f"sweep sequences must be standard, got {terms}")
    for label in range(2, spec.n, 2):
        b = build_boundary(spec, terms, label)
        if not is_good_curve(b):
            return f"bad-curve:{label}"
        if not ksk_check(b):
            return f"ksk-fail:{label}"
    return "pass"


def sweep_ksk(
    spec: RingSpec,
    sequences: Iterable[Sequence[int]],
    sink: Callable[[tuple[int, ...], str], None] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Filter a stream of standard sequences down to those whose boundaries
    are all good curves passing the tilability criterion.

    Labels are tested in increasing order and the first failure rejects
    the sequence; the optional sink observes every verdict.
    """
    for seq in sequences:
        terms = tuple(seq)
        status = sequence_status(spec, terms)
        if sink is not None:
            sink(terms, status)
        if status == "pass":
            yield terms


def _sweep_partition(args) -> tuple[int, list[tuple[int, ...]], dict[str, int]]:
    index, n, prefix, rest, chunked = args
    from .cyclo import ring

    spec = ring(n)
    counts: dict[str, int] = {}
    passing: list[tuple[int, ...]] = []
    perms: Iterable
    if len(rest) == 0:
        perms = [()]
    else:
        perms = PermIterator(rest)
    for perm in perms:
        full = prefix + perm
        seq = (
            tuple(x for chunk in full for x in chunk) if chunked else tuple(full)
        )
        status = sequence_status(spec, seq)
        counts[status] = counts.get(status, 0) + 1
        if status == "pass":
            passing.append(seq)
    return index, passing, counts


def parallel_sweep(
    spec: RingSpec,
    m: "MultisetSpec | Iterable",
    chunked: bool,
    depth: int = 1,
    workers: int = 1,
) -> tuple[list[tuple[int, ...]], dict[str, int]]:
    """Prefix-partitioned sweep; results merge in partition order, so the
    output is deterministic for any worker count."""
    parts = prefix_partitions(m, depth)
    jobs = [
        (idx, spec.n, tuple(prefix), list(rest), chunked)
        for idx, (prefix, rest) in enumerate(parts)
    ]
    results: dict[int, list[tuple[int, ...]]] = {}
    totals: dict[str, int] = {}
    if workers <= 1:
        outcomes = map(_sweep_partition, jobs)
    else:
        from concurrent.futures import ProcessPoolExecutor

        pool = ProcessPoolExecutor(max_workers=workers)
        outcomes = pool.map(_sweep_partition, jobs)
    for index, passing, counts in outcomes:
        results[index] = passing
        for key, val in counts.items():
            totals[key] = totals.get(key, 0) + val
    if workers > 1:
        pool.shutdown()
    merged = [seq for idx in sorted(results) for seq in results[idx]]
    return merged, totals
