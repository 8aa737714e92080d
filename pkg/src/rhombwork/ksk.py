"""Tilability of the region inside a boundary (Kannan-Soroker-Kenyon test).

Each boundary segment is labelled with its traversal direction index.
Within one undirected direction class the segments split into two
oppositely-traversed groups that sit on two non-opposite sides, so there
is a unique non-crossing way to match them into pseudolines.  Two
pseudolines must cross exactly when their endpoints interleave around
the boundary, and each crossing corresponds to a rhomb whose angle can
be read off the endpoint labels; the region is tilable iff every such
angle is strictly between 0 and pi.
"""

from __future__ import annotations

from dataclasses import dataclass

from .seqboundary import Boundary, ClosedChain, as_chain


class PairingError(RuntimeError):
    """The boundary's labels cannot be matched into pseudolines (internal)."""


@dataclass(frozen=True)
class Pseudoline:
    """One matched pair of boundary segments; klass is the direction class."""

    id: int
    klass: int
    positions: tuple[int, int]
    labels: tuple[int, int]


@dataclass(frozen=True)
class PseudolinePairing:
    chain: ClosedChain
    lines: tuple[Pseudoline, ...]

    def line_of_position(self, pos: int) -> Pseudoline:
        for line in self.lines:
            if pos in line.positions:
                return line
        raise KeyError(pos)


def segment_labels(b: Boundary | ClosedChain) -> tuple[int, ...]:
    """Direction index of each segment as traversed, in boundary order."""
    return tuple(seg.dir for seg in as_chain(b).segs)


def pair_segments(b: Boundary | ClosedChain) -> PseudolinePairing:
    """The unique non-crossing matching within each direction class."""
    chain = as_chain(b)
    labels = segment_labels(chain)
    n = chain.spec.n
    lines: list[Pseudoline] = []
    for klass in range(n):
        positions = [p for p, lab in enumerate(labels) if lab % n == klass]
        if not positions:
            continue
        forward = [p for p in positions if labels[p] == klass]
        backward = [p for p in positions if labels[p] != klass]
        if len(forward) != len(backward):
            raise PairingError(
                f"direction class {klass} has unbalanced counts "
                f"{len(forward)}/{len(backward)}"
            )
        is_fwd = [labels[p] == klass for p in positions]
        transitions = sum(
            1 for a, b2 in zip(is_fwd, is_fwd[1:] + is_fwd[:1]) if a != b2
        )
        if transitions != 2:
            raise PairingError(
                f"direction class {klass} labels are interspersed around the boundary"
            )
        start = next(
            t
            for t in range(len(positions))
            if is_fwd[t] and not is_fwd[t - 1]
        )
        arc = positions[start:] + positions[:start]
        a = len(forward)
        for i in range(a):
            p, q = arc[i], arc[2 * a - 1 - i]
            lines.append(
                Pseudoline(
                    id=len(lines),
                    klass=klass,
                    positions=(p, q),
                    labels=(labels[p], labels[q]),
                )
            )
    return PseudolinePairing(chain=chain, lines=tuple(lines))


def _in_open_cyclic(x: int, lo: int, hi: int, n: int) -> bool:
    return 0 < (x - lo) % n < (hi - lo) % n


def _crossing_angle(pairing: PseudolinePairing, a: Pseudoline, b: Pseudoline) -> int | None:
    """Rhomb angle (multiple of pi/n) if a and b must cross, else None.

    With the four endpoints interleaved, pick an endpoint of a and the
    endpoint of b that follows it in boundary order; the angle is their
    label difference read counterclockwise, i.e. shifted by n because the
    boundary traversal runs clockwise.
    """
    n2 = 2 * pairing.chain.spec.n
    p1, p2 = a.positions
    inside = [q for q in b.positions if _in_open_cyclic(q, p1, p2, len(pairing.chain))]
    if len(inside) != 1:
        return None
    q = inside[0]
    labels = segment_labels(pairing.chain)
    return (labels[q] + pairing.chain.spec.n - labels[p1]) % n2


def crossings(pairing: PseudolinePairing) -> list[tuple[Pseudoline, Pseudoline, int]]:
    """All pseudoline pairs forced to cross, with their rhomb angles."""
    out = []
    lines = pairing.lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i].klass == lines[j].klass:
                continue
            angle = _crossing_angle(pairing, lines[i], lines[j])
            if angle is not None:
                out.append((lines[i], lines[j], angle))
    return out


def crossing_count(b: Boundary | ClosedChain) -> int:
    return len(crossings(pair_segments(b)))


def ksk_check(b: Boundary | ClosedChain) -> bool:
    """True iff every forced crossing yields a rhomb angle in (0, pi)."""
    pairing = pair_segments(b)
    n = pairing.chain.spec.n
    for _, _, angle in crossings(pairing):
        if not 0 < angle < n:
            return False
    return True
