"""Substitution documents: a canonical, bit-stable plain-text format.

Geometry is integers only (power-basis coordinates); serializing the
same substitution twice yields identical bytes, and parse(serialize(s))
round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import Cyclo, ring
from .subst import Substitution, make_substitution
from .tiler import Patch, PlacedTile

FORMAT_HEADER = "rhombwork-substitution v1"


class DocumentSyntaxError(ValueError):
    """Malformed document text; carries the first offending line."""

    def __init__(self, line_no: int, field_name: str, message: str):
        super().__init__(f"line {line_no}, {field_name}: {message}")
        self.line_no = line_no
        self.field = field_name


@dataclass(frozen=True)
class SubstitutionDocument:
    substitution: Substitution
    metadata: dict[str, str] = field(default_factory=dict)


def serialize_substitution(sub: Substitution, metadata: dict[str, str] | None = None) -> str:
    lines = [FORMAT_HEADER, f"n {sub.n}", "seq " + ",".join(str(k) for k in sub.seq)]
    for key in sorted(metadata or {}):
        value = (metadata or {})[key]
        if "\n" in key or "\n" in value or " " in key:
            raise ValueError(f"metadata key/value not representable: {key!r}")
        lines.append(f"meta {key} {value}")
    for label in sub.labels():
        lines.append(f"label {label}")
        for tile in sub.images[label].sorted_tiles():
            coeffs = ",".join(str(c) for c in tile.trans.coeffs)
            lines.append(f"tile {tile.label} {tile.rot} {coeffs}")
    return "\n".join(lines) + "\n"


def _parse_int(line_no: int, field_name: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DocumentSyntaxError(line_no, field_name, f"not an integer: {text!r}")


def parse_substitution(text: str) -> SubstitutionDocument:
    """Parse and validate; syntax problems raise DocumentSyntaxError, while
    geometric violations surface as the substitution validation errors."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise DocumentSyntaxError(1, "header", f"expected {FORMAT_HEADER!r}")
    n = None
    seq: tuple[int, ...] | None = None
    metadata: dict[str, str] = {}
    images: dict[int, list[PlacedTile]] = {}
    current_label: int | None = None
    spec = None
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(" ")
        kind = parts[0]
        if kind == "n":
            if len(parts) != 2:
                raise DocumentSyntaxError(line_no, "n", "expected one integer")
            n = _parse_int(line_no, "n", parts[1])
            if n < 3 or n % 2 == 0:
                raise DocumentSyntaxError(line_no, "n", f"n must be odd >= 3, got {n}")
            spec = ring(n)
        elif kind == "seq":
            if len(parts) != 2:
                raise DocumentSyntaxError(line_no, "seq", "expected comma-separated integers")
            seq = tuple(
                _parse_int(line_no, "seq", item) for item in parts[1].split(",")
            )
        elif kind == "meta":
            if len(parts) < 3:
                raise DocumentSyntaxError(line_no, "meta", "expected key and value")
            metadata[parts[1]] = " ".join(parts[2:])
        elif kind == "label":
            if spec is None:
                raise DocumentSyntaxError(line_no, "label", "label before n")
            if len(parts) != 2:
                raise DocumentSyntaxError(line_no, "label", "expected one integer")
            current_label = _parse_int(line_no, "label", parts[1])
            if current_label in images:
                raise DocumentSyntaxError(line_no, "label", f"duplicate label {current_label}")
            images[current_label] = []
        elif kind == "tile":
            if current_label is None or spec is None:
                raise DocumentSyntaxError(line_no, "tile", "tile before label")
            if len(parts) != 4:
                raise DocumentSyntaxError(line_no, "tile", "expected label rot coeffs")
            t_label = _parse_int(line_no, "tile", parts[1])
            t_rot = _parse_int(line_no, "tile", parts[2])
            coeffs = tuple(_parse_int(line_no, "tile", c) for c in parts[3].split(","))
            if len(coeffs) != spec.degree:
                raise DocumentSyntaxError(
                    line_no, "tile", f"expected {spec.degree} coordinates, got {len(coeffs)}"
                )
            images[current_label].append(
                PlacedTile(spec, t_label, t_rot, Cyclo(spec, coeffs))
            )
        else:
            raise DocumentSyntaxError(line_no, kind, "unknown directive")
    if spec is None or seq is None:
        raise DocumentSyntaxError(len(lines), "document", "missing n or seq")
    patches = {label: Patch.of(spec, tiles) for label, tiles in images.items()}
    sub = make_substitution(spec, seq, patches)
    return SubstitutionDocument(substitution=sub, metadata=metadata)
