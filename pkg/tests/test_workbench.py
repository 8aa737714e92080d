from __future__ import annotations

import pytest

from rhombwork.cyclo import zero
from rhombwork.docio import (
    DocumentSyntaxError,
    parse_substitution,
    serialize_substitution,
)
from rhombwork.subst import BoundaryMismatchError
from rhombwork.svgout import render_svg
from rhombwork.tiler import Patch, PlacedTile


def test_round_trip_identity(identity_sub):
    text = serialize_substitution(identity_sub)
    doc = parse_substitution(text)
    assert doc.substitution.seq == identity_sub.seq
    for label in identity_sub.labels():
        assert doc.substitution.images[label].tiles == identity_sub.images[label].tiles
    assert serialize_substitution(doc.substitution) == text


def test_round_trip_sevenfold_bit_stable(sevenfold_sub):
    text1 = serialize_substitution(sevenfold_sub, metadata={"author": "workbench"})
    text2 = serialize_substitution(sevenfold_sub, metadata={"author": "workbench"})
    assert text1 == text2
    doc = parse_substitution(text1)
    assert doc.metadata == {"author": "workbench"}
    assert serialize_substitution(doc.substitution, doc.metadata) == text1


def test_parse_reports_line_numbers(sevenfold_sub):
    text = serialize_substitution(sevenfold_sub)
    lines = text.splitlines()
    lines[4] = "tile 2 0 not,a,number,0,0,0"
    with pytest.raises(DocumentSyntaxError) as err:
        parse_substitution("\n".join(lines))
    assert err.value.line_no == 5
    with pytest.raises(DocumentSyntaxError):
        parse_substitution("bogus header\n")
    with pytest.raises(DocumentSyntaxError):
        parse_substitution("rhombwork-substitution v1\nn 7\nwhatever 3\n")


def test_parse_distinguishes_invariant_failure(sevenfold_sub):
    # move one tile off-support: syntactically fine, geometrically wrong
    text = serialize_substitution(sevenfold_sub)
    lines = text.splitlines()
    idx = next(i for i, line in enumerate(lines) if line.startswith("tile"))
    parts = lines[idx].split()
    coeffs = [int(c) for c in parts[3].split(",")]
    coeffs[0] += 3
    parts[3] = ",".join(str(c) for c in coeffs)
    lines[idx] = " ".join(parts)
    with pytest.raises(BoundaryMismatchError) as err:
        parse_substitution("\n".join(lines))
    assert err.value.label == 2


def test_parse_rejects_duplicate_label(sevenfold_sub):
    text = serialize_substitution(sevenfold_sub)
    text += "label 2\n"
    with pytest.raises(DocumentSyntaxError):
        parse_substitution(text)


def test_render_single_tile(ring7):
    patch = Patch.of(ring7, [PlacedTile(ring7, 2, 0, zero(ring7))])
    svg = render_svg(patch)
    assert svg.count("<polygon") == 1
    assert svg.startswith("<svg")
    points = svg.split('points="')[1].split('"')[0]
    assert len(points.split(" ")) == 4


def test_render_patch_with_overlay(sevenfold_sub):
    patch = sevenfold_sub.images[2]
    svg = render_svg(patch, pseudolines=True, arrows=True)
    assert svg.count("<polygon") >= len(patch)
    assert svg.count("<polyline") == 6


def test_render_empty_patch(ring7):
    svg = render_svg(Patch.of(ring7, []))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
