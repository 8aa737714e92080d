"""Workbench for planar rhombic substitution tilings with n-fold symmetry.

Everything geometric is computed exactly in the cyclotomic ring Z[zeta],
zeta a primitive 2n-th root of unity; floats only appear when rendering
or reporting.
"""

from .cyclo import Cyclo, RingSpec, direction, ring, to_cartesian
from .seqboundary import (
    Boundary,
    ClosedChain,
    Segment,
    build_boundary,
    canonical_orientation,
    is_good_curve,
    is_standard,
    rotate_sequence,
    total,
)
from .ksk import PseudolinePairing, crossings, ksk_check, pair_segments
from .errors import InternalError, UntilableError
from .tiler import (
    EnumerationResult,
    PlacedTile,
    Patch,
    construct_tiling,
    enumerate_tilings,
    pseudolines_of_patch,
    zonogon,
)
from .subst import (
    Substitution,
    inflation_factor,
    make_substitution,
    substitute_patch,
    substitute_tile,
    substitution_matrix,
)
from .flips import FlipSite, StaleFlipError, apply_flip, find_flips, flip_graph
from .search import (
    chunk_concatenations,
    multiset_permutations,
    prefix_partitions,
    sweep_ksk,
)
from .symmetry import (
    SymmetryReport,
    corner_report,
    find_stars,
    grow_fixed_point,
    is_rotation_invariant,
    make_star,
    rotate_patch,
)

__all__ = [
    "Cyclo",
    "RingSpec",
    "ring",
    "direction",
    "to_cartesian",
    "Segment",
    "ClosedChain",
    "Boundary",
    "is_standard",
    "rotate_sequence",
    "total",
    "build_boundary",
    "canonical_orientation",
    "is_good_curve",
    "PseudolinePairing",
    "pair_segments",
    "crossings",
    "ksk_check",
    "PlacedTile",
    "Patch",
    "UntilableError",
    "InternalError",
    "EnumerationResult",
    "zonogon",
    "construct_tiling",
    "enumerate_tilings",
    "pseudolines_of_patch",
    "Substitution",
    "make_substitution",
    "inflation_factor",
    "substitute_tile",
    "substitute_patch",
    "substitution_matrix",
    "FlipSite",
    "StaleFlipError",
    "find_flips",
    "apply_flip",
    "flip_graph",
    "multiset_permutations",
    "chunk_concatenations",
    "prefix_partitions",
    "sweep_ksk",
    "SymmetryReport",
    "find_stars",
    "is_rotation_invariant",
    "rotate_patch",
    "corner_report",
    "grow_fixed_point",
    "make_star",
]
