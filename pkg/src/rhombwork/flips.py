"""Hex-flip moves: local re-tilings of three pairwise edge-sharing rhombs.

Three rhombs that pairwise share an edge cover a hexagon with opposite
sides parallel and equal; the hexagon has exactly one other tiling by
translates of the same three rhombs, and swapping between the two is the
elementary move connecting all tilings of a region.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import Cyclo
from .errors import InternalError
from .seqboundary import Boundary, ClosedChain
from .tiler import EnumerationResult, Patch, PlacedTile, enumerate_tilings


class StaleFlipError(ValueError):
    """The flip site refers to tiles no longer present in the patch."""


class CapExceededError(RuntimeError):
    """Enumeration hit its cap, so the flip graph would be incomplete."""


@dataclass(frozen=True)
class FlipSite:
    """An applicable flip: the triple of tiles and their hexagonal support."""

    tiles: tuple[PlacedTile, PlacedTile, PlacedTile]
    common_vertex: Cyclo
    hexagon: tuple[Cyclo, ...]
    center_xy: tuple[float, float]

    def key(self) -> tuple:
        return tuple(t.sort_key() for t in self.tiles)


def _shared_edge(a: PlacedTile, b: PlacedTile) -> frozenset | None:
    keys_a = {key for key, _ in a.edges()}
    for key, _ in b.edges():
        if key in keys_a:
            return key
    return None


def find_flips(p: Patch) -> list[FlipSite]:
    """All triples of tiles pairwise sharing a full edge, in stable order."""
    tiles = p.sorted_tiles()
    edge_map: dict[frozenset, list[int]] = {}
    for idx, t in enumerate(tiles):
        for key, _ in t.edges():
            edge_map.setdefault(key, []).append(idx)
    adj: dict[int, set[int]] = {i: set() for i in range(len(tiles))}
    for owners in edge_map.values():
        if len(owners) == 2:
            i, j = owners
            adj[i].add(j)
            adj[j].add(i)
    sites = []
    for i in range(len(tiles)):
        for j in sorted(adj[i]):
            if j <= i:
                continue
            for k in sorted(adj[i] & adj[j]):
                if k <= j:
                    continue
                site = _make_site(tiles[i], tiles[j], tiles[k])
                if site is not None:
                    sites.append(site)
    sites.sort(key=lambda s: (s.center_xy, s.key()))
    return sites


def _make_site(a: PlacedTile, b: PlacedTile, c: PlacedTile) -> FlipSite | None:
    common = set(a.vertices()) & set(b.vertices()) & set(c.vertices())
    if len(common) != 1:
        return None
    v0 = common.pop()
    triple = Patch.of(a.spec, (a, b, c))
    boundary = triple.boundary_edge_keys()
    if len(boundary) != 6:
        return None
    verts: set = set()
    for key in boundary:
        verts.update(key)
    if len(verts) != 6:
        return None
    hexagon = _order_loop(boundary)
    spec = a.spec
    hex_pts = tuple(Cyclo(spec, coeffs) for coeffs in hexagon)
    xs = [pt.to_xy() for pt in hex_pts]
    center = (sum(x for x, _ in xs) / 6.0, sum(y for _, y in xs) / 6.0)
    return FlipSite(
        tiles=tuple(sorted((a, b, c), key=PlacedTile.sort_key)),
        common_vertex=v0,
        hexagon=hex_pts,
        center_xy=center,
    )


def _order_loop(edge_keys: set[frozenset]) -> list[tuple]:
    nbrs: dict[tuple, list[tuple]] = {}
    for key in edge_keys:
        u, w = tuple(key)
        nbrs.setdefault(u, []).append(w)
        nbrs.setdefault(w, []).append(u)
    start = min(nbrs)
    loop = [start]
    prev = None
    cur = start
    while True:
        nxt = [x for x in nbrs[cur] if x != prev]
        if not nxt:
            raise InternalError("hexagon boundary is not a loop")
        prev, cur = cur, min(nxt)
        if cur == start:
            break
        loop.append(cur)
    return loop


def apply_flip(p: Patch, site: FlipSite) -> Patch:
    """Replace the triple by its translated twin; everything else untouched."""
    if not all(t in p.tiles for t in site.tiles):
        raise StaleFlipError("flip site tiles are not present in the patch")
    a, b, c = site.tiles
    v0 = site.common_vertex
    new_tiles = []
    for tile, others in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
        key = _shared_edge(*others)
        if key is None:
            raise InternalError("flip triple lost its shared edge")
        endpoints = [Cyclo(tile.spec, coeffs) for coeffs in key]
        if v0 not in endpoints:
            raise InternalError("shared edge does not touch the common vertex")
        other_end = endpoints[0] if endpoints[1] == v0 else endpoints[1]
        u = other_end - v0
        new_tiles.append(PlacedTile(tile.spec, tile.label, tile.rot, tile.trans + u))
    remaining = p.tiles - frozenset(site.tiles)
    return Patch(spec=p.spec, tiles=remaining | frozenset(new_tiles))


@dataclass(frozen=True)
class FlipGraph:
    tilings: tuple[Patch, ...]
    edges: frozenset
    connected: bool


def flip_graph(b: Boundary | ClosedChain, cap: int = 10000) -> FlipGraph:
    """Graph over all tilings of the region, edges = single flips."""
    result: EnumerationResult = enumerate_tilings(b, cap=cap)
    if not result.complete:
        raise CapExceededError(f"more than {cap} tilings")
    tilings = result.tilings
    index = {t.tiles: i for i, t in enumerate(tilings)}
    edges = set()
    for i, t in enumerate(tilings):
        for site in find_flips(t):
            flipped = apply_flip(t, site)
            j = index.get(flipped.tiles)
            if j is None:
                raise InternalError("flip left the tiling universe")
            if i != j:
                edges.add(frozenset((i, j)))
    connected = True
    if tilings:
        seen = {0}
        stack = [0]
        adj: dict[int, set[int]] = {i: set() for i in range(len(tilings))}
        for e in edges:
            i, j = tuple(e)
            adj[i].add(j)
            adj[j].add(i)
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        connected = len(seen) == len(tilings)
    return FlipGraph(tilings=tilings, edges=frozenset(edges), connected=connected)
