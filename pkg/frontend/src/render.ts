// SVG output for the editor: tile polygons, clickable flip-site
// hexagons, and symmetry indicators.  Pure string/DOM-free helpers so
// the rendering is testable outside a browser.

import type { SitePayload, TilePayload } from "./api.js";
import {
  boundingBox,
  centroid,
  evalCoeffs,
  tileSmallAngleVertices,
  tileVertices,
  type XY,
} from "./geometry.js";
import type { ViewState } from "./state.js";

export function fillForLabel(label: number, n: number): string {
  const hue = Math.round((360 * label) / (n + 1));
  return `hsl(${hue}, 65%, 72%)`;
}

export interface Viewport {
  width: number;
  height: number;
  toScreen(point: XY): XY;
}

export function makeViewport(state: ViewState, width = 900, height = 620): Viewport {
  const points: XY[] = state.tiles.flatMap((t) => tileVertices(t, state.n));
  const box = points.length
    ? boundingBox(points)
    : { min: [-1, -1] as XY, max: [1, 1] as XY };
  const spanX = box.max[0] - box.min[0] || 1;
  const spanY = box.max[1] - box.min[1] || 1;
  const scale = Math.min((width - 40) / spanX, (height - 40) / spanY);
  const zoom = state.panZoom.scale / 60;
  return {
    width,
    height,
    toScreen([x, y]: XY): XY {
      return [
        (x - box.min[0]) * scale * zoom + 20 + state.panZoom.x,
        height - ((y - box.min[1]) * scale * zoom + 20) + state.panZoom.y,
      ];
    },
  };
}

function polygonPoints(points: XY[], viewport: Viewport): string {
  return points
    .map((p) => viewport.toScreen(p).map((v) => v.toFixed(2)).join(","))
    .join(" ");
}

export function renderTiles(state: ViewState, viewport: Viewport): string {
  return state.tiles
    .map((tile: TilePayload) => {
      const pts = polygonPoints(tileVertices(tile, state.n), viewport);
      const fill = fillForLabel(tile.label, state.n);
      return `<polygon points="${pts}" fill="${fill}" stroke="#333" stroke-width="1"/>`;
    })
    .join("\n");
}

export function renderSites(state: ViewState, viewport: Viewport): string {
  return state.sites
    .map((site: SitePayload) => {
      const pts = polygonPoints(site.hexagon as XY[], viewport);
      return (
        `<polygon class="flip-site" data-site="${site.id}" points="${pts}" ` +
        `fill="rgba(30,90,220,0.12)" stroke="#1e5adc" stroke-width="1.5" ` +
        `stroke-dasharray="5,3" style="cursor:pointer"/>`
      );
    })
    .join("\n");
}

export function renderStars(state: ViewState, viewport: Viewport): string {
  if (!state.overlays.stars || !state.symmetry) {
    return "";
  }
  const centers = state.symmetry.stars[String(state.activeLabel)] ?? [];
  return centers
    .map((coeffs) => {
      const [x, y] = viewport.toScreen(evalCoeffs(coeffs, state.n));
      return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="9" fill="none" stroke="#cc7700" stroke-width="3"/>`;
    })
    .join("\n");
}

export function renderCornerFlags(state: ViewState, viewport: Viewport): string {
  if (!state.overlays.cornerFlags) {
    return "";
  }
  // corner points of the support: small label-2 vertices sitting on the
  // patch hull corners are marked by the report; here we mark every small
  // label-2 corner so the goal state is visible at a glance
  const marks: string[] = [];
  for (const tile of state.tiles) {
    if (tile.label !== 2) {
      continue;
    }
    for (const vertex of tileSmallAngleVertices(tile, state.n)) {
      const [x, y] = viewport.toScreen(vertex);
      marks.push(
        `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="3.2" fill="#cc2222"/>`,
      );
    }
  }
  return marks.join("\n");
}

export function renderArrows(state: ViewState, viewport: Viewport): string {
  if (!state.overlays.arrows) {
    return "";
  }
  // canonical edge orientations: along e_k for even classes, opposite
  // for odd ones; drawn once per undirected edge
  const seen = new Set<string>();
  const marks: string[] = [];
  for (const tile of state.tiles) {
    const verts = tileVertices(tile, state.n);
    const dirs = [tile.rot, tile.rot - tile.label, tile.rot, tile.rot - tile.label];
    const edges: Array<[XY, XY, number]> = [
      [verts[0], verts[1], dirs[0]],
      [verts[3], verts[2], dirs[0]],
      [verts[0], verts[3], dirs[1]],
      [verts[1], verts[2], dirs[1]],
    ];
    for (const [a, b, dir] of edges) {
      const key = [a, b]
        .map((p) => p.map((v) => v.toFixed(6)).join(","))
        .sort()
        .join("|");
      if (seen.has(key)) {
        continue;
      }
      seen.add(key);
      const klass = ((dir % state.n) + state.n) % state.n;
      const canonical = klass % 2 === 0 ? klass : klass + state.n;
      const angle = (canonical * Math.PI) / state.n;
      const ux = Math.cos(angle);
      const uy = Math.sin(angle);
      const mid: XY = [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2];
      const tip: XY = [mid[0] + 0.16 * ux, mid[1] + 0.16 * uy];
      const left: XY = [mid[0] - 0.06 * uy, mid[1] + 0.06 * ux];
      const right: XY = [mid[0] + 0.06 * uy, mid[1] - 0.06 * ux];
      const pts = polygonPoints([tip, left, right], viewport);
      marks.push(`<polygon points="${pts}" fill="#222"/>`);
    }
  }
  return marks.join("\n");
}

export function renderScene(state: ViewState, viewport: Viewport): string {
  return [
    renderTiles(state, viewport),
    renderSites(state, viewport),
    renderStars(state, viewport),
    renderCornerFlags(state, viewport),
    renderArrows(state, viewport),
  ]
    .filter(Boolean)
    .join("\n");
}

export function describeSymmetry(state: ViewState): string {
  if (!state.symmetry) {
    return "no symmetry report";
  }
  const lines: string[] = [];
  for (const label of state.labels) {
    const flags = state.symmetry.corner_flags[String(label)] ?? [];
    const stars = state.symmetry.stars[String(label)] ?? [];
    const flagText = flags.map((ok, i) => `c${i}${ok ? "+" : "-"}`).join(" ");
    lines.push(`R_${label}: corners ${flagText}, stars ${stars.length}`);
  }
  return lines.join("\n");
}

export function siteAt(state: ViewState, world: XY): SitePayload | null {
  for (const site of state.sites) {
    if (pointInHexagon(world, site.hexagon as XY[])) {
      return site;
    }
  }
  return null;
}

function pointInHexagon(point: XY, polygon: XY[]): boolean {
  const [x, y] = point;
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    if (yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

export function siteCenterScreen(site: SitePayload, viewport: Viewport): XY {
  return viewport.toScreen(centroid(site.hexagon as XY[]));
}
