// Client-side evaluation of the exact tile coordinates for display.
//
// The service sends translations as integer coordinate vectors over the
// power basis 1, z, ..., z^(d-1) with z = exp(i*pi/n); evaluating them
// numerically is all the browser ever needs.

import type { TilePayload } from "./api.js";

export type XY = [number, number];

export function evalCoeffs(coeffs: number[], n: number): XY {
  let x = 0;
  let y = 0;
  for (let j = 0; j < coeffs.length; j++) {
    const a = coeffs[j];
    if (a !== 0) {
      x += a * Math.cos((j * Math.PI) / n);
      y += a * Math.sin((j * Math.PI) / n);
    }
  }
  return [x, y];
}

export function unitVector(k: number, n: number): XY {
  return [Math.cos((k * Math.PI) / n), Math.sin((k * Math.PI) / n)];
}

// Corners in order base, base+e_rot, opposite, base+e_(rot-label);
// mirrors the service's placed-tile convention.
export function tileVertices(tile: TilePayload, n: number): XY[] {
  const [tx, ty] = evalCoeffs(tile.trans, n);
  const [ax, ay] = unitVector(tile.rot, n);
  const [bx, by] = unitVector(tile.rot - tile.label, n);
  return [
    [tx, ty],
    [tx + ax, ty + ay],
    [tx + ax + bx, ty + ay + by],
    [tx + bx, ty + by],
  ];
}

export function tileSmallAngleVertices(tile: TilePayload, n: number): XY[] {
  const v = tileVertices(tile, n);
  return [v[0], v[2]];
}

export function tileKey(tile: TilePayload): string {
  return `${tile.label}|${tile.rot}|${tile.trans.join(",")}`;
}

export function centroid(points: XY[]): XY {
  let x = 0;
  let y = 0;
  for (const [px, py] of points) {
    x += px;
    y += py;
  }
  return [x / points.length, y / points.length];
}

export function pointInPolygon(point: XY, polygon: XY[]): boolean {
  // ray casting; polygons here are convex hexagons from the service
  const [x, y] = point;
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    const crosses =
      yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi;
    if (crosses) {
      inside = !inside;
    }
  }
  return inside;
}

export function boundingBox(points: XY[]): { min: XY; max: XY } {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  return { min: [minX, minY], max: [maxX, maxY] };
}
