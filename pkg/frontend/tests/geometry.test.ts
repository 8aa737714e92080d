import { describe, expect, it } from "vitest";

import {
  boundingBox,
  centroid,
  evalCoeffs,
  pointInPolygon,
  tileKey,
  tileSmallAngleVertices,
  tileVertices,
} from "../src/geometry.js";

const N = 7;

describe("evalCoeffs", () => {
  it("evaluates basis vectors to unit directions", () => {
    const e0 = evalCoeffs([1, 0, 0, 0, 0, 0], N);
    expect(e0[0]).toBeCloseTo(1, 12);
    expect(e0[1]).toBeCloseTo(0, 12);
    const e2 = evalCoeffs([0, 0, 1, 0, 0, 0], N);
    expect(e2[0]).toBeCloseTo(Math.cos((2 * Math.PI) / 7), 12);
    expect(e2[1]).toBeCloseTo(Math.sin((2 * Math.PI) / 7), 12);
  });

  it("is linear", () => {
    const both = evalCoeffs([1, 1, 0, 0, 0, 0], N);
    const a = evalCoeffs([1, 0, 0, 0, 0, 0], N);
    const b = evalCoeffs([0, 1, 0, 0, 0, 0], N);
    expect(both[0]).toBeCloseTo(a[0] + b[0], 12);
    expect(both[1]).toBeCloseTo(a[1] + b[1], 12);
  });
});

describe("tileVertices", () => {
  it("matches the reference prototile R_2 at the identity placement", () => {
    const tile = { label: 2, rot: 0, trans: [0, 0, 0, 0, 0, 0] };
    const [v0, v1, v2, v3] = tileVertices(tile, N);
    expect(v0).toEqual([0, 0]);
    expect(v1[0]).toBeCloseTo(1, 12);
    expect(v1[1]).toBeCloseTo(0, 12);
    // base+e_{-2}
    expect(v3[0]).toBeCloseTo(Math.cos((2 * Math.PI) / 7), 12);
    expect(v3[1]).toBeCloseTo(-Math.sin((2 * Math.PI) / 7), 12);
    expect(v2[0]).toBeCloseTo(v1[0] + v3[0], 12);
    expect(v2[1]).toBeCloseTo(v1[1] + v3[1], 12);
  });

  it("reports the small-angle corners at base and opposite", () => {
    const tile = { label: 2, rot: 3, trans: [1, 0, -1, 0, 2, 0] };
    const all = tileVertices(tile, N);
    const small = tileSmallAngleVertices(tile, N);
    expect(small[0]).toEqual(all[0]);
    expect(small[1]).toEqual(all[2]);
  });
});

describe("hit testing and helpers", () => {
  const hexagon: [number, number][] = [
    [1, 0],
    [0.5, 0.9],
    [-0.5, 0.9],
    [-1, 0],
    [-0.5, -0.9],
    [0.5, -0.9],
  ];

  it("pointInPolygon agrees with the hexagon", () => {
    expect(pointInPolygon([0, 0], hexagon)).toBe(true);
    expect(pointInPolygon([0.9, 0.01], hexagon)).toBe(true);
    expect(pointInPolygon([1.5, 0], hexagon)).toBe(false);
    expect(pointInPolygon([0, 1.5], hexagon)).toBe(false);
  });

  it("centroid and bounding box", () => {
    const c = centroid(hexagon);
    expect(c[0]).toBeCloseTo(0, 12);
    expect(c[1]).toBeCloseTo(0, 12);
    const box = boundingBox(hexagon);
    expect(box.min).toEqual([-1, -0.9]);
    expect(box.max).toEqual([1, 0.9]);
  });

  it("tileKey distinguishes placements", () => {
    const a = { label: 2, rot: 0, trans: [0, 0, 0, 0, 0, 0] };
    const b = { label: 2, rot: 0, trans: [1, 0, 0, 0, 0, 0] };
    expect(tileKey(a)).not.toEqual(tileKey(b));
    expect(tileKey(a)).toEqual(tileKey({ ...a }));
  });
});
