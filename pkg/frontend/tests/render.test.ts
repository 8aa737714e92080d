import { describe, expect, it } from "vitest";

import { describeSymmetry, makeViewport, renderScene, siteAt } from "../src/render.js";
import type { ViewState } from "../src/state.js";

function fixtureState(): ViewState {
  return {
    n: 7,
    labels: [2, 4, 6],
    activeLabel: 2,
    revision: 3,
    dirty: false,
    tiles: [
      { label: 2, rot: 0, trans: [0, 0, 0, 0, 0, 0] },
      { label: 4, rot: 1, trans: [1, 0, 0, 0, 0, 0] },
      { label: 2, rot: 3, trans: [0, 1, 0, 0, 0, 0] },
    ],
    sites: [
      {
        id: "abc123",
        center: [0.5, 0.0],
        hexagon: [
          [1, 0],
          [0.5, 0.9],
          [-0.5, 0.9],
          [-1, 0],
          [-0.5, -0.9],
          [0.5, -0.9],
        ],
        tiles: [],
      },
    ],
    symmetry: {
      n: 7,
      revision: 3,
      stars: { "2": [[0, 0, 0, 0, 0, 0]] },
      corner_flags: { "2": [true, false, true, false] },
      level2_stars: {},
      text: "",
    },
    overlays: { stars: true, cornerFlags: true, arrows: false },
    panZoom: { x: 0, y: 0, scale: 60 },
    status: "ready",
  };
}

describe("renderScene", () => {
  it("draws one polygon per tile plus the clickable sites", () => {
    const state = fixtureState();
    const svg = renderScene(state, makeViewport(state));
    const tilePolys = svg.match(/<polygon points=/g) ?? [];
    expect(tilePolys.length).toBe(3);
    expect(svg).toContain('data-site="abc123"');
    expect(svg).toContain("<circle");
  });

  it("arrows toggle adds orientation markers", () => {
    const state = fixtureState();
    const plain = renderScene(state, makeViewport(state));
    state.overlays.arrows = true;
    const armed = renderScene(state, makeViewport(state));
    expect(armed.length).toBeGreaterThan(plain.length);
    expect((armed.match(/fill="#222"/g) ?? []).length).toBeGreaterThan(0);
  });

  it("hides star markers when toggled off", () => {
    const state = fixtureState();
    state.overlays.stars = false;
    state.overlays.cornerFlags = false;
    const svg = renderScene(state, makeViewport(state));
    expect(svg).not.toContain("<circle");
  });

  it("hit testing uses the service hexagons", () => {
    const state = fixtureState();
    expect(siteAt(state, [0, 0])?.id).toBe("abc123");
    expect(siteAt(state, [5, 5])).toBeNull();
  });

  it("symmetry panel text lists flags per label", () => {
    const text = describeSymmetry(fixtureState());
    expect(text).toContain("R_2: corners c0+ c1- c2+ c3-");
    expect(text).toContain("stars 1");
  });
});
