// Session-state behaviour against a faithful in-memory fake of the
// service: optimistic delta application, stale-flip resynchronization,
// and service-authoritative undo/redo.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { EditorSession } from "../src/state.js";
import type { SitePayload, TilePayload } from "../src/api.js";

type Json = Record<string, unknown>;

class FakeService {
  revision = 0;
  dirty = false;
  tiles: TilePayload[];
  flipped = false;
  history: boolean[] = [];
  future: boolean[] = [];

  constructor() {
    this.tiles = this.tilesFor(false);
  }

  tilesFor(flipped: boolean): TilePayload[] {
    // three tiles around a hexagon in two configurations plus a bystander
    const variant = flipped ? 10 : 0;
    return [
      { label: 2, rot: 0 + variant, trans: [0, 0, 0, 0, 0, 0] },
      { label: 2, rot: 1 + variant, trans: [1, 0, 0, 0, 0, 0] },
      { label: 4, rot: 2 + variant, trans: [0, 1, 0, 0, 0, 0] },
      { label: 4, rot: 5, trans: [9, 9, 9, 9, 9, 9] },
    ];
  }

  site(): SitePayload {
    return {
      id: this.flipped ? "site-b" : "site-a",
      center: [0.5, 0.5],
      hexagon: [
        [1, 0],
        [0.5, 0.9],
        [-0.5, 0.9],
        [-1, 0],
        [-0.5, -0.9],
        [0.5, -0.9],
      ],
      tiles: this.tiles.slice(0, 3),
    };
  }

  respond(path: string, init?: RequestInit): { status: number; body: Json } {
    if (path === "/session") {
      return {
        status: 200,
        body: {
          n: 7,
          sequence: [1, -1, 0],
          labels: [2, 4, 6],
          dirty: this.dirty,
          revision: this.revision,
        },
      };
    }
    if (path.startsWith("/patch/")) {
      const label = Number(path.split("/")[2]);
      if (![2, 4, 6].includes(label)) {
        return { status: 404, body: { error: "not-found", detail: path } };
      }
      return {
        status: 200,
        body: {
          revision: this.revision,
          label,
          tiles: this.tiles,
          sites: [this.site()],
        },
      };
    }
    if (path.startsWith("/symmetry")) {
      return {
        status: 200,
        body: {
          n: 7,
          revision: this.revision,
          stars: { "2": [] },
          corner_flags: { "2": [true, false, this.flipped, false] },
          level2_stars: {},
          text: "fake",
        },
      };
    }
    if (path === "/flip") {
      const payload = JSON.parse(String(init?.body)) as {
        label: number;
        site: string;
        revision: number;
      };
      if (payload.revision !== this.revision) {
        return { status: 409, body: { error: "conflict", detail: "stale revision" } };
      }
      if (payload.site !== this.site().id) {
        return { status: 409, body: { error: "conflict", detail: "stale site" } };
      }
      const removed = this.tiles.slice(0, 3);
      this.history.push(this.flipped);
      this.future = [];
      this.flipped = !this.flipped;
      this.tiles = this.tilesFor(this.flipped);
      const added = this.tiles.slice(0, 3);
      this.revision += 1;
      this.dirty = true;
      return {
        status: 200,
        body: { revision: this.revision, label: payload.label, removed, added },
      };
    }
    if (path === "/undo") {
      if (!this.history.length) {
        return { status: 409, body: { error: "conflict", detail: "nothing to undo" } };
      }
      this.future.push(this.flipped);
      this.flipped = this.history.pop() as boolean;
      this.tiles = this.tilesFor(this.flipped);
      this.revision += 1;
      this.dirty = this.history.length > 0;
      return this.respond("/session");
    }
    if (path === "/redo") {
      if (!this.future.length) {
        return { status: 409, body: { error: "conflict", detail: "nothing to redo" } };
      }
      this.history.push(this.flipped);
      this.flipped = this.future.pop() as boolean;
      this.tiles = this.tilesFor(this.flipped);
      this.revision += 1;
      this.dirty = true;
      return this.respond("/session");
    }
    return { status: 404, body: { error: "not-found", detail: path } };
  }

  fetcher() {
    return async (input: string, init?: RequestInit): Promise<Response> => {
      const path = input.replace("http://fake", "");
      const { status, body } = this.respond(path, init);
      return new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
      });
    };
  }
}

describe("EditorSession", () => {
  let service: FakeService;
  let session: EditorSession;

  beforeEach(async () => {
    service = new FakeService();
    session = new EditorSession(new ApiClient("http://fake", service.fetcher()));
    await session.load();
  });

  it("loads the first label with its sites", () => {
    expect(session.state.activeLabel).toBe(2);
    expect(session.state.tiles).toHaveLength(4);
    expect(session.state.sites).toHaveLength(1);
    expect(session.state.revision).toBe(0);
  });

  it("applies a confirmed flip as a local delta and refreshes", async () => {
    const outcome = await session.clickFlip("site-a");
    expect(outcome).toBe("applied");
    expect(session.state.revision).toBe(1);
    expect(session.state.dirty).toBe(true);
    const rots = session.state.tiles.map((t) => t.rot).sort((a, b) => a - b);
    expect(rots).toEqual([5, 10, 11, 12]);
    // the bystander tile was never touched
    expect(
      session.state.tiles.some((t) => t.trans.every((c) => c === 9)),
    ).toBe(true);
    // symmetry panel refreshed from the new snapshot
    expect(session.state.symmetry?.corner_flags["2"][2]).toBe(true);
  });

  it("rejects a stale flip and resynchronizes", async () => {
    await session.clickFlip("site-a");
    // a second client moves the draft forward
    service.respond("/flip", {
      body: JSON.stringify({ label: 2, site: "site-b", revision: 1 }),
    } as RequestInit);
    expect(service.revision).toBe(2);
    // our session still believes revision 1
    const outcome = await session.clickFlip("site-b");
    expect(outcome).toBe("conflict-resynced");
    expect(session.state.revision).toBe(2);
    expect(session.state.status).toContain("stale");
    const rots = session.state.tiles.map((t) => t.rot).sort((a, b) => a - b);
    expect(rots).toEqual([0, 1, 2, 5]);
  });

  it("undo is service-authoritative and restores the tiles", async () => {
    const before = JSON.stringify(session.state.tiles);
    await session.clickFlip("site-a");
    await session.undo();
    expect(JSON.stringify(session.state.tiles)).toEqual(before);
    expect(session.state.dirty).toBe(false);
    await session.redo();
    expect(JSON.stringify(session.state.tiles)).not.toEqual(before);
  });

  it("undo with empty history surfaces a status, not an exception", async () => {
    await session.undo();
    expect(session.state.status).toContain("nothing to undo");
  });

  it("overlay toggles do not touch geometry", async () => {
    const tiles = session.state.tiles;
    session.toggleOverlay("stars");
    expect(session.state.overlays.stars).toBe(false);
    expect(session.state.tiles).toBe(tiles);
  });
});
