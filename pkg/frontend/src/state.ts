// Editor session state: snapshots from the service, optimistic flip
// echoes, and conflict resynchronization.
//
// The view never invents geometry: tiles change only by applying the
// delta of a service-confirmed flip, and any conflict throws the local
// state away in favour of a fresh snapshot.

import {
  ApiClient,
  ConflictError,
  type PatchPayload,
  type SessionInfo,
  type SitePayload,
  type SymmetryReport,
  type TilePayload,
} from "./api.js";
import { tileKey } from "./geometry.js";

export interface OverlayToggles {
  stars: boolean;
  cornerFlags: boolean;
  arrows: boolean;
}

export interface PanZoom {
  x: number;
  y: number;
  scale: number;
}

export interface ViewState {
  n: number;
  labels: number[];
  activeLabel: number;
  revision: number;
  dirty: boolean;
  tiles: TilePayload[];
  sites: SitePayload[];
  symmetry: SymmetryReport | null;
  overlays: OverlayToggles;
  panZoom: PanZoom;
  status: string;
}

export type FlipOutcome = "applied" | "conflict-resynced";

export class EditorSession {
  state: ViewState;
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(private readonly api: ApiClient) {
    this.state = {
      n: 0,
      labels: [],
      activeLabel: 0,
      revision: -1,
      dirty: false,
      tiles: [],
      sites: [],
      symmetry: null,
      overlays: { stars: true, cornerFlags: true, arrows: false },
      panZoom: { x: 0, y: 0, scale: 60 },
      status: "disconnected",
    };
  }

  onChange(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  async load(label?: number): Promise<void> {
    const info: SessionInfo = await this.api.getSession();
    const active = label ?? info.labels[0];
    const patch = await this.api.getPatch(active);
    const symmetry = await this.api.getSymmetry();
    this.state = {
      ...this.state,
      n: info.n,
      labels: info.labels,
      activeLabel: active,
      revision: patch.revision,
      dirty: info.dirty,
      tiles: patch.tiles,
      sites: patch.sites,
      symmetry,
      status: "ready",
    };
    this.emit();
  }

  async selectLabel(label: number): Promise<void> {
    await this.refreshPatch(label);
  }

  private async refreshPatch(label?: number, status = "ready"): Promise<void> {
    const active = label ?? this.state.activeLabel;
    const info = await this.api.getSession();
    const patch: PatchPayload = await this.api.getPatch(active);
    const symmetry = await this.api.getSymmetry();
    this.state = {
      ...this.state,
      labels: info.labels,
      dirty: info.dirty,
      activeLabel: active,
      revision: patch.revision,
      tiles: patch.tiles,
      sites: patch.sites,
      symmetry,
      status,
    };
    this.emit();
  }

  /** Apply a flip at a visible site.  The local swap is an echo of the
   * service's confirmed delta; a stale revision or site resynchronizes. */
  async clickFlip(siteId: string): Promise<FlipOutcome> {
    const { activeLabel, revision } = this.state;
    try {
      const result = await this.api.flip(activeLabel, siteId, revision);
      const removed = new Set(result.removed.map(tileKey));
      const tiles = this.state.tiles
        .filter((t) => !removed.has(tileKey(t)))
        .concat(result.added);
      this.state = {
        ...this.state,
        tiles,
        revision: result.revision,
        dirty: true,
        status: "flip applied",
      };
      this.emit();
      // sites and symmetry indicators follow from the fresh snapshot
      await this.refreshPatch();
      return "applied";
    } catch (err) {
      if (err instanceof ConflictError) {
        await this.refreshPatch(undefined, `stale flip: ${err.message}`);
        return "conflict-resynced";
      }
      throw err;
    }
  }

  async undo(): Promise<void> {
    let status = "ready";
    try {
      await this.api.undo();
    } catch (err) {
      if (!(err instanceof ConflictError)) {
        throw err;
      }
      status = "nothing to undo";
    }
    await this.refreshPatch(undefined, status);
  }

  async redo(): Promise<void> {
    let status = "ready";
    try {
      await this.api.redo();
    } catch (err) {
      if (!(err instanceof ConflictError)) {
        throw err;
      }
      status = "nothing to redo";
    }
    await this.refreshPatch(undefined, status);
  }

  async save(path?: string): Promise<string> {
    const result = await this.api.save(path);
    this.state = { ...this.state, dirty: false, status: `saved ${result.saved}` };
    this.emit();
    return result.saved;
  }

  toggleOverlay(which: keyof OverlayToggles): void {
    this.state = {
      ...this.state,
      overlays: { ...this.state.overlays, [which]: !this.state.overlays[which] },
    };
    this.emit();
  }

  setPanZoom(panZoom: PanZoom): void {
    this.state = { ...this.state, panZoom };
    this.emit();
  }
}
