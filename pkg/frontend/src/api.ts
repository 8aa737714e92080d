// Typed client for the workbench session service (HTTP/JSON).

export interface TilePayload {
  label: number;
  rot: number;
  trans: number[];
}

export interface SitePayload {
  id: string;
  center: [number, number];
  hexagon: [number, number][];
  tiles: TilePayload[];
}

export interface PatchPayload {
  revision: number;
  label: number;
  tiles: TilePayload[];
  sites: SitePayload[];
}

export interface SessionInfo {
  n: number;
  sequence: number[];
  labels: number[];
  dirty: boolean;
  revision: number;
}

export interface FlipResult {
  revision: number;
  label: number;
  removed: TilePayload[];
  added: TilePayload[];
}

export interface SymmetryReport {
  n: number;
  revision: number;
  stars: Record<string, number[][]>;
  corner_flags: Record<string, boolean[]>;
  level2_stars: Record<string, number[][]>;
  text: string;
}

export class ConflictError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "ConflictError";
  }
}

export class NotFoundError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "NotFoundError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json();
    if (response.status === 409) {
      throw new ConflictError(body.detail ?? "conflict");
    }
    if (response.status === 404) {
      throw new NotFoundError(body.detail ?? "not found");
    }
    if (!response.ok) {
      throw new Error(body.detail ?? `request failed: ${response.status}`);
    }
    return body as T;
  }

  getSession(): Promise<SessionInfo> {
    return this.request<SessionInfo>("/session");
  }

  getPatch(label: number): Promise<PatchPayload> {
    return this.request<PatchPayload>(`/patch/${label}`);
  }

  getSymmetry(depth2 = false): Promise<SymmetryReport> {
    return this.request<SymmetryReport>(`/symmetry${depth2 ? "?depth=2" : ""}`);
  }

  flip(label: number, site: string, revision: number): Promise<FlipResult> {
    return this.request<FlipResult>("/flip", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ label, site, revision }),
    });
  }

  undo(): Promise<SessionInfo> {
    return this.request<SessionInfo>("/undo", { method: "POST", body: "{}" });
  }

  redo(): Promise<SessionInfo> {
    return this.request<SessionInfo>("/redo", { method: "POST", body: "{}" });
  }

  save(path?: string): Promise<{ saved: string; revision: number }> {
    return this.request("/save", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(path ? { path } : {}),
    });
  }
}
