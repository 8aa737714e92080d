// Browser wiring: connect to the session service, draw the active
// label's patch, flip on click, show symmetry indicators, undo/redo and
// save from the toolbar.

import { ApiClient } from "./api.js";
import { describeSymmetry, makeViewport, renderScene } from "./render.js";
import { EditorSession } from "./state.js";

const DEFAULT_BASE = "http://127.0.0.1:8765";

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("service") ?? DEFAULT_BASE;
  const api = new ApiClient(base);
  const session = new EditorSession(api);

  const svg = element<HTMLElement>("scene");
  const toast = element<HTMLElement>("toast");
  const panel = element<HTMLElement>("symmetry");
  const labelSelect = element<HTMLSelectElement>("label-select");

  session.onChange((state) => {
    const viewport = makeViewport(state, 900, 620);
    svg.innerHTML = renderScene(state, viewport);
    panel.textContent = describeSymmetry(state);
    toast.textContent = `${state.status} | revision ${state.revision}` +
      (state.dirty ? " | unsaved changes" : "");
    if (labelSelect.options.length !== state.labels.length) {
      labelSelect.innerHTML = state.labels
        .map((label) => `<option value="${label}">R_${label}</option>`)
        .join("");
    }
    labelSelect.value = String(state.activeLabel);
    for (const polygon of svg.querySelectorAll<SVGPolygonElement>(".flip-site")) {
      polygon.addEventListener("click", () => {
        const id = polygon.getAttribute("data-site");
        if (id) {
          void session.clickFlip(id);
        }
      });
    }
  });

  labelSelect.addEventListener("change", () => {
    void session.selectLabel(Number(labelSelect.value));
  });
  element<HTMLButtonElement>("undo").addEventListener("click", () => void session.undo());
  element<HTMLButtonElement>("redo").addEventListener("click", () => void session.redo());
  element<HTMLButtonElement>("save").addEventListener("click", () => void session.save());
  element<HTMLInputElement>("toggle-stars").addEventListener("change", () =>
    session.toggleOverlay("stars"),
  );
  element<HTMLInputElement>("toggle-corners").addEventListener("change", () =>
    session.toggleOverlay("cornerFlags"),
  );
  element<HTMLInputElement>("toggle-arrows").addEventListener("change", () =>
    session.toggleOverlay("arrows"),
  );

  let zoom = 60;
  element<HTMLElement>("viewbox").addEventListener("wheel", (event) => {
    event.preventDefault();
    zoom = Math.max(12, Math.min(240, zoom * (event.deltaY < 0 ? 1.1 : 0.9)));
    session.setPanZoom({ ...session.state.panZoom, scale: zoom });
  });

  try {
    await session.load();
  } catch (err) {
    toast.textContent = `cannot reach session service at ${base}: ${err}`;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  void boot();
}
