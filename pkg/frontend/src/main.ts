// Browser entry point: wires the DOM controls to the state store and
// repaints on every state change.

import { fetchRoutes } from "./api.js";
import { drawMap, renderLegend, renderMetrics, renderStatus, viewportFor } from "./render.js";
import { RouteStore } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("map");
const originInput = el<HTMLInputElement>("origin");
const destinationInput = el<HTMLInputElement>("destination");
const modeSelect = el<HTMLSelectElement>("mode");
const alphaRadio = el<HTMLInputElement>("select-alpha");
const topkRadio = el<HTMLInputElement>("select-topk");
const alphaSlider = el<HTMLInputElement>("alpha");
const alphaValue = el<HTMLElement>("alpha-value");
const kInput = el<HTMLInputElement>("k");
const banner = el<HTMLElement>("banner");
const validation = el<HTMLElement>("validation");
const legend = el<HTMLElement>("legend");
const metrics = el<HTMLElement>("metrics");
const baseUrlInput = el<HTMLInputElement>("base-url");

const params = new URLSearchParams(window.location.search);
baseUrlInput.value = params.get("service") ?? "http://127.0.0.1:8080";

const store = new RouteStore({
  get baseUrl() {
    return baseUrlInput.value;
  },
  fetchRoutes,
  schedule(fn, delayMs) {
    const id = window.setTimeout(fn, delayMs);
    return () => window.clearTimeout(id);
  },
});

store.subscribe((state) => {
  const viewport = viewportFor(state, canvas.width, canvas.height);
  drawMap(canvas, state, viewport);
  renderLegend(legend, state);
  renderMetrics(metrics, state, (i) => store.setHoveredRoute(i));
  renderStatus(banner, validation, state, () => store.retry());
  if (state.origin) {
    originInput.value = `${state.origin.lat.toFixed(6)}, ${state.origin.lon.toFixed(6)}`;
  }
  if (state.destination) {
    destinationInput.value = `${state.destination.lat.toFixed(6)}, ${state.destination.lon.toFixed(6)}`;
  }
  alphaValue.textContent = Number(alphaSlider.value).toFixed(2);
});

canvas.addEventListener("click", (event) => {
  const rect = canvas.getBoundingClientRect();
  const x = ((event.clientX - rect.left) / rect.width) * canvas.width;
  const y = ((event.clientY - rect.top) / rect.height) * canvas.height;
  const viewport = viewportFor(store.getState(), canvas.width, canvas.height);
  store.setEndpointFromMap(viewport.unproject(x, y));
});

originInput.addEventListener("change", () => store.setOriginText(originInput.value));
destinationInput.addEventListener("change", () => store.setDestinationText(destinationInput.value));
modeSelect.addEventListener("change", () => store.setMode(modeSelect.value as "walk" | "bike"));

alphaSlider.addEventListener("input", () => {
  alphaRadio.checked = true;
  store.setAlpha(Number(alphaSlider.value));
});
kInput.addEventListener("change", () => {
  topkRadio.checked = true;
  store.setK(Math.max(1, Math.round(Number(kInput.value))));
});
alphaRadio.addEventListener("change", () => store.setSelectionMode("alpha"));
topkRadio.addEventListener("change", () => store.setSelectionMode("topk"));

// initial paint
drawMap(canvas, store.getState(), viewportFor(store.getState(), canvas.width, canvas.height));
