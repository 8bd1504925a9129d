// Canvas and DOM rendering. Everything drawn here comes straight out of
// UiState; the interesting logic lives in state.ts and coords.ts.

import type { GeoPoint } from "./api.js";
import { makeViewport, metricsFor, polylinesFor, Viewport } from "./coords.js";
import type { UiState } from "./state.js";

const BACKGROUND = "#1c2230";
const GRID = "#2a3247";

export function viewportFor(state: UiState, width: number, height: number): Viewport {
  const points: GeoPoint[] = [];
  if (state.routes) {
    for (const route of state.routes.routes) {
      for (const [lat, lon] of route.geometry) points.push({ lat, lon });
    }
  }
  if (state.origin) points.push(state.origin);
  if (state.destination) points.push(state.destination);
  return makeViewport(points, width, height);
}

export function drawMap(canvas: HTMLCanvasElement, state: UiState, viewport: Viewport): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, width, height);
  ctx.strokeStyle = GRID;
  ctx.lineWidth = 1;
  for (let x = 0; x < width; x += 40) {
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, height);
    ctx.stroke();
  }
  for (let y = 0; y < height; y += 40) {
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(width, y);
    ctx.stroke();
  }

  const lines = polylinesFor(state.routes);
  lines.forEach((line, i) => {
    ctx.strokeStyle = line.color;
    ctx.lineWidth = state.hoveredRoute === i ? 7 : 4;
    ctx.lineCap = "round";
    ctx.lineJoin = "round";
    ctx.beginPath();
    line.points.forEach(([lat, lon], j) => {
      const [x, y] = viewport.project({ lat, lon });
      if (j === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  });

  const marker = (p: GeoPoint, label: string, color: string) => {
    const [x, y] = viewport.project(p);
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.arc(x, y, 7, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#ffffff";
    ctx.font = "bold 10px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(label, x, y);
  };
  if (state.origin) marker(state.origin, "O", "#3a7bd5");
  if (state.destination) marker(state.destination, "D", "#d53a6f");
}

export function renderLegend(el: HTMLElement, state: UiState): void {
  const lines = polylinesFor(state.routes);
  el.hidden = lines.length === 0;
  el.innerHTML = "";
  for (const line of lines) {
    const item = document.createElement("div");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.background = line.color;
    const text = document.createElement("span");
    text.textContent = line.label;
    item.append(swatch, text);
    el.appendChild(item);
  }
}

export function renderMetrics(el: HTMLElement, state: UiState,
                              onHover: (index: number | null) => void): void {
  const rows = metricsFor(state.routes);
  el.hidden = rows.length === 0;
  el.innerHTML = "";
  if (rows.length === 0) return;
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>route</th><th>length (m)</th><th>exposed (m)</th><th>shade</th></tr></thead>";
  const body = document.createElement("tbody");
  rows.forEach((row, i) => {
    const tr = document.createElement("tr");
    if (state.hoveredRoute === i) tr.className = "hovered";
    tr.innerHTML =
      `<td>${row.label}</td><td>${row.lengthM.toFixed(1)}</td>` +
      `<td>${row.exposedM.toFixed(1)}</td><td>${row.shadePct.toFixed(0)}%</td>`;
    tr.addEventListener("mouseenter", () => onHover(i));
    tr.addEventListener("mouseleave", () => onHover(null));
    body.appendChild(tr);
  });
  table.appendChild(body);
  el.appendChild(table);
}

export function renderStatus(banner: HTMLElement, validation: HTMLElement, state: UiState,
                             onRetry: () => void): void {
  validation.hidden = !state.validationMessage;
  validation.textContent = state.validationMessage ?? "";

  banner.innerHTML = "";
  if (state.status.kind === "idle") {
    banner.hidden = true;
    return;
  }
  banner.hidden = false;
  if (state.status.kind === "loading") {
    banner.className = "banner loading";
    banner.textContent = "planning…";
    return;
  }
  banner.className = "banner error";
  banner.textContent = state.status.message;
  if (state.status.retryable) {
    const button = document.createElement("button");
    button.textContent = "retry";
    button.addEventListener("click", onRetry);
    banner.append(" ", button);
  }
}
