// Coordinate parsing, the canvas projection, and the route color ramp.

import type { GeoPoint, RouteResponse } from "./api.js";

export const SHORTEST_COLOR = "#ff8c00"; // orange
export const MOST_SHADED_COLOR = "#2e8b57"; // green

// "48.85, 2.35" -> GeoPoint; anything unparseable or out of range -> null.
export function parseCoordText(text: string): GeoPoint | null {
  const match = /^\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*$/.exec(text);
  if (!match) return null;
  const lat = Number(match[1]);
  const lon = Number(match[2]);
  if (!Number.isFinite(lat) || !Number.isFinite(lon)) return null;
  if (Math.abs(lat) > 90 || Math.abs(lon) > 180) return null;
  return { lat, lon };
}

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

function rgbToHex(rgb: [number, number, number]): string {
  return "#" + rgb.map((c) => Math.round(c).toString(16).padStart(2, "0")).join("");
}

// Route i of n: orange for the shortest, green for the most shaded,
// intermediates linearly interpolated between the two.
export function routeColor(index: number, count: number): string {
  if (count <= 1 || index <= 0) return SHORTEST_COLOR;
  if (index >= count - 1) return MOST_SHADED_COLOR;
  const t = index / (count - 1);
  const a = hexToRgb(SHORTEST_COLOR);
  const b = hexToRgb(MOST_SHADED_COLOR);
  return rgbToHex([
    a[0] + (b[0] - a[0]) * t,
    a[1] + (b[1] - a[1]) * t,
    a[2] + (b[2] - a[2]) * t,
  ]);
}

export interface Polyline {
  points: [number, number][]; // verbatim [lat, lon] pairs from the response
  color: string;
  label: string;
}

// One drawable polyline per returned route; coordinates are passed through
// untouched so the map can never show fabricated geometry.
export function polylinesFor(routes: RouteResponse | null): Polyline[] {
  if (!routes) return [];
  const n = routes.routes.length;
  return routes.routes.map((route, i) => ({
    points: route.geometry,
    color: routeColor(i, n),
    label: routes.legend[i] ?? `route ${i + 1}`,
  }));
}

export interface MetricsRow {
  label: string;
  lengthM: number;
  exposedM: number;
  shadePct: number;
}

export function metricsFor(routes: RouteResponse | null): MetricsRow[] {
  if (!routes) return [];
  return routes.routes.map((route, i) => ({
    label: routes.legend[i] ?? `route ${i + 1}`,
    lengthM: route.total_length_m,
    exposedM: route.total_exposed_m,
    shadePct: route.mean_shade_ratio * 100,
  }));
}

export interface Viewport {
  project(p: GeoPoint): [number, number];
  unproject(x: number, y: number): GeoPoint;
}

// Equirectangular fit of a point cloud into a width x height canvas.
// Longitude is compressed by cos(center latitude) so distances keep their
// aspect at city scale; a degenerate cloud falls back to a minimum span.
export function makeViewport(
  points: GeoPoint[],
  width: number,
  height: number,
  paddingPx = 30,
  minSpanDeg = 0.002,
): Viewport {
  let latMin = Infinity;
  let latMax = -Infinity;
  let lonMin = Infinity;
  let lonMax = -Infinity;
  for (const p of points) {
    latMin = Math.min(latMin, p.lat);
    latMax = Math.max(latMax, p.lat);
    lonMin = Math.min(lonMin, p.lon);
    lonMax = Math.max(lonMax, p.lon);
  }
  if (!Number.isFinite(latMin)) {
    latMin = latMax = 0;
    lonMin = lonMax = 0;
  }
  const latC = (latMin + latMax) / 2;
  const lonC = (lonMin + lonMax) / 2;
  const cos = Math.max(Math.cos((latC * Math.PI) / 180), 1e-6);
  const latSpan = Math.max(latMax - latMin, minSpanDeg);
  const lonSpan = Math.max((lonMax - lonMin) * cos, minSpanDeg);
  const scale = Math.min(
    (width - 2 * paddingPx) / lonSpan,
    (height - 2 * paddingPx) / latSpan,
  );
  return {
    project(p: GeoPoint): [number, number] {
      const x = width / 2 + (p.lon - lonC) * cos * scale;
      const y = height / 2 - (p.lat - latC) * scale;
      return [x, y];
    },
    unproject(x: number, y: number): GeoPoint {
      const lon = lonC + (x - width / 2) / (cos * scale);
      const lat = latC - (y - height / 2) / scale;
      return { lat, lon };
    },
  };
}
