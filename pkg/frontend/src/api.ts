// Wire types and URL building for the route query service. The JSON field
// names here mirror the service's response schema exactly; the client never
// reshapes or recomputes route data.

export interface RouteData {
  alpha_used: number;
  geometry: [number, number][]; // [lat, lon] per vertex
  mean_shade_ratio: number;
  total_exposed_m: number;
  total_length_m: number;
}

export interface RouteResponse {
  legend: string[];
  routes: RouteData[];
}

export interface GeoPoint {
  lat: number;
  lon: number;
}

export type Mode = "walk" | "bike";

export type QuerySelection =
  | { kind: "alpha"; alpha: number }
  | { kind: "topk"; k: number };

export type FetchOutcome =
  | { kind: "ok"; body: RouteResponse }
  | { kind: "no_route"; message: string }
  | { kind: "bad_request"; message: string }
  | { kind: "network_error"; message: string };

export function buildRouteUrl(
  baseUrl: string,
  origin: GeoPoint,
  destination: GeoPoint,
  mode: Mode,
  selection: QuerySelection,
): string {
  const params = new URLSearchParams({
    o_lat: String(origin.lat),
    o_lon: String(origin.lon),
    d_lat: String(destination.lat),
    d_lon: String(destination.lon),
    mode,
  });
  if (selection.kind === "alpha") {
    params.set("alpha", String(selection.alpha));
  } else {
    params.set("k", String(selection.k));
  }
  return `${baseUrl.replace(/\/$/, "")}/route?${params.toString()}`;
}

// Browser fetch wrapper; the store takes this (or a test double) by injection.
export async function fetchRoutes(url: string): Promise<FetchOutcome> {
  let resp: Response;
  try {
    resp = await fetch(url);
  } catch (err) {
    return { kind: "network_error", message: String(err) };
  }
  let body: unknown;
  try {
    body = await resp.json();
  } catch (err) {
    return { kind: "network_error", message: `malformed response: ${String(err)}` };
  }
  if (resp.ok) {
    return { kind: "ok", body: body as RouteResponse };
  }
  const error = (body as { error?: { code?: string; message?: string } }).error;
  const message = error?.message ?? `service returned HTTP ${resp.status}`;
  if (error?.code === "no_route") {
    return { kind: "no_route", message };
  }
  return { kind: "bad_request", message };
}
