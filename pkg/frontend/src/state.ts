// The client state machine. All I/O (fetch, timers) is injected so the
// behavior is testable without a browser:
//   - a route request goes out only when both endpoints are set;
//   - parameter changes are debounced (250 ms) into at most one request;
//   - an identical parameter tuple never has two requests in flight;
//   - responses apply last-write-wins by sequence number, so a stale reply
//     can never overwrite a newer one;
//   - no_route and network failures surface as a banner and keep the
//     previously rendered routes on screen.

import type { FetchOutcome, GeoPoint, Mode, QuerySelection, RouteResponse } from "./api.js";
import { buildRouteUrl } from "./api.js";
import { parseCoordText } from "./coords.js";

export const DEBOUNCE_MS = 250;

export type Status =
  | { kind: "idle" }
  | { kind: "loading" }
  | { kind: "error"; message: string; retryable: boolean };

export type SelectionMode = "alpha" | "topk";

export interface UiState {
  origin: GeoPoint | null;
  destination: GeoPoint | null;
  mode: Mode;
  alpha: number;
  k: number;
  selectionMode: SelectionMode;
  routes: RouteResponse | null;
  status: Status;
  validationMessage: string | null;
  hoveredRoute: number | null;
}

export interface StoreDeps {
  baseUrl: string;
  fetchRoutes(url: string): Promise<FetchOutcome>;
  // Schedules fn after delayMs; returns a cancel function. Tests inject a
  // manual clock here.
  schedule(fn: () => void, delayMs: number): () => void;
}

const INITIAL: UiState = {
  origin: null,
  destination: null,
  mode: "walk",
  alpha: 0.5,
  k: 3,
  selectionMode: "topk",
  routes: null,
  status: { kind: "idle" },
  validationMessage: null,
  hoveredRoute: null,
};

export class RouteStore {
  private state: UiState;
  private listeners: Array<(s: UiState) => void> = [];
  private cancelPending: (() => void) | null = null;
  private nextSeq = 1;
  private latestSeq = 0;
  private inFlightUrl: string | null = null;

  constructor(private deps: StoreDeps, initial?: Partial<UiState>) {
    this.state = { ...INITIAL, ...initial };
  }

  getState(): UiState {
    return this.state;
  }

  subscribe(listener: (s: UiState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  // -- endpoint entry ------------------------------------------------------

  // Map clicks fill the origin first, then the destination; a third click
  // starts a fresh comparison from a new origin and drops stale routes.
  setEndpointFromMap(p: GeoPoint): void {
    if (!this.state.origin) {
      this.update({ origin: p, validationMessage: null });
    } else if (!this.state.destination) {
      this.update({ destination: p, validationMessage: null });
    } else {
      this.update({ origin: p, routes: null, validationMessage: null });
    }
    this.scheduleRequest();
  }

  setOriginText(text: string): void {
    this.setEndpointText("origin", text);
  }

  setDestinationText(text: string): void {
    this.setEndpointText("destination", text);
  }

  private setEndpointText(slot: "origin" | "destination", text: string): void {
    const parsed = parseCoordText(text);
    if (!parsed) {
      this.update({ validationMessage: `cannot parse "${text}" as "lat, lon"` });
      return;
    }
    this.update({ [slot]: parsed, validationMessage: null } as Partial<UiState>);
    this.scheduleRequest();
  }

  // -- query parameters ----------------------------------------------------

  setMode(mode: Mode): void {
    this.update({ mode });
    this.scheduleRequest();
  }

  setAlpha(alpha: number): void {
    this.update({ alpha, selectionMode: "alpha" });
    this.scheduleRequest();
  }

  setK(k: number): void {
    this.update({ k, selectionMode: "topk" });
    this.scheduleRequest();
  }

  setSelectionMode(selectionMode: SelectionMode): void {
    this.update({ selectionMode });
    this.scheduleRequest();
  }

  setHoveredRoute(index: number | null): void {
    this.update({ hoveredRoute: index });
  }

  retry(): void {
    this.scheduleRequest();
  }

  // -- request lifecycle ---------------------------------------------------

  private selection(): QuerySelection {
    return this.state.selectionMode === "alpha"
      ? { kind: "alpha", alpha: this.state.alpha }
      : { kind: "topk", k: this.state.k };
  }

  private scheduleRequest(): void {
    if (!this.state.origin || !this.state.destination) return;
    if (this.cancelPending) this.cancelPending();
    this.cancelPending = this.deps.schedule(() => this.issueRequest(), DEBOUNCE_MS);
  }

  private issueRequest(): void {
    this.cancelPending = null;
    const { origin, destination, mode } = this.state;
    if (!origin || !destination) return;
    const url = buildRouteUrl(this.deps.baseUrl, origin, destination, mode, this.selection());
    if (url === this.inFlightUrl) return; // identical tuple already in flight
    const seq = this.nextSeq++;
    this.latestSeq = seq;
    this.inFlightUrl = url;
    this.update({ status: { kind: "loading" } });
    this.deps.fetchRoutes(url).then(
      (outcome) => this.applyOutcome(seq, outcome),
      (err) => this.applyOutcome(seq, { kind: "network_error", message: String(err) }),
    );
  }

  private applyOutcome(seq: number, outcome: FetchOutcome): void {
    if (seq !== this.latestSeq) return; // superseded by a newer request
    this.inFlightUrl = null;
    switch (outcome.kind) {
      case "ok":
        this.update({ routes: outcome.body, status: { kind: "idle" } });
        break;
      case "no_route":
        // keep whatever is on screen; only the banner changes
        this.update({ status: { kind: "error", message: outcome.message, retryable: false } });
        break;
      case "bad_request":
        this.update({ status: { kind: "error", message: outcome.message, retryable: false } });
        break;
      case "network_error":
        this.update({ status: { kind: "error", message: outcome.message, retryable: true } });
        break;
    }
  }
}
