// Test doubles: a manual clock for the debounce scheduler and a scripted
// fetch that exposes its pending calls.

import type { FetchOutcome, RouteResponse } from "../src/api.js";

export class FakeClock {
  private tasks: Array<{ fn: () => void; canceled: boolean; done: boolean }> = [];

  schedule = (fn: () => void, _delayMs: number): (() => void) => {
    const task = { fn, canceled: false, done: false };
    this.tasks.push(task);
    return () => {
      task.canceled = true;
    };
  };

  pendingCount(): number {
    return this.tasks.filter((t) => !t.canceled && !t.done).length;
  }

  advance(): void {
    for (const task of [...this.tasks]) {
      if (task.canceled || task.done) continue;
      task.done = true;
      task.fn();
    }
  }
}

interface Deferred {
  promise: Promise<FetchOutcome>;
  resolve: (outcome: FetchOutcome) => void;
  reject: (err: unknown) => void;
}

export class FakeFetch {
  calls: string[] = [];
  private queue: Deferred[] = [];

  fetchRoutes = (url: string): Promise<FetchOutcome> => {
    this.calls.push(url);
    let resolve!: (outcome: FetchOutcome) => void;
    let reject!: (err: unknown) => void;
    const promise = new Promise<FetchOutcome>((res, rej) => {
      resolve = res;
      reject = rej;
    });
    this.queue.push({ promise, resolve, reject });
    return promise;
  };

  async resolveCall(index: number, outcome: FetchOutcome): Promise<void> {
    this.queue[index].resolve(outcome);
    await settle();
  }

  async rejectCall(index: number, err: unknown): Promise<void> {
    this.queue[index].reject(err);
    await settle();
  }
}

export function settle(): Promise<void> {
  return new Promise((resolve) => setImmediate(resolve));
}

// Captured from the triangle fixture service: two routes, shortest first.
export const FIXTURE_RESPONSE: RouteResponse = {
  legend: ["shortest", "most shaded"],
  routes: [
    {
      alpha_used: 0.0,
      geometry: [
        [0.0, 0.0],
        [0.0018, 0.0],
      ],
      mean_shade_ratio: 0.0,
      total_exposed_m: 200.0,
      total_length_m: 200.0,
    },
    {
      alpha_used: 1.0,
      geometry: [
        [0.0, 0.0],
        [0.0009, 0.0004],
        [0.0018, 0.0],
      ],
      mean_shade_ratio: 0.9,
      total_exposed_m: 21.799999999999994,
      total_length_m: 218.0,
    },
  ],
};

export const SINGLE_ROUTE_RESPONSE: RouteResponse = {
  legend: ["most shaded"],
  routes: [FIXTURE_RESPONSE.routes[1]],
};
