"""Preference-weighted shortest paths over a layered graph.

The search is Dijkstra over the blended cost ``(1 - alpha) * length +
alpha * exposed``.  Ties are broken lexicographically by (joint cost, total
length, vertex sequence), which makes results deterministic across runs and
platforms: the label attached to each vertex is exactly that triple, costs
and lengths accumulated edge by edge from the origin.  The priority queue
uses lazy re-insertion; stale entries are skipped on extraction.

Top-k answers sweep alpha over an even grid spanning [0, 1], so the first
route is the plain shortest and the last the most shaded one found.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .geo import GeoPoint, haversine
from .graph import LayeredGraph, joint_weight


class NoRouteError(Exception):
    """Origin and destination are not connected in this graph."""


class RouteReconstructionError(RuntimeError):
    """The predecessor map does not trace back to the origin."""


@dataclass(frozen=True)
class RoutePlan:
    path: tuple[int, ...]
    total_length_m: float
    total_exposed_m: float
    mean_shade_ratio: float
    alpha_used: float


def snap(g: GeoPoint, graph: LayeredGraph) -> int:
    """Nearest graph vertex by great-circle distance; ties pick the smallest id."""
    if not graph.points:
        raise RuntimeError("cannot snap onto an empty graph")
    best_id = None
    best_d = None
    for node_id in sorted(graph.points):
        d = haversine(g, graph.points[node_id])
        if best_d is None or d < best_d:
            best_id, best_d = node_id, d
    return best_id


def reconstruct(prev: dict[int, int | None], v_o: int, v_d: int) -> list[int]:
    """Walk predecessor links back from ``v_d`` and return the forward path."""
    path = [v_d]
    u = v_d
    for _ in range(len(prev) + 1):
        if u == v_o:
            return path[::-1]
        if u not in prev or prev[u] is None:
            raise RouteReconstructionError(f"predecessor chain from {v_d} breaks at {u}")
        u = prev[u]
        path.append(u)
    raise RouteReconstructionError(f"predecessor chain from {v_d} cycles without reaching {v_o}")


def plan(graph: LayeredGraph, v_o: int, v_d: int, alpha: float) -> RoutePlan:
    """Minimum-joint-cost path from ``v_o`` to ``v_d`` at preference ``alpha``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    if v_o not in graph.points:
        raise ValueError(f"unknown origin vertex {v_o}")
    if v_d not in graph.points:
        raise ValueError(f"unknown destination vertex {v_d}")

    start = (0.0, 0.0, (v_o,))
    best: dict[int, tuple[float, float, tuple[int, ...]]] = {v_o: start}
    prev: dict[int, int | None] = {v_o: None}
    settled: set[int] = set()
    frontier: list[tuple[float, float, tuple[int, ...]]] = [start]

    while frontier:
        cost, length, path = heapq.heappop(frontier)
        u = path[-1]
        if u in settled:
            continue
        settled.add(u)
        if u == v_d:
            break
        for v, w in graph.neighbors(u):
            if v in settled:
                continue
            label = (cost + joint_weight(w, alpha), length + w.length_m, path + (v,))
            if v not in best or label < best[v]:
                best[v] = label
                prev[v] = u
                heapq.heappush(frontier, label)

    if v_d not in settled:
        raise NoRouteError(f"no route from {v_o} to {v_d} in the {graph.mode} graph")

    path = reconstruct(prev, v_o, v_d)
    total_length = 0.0
    total_exposed = 0.0
    for u, v in zip(path, path[1:]):
        w = graph.weight(u, v)
        total_length += w.length_m
        total_exposed += w.exposed_m
    mean_ratio = 1.0 - total_exposed / total_length if total_length > 0.0 else 0.0
    return RoutePlan(tuple(path), total_length, total_exposed, mean_ratio, alpha)


def plan_topk(graph: LayeredGraph, v_o: int, v_d: int, k: int) -> list[RoutePlan]:
    """Routes for k evenly spaced preferences, deduplicated by vertex sequence.

    Each distinct path keeps its lowest-alpha representative; the result is
    ordered by ascending alpha, shortest route first.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    alphas = [0.0] if k == 1 else [i / (k - 1) for i in range(k)]
    plans: list[RoutePlan] = []
    seen: set[tuple[int, ...]] = set()
    for alpha in alphas:
        p = plan(graph, v_o, v_d, alpha)
        if p.path in seen:
            continue
        seen.add(p.path)
        plans.append(p)
    return plans
