"""Stateless HTTP query service and the shared route-response wire format.

The CLI and the HTTP endpoint serialize responses through the same
functions, byte for byte, so the JSON document is the single contract
consumed by any client.  Requests never mutate the loaded graphs.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .geo import GeoPoint
from .graph import LayeredGraph
from .router import NoRouteError, RoutePlan, plan, plan_topk, snap


class QueryError(ValueError):
    """A malformed query parameter set (HTTP 400)."""


def _role_label(index: int, count: int, alpha: float) -> str:
    if count == 1:
        if alpha <= 0.0:
            return "shortest"
        if alpha >= 1.0:
            return "most shaded"
        return f"balanced (alpha={alpha:g})"
    if index == 0:
        return "shortest"
    if index == count - 1:
        return "most shaded"
    return f"balanced (alpha={alpha:g})"


def route_response(graph: LayeredGraph, plans: list[RoutePlan]) -> dict:
    routes = []
    for p in plans:
        geometry = [[graph.points[n].lat, graph.points[n].lon] for n in p.path]
        routes.append(
            {
                "alpha_used": p.alpha_used,
                "geometry": geometry,
                "mean_shade_ratio": p.mean_shade_ratio,
                "total_exposed_m": p.total_exposed_m,
                "total_length_m": p.total_length_m,
            }
        )
    legend = [_role_label(i, len(plans), p.alpha_used) for i, p in enumerate(plans)]
    return {"legend": legend, "routes": routes}


def error_response(code: str, message: str) -> dict:
    return {"error": {"code": code, "message": message}}


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def answer_query(
    graph: LayeredGraph,
    origin: GeoPoint,
    destination: GeoPoint,
    alpha: float | None,
    k: int | None,
) -> dict:
    """Snap endpoints, run the planner and shape the wire response.

    Exactly one of ``alpha`` and ``k`` must be given.
    """
    if (alpha is None) == (k is None):
        raise QueryError("exactly one of alpha or k is required")
    v_o = snap(origin, graph)
    v_d = snap(destination, graph)
    if alpha is not None:
        if not 0.0 <= alpha <= 1.0:
            raise QueryError(f"alpha {alpha} outside [0, 1]")
        plans = [plan(graph, v_o, v_d, alpha)]
    else:
        if k < 1:
            raise QueryError(f"k must be >= 1, got {k}")
        plans = plan_topk(graph, v_o, v_d, k)
    return route_response(graph, plans)


def _parse_route_params(query: str, graphs: dict[str, LayeredGraph]):
    params = parse_qs(query, keep_blank_values=True)

    def single(name: str) -> str | None:
        values = params.get(name)
        if values is None:
            return None
        if len(values) != 1:
            raise QueryError(f"parameter {name} given more than once")
        return values[0]

    def required_float(name: str) -> float:
        raw = single(name)
        if raw is None:
            raise QueryError(f"missing required parameter {name}")
        try:
            return float(raw)
        except ValueError as exc:
            raise QueryError(f"parameter {name} is not a number: {raw!r}") from exc

    mode = single("mode")
    if mode is None:
        raise QueryError("missing required parameter mode")
    if mode not in graphs:
        raise QueryError(f"mode {mode!r} not served; available: {sorted(graphs)}")

    try:
        origin = GeoPoint(required_float("o_lat"), required_float("o_lon"))
        destination = GeoPoint(required_float("d_lat"), required_float("d_lon"))
    except ValueError as exc:
        raise QueryError(str(exc)) from exc

    alpha_raw = single("alpha")
    k_raw = single("k")
    if (alpha_raw is None) == (k_raw is None):
        raise QueryError("exactly one of alpha or k is required")
    alpha = None
    k = None
    if alpha_raw is not None:
        try:
            alpha = float(alpha_raw)
        except ValueError as exc:
            raise QueryError(f"alpha is not a number: {alpha_raw!r}") from exc
    else:
        try:
            k = int(k_raw)
        except ValueError as exc:
            raise QueryError(f"k is not an integer: {k_raw!r}") from exc
    return graphs[mode], origin, destination, alpha, k


class _Handler(BaseHTTPRequestHandler):
    graphs: dict[str, LayeredGraph] = {}

    def _send(self, status: int, payload: dict) -> None:
        body = (to_json(payload) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        url = urlsplit(self.path)
        if url.path == "/health":
            sizes = {
                mode: {"edges": len(g.edges), "vertices": len(g.points)}
                for mode, g in sorted(self.graphs.items())
            }
            self._send(200, {"graphs": sizes, "status": "ok"})
            return
        if url.path != "/route":
            self._send(404, error_response("not_found", f"unknown path {url.path}"))
            return
        try:
            graph, origin, destination, alpha, k = _parse_route_params(url.query, self.graphs)
            payload = answer_query(graph, origin, destination, alpha, k)
        except QueryError as exc:
            self._send(400, error_response("bad_request", str(exc)))
            return
        except NoRouteError as exc:
            self._send(404, error_response("no_route", str(exc)))
            return
        except Exception as exc:  # not expected on valid graphs; keep the wire clean
            self._send(500, error_response("internal_error", str(exc)))
            return
        self._send(200, payload)

    def log_message(self, format: str, *args) -> None:
        pass  # keep the server quiet; tests and demos read stdout


def create_server(graphs: dict[str, LayeredGraph], host: str = "127.0.0.1", port: int = 8080) -> ThreadingHTTPServer:
    """Bind a threading HTTP server over immutable shared graphs."""
    handler = type("RouteHandler", (_Handler,), {"graphs": dict(graphs)})
    return ThreadingHTTPServer((host, port), handler)
