"""Routable graph joining mode connectivity with per-edge shade ratios.

The mode graph gates connectivity: only its edges become routable.  Ratio
entries for links missing from the mode graph are inaccessible and dropped;
mode edges without a ratio entry fall back to the table's default.

Each edge carries two meter-valued objectives: its length and its
sun-exposed length ``length * (1 - ratio)``.  A preference weight ``alpha``
in [0, 1] blends them into one cost: 0 is pure distance, 1 is pure exposure.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .geo import GeoPoint
from .osm import ModeGraph, MODES
from .ratios import ShadeRatioTable

GRAPH_FORMAT_TAG = "shade-graph 1"


class GraphFormatError(ValueError):
    """A serialized graph file violates the expected format."""


@dataclass(frozen=True)
class EdgeWeights:
    length_m: float
    ratio: float

    def __post_init__(self) -> None:
        if self.length_m <= 0.0:
            raise ValueError(f"edge length {self.length_m} must be positive")
        if not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"shade ratio {self.ratio} outside [0, 1]")

    @property
    def exposed_m(self) -> float:
        """Sun-exposed meters along the edge."""
        return self.length_m * (1.0 - self.ratio)


def joint_weight(w: EdgeWeights, alpha: float) -> float:
    """Convex blend of the two objectives, in meters-equivalent."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    return (1.0 - alpha) * w.length_m + alpha * w.exposed_m


class LayeredGraph:
    """Undirected routable graph; immutable once constructed."""

    def __init__(self, mode: str, points: dict[int, GeoPoint], edges: dict[tuple[int, int], EdgeWeights]):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
        self.mode = mode
        self.points = dict(points)
        self.edges: dict[tuple[int, int], EdgeWeights] = {}
        adj: dict[int, list[tuple[int, EdgeWeights]]] = {v: [] for v in self.points}
        for (u, v), w in edges.items():
            if u not in self.points or v not in self.points:
                raise ValueError(f"edge ({u}, {v}) references unknown vertex")
            key = (u, v) if u <= v else (v, u)
            self.edges[key] = w
            adj[u].append((v, w))
            adj[v].append((u, w))
        self._adj = {v: sorted(pairs, key=lambda p: p[0]) for v, pairs in adj.items()}

    @property
    def vertices(self) -> set[int]:
        return set(self.points)

    def neighbors(self, u: int) -> list[tuple[int, EdgeWeights]]:
        return self._adj[u]

    def weight(self, u: int, v: int) -> EdgeWeights:
        key = (u, v) if u <= v else (v, u)
        return self.edges[key]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u <= v else (v, u)
        return key in self.edges


def build(mode_graph: ModeGraph, ratios: ShadeRatioTable) -> LayeredGraph:
    """Annotate the mode graph's edges with finalized shade ratios.

    Parallel edges between the same vertex pair collapse to the one with the
    smallest edge id, keeping the result deterministic.
    """
    edges: dict[tuple[int, int], EdgeWeights] = {}
    for edge in sorted(mode_graph.edges, key=lambda e: e.edge_id):
        key = (edge.u, edge.v) if edge.u <= edge.v else (edge.v, edge.u)
        if key in edges:
            continue
        edges[key] = EdgeWeights(edge.length_m, ratios.ratio_for(edge.edge_id))
    points = {v: mode_graph.points[v] for v in sorted(mode_graph.vertices)}
    return LayeredGraph(mode_graph.mode, points, edges)


def save_graph(graph: LayeredGraph, path: str | Path) -> None:
    lines = [GRAPH_FORMAT_TAG, f"{graph.mode} {len(graph.points)} {len(graph.edges)}"]
    for node_id in sorted(graph.points):
        p = graph.points[node_id]
        lines.append(f"V {node_id} {p.lat!r} {p.lon!r}")
    for (u, v) in sorted(graph.edges):
        w = graph.edges[(u, v)]
        lines.append(f"E {u} {v} {w.length_m!r} {w.ratio!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_graph(path: str | Path) -> LayeredGraph:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != GRAPH_FORMAT_TAG:
        raise GraphFormatError(f"{path}: missing format tag {GRAPH_FORMAT_TAG!r}")
    if len(lines) < 2:
        raise GraphFormatError(f"{path}: truncated header")
    header = lines[1].split()
    if len(header) != 3:
        raise GraphFormatError(f"{path}: malformed count header {lines[1]!r}")
    mode, n_vertices, n_edges = header[0], int(header[1]), int(header[2])
    if mode not in MODES:
        raise GraphFormatError(f"{path}: unknown mode {mode!r}")

    points: dict[int, GeoPoint] = {}
    edges: dict[tuple[int, int], EdgeWeights] = {}
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        fields = line.split()
        try:
            if fields[0] == "V" and len(fields) == 4:
                points[int(fields[1])] = GeoPoint(float(fields[2]), float(fields[3]))
            elif fields[0] == "E" and len(fields) == 5:
                u, v = int(fields[1]), int(fields[2])
                edges[(u, v)] = EdgeWeights(float(fields[3]), float(fields[4]))
            else:
                raise GraphFormatError(f"{path}:{lineno}: unrecognized record {line!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"{path}:{lineno}: {exc}") from exc
    if len(points) != n_vertices or len(edges) != n_edges:
        raise GraphFormatError(
            f"{path}: header promises {n_vertices} vertices / {n_edges} edges, "
            f"found {len(points)} / {len(edges)}"
        )
    return LayeredGraph(mode, points, edges)
