"""OSM XML parsing and per-mode (walk/bike) road graph extraction.

Which highway classes admit which travel mode is tabulated in
``data/mode_access.json`` rather than hardcoded, so the admission policy is
a reviewable data artifact.  A way is dropped for a mode when its access tag
(``foot`` / ``bicycle``) is explicitly ``no``.

Graphs are undirected; one-way restrictions do not apply to the pedestrian
and cyclist flows modeled here.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .geo import GeoPoint, haversine

MODES = ("walk", "bike")

EdgeId = tuple[int, int]


class OsmParseError(ValueError):
    """The document is not well-formed OSM XML."""


class OsmStructureError(ValueError):
    """The document is well-formed XML but violates OSM referential structure."""


@dataclass(frozen=True)
class Way:
    way_id: int
    node_ids: tuple[int, ...]
    name: str | None
    tags: dict[str, str] = field(compare=False)


@dataclass(frozen=True)
class RoadNetwork:
    nodes: dict[int, GeoPoint]
    ways: list[Way]


@dataclass(frozen=True)
class Edge:
    """One way segment between consecutive nodes, keyed (way_id, segment_index)."""

    edge_id: EdgeId
    u: int
    v: int
    length_m: float
    way_name: str | None


@dataclass(frozen=True)
class ModeGraph:
    mode: str
    vertices: set[int]
    edges: list[Edge]
    points: dict[int, GeoPoint]


def _load_mode_access() -> dict[str, dict]:
    with resources.files("shade_routing.data").joinpath("mode_access.json").open("rb") as fh:
        return json.load(fh)


_MODE_ACCESS = _load_mode_access()


def mode_access_table() -> dict[str, dict]:
    """The admission policy: per mode, admitted highway classes and access tag."""
    return json.loads(json.dumps(_MODE_ACCESS))


def parse_osm(document: bytes | str) -> RoadNetwork:
    """Parse an OSM XML document, keeping all nodes and the highway-tagged ways.

    Consecutive duplicate node references inside a way are collapsed; ways
    left with fewer than two nodes are dropped.
    """
    if isinstance(document, str):
        document = document.encode("utf-8")
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line, col = exc.position
        raise OsmParseError(f"malformed OSM XML at line {line}, column {col}: {exc}") from exc

    nodes: dict[int, GeoPoint] = {}
    for el in root.iter("node"):
        nodes[int(el.attrib["id"])] = GeoPoint(float(el.attrib["lat"]), float(el.attrib["lon"]))

    ways: list[Way] = []
    for el in root.iter("way"):
        way_id = int(el.attrib["id"])
        tags = {t.attrib["k"]: t.attrib.get("v", "") for t in el.findall("tag")}
        if "highway" not in tags:
            continue
        refs: list[int] = []
        for nd in el.findall("nd"):
            ref = int(nd.attrib["ref"])
            if ref not in nodes:
                raise OsmStructureError(f"way {way_id} references missing node {ref}")
            if refs and refs[-1] == ref:
                continue
            refs.append(ref)
        if len(refs) < 2:
            continue
        ways.append(Way(way_id, tuple(refs), tags.get("name"), tags))
    return RoadNetwork(nodes, ways)


def way_admits(way: Way, mode: str) -> bool:
    if mode not in _MODE_ACCESS:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    rule = _MODE_ACCESS[mode]
    if way.tags.get("highway") not in rule["highways"]:
        return False
    return way.tags.get(rule["access_tag"]) != "no"


def mode_filter(net: RoadNetwork, mode: str) -> ModeGraph:
    """Split the admitted ways of ``net`` into per-segment edges for ``mode``."""
    edges: list[Edge] = []
    vertices: set[int] = set()
    for way in net.ways:
        if not way_admits(way, mode):
            continue
        for seg, (u, v) in enumerate(zip(way.node_ids, way.node_ids[1:])):
            length = haversine(net.nodes[u], net.nodes[v])
            if length <= 0.0:
                continue  # coincident nodes cannot form a routable edge
            edges.append(Edge((way.way_id, seg), u, v, length, way.name))
            vertices.add(u)
            vertices.add(v)
    points = {n: net.nodes[n] for n in sorted(vertices)}
    return ModeGraph(mode, vertices, edges, points)


def write_edge_list(graph: ModeGraph, path: str | Path) -> None:
    """Debug dump, one line per edge: way_id,segment_index,u,v,length_m,way_name."""
    lines = []
    for e in graph.edges:
        name = e.way_name or ""
        lines.append(f"{e.edge_id[0]},{e.edge_id[1]},{e.u},{e.v},{e.length_m!r},{name}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_osm_file(path: str | Path) -> RoadNetwork:
    return parse_osm(Path(path).read_bytes())


def polyline_length_m(net: RoadNetwork, way: Way) -> float:
    """Total haversine length of a way's node sequence."""
    total = 0.0
    for u, v in zip(way.node_ids, way.node_ids[1:]):
        total += haversine(net.nodes[u], net.nodes[v])
    return total
