"""Shade-aware route planning from satellite tile rasters and OSM road data.

The pipeline, end to end: classify tile pixels as shaded by brightness
thresholding (``masks``), rasterize every road edge into the tiles it
crosses and accumulate per-edge shade ratios (``ratios``), join ratios with
per-mode OSM connectivity (``osm``, ``graph``), and answer origin/destination
queries with a preference-weighted Dijkstra sweep (``router``).  ``service``
and ``cli`` expose the result as JSON over HTTP and on the command line.
"""

from .geo import GeoPoint, haversine
from .graph import EdgeWeights, LayeredGraph, build, joint_weight, load_graph, save_graph
from .masks import ShadeMask, TileImage, extract_mask, read_mask, shade_fraction, write_mask
from .osm import Edge, ModeGraph, RoadNetwork, Way, mode_filter, parse_osm
from .ratios import (
    ShadeRatioTable,
    derive_all,
    edge_tile_contribution,
    rasterize_edge,
    read_ratio_table,
    write_ratio_table,
)
from .router import NoRouteError, RoutePlan, plan, plan_topk, reconstruct, snap
from .service import answer_query, create_server, route_response, to_json
from .tiles import (
    PixelCoord,
    TileRef,
    geo_to_pixel,
    pixel_to_geo,
    read_tile_index,
    resolution_at,
    tiles_covering,
    write_tile_index,
)

__all__ = [
    "Edge",
    "EdgeWeights",
    "GeoPoint",
    "LayeredGraph",
    "ModeGraph",
    "NoRouteError",
    "PixelCoord",
    "RoadNetwork",
    "RoutePlan",
    "ShadeMask",
    "ShadeRatioTable",
    "TileImage",
    "TileRef",
    "Way",
    "answer_query",
    "build",
    "create_server",
    "derive_all",
    "edge_tile_contribution",
    "extract_mask",
    "geo_to_pixel",
    "haversine",
    "joint_weight",
    "load_graph",
    "mode_filter",
    "parse_osm",
    "pixel_to_geo",
    "plan",
    "plan_topk",
    "rasterize_edge",
    "read_mask",
    "read_ratio_table",
    "read_tile_index",
    "reconstruct",
    "resolution_at",
    "route_response",
    "save_graph",
    "shade_fraction",
    "snap",
    "tiles_covering",
    "to_json",
    "write_mask",
    "write_ratio_table",
    "write_tile_index",
]

__version__ = "0.1.0"
