"""
Deriving per-edge shade ratios
==============================

Each edge is rasterized into every tile it crosses; shaded and total
on-route pixel lengths accumulate across tiles, and the final ratio is
their quotient.  Here a street spans two adjacent equator tiles: one
fully shaded, one fully exposed, so the ratio lands at one half.
"""

import math

import numpy as np

from shade_routing import GeoPoint, ShadeMask, TileRef, derive_all, mode_filter, parse_osm
from shade_routing.ratios import aggregate_by_name, rasterize_edge

DEG_PER_M = 360.0 / 40_075_017.0
TILE_DEG = 49.84 * DEG_PER_M  # tile width at the equator, in degrees

tile_a = TileRef(GeoPoint(0.0, 0.0))
tile_b = TileRef(GeoPoint(0.0, TILE_DEG))

# One street crossing both tiles, one side street inside the shaded tile.
half = TILE_DEG / 2
doc = f"""<?xml version="1.0"?>
<osm version="0.6">
  <node id="1" lat="0.0" lon="{-0.9 * half}"/>
  <node id="2" lat="0.0" lon="{TILE_DEG + 0.9 * half}"/>
  <node id="3" lat="{-0.4 * half}" lon="0.0"/>
  <node id="4" lat="{0.4 * half}" lon="0.0"/>
  <way id="1"><nd ref="1"/><nd ref="2"/><tag k="highway" v="residential"/><tag k="name" v="Crossing St"/></way>
  <way id="2"><nd ref="3"/><nd ref="4"/><tag k="highway" v="footway"/><tag k="name" v="Side Path"/></way>
</osm>
"""
graph = mode_filter(parse_osm(doc), "walk")

masks = [
    ShadeMask(tile_a, np.ones((400, 400), dtype=bool), 75),   # all shaded
    ShadeMask(tile_b, np.zeros((400, 400), dtype=bool), 75),  # all exposed
]

# Rasterization: the crossing street occupies one pixel row per tile.
pixels = rasterize_edge(graph.points[1], graph.points[2], tile_a)
print(f"crossing street covers {len(pixels)} px of the first tile")

table = derive_all(graph, masks)
for edge in graph.edges:
    acc = table.accumulators[edge.edge_id]
    print(
        f"way {edge.edge_id[0]}: shaded {acc.shaded_m:6.2f} m of {acc.acc_m:6.2f} m"
        f"  ->  r = {table.finalized[edge.edge_id]:.3f}"
    )

print("\nper-street ratios:", {k: round(v, 3) for k, v in aggregate_by_name(table, graph.edges).items()})
assert math.isclose(table.finalized[(1, 0)], 0.5, abs_tol=0.02)
