"""
Tile geometry basics
====================

A satellite tile is a 400 x 400 px square whose ground footprint depends on
latitude.  This script walks through the resolution model and the
pixel <-> geographic transforms.
"""

from shade_routing import GeoPoint, PixelCoord, TileRef, geo_to_pixel, pixel_to_geo, resolution_at
from shade_routing.tiles import tile_extent, tiles_covering

# A tile side covers 49.84 m at the equator and shrinks with cos(latitude).
for lat in (0.0, 33.42, 48.85, 60.0):
    side = resolution_at(lat)
    print(f"lat {lat:6.2f}:  {side:6.2f} m per tile side,  {side / 400:.4f} m per pixel")

# Georeference a tile over central Paris and move around its pixel grid.
paris_tile = TileRef(GeoPoint(48.8530, 2.3499))
print("\ntile side:", round(paris_tile.side_m, 2), "m   pixel:", round(paris_tile.pixel_m, 4), "m")

center_pixel = PixelCoord(200, 200)
g = pixel_to_geo(paris_tile, center_pixel)
print("pixel (200, 200) sits at", (round(g.lat, 7), round(g.lon, 7)))

# The transforms invert each other exactly on the pixel grid.
corner = PixelCoord(0, 399)
assert geo_to_pixel(paris_tile, pixel_to_geo(paris_tile, corner)) == corner
print("corner pixel round-trips:", corner)

# Points off the tile map to None rather than to a clamped pixel.
print("1 km away ->", geo_to_pixel(paris_tile, GeoPoint(48.8620, 2.3499)))

# Coverage queries pick the tiles a bounding box touches.
sw, ne = tile_extent(paris_tile)
print("\ntile extent:", (round(sw.lat, 6), round(sw.lon, 6)), "to", (round(ne.lat, 6), round(ne.lon, 6)))
hits = tiles_covering((sw, ne), [paris_tile])
print("tiles intersecting their own extent:", len(hits))
