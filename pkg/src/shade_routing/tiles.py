"""Square satellite tile geometry: ground resolution, pixel/geo transforms, coverage.

Every tile is a 400 px square raster captured at map zoom 20.  Its ground
footprint shrinks with latitude: a tile side covers ``49.84 * cos(lat)``
meters, i.e. 0.1246 m per pixel at the equator.  At sub-50 m scale the tile
is modeled as an axis-aligned square in a local equirectangular frame
centered on the tile; the projection error there is below a centimeter.

Pixel (row, col) addresses the *center* of that pixel.  Columns grow
eastward, rows grow southward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .geo import GeoPoint, meters_per_degree_lat, meters_per_degree_lon

BASE_TILE_SIDE_M = 49.84
TILE_ZOOM = 20
TILE_SIDE_PX = 400


def resolution_at(lat: float) -> float:
    """Meters of ground covered by one tile side at latitude ``lat`` (degrees).

    Valid on the open interval (-90, 90); the tile footprint degenerates at
    the poles.
    """
    if not (math.isfinite(lat) and -90.0 < lat < 90.0):
        raise ValueError(f"latitude {lat} outside (-90, 90)")
    return BASE_TILE_SIDE_M * math.cos(math.radians(lat))


@dataclass(frozen=True)
class TileRef:
    """A georeferenced tile: center point, zoom level and raster side length."""

    center: GeoPoint
    zoom: int = TILE_ZOOM
    side_px: int = TILE_SIDE_PX

    def __post_init__(self) -> None:
        if self.side_px <= 0:
            raise ValueError(f"side_px must be positive, got {self.side_px}")
        resolution_at(self.center.lat)  # rejects polar centers

    @property
    def side_m(self) -> float:
        return resolution_at(self.center.lat)

    @property
    def pixel_m(self) -> float:
        """Ground meters covered by one pixel."""
        return self.side_m / self.side_px


@dataclass(frozen=True)
class PixelCoord:
    row: int
    col: int


def pixel_to_geo(tile: TileRef, p: PixelCoord) -> GeoPoint:
    """Geographic position of the center of pixel ``p``."""
    if not (0 <= p.row < tile.side_px and 0 <= p.col < tile.side_px):
        raise ValueError(f"pixel {p} outside {tile.side_px}x{tile.side_px} tile")
    half = tile.side_px / 2.0
    east_m = (p.col + 0.5 - half) * tile.pixel_m
    south_m = (p.row + 0.5 - half) * tile.pixel_m
    lat = tile.center.lat - south_m / meters_per_degree_lat()
    lon = tile.center.lon + east_m / meters_per_degree_lon(tile.center.lat)
    return GeoPoint(lat, lon)


def geo_to_pixel_xy(tile: TileRef, g: GeoPoint) -> tuple[float, float]:
    """Continuous pixel coordinates (x east, y south) of ``g`` on the tile grid.

    The tile interior spans [0, side_px] on both axes; values outside that
    range mean the point lies off the tile.
    """
    east_m = (g.lon - tile.center.lon) * meters_per_degree_lon(tile.center.lat)
    south_m = (tile.center.lat - g.lat) * meters_per_degree_lat()
    half = tile.side_px / 2.0
    return east_m / tile.pixel_m + half, south_m / tile.pixel_m + half


def geo_to_pixel(tile: TileRef, g: GeoPoint) -> PixelCoord | None:
    """Pixel containing ``g``, or None when the point is off the tile."""
    x, y = geo_to_pixel_xy(tile, g)
    col = math.floor(x)
    row = math.floor(y)
    if 0 <= row < tile.side_px and 0 <= col < tile.side_px:
        return PixelCoord(row, col)
    return None


def tile_extent(tile: TileRef) -> tuple[GeoPoint, GeoPoint]:
    """(south-west, north-east) corners of the tile footprint."""
    half_lat = (tile.side_m / 2.0) / meters_per_degree_lat()
    half_lon = (tile.side_m / 2.0) / meters_per_degree_lon(tile.center.lat)
    sw = GeoPoint(tile.center.lat - half_lat, tile.center.lon - half_lon)
    ne = GeoPoint(tile.center.lat + half_lat, tile.center.lon + half_lon)
    return sw, ne


def tiles_covering(bbox: tuple[GeoPoint, GeoPoint], tiles: Iterable[TileRef]) -> list[TileRef]:
    """All tiles whose footprint intersects the (min, max) corner bbox."""
    lo, hi = bbox
    if lo.lat > hi.lat or lo.lon > hi.lon:
        raise ValueError(f"malformed bbox: min corner {lo} exceeds max corner {hi}")
    hits = []
    for tile in tiles:
        sw, ne = tile_extent(tile)
        if sw.lat <= hi.lat and ne.lat >= lo.lat and sw.lon <= hi.lon and ne.lon >= lo.lon:
            hits.append(tile)
    return hits


@dataclass(frozen=True)
class TileIndexEntry:
    tile: TileRef
    filename: str


def write_tile_index(path: str | Path, entries: Iterable[TileIndexEntry]) -> None:
    """One line per tile: center_lat,center_lon,zoom,filename (7 decimal digits)."""
    lines = []
    for entry in entries:
        c = entry.tile.center
        lines.append(f"{c.lat:.7f},{c.lon:.7f},{entry.tile.zoom},{entry.filename}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_tile_index(path: str | Path, side_px: int = TILE_SIDE_PX) -> list[TileIndexEntry]:
    entries = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",", 3)
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected lat,lon,zoom,filename, got {raw!r}")
        try:
            center = GeoPoint(float(parts[0]), float(parts[1]))
            zoom = int(parts[2])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        entries.append(TileIndexEntry(TileRef(center, zoom, side_px), parts[3]))
    return entries
