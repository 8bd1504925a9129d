"""Per-edge shade ratio accumulation across overlapping tiles.

Every road edge is rasterized into each tile it crosses.  On-route length is
modeled as pixel count times the tile's per-pixel ground resolution; the
shaded share of those pixels gives the edge's shaded length in that tile.
Contributions from all covering tiles are summed per edge, and the final
ratio is shaded length over accumulated length.

An edge crossing several (even mutually overlapping) tiles collects one
contribution per tile; the same (edge, tile) pair must never be accumulated
twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .geo import GeoPoint
from .masks import ShadeMask
from .osm import Edge, EdgeId, ModeGraph
from .tiles import PixelCoord, TileRef, geo_to_pixel_xy, tiles_covering


class MissingMaskError(OSError):
    """A tile listed in the index has no mask file on disk."""


def _clip_to_square(x0: float, y0: float, x1: float, y1: float, side: float):
    """Liang-Barsky clip of a segment to [0, side]^2; None when fully outside."""
    dx = x1 - x0
    dy = y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0), (dx, side - x0), (-dy, y0), (dy, side - y0)):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    if t0 > t1:
        return None
    return (x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy)


def _traverse_grid(x0: float, y0: float, x1: float, y1: float, side: int) -> list[PixelCoord]:
    """Cells crossed by a clipped segment, walked with a DDA grid traversal.

    Visits every pixel whose interior the segment passes through; crossings
    exactly on a pixel corner take a single diagonal step, so the walk is
    8-connected.
    """
    clamp_hi = side - 1

    def cell(x: float, y: float) -> tuple[int, int]:
        return (min(max(math.floor(x), 0), clamp_hi), min(max(math.floor(y), 0), clamp_hi))

    cx, cy = cell(x0, y0)
    ex, ey = cell(x1, y1)
    cells = [PixelCoord(cy, cx)]
    if (cx, cy) == (ex, ey):
        return cells

    dx = x1 - x0
    dy = y1 - y0
    step_x = 1 if dx > 0 else -1
    step_y = 1 if dy > 0 else -1
    if dx != 0.0:
        t_max_x = ((cx + 1 - x0) if dx > 0 else (cx - x0)) / dx
        t_delta_x = abs(1.0 / dx)
    else:
        t_max_x, t_delta_x = math.inf, math.inf
    if dy != 0.0:
        t_max_y = ((cy + 1 - y0) if dy > 0 else (cy - y0)) / dy
        t_delta_y = abs(1.0 / dy)
    else:
        t_max_y, t_delta_y = math.inf, math.inf

    # Upper bound on crossed cells; guards against degenerate float loops.
    for _ in range(4 * side + 8):
        if t_max_x < t_max_y:
            cx += step_x
            t_max_x += t_delta_x
        elif t_max_y < t_max_x:
            cy += step_y
            t_max_y += t_delta_y
        else:
            cx += step_x
            cy += step_y
            t_max_x += t_delta_x
            t_max_y += t_delta_y
        if not (0 <= cx < side and 0 <= cy < side):
            break
        cells.append(PixelCoord(cy, cx))
        if (cx, cy) == (ex, ey):
            break
    return cells


def rasterize_edge(a: GeoPoint, b: GeoPoint, tile: TileRef) -> list[PixelCoord]:
    """Pixels of ``tile`` crossed by the segment a-b, ordered along it.

    Returns an empty list when the segment misses the tile footprint.
    """
    x0, y0 = geo_to_pixel_xy(tile, a)
    x1, y1 = geo_to_pixel_xy(tile, b)
    clipped = _clip_to_square(x0, y0, x1, y1, float(tile.side_px))
    if clipped is None:
        return []
    return _traverse_grid(*clipped, tile.side_px)


def edge_tile_contribution(
    pixels: Sequence[PixelCoord], mask: ShadeMask
) -> tuple[float, float]:
    """(shaded_m, total_m) of an on-route pixel run against one tile's mask."""
    side = mask.tile.side_px
    shaded_count = 0
    for p in pixels:
        if not (0 <= p.row < side and 0 <= p.col < side):
            raise ValueError(f"pixel {p} outside {side}x{side} mask")
        if mask.shaded[p.row, p.col]:
            shaded_count += 1
    per_pixel_m = mask.tile.pixel_m
    return shaded_count * per_pixel_m, len(pixels) * per_pixel_m


@dataclass
class EdgeAccumulator:
    edge_id: EdgeId
    shaded_m: float = 0.0
    acc_m: float = 0.0

    @property
    def ratio(self) -> float | None:
        if self.acc_m <= 0.0:
            return None
        return self.shaded_m / self.acc_m


class ShadeRatioTable:
    """Running shaded/accumulated lengths per edge, finalized to ratios.

    Edges never covered by any tile resolve to ``default_ratio`` (0 by
    default, i.e. treated as fully sun-exposed).
    """

    def __init__(self, default_ratio: float = 0.0):
        if not 0.0 <= default_ratio <= 1.0:
            raise ValueError(f"default_ratio {default_ratio} outside [0, 1]")
        self.accumulators: dict[EdgeId, EdgeAccumulator] = {}
        self.finalized: dict[EdgeId, float] = {}
        self.default_ratio = default_ratio

    def accumulate(self, edge_id: EdgeId, contribution: tuple[float, float]) -> None:
        shaded_m, total_m = contribution
        if not (math.isfinite(shaded_m) and math.isfinite(total_m)):
            raise ValueError(f"non-finite contribution {contribution}")
        if shaded_m < 0.0 or total_m < 0.0 or shaded_m > total_m:
            raise ValueError(f"inconsistent contribution {contribution}: need 0 <= shaded <= total")
        acc = self.accumulators.setdefault(edge_id, EdgeAccumulator(edge_id))
        acc.shaded_m += shaded_m
        acc.acc_m += total_m

    def finalize(self) -> dict[EdgeId, float]:
        self.finalized = {}
        for edge_id, acc in self.accumulators.items():
            r = acc.ratio
            self.finalized[edge_id] = self.default_ratio if r is None else r
        return self.finalized

    def ratio_for(self, edge_id: EdgeId) -> float:
        return self.finalized.get(edge_id, self.default_ratio)


def derive_all(
    graph: ModeGraph,
    masks: Iterable[ShadeMask],
    default_ratio: float = 0.0,
) -> ShadeRatioTable:
    """Accumulate every edge of ``graph`` against every tile it intersects.

    Masks are visited in a canonical tile order, so the finalized table is
    identical no matter how the input is ordered.
    """
    by_tile: dict[TileRef, ShadeMask] = {}
    for mask in masks:
        if mask.tile in by_tile:
            raise ValueError(f"duplicate mask for tile centered at {mask.tile.center}")
        by_tile[mask.tile] = mask
    ordered_tiles = sorted(by_tile, key=lambda t: (t.center.lat, t.center.lon, t.zoom))

    table = ShadeRatioTable(default_ratio)
    for edge in sorted(graph.edges, key=lambda e: e.edge_id):
        a = graph.points[edge.u]
        b = graph.points[edge.v]
        lo = GeoPoint(min(a.lat, b.lat), min(a.lon, b.lon))
        hi = GeoPoint(max(a.lat, b.lat), max(a.lon, b.lon))
        for tile in tiles_covering((lo, hi), ordered_tiles):
            pixels = rasterize_edge(a, b, tile)
            if not pixels:
                continue
            table.accumulate(edge.edge_id, edge_tile_contribution(pixels, by_tile[tile]))
    table.finalize()
    return table


def aggregate_by_name(table: ShadeRatioTable, edges: Iterable[Edge]) -> dict[str, float]:
    """Reporting view: shaded ratio per road name, summed over its edges."""
    sums: dict[str, list[float]] = {}
    for edge in edges:
        if edge.way_name is None:
            continue
        acc = table.accumulators.get(edge.edge_id)
        if acc is None:
            continue
        entry = sums.setdefault(edge.way_name, [0.0, 0.0])
        entry[0] += acc.shaded_m
        entry[1] += acc.acc_m
    return {name: s / t for name, (s, t) in sorted(sums.items()) if t > 0.0}


def write_ratio_table(path: str | Path, edges: Iterable[Edge], table: ShadeRatioTable) -> None:
    """Interchange file, one line per edge: way_id,segment_index,u,v,shaded_m,acc_m,r."""
    lines = []
    for edge in edges:
        acc = table.accumulators.get(edge.edge_id, EdgeAccumulator(edge.edge_id))
        r = table.ratio_for(edge.edge_id)
        lines.append(
            f"{edge.edge_id[0]},{edge.edge_id[1]},{edge.u},{edge.v},"
            f"{acc.shaded_m!r},{acc.acc_m!r},{r!r}"
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_ratio_table(path: str | Path, default_ratio: float = 0.0) -> ShadeRatioTable:
    table = ShadeRatioTable(default_ratio)
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 7:
            raise ValueError(f"{path}:{lineno}: expected 7 fields, got {len(parts)}")
        edge_id = (int(parts[0]), int(parts[1]))
        shaded_m, acc_m, r = float(parts[4]), float(parts[5]), float(parts[6])
        table.accumulators[edge_id] = EdgeAccumulator(edge_id, shaded_m, acc_m)
        table.finalized[edge_id] = r
    return table
