"""Shared fixtures: a hand-built triangle graph, random graph generators,
independent path oracles, and a synthetic six-tile city with analytically
known per-edge shade overlaps.
"""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from shade_routing.geo import GeoPoint
from shade_routing.graph import EdgeWeights, LayeredGraph, joint_weight
from shade_routing.masks import ShadeMask
from shade_routing.tiles import TileRef

# Ground geometry of an equator tile, derived independently of the package:
# one tile side is 49.84 m over 400 px, and one degree spans
# 40,075,017 / 360 meters at the equator on both axes.
PX_M = 49.84 / 400.0
DEG_PER_M = 360.0 / 40_075_017.0
PX_DEG = PX_M * DEG_PER_M
TILE_DEG = 49.84 * DEG_PER_M


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    print(f"\n[acceptance] {name}: {'PASS' if report.passed else 'FAIL'}")


# ---------------------------------------------------------------------------
# Routing fixtures


@pytest.fixture
def triangle_graph() -> LayeredGraph:
    """A (100 m, r=0.9) - B (100 m, r=0.9) - C, plus direct A-C (150 m, r=0)."""
    points = {
        1: GeoPoint(0.0, 0.0),
        2: GeoPoint(0.0009, 0.0),
        3: GeoPoint(0.0018, 0.0),
    }
    edges = {
        (1, 2): EdgeWeights(100.0, 0.9),
        (2, 3): EdgeWeights(100.0, 0.9),
        (1, 3): EdgeWeights(150.0, 0.0),
    }
    return LayeredGraph("walk", points, edges)


def random_layered_graph(rng: random.Random, n: int, extra_prob: float) -> LayeredGraph:
    """Connected undirected graph with random lengths (m) and shade ratios."""
    points = {
        i: GeoPoint(rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02))
        for i in range(1, n + 1)
    }
    order = list(points)
    rng.shuffle(order)
    edges: dict[tuple[int, int], EdgeWeights] = {}

    def add(u: int, v: int) -> None:
        key = (u, v) if u < v else (v, u)
        if key not in edges:
            edges[key] = EdgeWeights(rng.uniform(10.0, 500.0), rng.uniform(0.0, 1.0))

    for i in range(1, len(order)):
        add(order[i], order[rng.randrange(i)])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < extra_prob:
                add(i, j)
    return LayeredGraph("walk", points, edges)


def all_simple_paths(graph: LayeredGraph, o: int, d: int) -> list[tuple[int, ...]]:
    paths: list[tuple[int, ...]] = []
    seq = [o]
    visited = {o}

    def dfs(u: int) -> None:
        if u == d:
            paths.append(tuple(seq))
            return
        for v, _ in graph.neighbors(u):
            if v in visited:
                continue
            visited.add(v)
            seq.append(v)
            dfs(v)
            seq.pop()
            visited.remove(v)

    dfs(o)
    return paths


def path_label(graph: LayeredGraph, seq: tuple[int, ...], alpha: float):
    """(joint cost, length, sequence), accumulated edge by edge in path order."""
    cost = 0.0
    length = 0.0
    for u, v in zip(seq, seq[1:]):
        w = graph.weight(u, v)
        cost = cost + joint_weight(w, alpha)
        length = length + w.length_m
    return (cost, length, seq)


def brute_force_plan(graph: LayeredGraph, o: int, d: int, alpha: float):
    """Exhaustive minimum over all simple paths under the shared tie-break."""
    best = None
    for seq in all_simple_paths(graph, o, d):
        label = path_label(graph, seq, alpha)
        if best is None or label < best:
            best = label
    return best


# ---------------------------------------------------------------------------
# Synthetic city: 6 equator tiles in a row, 10 edges with known overlaps


def _tile_center_lon(i: int) -> float:
    return (i + 0.5) * TILE_DEG


def _geo_at(tile_i: int, x: float, y: float) -> tuple[float, float]:
    """Continuous pixel coords (x east, y south) of tile ``tile_i`` to lat/lon."""
    lat = -(y - 200.0) * PX_DEG
    lon = _tile_center_lon(tile_i) + (x - 200.0) * PX_DEG
    return lat, lon


def _column_mask(tile: TileRef, shaded_cols: list[tuple[int, int]]) -> ShadeMask:
    grid = np.zeros((400, 400), dtype=bool)
    for lo, hi in shaded_cols:
        grid[:, lo:hi] = True
    return ShadeMask(tile, grid, 75)


def _row_mask(tile: TileRef, shaded_rows: list[tuple[int, int]]) -> ShadeMask:
    grid = np.zeros((400, 400), dtype=bool)
    for lo, hi in shaded_rows:
        grid[lo:hi, :] = True
    return ShadeMask(tile, grid, 75)


class SyntheticCity:
    """Six tiles, ten edges, per-edge ground-truth ratios from block masks."""

    def __init__(self):
        self.tiles = [TileRef(GeoPoint(0.0, _tile_center_lon(i))) for i in range(6)]
        self.masks = [
            _column_mask(self.tiles[0], [(0, 200)]),
            _column_mask(self.tiles[1], [(0, 400)]),
            _column_mask(self.tiles[2], []),
            _column_mask(self.tiles[3], [(100, 300)]),
            _column_mask(self.tiles[4], [(0, 100), (300, 400)]),
            _row_mask(self.tiles[5], [(0, 200)]),
        ]
        # (way_id, tile, (x0, y0), (x1, y1), expected ratio, expected pixels)
        mid = 200.5
        specs = [
            (1, 0, (2.5, mid), (397.5, mid), 198 / 396, 396),
            (2, 0, (2.5, mid), (201.5, mid), 198 / 200, 200),
            (3, 1, (2.5, mid), (397.5, mid), 1.0, 396),
            (4, 2, (2.5, mid), (397.5, mid), 0.0, 396),
            (5, 1, (200.5, mid), (600.5, mid), 0.5, 400),  # crosses into tile 2
            (6, 3, (2.5, mid), (397.5, mid), 200 / 396, 396),
            (7, 3, (50.5, mid), (149.5, mid), 50 / 100, 100),
            (8, 4, (2.5, mid), (397.5, mid), 196 / 396, 396),
            (9, 5, (200.5, 50.5), (200.5, 349.5), 150 / 300, 300),
            (10, 0, (2.5, 2.5), (397.5, 397.5), 198 / 396, 400),
        ]
        self.expected: dict[tuple[int, int], tuple[float, float]] = {}
        node_lines = []
        way_lines = []
        node_id = 100
        for way_id, tile_i, p0, p1, r_true, n_px in specs:
            ids = []
            for x, y in (p0, p1):
                node_id += 1
                lat, lon = _geo_at(tile_i, x, y)
                node_lines.append(f'  <node id="{node_id}" lat="{lat!r}" lon="{lon!r}"/>')
                ids.append(node_id)
            way_lines.append(
                f'  <way id="{way_id}">\n'
                f'    <nd ref="{ids[0]}"/>\n    <nd ref="{ids[1]}"/>\n'
                f'    <tag k="highway" v="footway"/>\n'
                f'    <tag k="name" v="street {way_id}"/>\n'
                f"  </way>"
            )
            # two pixels' worth of on-route length, relative to the edge total
            self.expected[(way_id, 0)] = (r_true, 2.0 / n_px)
        self.osm_xml = (
            '<?xml version="1.0"?>\n<osm version="0.6">\n'
            + "\n".join(node_lines)
            + "\n"
            + "\n".join(way_lines)
            + "\n</osm>\n"
        )


@pytest.fixture(scope="session")
def synthetic_city() -> SyntheticCity:
    return SyntheticCity()


def reference_supercover(x0: float, y0: float, x1: float, y1: float, side: int):
    """Brute-force oracle: classify every cell of the grid against the segment.

    Returns (closed_hits, open_hits): cells whose closed square the segment
    touches, and cells whose interior it genuinely passes through.
    """

    def clip_range(lo_t: float, hi_t: float, p: float, d: float, lo: float, hi: float):
        if d == 0.0:
            if not lo <= p <= hi:
                return None
            return lo_t, hi_t
        ta = (lo - p) / d
        tb = (hi - p) / d
        if ta > tb:
            ta, tb = tb, ta
        lo_t = max(lo_t, ta)
        hi_t = min(hi_t, tb)
        if lo_t > hi_t:
            return None
        return lo_t, hi_t

    closed = set()
    opened = set()
    for row in range(side):
        for col in range(side):
            span = clip_range(0.0, 1.0, x0, x1 - x0, col, col + 1)
            if span is None:
                continue
            span = clip_range(span[0], span[1], y0, y1 - y0, row, row + 1)
            if span is None:
                continue
            closed.add((row, col))
            tm = (span[0] + span[1]) / 2.0
            mx = x0 + tm * (x1 - x0)
            my = y0 + tm * (y1 - y0)
            if span[0] < span[1] and col < mx < col + 1 and row < my < row + 1:
                opened.add((row, col))
    return closed, opened
