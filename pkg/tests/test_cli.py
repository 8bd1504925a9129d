import json

import numpy as np
import pytest
from PIL import Image

from shade_routing.cli import main
from shade_routing.geo import GeoPoint
from shade_routing.graph import load_graph, save_graph
from shade_routing.masks import ShadeMask, read_mask, write_mask
from shade_routing.ratios import read_ratio_table
from shade_routing.tiles import TileIndexEntry, TileRef, write_tile_index

from conftest import PX_DEG

from test_ratios import geo_at_pixels

EQUATOR_TILE = TileRef(GeoPoint(0.0, 0.0))


def write_png(path, value: int, side: int = 400) -> None:
    Image.fromarray(np.full((side, side, 3), value, dtype=np.uint8)).save(path)


def byeng_shaped_index(tmp_path, count: int = 72):
    """A 72-tile grid inside the case-study bbox, with uniform dark rasters."""
    tiles_dir = tmp_path / "tiles"
    tiles_dir.mkdir()
    entries = []
    for i in range(count):
        row, col = divmod(i, 9)
        lat = 33.4222 + row * 0.00035
        lon = -111.9407 + col * 0.0005
        name = f"tile_{i:03d}.png"
        write_png(tiles_dir / name, 40)
        entries.append(TileIndexEntry(TileRef(GeoPoint(lat, lon)), name))
    index = tmp_path / "index.csv"
    write_tile_index(index, entries)
    return index, tiles_dir


# node 2 sits off the 1-3 line, so the shaded detour is strictly longer
TRIANGLE_OSM = """<?xml version="1.0"?>
<osm version="0.6">
  <node id="1" lat="0.0" lon="0.0"/>
  <node id="2" lat="0.0009" lon="0.0004"/>
  <node id="3" lat="0.0018" lon="0.0"/>
  <way id="1"><nd ref="1"/><nd ref="2"/><tag k="highway" v="footway"/></way>
  <way id="2"><nd ref="2"/><nd ref="3"/><tag k="highway" v="footway"/></way>
  <way id="3"><nd ref="1"/><nd ref="3"/><tag k="highway" v="footway"/></way>
</osm>
"""


class TestDeriveMasks:
    def test_byeng_shaped_fixture_writes_72_masks(self, tmp_path, capsys):
        index, tiles_dir = byeng_shaped_index(tmp_path)
        out_dir = tmp_path / "masks"
        rc = main(
            [
                "derive-masks",
                "--index", str(index),
                "--tiles-dir", str(tiles_dir),
                "--out-dir", str(out_dir),
            ]
        )
        assert rc == 0
        masks = sorted(out_dir.glob("*.mask"))
        assert len(masks) == 72
        assert read_mask(masks[0]).shaded.all()  # value 40 < 75 everywhere
        out = capsys.readouterr().out
        assert "72 masks" in out
        assert "1.0000" in out  # mean shade fraction

    def test_empty_index_succeeds_with_zero_masks(self, tmp_path, capsys):
        index = tmp_path / "index.csv"
        index.write_text("")
        out_dir = tmp_path / "masks"
        rc = main(
            ["derive-masks", "--index", str(index), "--tiles-dir", str(tmp_path), "--out-dir", str(out_dir)]
        )
        assert rc == 0
        assert list(out_dir.glob("*.mask")) == []
        assert "0 masks" in capsys.readouterr().out

    def test_missing_tile_raster_fails_naming_it(self, tmp_path, capsys):
        index = tmp_path / "index.csv"
        write_tile_index(index, [TileIndexEntry(EQUATOR_TILE, "absent.png")])
        rc = main(
            ["derive-masks", "--index", str(index), "--tiles-dir", str(tmp_path), "--out-dir", str(tmp_path / "m")]
        )
        assert rc == 1
        assert "absent.png" in capsys.readouterr().err


def full_row_osm(tile: TileRef) -> str:
    a = geo_at_pixels(tile, 2.5, 200.5)
    b = geo_at_pixels(tile, 397.5, 200.5)
    return f"""<?xml version="1.0"?>
<osm version="0.6">
  <node id="1" lat="{a.lat!r}" lon="{a.lon!r}"/>
  <node id="2" lat="{b.lat!r}" lon="{b.lon!r}"/>
  <way id="5"><nd ref="1"/><nd ref="2"/><tag k="highway" v="footway"/></way>
</osm>"""


class TestComputeRatios:
    def test_all_dark_masks_give_full_shade(self, tmp_path):
        masks_dir = tmp_path / "masks"
        masks_dir.mkdir()
        write_mask(
            ShadeMask(EQUATOR_TILE, np.ones((400, 400), dtype=bool), 75),
            masks_dir / "t.mask",
        )
        osm = tmp_path / "net.osm"
        osm.write_text(full_row_osm(EQUATOR_TILE))
        out = tmp_path / "ratios.csv"
        rc = main(
            ["compute-ratios", "--osm", str(osm), "--masks-dir", str(masks_dir), "--mode", "walk", "--out", str(out)]
        )
        assert rc == 0
        table = read_ratio_table(out)
        assert table.finalized[(5, 0)] == 1.0

    def test_half_shaded_edge_lands_near_half(self, tmp_path):
        masks_dir = tmp_path / "masks"
        masks_dir.mkdir()
        grid = np.zeros((400, 400), dtype=bool)
        grid[:, :200] = True
        write_mask(ShadeMask(EQUATOR_TILE, grid, 75), masks_dir / "t.mask")
        osm = tmp_path / "net.osm"
        osm.write_text(full_row_osm(EQUATOR_TILE))
        out = tmp_path / "ratios.csv"
        rc = main(
            ["compute-ratios", "--osm", str(osm), "--masks-dir", str(masks_dir), "--mode", "walk", "--out", str(out)]
        )
        assert rc == 0
        assert read_ratio_table(out).finalized[(5, 0)] == pytest.approx(0.5, abs=0.02)

    def test_missing_masks_dir_fails(self, tmp_path, capsys):
        osm = tmp_path / "net.osm"
        osm.write_text(full_row_osm(EQUATOR_TILE))
        rc = main(
            ["compute-ratios", "--osm", str(osm), "--masks-dir", str(tmp_path / "nope"), "--mode", "walk", "--out", str(tmp_path / "r.csv")]
        )
        assert rc == 1
        assert "masks directory" in capsys.readouterr().err

    def test_indexed_tile_without_mask_fails_naming_tile(self, tmp_path, capsys):
        masks_dir = tmp_path / "masks"
        masks_dir.mkdir()
        index = tmp_path / "index.csv"
        write_tile_index(index, [TileIndexEntry(EQUATOR_TILE, "t0.png")])
        osm = tmp_path / "net.osm"
        osm.write_text(full_row_osm(EQUATOR_TILE))
        rc = main(
            [
                "compute-ratios", "--osm", str(osm), "--masks-dir", str(masks_dir),
                "--mode", "walk", "--out", str(tmp_path / "r.csv"), "--index", str(index),
            ]
        )
        assert rc == 1
        assert "no mask for tile" in capsys.readouterr().err


class TestBuildGraphAndRoute:
    def make_graph_file(self, tmp_path):
        osm = tmp_path / "net.osm"
        osm.write_text(TRIANGLE_OSM)
        ratios = tmp_path / "ratios.csv"
        # hand-written table: detour edges shaded 0.9, direct edge exposed
        ratios.write_text(
            "1,0,1,2,90.0,100.0,0.9\n"
            "2,0,2,3,90.0,100.0,0.9\n"
            "3,0,1,3,0.0,150.0,0.0\n"
        )
        graph_path = tmp_path / "walk.graph"
        rc = main(
            ["build-graph", "--osm", str(osm), "--ratios", str(ratios), "--mode", "walk", "--out", str(graph_path)]
        )
        assert rc == 0
        return graph_path

    def test_build_graph_output_loads(self, tmp_path):
        graph_path = self.make_graph_file(tmp_path)
        g = load_graph(graph_path)
        assert g.mode == "walk"
        assert len(g.points) == 3
        assert len(g.edges) == 3
        assert g.weight(1, 2).ratio == 0.9

    def test_route_alpha_zero_prints_direct_route(self, tmp_path, capsys):
        graph_path = self.make_graph_file(tmp_path)
        capsys.readouterr()  # drop build-graph's summary line
        rc = main(
            [
                "route", "--graph", str(graph_path), "--mode", "walk",
                "--o-lat", "0.0", "--o-lon", "0.0",
                "--d-lat", "0.0018", "--d-lon", "0.0",
                "--alpha", "0",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["routes"]) == 1
        route = payload["routes"][0]
        assert route["total_length_m"] == pytest.approx(200.15, abs=0.5)
        assert [g[0] for g in route["geometry"]] == [0.0, 0.0018]

    def test_route_topk_two_routes_sorted(self, tmp_path, capsys):
        graph_path = self.make_graph_file(tmp_path)
        capsys.readouterr()
        rc = main(
            [
                "route", "--graph", str(graph_path), "--mode", "walk",
                "--o-lat", "0.0", "--o-lon", "0.0",
                "--d-lat", "0.0018", "--d-lon", "0.0",
                "--k", "2",
            ]
        )
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["routes"]) == 2
        alphas = [r["alpha_used"] for r in payload["routes"]]
        assert alphas == [0.0, 1.0]
        assert payload["legend"] == ["shortest", "most shaded"]

    def test_route_unreachable_emits_error_json(self, tmp_path, capsys):
        graph_path = tmp_path / "walk.graph"
        # two components: 1-2 and 3-4
        from shade_routing.graph import EdgeWeights, LayeredGraph

        g = LayeredGraph(
            "walk",
            {
                1: GeoPoint(0.0, 0.0),
                2: GeoPoint(0.0009, 0.0),
                3: GeoPoint(0.03, 0.03),
                4: GeoPoint(0.0309, 0.03),
            },
            {(1, 2): EdgeWeights(100.0, 0.5), (3, 4): EdgeWeights(100.0, 0.5)},
        )
        save_graph(g, graph_path)
        rc = main(
            [
                "route", "--graph", str(graph_path), "--mode", "walk",
                "--o-lat", "0.0", "--o-lon", "0.0",
                "--d-lat", "0.03", "--d-lon", "0.03",
                "--alpha", "0.5",
            ]
        )
        assert rc != 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["error"]["code"] == "no_route"

    def test_route_mode_mismatch_fails(self, tmp_path, capsys):
        graph_path = self.make_graph_file(tmp_path)
        rc = main(
            [
                "route", "--graph", str(graph_path), "--mode", "bike",
                "--o-lat", "0", "--o-lon", "0", "--d-lat", "0.0018", "--d-lon", "0",
                "--alpha", "0",
            ]
        )
        assert rc == 1
        assert "mode" in capsys.readouterr().err


def test_resolve_bind_precedence(monkeypatch):
    from shade_routing.cli import BIND_ENV_VAR, _resolve_bind

    monkeypatch.delenv(BIND_ENV_VAR, raising=False)
    assert _resolve_bind(None) == ("127.0.0.1", 8080)
    monkeypatch.setenv(BIND_ENV_VAR, "0.0.0.0:9001")
    assert _resolve_bind(None) == ("0.0.0.0", 9001)
    assert _resolve_bind("127.0.0.1:7000") == ("127.0.0.1", 7000)
    with pytest.raises(ValueError):
        _resolve_bind("nonsense")
