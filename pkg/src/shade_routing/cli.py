"""Pipeline command line: tile masks -> edge ratios -> routable graph -> routes.

Subcommands:
  derive-masks    classify every indexed tile raster into a bitmask file
  compute-ratios  rasterize a mode graph against the masks, write the ratio table
  build-graph     join mode connectivity with ratios into a serialized graph
  route           answer one origin/destination query, JSON on stdout
  serve           expose /route and /health over HTTP for the map client

The bind address for ``serve`` defaults to 127.0.0.1:8080 and can be
overridden with the SHADE_ROUTING_BIND environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import graph as graph_mod
from . import masks as masks_mod
from . import ratios as ratios_mod
from .geo import GeoPoint
from .osm import MODES, load_osm_file, mode_filter
from .router import NoRouteError
from .service import QueryError, answer_query, create_server, error_response, to_json
from .tiles import read_tile_index

BIND_ENV_VAR = "SHADE_ROUTING_BIND"
DEFAULT_BIND = "127.0.0.1:8080"


def _cmd_derive_masks(args) -> int:
    entries = read_tile_index(args.index)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fractions = []
    for entry in entries:
        tile_path = Path(args.tiles_dir) / entry.filename
        if not tile_path.is_file():
            print(f"error: tile raster not found: {tile_path}", file=sys.stderr)
            return 1
        try:
            img = masks_mod.read_tile_image(tile_path, entry.tile)
        except (OSError, ValueError) as exc:
            print(f"error: cannot read tile {tile_path}: {exc}", file=sys.stderr)
            return 1
        mask = masks_mod.extract_mask(img, args.threshold)
        masks_mod.write_mask(mask, out_dir / (Path(entry.filename).stem + ".mask"))
        fractions.append(masks_mod.shade_fraction(mask))
    mean = sum(fractions) / len(fractions) if fractions else 0.0
    print(f"wrote {len(fractions)} masks, mean shade fraction {mean:.4f}")
    return 0


def _load_masks(masks_dir: Path, index_path: str | None) -> list[masks_mod.ShadeMask]:
    if not masks_dir.is_dir():
        raise OSError(f"masks directory not found: {masks_dir}")
    if index_path is not None:
        loaded = []
        for entry in read_tile_index(index_path):
            mask_path = masks_dir / (Path(entry.filename).stem + ".mask")
            if not mask_path.is_file():
                c = entry.tile.center
                raise ratios_mod.MissingMaskError(
                    f"no mask for tile centered at ({c.lat}, {c.lon}): expected {mask_path}"
                )
            loaded.append(masks_mod.read_mask(mask_path))
        return loaded
    return [masks_mod.read_mask(p) for p in sorted(masks_dir.glob("*.mask"))]


def _cmd_compute_ratios(args) -> int:
    try:
        net = load_osm_file(args.osm)
        mode_graph = mode_filter(net, args.mode)
        tile_masks = _load_masks(Path(args.masks_dir), args.index)
        table = ratios_mod.derive_all(mode_graph, tile_masks, args.default_ratio)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ratios_mod.write_ratio_table(args.out, mode_graph.edges, table)
    covered = sum(1 for acc in table.accumulators.values() if acc.acc_m > 0.0)
    print(f"wrote ratios for {len(mode_graph.edges)} edges ({covered} covered by tiles)")
    return 0


def _cmd_build_graph(args) -> int:
    try:
        net = load_osm_file(args.osm)
        mode_graph = mode_filter(net, args.mode)
        table = ratios_mod.read_ratio_table(args.ratios, args.default_ratio)
        layered = graph_mod.build(mode_graph, table)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    graph_mod.save_graph(layered, args.out)
    print(f"wrote {layered.mode} graph: {len(layered.points)} vertices, {len(layered.edges)} edges")
    return 0


def _cmd_route(args) -> int:
    try:
        layered = graph_mod.load_graph(args.graph)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if layered.mode != args.mode:
        print(f"error: graph file serves mode {layered.mode!r}, not {args.mode!r}", file=sys.stderr)
        return 1
    try:
        origin = GeoPoint(args.o_lat, args.o_lon)
        destination = GeoPoint(args.d_lat, args.d_lon)
        payload = answer_query(layered, origin, destination, args.alpha, args.k)
    except (QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NoRouteError as exc:
        sys.stdout.write(to_json(error_response("no_route", str(exc))) + "\n")
        return 2
    sys.stdout.write(to_json(payload) + "\n")
    return 0


def _resolve_bind(flag_value: str | None) -> tuple[str, int]:
    raw = flag_value or os.environ.get(BIND_ENV_VAR) or DEFAULT_BIND
    host, _, port = raw.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must look like host:port, got {raw!r}")
    return host, int(port)


def _cmd_serve(args) -> int:
    graphs = {}
    try:
        if args.walk_graph:
            graphs["walk"] = graph_mod.load_graph(args.walk_graph)
        if args.bike_graph:
            graphs["bike"] = graph_mod.load_graph(args.bike_graph)
        if not graphs:
            raise ValueError("at least one of --walk-graph / --bike-graph is required")
        host, port = _resolve_bind(args.bind)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    server = create_server(graphs, host, port)
    host, port = server.server_address[:2]
    print(f"serving {sorted(graphs)} on http://{host}:{port} (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shade-routing",
        description="Shade-aware route planning pipeline over satellite tiles and OSM data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive-masks", help="classify indexed tile rasters into shade bitmasks")
    p.add_argument("--index", required=True, help="tile index file (lat,lon,zoom,filename)")
    p.add_argument("--tiles-dir", required=True, help="directory holding the tile rasters")
    p.add_argument("--out-dir", required=True, help="directory for the .mask files")
    p.add_argument("--threshold", type=int, default=masks_mod.DEFAULT_THRESHOLD)
    p.set_defaults(func=_cmd_derive_masks)

    p = sub.add_parser("compute-ratios", help="derive the per-edge shade ratio table")
    p.add_argument("--osm", required=True, help="OSM XML file")
    p.add_argument("--masks-dir", required=True)
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--out", required=True, help="output ratio table path")
    p.add_argument("--index", default=None, help="optional tile index; every indexed tile must have a mask")
    p.add_argument("--default-ratio", type=float, default=0.0)
    p.set_defaults(func=_cmd_compute_ratios)

    p = sub.add_parser("build-graph", help="serialize the routable graph for a mode")
    p.add_argument("--osm", required=True)
    p.add_argument("--ratios", required=True, help="ratio table from compute-ratios")
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--out", required=True)
    p.add_argument("--default-ratio", type=float, default=0.0)
    p.set_defaults(func=_cmd_build_graph)

    p = sub.add_parser("route", help="answer one query, RouteResponse JSON on stdout")
    p.add_argument("--graph", required=True, help="serialized graph from build-graph")
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--o-lat", type=float, required=True)
    p.add_argument("--o-lon", type=float, required=True)
    p.add_argument("--d-lat", type=float, required=True)
    p.add_argument("--d-lon", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", type=float, default=None, help="preference in [0, 1]")
    group.add_argument("--k", type=int, default=None, help="number of alpha-spread routes")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("serve", help="HTTP query service for the map client")
    p.add_argument("--walk-graph", default=None)
    p.add_argument("--bike-graph", default=None)
    p.add_argument("--bind", default=None, help=f"host:port (default {DEFAULT_BIND}, env {BIND_ENV_VAR})")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
