"""
From OSM XML to walk and bike graphs
====================================

The road network is parsed once; per-mode graphs then admit different
highway classes (a footway is walkable but not bikeable, a cycleway the
reverse), so walk and bike connectivity genuinely differ.
"""

from shade_routing import mode_filter, parse_osm
from shade_routing.osm import mode_access_table

DOC = """<?xml version="1.0"?>
<osm version="0.6">
  <node id="1" lat="0.0000" lon="0.0000"/>
  <node id="2" lat="0.0000" lon="0.0010"/>
  <node id="3" lat="0.0010" lon="0.0010"/>
  <node id="4" lat="0.0010" lon="0.0000"/>
  <way id="1"><nd ref="1"/><nd ref="2"/><tag k="highway" v="footway"/><tag k="name" v="Shade Alley"/></way>
  <way id="2"><nd ref="2"/><nd ref="3"/><tag k="highway" v="cycleway"/></way>
  <way id="3"><nd ref="3"/><nd ref="4"/><tag k="highway" v="residential"/><tag k="name" v="Sunny Ave"/></way>
  <way id="4"><nd ref="4"/><nd ref="1"/><tag k="highway" v="residential"/><tag k="foot" v="no"/></way>
</osm>
"""

net = parse_osm(DOC)
print(f"network: {len(net.nodes)} nodes, {len(net.ways)} highway ways")

for mode in ("walk", "bike"):
    graph = mode_filter(net, mode)
    print(f"\n{mode} graph: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
    for e in graph.edges:
        name = e.way_name or "(unnamed)"
        print(f"  way {e.edge_id[0]} seg {e.edge_id[1]}: {e.u} -> {e.v}  {e.length_m:7.2f} m  {name}")

# The admission policy itself is data, not code:
table = mode_access_table()
print("\nwalkable highway classes:", ", ".join(sorted(table["walk"]["highways"])))
print("bikeable highway classes:", ", ".join(sorted(table["bike"]["highways"])))
