"""
The HTTP query service
======================

A stateless JSON endpoint exposes the planner to map clients.  This script
starts the server on an ephemeral port, issues the two supported query
shapes (fixed alpha, top-k), and shuts down.
"""

import json
import threading
import urllib.request

from shade_routing import GeoPoint, create_server
from shade_routing.graph import EdgeWeights, LayeredGraph

points = {1: GeoPoint(0.0, 0.0), 2: GeoPoint(0.0009, 0.0004), 3: GeoPoint(0.0018, 0.0)}
edges = {
    (1, 2): EdgeWeights(109.0, 0.9),
    (2, 3): EdgeWeights(109.0, 0.9),
    (1, 3): EdgeWeights(200.0, 0.0),
}
server = create_server({"walk": LayeredGraph("walk", points, edges)}, "127.0.0.1", 0)
threading.Thread(target=server.serve_forever, daemon=True).start()
host, port = server.server_address[:2]
base = f"http://{host}:{port}"
print("serving on", base)


def get(path: str) -> dict:
    with urllib.request.urlopen(base + path) as resp:
        return json.load(resp)


print("\nGET /health")
print(json.dumps(get("/health"), indent=2))

print("\nGET /route (alpha = 1, the most shaded)")
route = get("/route?o_lat=0&o_lon=0&d_lat=0.0018&d_lon=0&mode=walk&alpha=1")
print(json.dumps(route, indent=2))

print("\nGET /route (k = 2): legend pairs each route with its role")
topk = get("/route?o_lat=0&o_lon=0&d_lat=0.0018&d_lon=0&mode=walk&k=2")
for label, r in zip(topk["legend"], topk["routes"]):
    print(f"  {label:12s} length {r['total_length_m']:6.1f} m, exposed {r['total_exposed_m']:6.1f} m")

server.shutdown()
server.server_close()
print("\nserver stopped")
