"""
Preference-weighted route planning
==================================

The planner blends two per-edge objectives, length and sun-exposed length,
with a preference weight alpha: 0 asks for the shortest route, 1 for the
most shaded one.  Sweeping alpha traces the supported trade-off curve, and
the top-k query does exactly that sweep with deduplication.
"""

from shade_routing import GeoPoint, plan, plan_topk, snap
from shade_routing.graph import EdgeWeights, LayeredGraph

# A small neighborhood: a direct sun-baked avenue and a shaded zigzag.
points = {
    1: GeoPoint(0.0000, 0.0000),
    2: GeoPoint(0.0004, 0.0004),
    3: GeoPoint(0.0008, 0.0004),
    4: GeoPoint(0.0012, 0.0000),
    5: GeoPoint(0.0006, -0.0003),
}
edges = {
    (1, 5): EdgeWeights(75.0, 0.05),
    (4, 5): EdgeWeights(75.0, 0.05),   # 1-5-4: shortest, sun-baked
    (1, 2): EdgeWeights(65.0, 0.85),
    (2, 3): EdgeWeights(45.0, 0.95),
    (3, 4): EdgeWeights(65.0, 0.85),   # 1-2-3-4: longest, mostly shaded
    (1, 4): EdgeWeights(160.0, 0.70),  # middle-ground boulevard
}
graph = LayeredGraph("walk", points, edges)

origin = snap(GeoPoint(0.00001, 0.00001), graph)
destination = snap(GeoPoint(0.00119, 0.00001), graph)
print(f"snapped query to vertices {origin} -> {destination}\n")

print("alpha   path         length_m  exposed_m  shade")
for i in range(11):
    alpha = i / 10
    p = plan(graph, origin, destination, alpha)
    path = "-".join(map(str, p.path))
    print(f" {alpha:.1f}   {path:12s} {p.total_length_m:8.1f} {p.total_exposed_m:9.1f}   {p.mean_shade_ratio:4.0%}")

print("\ntop-3 distinct routes:")
for p in plan_topk(graph, origin, destination, 3):
    print(f"  alpha {p.alpha_used:.1f}: {'-'.join(map(str, p.path))}  "
          f"({p.total_length_m:.0f} m, {p.total_exposed_m:.0f} m in the sun)")
