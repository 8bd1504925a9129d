"""Geographic primitives shared by the tile, graph and routing layers."""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0
EQUATOR_CIRCUMFERENCE_M = 40_075_017.0


@dataclass(frozen=True, order=True)
class GeoPoint:
    """A WGS84 coordinate in decimal degrees, validated on construction."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValueError(f"non-finite coordinate ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude {self.lon} outside [-180, 180]")


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters on a sphere of radius 6,371,000 m."""
    phi_a = math.radians(a.lat)
    phi_b = math.radians(b.lat)
    half_dphi = (phi_b - phi_a) / 2.0
    half_dlam = math.radians(b.lon - a.lon) / 2.0
    h = math.sin(half_dphi) ** 2 + math.cos(phi_a) * math.cos(phi_b) * math.sin(half_dlam) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def meters_per_degree_lat() -> float:
    return EQUATOR_CIRCUMFERENCE_M / 360.0


def meters_per_degree_lon(lat: float) -> float:
    """Ground meters per degree of longitude at the given latitude."""
    return EQUATOR_CIRCUMFERENCE_M * math.cos(math.radians(lat)) / 360.0
