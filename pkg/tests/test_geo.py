import math
import random

import pytest

from shade_routing.geo import GeoPoint, haversine


def test_haversine_zero_for_identical_points():
    p = GeoPoint(48.85, 2.35)
    assert haversine(p, p) == 0.0


def test_haversine_one_degree_longitude_at_equator():
    # 2 * pi * 6,371,000 / 360, computed by hand
    expected = 111_194.92664455873
    got = haversine(GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0))
    assert got == pytest.approx(expected, abs=0.1)


def test_haversine_symmetric_on_random_pairs():
    rng = random.Random(7)
    for _ in range(100):
        a = GeoPoint(rng.uniform(-80, 80), rng.uniform(-179, 179))
        b = GeoPoint(rng.uniform(-80, 80), rng.uniform(-179, 179))
        assert haversine(a, b) == haversine(b, a)


@pytest.mark.parametrize(
    "lat,lon",
    [(91.0, 0.0), (-90.1, 0.0), (0.0, 180.5), (0.0, -181.0), (math.nan, 0.0), (0.0, math.inf)],
)
def test_geopoint_rejects_out_of_range(lat, lon):
    with pytest.raises(ValueError):
        GeoPoint(lat, lon)
