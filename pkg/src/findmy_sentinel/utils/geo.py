"""Great-circle distance and small local-offset helpers."""

from math import asin, cos, degrees, radians, sin, sqrt

from findmy_sentinel.models.common import GeoPoint

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in metres."""
    lat1, lon1, lat2, lon2 = map(radians, (a.lat, a.lon, b.lat, b.lon))
    dlat = lat2 - lat1
    dlon = lon2 - lon1

    h = sin(dlat / 2) ** 2 + cos(lat1) * cos(lat2) * sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_M * asin(min(1.0, sqrt(h)))


def offset_point(origin: GeoPoint, east_m: float = 0.0, north_m: float = 0.0) -> GeoPoint:
    """Move ``origin`` by a local east/north offset in metres.

    Equirectangular approximation; accurate to well under a metre for the
    few-kilometre offsets used by scenario routes.
    """
    lat = origin.lat + degrees(north_m / EARTH_RADIUS_M)
    lon = origin.lon + degrees(east_m / (EARTH_RADIUS_M * cos(radians(origin.lat))))
    return GeoPoint(lat=lat, lon=lon)


def interpolate(a: GeoPoint, b: GeoPoint, fraction: float) -> GeoPoint:
    """Linear interpolation between two nearby points."""
    return GeoPoint(
        lat=a.lat + (b.lat - a.lat) * fraction,
        lon=a.lon + (b.lon - a.lon) * fraction,
    )
