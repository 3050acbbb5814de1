"""Geographic coordinates and the as-the-crow-flies distance metric.

All coordinates are stored in radians; degrees appear only at external
boundaries (OSM/GTFS files, the HTTP API).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

_HALF_PI = math.pi / 2.0


def degrees_to_radians(deg: float) -> float:
    return deg * math.pi / 180.0


def radians_to_degrees(rad: float) -> float:
    return rad * 180.0 / math.pi


@dataclass(frozen=True, slots=True)
class GeoPoint:
    """A latitude/longitude pair in radians.

    Valid range: lat in (-pi/2, pi/2), lng in [-pi, pi).  Out-of-range
    values are rejected rather than wrapped, so ingest bugs surface early.
    """

    lat: float
    lng: float

    def __post_init__(self) -> None:
        if not (-_HALF_PI < self.lat < _HALF_PI):
            raise ValueError(f"latitude {self.lat} rad outside (-pi/2, pi/2)")
        if not (-math.pi <= self.lng < math.pi):
            raise ValueError(f"longitude {self.lng} rad outside [-pi, pi)")

    @classmethod
    def from_degrees(cls, lat_deg: float, lng_deg: float) -> "GeoPoint":
        return cls(degrees_to_radians(lat_deg), degrees_to_radians(lng_deg))

    @property
    def lat_deg(self) -> float:
        return radians_to_degrees(self.lat)

    @property
    def lng_deg(self) -> float:
        return radians_to_degrees(self.lng)


def as_the_crow_flies(a: GeoPoint, b: GeoPoint) -> float:
    """Equirectangular-projection distance between two points, in meters."""
    dx = (b.lng - a.lng) * math.cos((a.lat + b.lat) / 2.0)
    dy = b.lat - a.lat
    return math.sqrt(dx * dx + dy * dy) * EARTH_RADIUS_M
