"""polyroute: multi-modal route planning over OSM road networks and GTFS
transit feeds."""

from .geo import GeoPoint, as_the_crow_flies, degrees_to_radians

__version__ = "0.1.0"

__all__ = ["GeoPoint", "as_the_crow_flies", "degrees_to_radians", "__version__"]
