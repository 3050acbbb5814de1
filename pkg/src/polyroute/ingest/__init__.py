from .osm import (
    DEFAULT_FILTER,
    DEFAULT_SPEEDS,
    FALLBACK_SPEED_KMH,
    OsmFilter,
    OsmParseError,
    OsmParseResult,
    filter_way,
    parse_filter_file,
    parse_osm,
)
from .gtfs import (
    GtfsConfig,
    GtfsError,
    GtfsFeed,
    FootpathExplosionError,
    build_timetable,
    build_transit_graph,
    generate_footpaths,
    parse_gtfs,
    parse_gtfs_time,
)

__all__ = [
    "DEFAULT_FILTER",
    "DEFAULT_SPEEDS",
    "FALLBACK_SPEED_KMH",
    "OsmFilter",
    "OsmParseError",
    "OsmParseResult",
    "filter_way",
    "parse_filter_file",
    "parse_osm",
    "GtfsConfig",
    "GtfsError",
    "GtfsFeed",
    "FootpathExplosionError",
    "build_timetable",
    "build_transit_graph",
    "generate_footpaths",
    "parse_gtfs",
    "parse_gtfs_time",
]
