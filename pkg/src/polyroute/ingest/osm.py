"""OSM XML ingestion: tag filtering and road-graph construction.

Ways are read first and filtered by keep/drop tag pairs; nodes are read
in a second pass and only kept when referenced by a surviving way.
Consecutive node pairs of a way become edges, one direction for positive
``oneway`` tags, both otherwise.  Relations are discarded entirely.
"""
from __future__ import annotations

import io
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Union

from ..geo import GeoPoint, as_the_crow_flies
from ..model.modes import TransportMode
from ..model.road import RoadEdge, RoadGraph

logger = logging.getLogger(__name__)


class OsmParseError(ValueError):
    pass


@dataclass(frozen=True)
class OsmFilter:
    keep: frozenset[tuple[str, str]]
    drop: frozenset[tuple[str, str]]


# Default way filter: highway classes worth routing on, plus the two
# non-standard pairs shipped with the reference filter, minus anything
# tagged as an area, building or unusable road.
DEFAULT_FILTER = OsmFilter(
    keep=frozenset(
        [
            ("highway", "motorway"),
            ("highway", "trunk"),
            ("highway", "primary"),
            ("highway", "secondary"),
            ("highway", "tertiary"),
            ("highway", "residential"),
            ("highway", "living_street"),
            ("highway", "unclassified"),
            ("highway", "cycleway"),
            ("highway", "motorway_link"),
            ("highway", "trunk_link"),
            ("highway", "primary_link"),
            ("highway", "secondary_link"),
            ("highway", "tertiary_link"),
            ("highway", "residential_link"),
            ("way", "primary"),
            ("way", "seconday"),
        ]
    ),
    drop=frozenset(
        [
            ("area", "yes"),
            ("train", "yes"),
            ("access", "no"),
            ("type", "multipolygon"),
            ("railway", "platform"),
            ("railway", "station"),
            ("highway", "proposed"),
            ("highway", "construction"),
            ("building", "yes"),
            ("building", "train_station"),
        ]
    ),
)

# average speed in km/h per highway tag value
DEFAULT_SPEEDS: dict[str, float] = {
    "motorway": 120,
    "trunk": 110,
    "primary": 100,
    "secondary": 80,
    "tertiary": 70,
    "motorway_link": 50,
    "trunk_link": 50,
    "primary_link": 50,
    "secondary_link": 50,
    "residential": 50,
    "unclassified": 40,
    "unsurfaced": 30,
    "road": 20,
    "cycleway": 14,
    "living_street": 7,
    "service": 7,
}

FALLBACK_SPEED_KMH = 50.0

BIKE_SPEED_KMH = 14.0
FOOT_SPEED_KMH = 5.0

_ONEWAY_POSITIVE = {"yes", "true", "1"}
_CAR_ONLY = {"motorway", "trunk", "motorway_link", "trunk_link"}


def filter_way(tags: dict[str, str], way_filter: OsmFilter) -> bool:
    """A way passes with at least one keep pair and no drop pair."""
    pairs = tags.items()
    if not any(p in way_filter.keep for p in pairs):
        return False
    return not any(p in way_filter.drop for p in pairs)


def parse_filter_file(text: str) -> OsmFilter:
    """Parse the plain-text filter dialect: ``--KEEP`` / ``--DROP``
    section headers, ``key=value`` lines, ``#`` comments."""
    keep: set[tuple[str, str]] = set()
    drop: set[tuple[str, str]] = set()
    section: set[tuple[str, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "--KEEP":
            section = keep
            continue
        if line == "--DROP":
            section = drop
            continue
        if "=" not in line:
            raise OsmParseError(f"filter line {lineno}: expected key=value, got {line!r}")
        if section is None:
            raise OsmParseError(f"filter line {lineno}: pair before any section header")
        key, _, value = line.partition("=")
        section.add((key.strip(), value.strip()))
    return OsmFilter(keep=frozenset(keep), drop=frozenset(drop))


@dataclass
class _Way:
    node_refs: list[int]
    highway: str | None
    maxspeed_kmh: float | None
    oneway: bool
    name: str | None


@dataclass
class OsmParseResult:
    graph: RoadGraph
    warnings: list[str] = field(default_factory=list)
    kept_ways: int = 0
    dropped_ways: int = 0


def _mode_profile(highway: str | None, car_speed: float) -> tuple[frozenset[TransportMode], dict[TransportMode, float]]:
    if highway == "cycleway":
        modes = frozenset({TransportMode.FOOT, TransportMode.BIKE})
    elif highway in _CAR_ONLY:
        modes = frozenset({TransportMode.CAR})
    else:
        modes = frozenset({TransportMode.FOOT, TransportMode.BIKE, TransportMode.CAR})
    speeds: dict[TransportMode, float] = {}
    if TransportMode.CAR in modes:
        speeds[TransportMode.CAR] = car_speed
    if TransportMode.BIKE in modes:
        speeds[TransportMode.BIKE] = min(BIKE_SPEED_KMH, car_speed)
    if TransportMode.FOOT in modes:
        speeds[TransportMode.FOOT] = min(FOOT_SPEED_KMH, car_speed)
    return modes, speeds


def _iter_elements(source: BinaryIO, tag_names: tuple[str, ...]):
    try:
        for _, elem in ET.iterparse(source, events=("end",)):
            if elem.tag in tag_names:
                yield elem
            if elem.tag in ("node", "way", "relation"):
                elem.clear()
    except ET.ParseError as exc:
        raise OsmParseError(f"malformed OSM XML: {exc}") from exc


def _open_source(source: Union[str, Path, BinaryIO, bytes]) -> tuple[BinaryIO, bool]:
    if isinstance(source, (str, Path)):
        return open(source, "rb"), True
    if isinstance(source, bytes):
        return io.BytesIO(source), False
    return source, False


def parse_osm(
    source: Union[str, Path, BinaryIO, bytes],
    way_filter: OsmFilter = DEFAULT_FILTER,
    speeds: dict[str, float] | None = None,
    fallback_speed_kmh: float = FALLBACK_SPEED_KMH,
) -> OsmParseResult:
    """Build a multi-modal road graph from uncompressed OSM XML.

    Two streaming passes: one over the ways, one over the nodes; a
    non-seekable stream is buffered.  Edge distances come from the
    coordinate metric; car speeds from the ``maxspeed`` tag when numeric,
    the speed table otherwise.
    """
    if speeds is None:
        speeds = DEFAULT_SPEEDS
    stream, owned = _open_source(source)
    if not (hasattr(stream, "seek") and stream.seekable()):
        stream, owned = io.BytesIO(stream.read()), owned

    result = OsmParseResult(graph=RoadGraph())
    ways: list[_Way] = []
    needed_nodes: set[int] = set()
    try:
        for elem in _iter_elements(stream, ("way",)):
            tags = {t.get("k"): t.get("v") for t in elem.findall("tag")}
            if not filter_way(tags, way_filter):
                result.dropped_ways += 1
                continue
            refs = [int(nd.get("ref")) for nd in elem.findall("nd")]
            maxspeed = None
            raw_maxspeed = tags.get("maxspeed")
            if raw_maxspeed is not None:
                try:
                    maxspeed = float(raw_maxspeed)
                except ValueError:
                    result.warnings.append(
                        f"way {elem.get('id')}: non-numeric maxspeed {raw_maxspeed!r} ignored"
                    )
            ways.append(
                _Way(
                    node_refs=refs,
                    highway=tags.get("highway"),
                    maxspeed_kmh=maxspeed,
                    oneway=tags.get("oneway", "no").lower() in _ONEWAY_POSITIVE,
                    name=tags.get("name"),
                )
            )
            needed_nodes.update(refs)
            result.kept_ways += 1

        stream.seek(0)
        coords: dict[int, GeoPoint] = {}
        for elem in _iter_elements(stream, ("node",)):
            node_id = int(elem.get("id"))
            if node_id in needed_nodes:
                try:
                    coords[node_id] = GeoPoint.from_degrees(
                        float(elem.get("lat")), float(elem.get("lon"))
                    )
                except (TypeError, ValueError) as exc:
                    result.warnings.append(f"node {node_id}: bad coordinate ({exc})")
    finally:
        if owned:
            stream.close()

    graph = result.graph
    for node_id, point in coords.items():
        graph.add_node(node_id, point)

    for way in ways:
        car_speed = way.maxspeed_kmh
        if car_speed is None:
            car_speed = speeds.get(way.highway or "")
            if car_speed is None:
                result.warnings.append(
                    f"highway={way.highway!r} has no table speed; "
                    f"using fallback {fallback_speed_kmh} km/h"
                )
                car_speed = fallback_speed_kmh
        modes, mode_speeds = _mode_profile(way.highway, car_speed)
        for a, b in zip(way.node_refs, way.node_refs[1:]):
            if a not in coords or b not in coords:
                result.warnings.append(
                    f"way segment {a}->{b} references an undefined node; skipped"
                )
                continue
            distance = as_the_crow_flies(coords[a], coords[b])
            graph.add_edge(RoadEdge(a, b, distance, modes, dict(mode_speeds), way.name))
            if not way.oneway:
                graph.add_edge(RoadEdge(b, a, distance, modes, dict(mode_speeds), way.name))

    if result.warnings:
        for msg in result.warnings:
            logger.warning("%s", msg)
    return result
