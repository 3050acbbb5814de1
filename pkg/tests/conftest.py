from __future__ import annotations

import textwrap
from pathlib import Path

import pytest

from polyroute.geo import GeoPoint
from polyroute.model.modes import TransportMode
from polyroute.model.road import RoadEdge, RoadGraph
from polyroute.model.spatial import NearestNodeIndex
from polyroute.model.timetable import Connection, Footpath, Timetable
from polyroute.model.transit import TripEvent, assemble_transit_graph

OSM_SAMPLE = """<?xml version='1.0' encoding='UTF-8'?>
<osm version="0.6">
  <bounds minlon="7.253190" minlat="47.299090" maxlon="9.246965" maxlat="48.751520"/>
  <node id="29764598" lat="47.8512831" lon="7.9230269"/>
  <node id="669209525" lat="47.8513215" lon="7.9231227"/>
  <node id="3993821274" lat="47.8513342" lon="7.923183"/>
  <node id="832450227" lat="47.8157938" lon="8.8487527">
    <tag k="highway" v="motorway_junction"/>
    <tag k="name" v="Kreuz Hegau"/>
  </node>
  <node id="100036455" lat="47.5728421" lon="8.0365409">
    <tag k="name" v="Niederhof"/>
    <tag k="traffic_sign" v="city_limit"/>
  </node>
  <way id="29764598">
    <nd ref="669209525"/>
    <nd ref="3993821274"/>
    <tag k="highway" v="motorway"/>
    <tag k="oneway" v="yes"/>
  </way>
  <relation id="56688">
    <member type="node" ref="29764598" role=""/>
    <member type="node" ref="669209525" role=""/>
    <member type="way" ref="29764598" role=""/>
    <tag k="name" v="Bus line 1"/>
    <tag k="network" v="VVW"/>
    <tag k="ref" v="1"/>
    <tag k="route" v="bus"/>
    <tag k="type" v="route"/>
  </relation>
</osm>
"""


@pytest.fixture
def osm_sample_path(tmp_path: Path) -> Path:
    path = tmp_path / "sample.osm"
    path.write_text(OSM_SAMPLE)
    return path


GTFS_TABLES_CORRECTED = {
    "agency.txt": """\
        agency_id, agency_name, agency_url, agency_timezone, agency_phone, agency_lang
        FunBus, The Fun Bus, , , (310) 555-0222, en
        """,
    "routes.txt": """\
        route_id, route_short_name, route_long_name, route_desc, route_type
        A, 17, Mission, From lower Mission to Downtown., 3
        """,
    "trips.txt": """\
        route_id, service_id, trip_id, trip_headsign, block_id
        A, WE, AWE1, Downtown, 1
        A, WE, AWE2, Downtown, 2
        """,
    "stop_times.txt": """\
        trip_id, arrival_time, departure_time, stop_id, stop_sequence, pickup_type, drop_off_type
        AWE1, 0:06:10, 0:06:10, S1, 1, 0, 0
        AWE1, 0:06:20, 0:06:30, S3, 3, 0, 0
        AWE1, 0:06:45, 0:06:45, S6, 5, 0, 0
        AWE2, 0:06:10, 0:06:10, S1, 1, 0, 0
        AWE2, 0:06:20, 0:06:20, S3, 3, 0, 0
        AWE2, 0:06:45, 0:06:45, S6, 6, 0, 0
        """,
    "stops.txt": """\
        stop_id, stop_name, stop_desc, stop_lat, stop_lon, stop_url, location_type, parent_station
        S1, Mission St. & Silver Ave., , 37.728631, -122.431282, , ,
        S3, Mission St. & 24th St., , 37.75223, -122.418581, , ,
        S6, Mission St. & 15th St., , 37.766629, -122.419782, , ,
        """,
    "calendar.txt": """\
        service_id, monday, tuesday, wednesday, thursday, friday, saturday, sunday, start_date, end_date
        WE, 0, 0, 0, 0, 0, 1, 1, 20060701, 20060731
        WD, 1, 1, 1, 1, 1, 0, 0, 20060701, 20060731
        """,
    "transfers.txt": """\
        from_stop_id, to_stop_id, transfer_type, min_transfer_time
        S3, S6, 2, 300
        S6, S3, 3, 180
        """,
}


def write_gtfs(directory: Path, tables: dict[str, str]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    for name, content in tables.items():
        (directory / name).write_text(textwrap.dedent(content))
    return directory


@pytest.fixture
def gtfs_sample_dir(tmp_path: Path) -> Path:
    return write_gtfs(tmp_path / "gtfs", GTFS_TABLES_CORRECTED)


@pytest.fixture
def gtfs_uncorrected_dir(tmp_path: Path) -> Path:
    tables = dict(GTFS_TABLES_CORRECTED)
    tables["stop_times.txt"] = GTFS_TABLES_CORRECTED["stop_times.txt"].replace("AWE2", "AWD1")
    return write_gtfs(tmp_path / "gtfs_raw", tables)


# -- two road clusters joined by a slow road and a fast rail line ---------


ALL_ROAD = frozenset({TransportMode.FOOT, TransportMode.BIKE, TransportMode.CAR})


def _road_edge(g: RoadGraph, a, b) -> None:
    from polyroute.geo import as_the_crow_flies

    d = as_the_crow_flies(g.point(a), g.point(b))
    speeds = {TransportMode.CAR: 50.0, TransportMode.BIKE: 14.0, TransportMode.FOOT: 5.0}
    g.add_edge(RoadEdge(a, b, d, ALL_ROAD, dict(speeds)))
    g.add_edge(RoadEdge(b, a, d, ALL_ROAD, dict(speeds)))


class TwoClusterFixture:
    """Road clusters A and B, ~45 km apart, joined by one slow road and a
    fast train line; transit should win the crossing."""

    def __init__(self) -> None:
        road = RoadGraph()
        coords = {
            "a0": (48.000, 7.800),
            "a1": (48.000, 7.810),
            "a2": (48.000, 7.820),
            "b0": (48.000, 8.400),
            "b1": (48.000, 8.410),
            "b2": (48.000, 8.420),
        }
        for node, (lat, lng) in coords.items():
            road.add_node(node, GeoPoint.from_degrees(lat, lng))
        for a, b in [("a0", "a1"), ("a1", "a2"), ("b0", "b1"), ("b1", "b2"), ("a2", "b0")]:
            _road_edge(road, a, b)
        self.road = road

        self.stop_points = {
            "SA1": GeoPoint.from_degrees(48.0001, 7.8001),
            "SA2": GeoPoint.from_degrees(48.0001, 7.8101),
            "SB1": GeoPoint.from_degrees(48.0001, 8.4201),
            "SB2": GeoPoint.from_degrees(48.0001, 8.4101),
        }
        noon = 12 * 3600

        def hm(h, m):
            return h * 3600 + m * 60

        self.trip_events = {
            "T1": [
                TripEvent("SA1", None, hm(12, 10)),
                TripEvent("SB1", hm(12, 25), None),
            ],
            "T2": [
                TripEvent("SA2", None, hm(12, 30)),
                TripEvent("SB2", hm(12, 45), None),
            ],
            "T3": [
                TripEvent("SB1", None, hm(13, 0)),
                TripEvent("SA1", hm(13, 15), None),
            ],
            "T4": [
                TripEvent("SA1", None, hm(13, 10)),
                TripEvent("SB1", hm(13, 25), None),
            ],
        }
        connections = []
        for trip, events in self.trip_events.items():
            for x, y in zip(events, events[1:]):
                connections.append(
                    Connection(x.stop, y.stop, x.departure, y.arrival, trip)
                )
        footpaths = [Footpath(s, 300, s) for s in self.stop_points]
        self.timetable = Timetable(
            stops=dict(self.stop_points),
            trips=tuple(self.trip_events),
            connections=tuple(connections),
            footpaths=tuple(footpaths),
        )
        self.transit = assemble_transit_graph(dict(self.stop_points), self.trip_events, 300)
        self.road_index = NearestNodeIndex.build(
            (n, road.point(n)) for n in road.nodes()
        )
        self.stop_index = NearestNodeIndex.build(self.stop_points.items())
        self.stop_link = {
            s: self.road_index.nearest(p) for s, p in self.stop_points.items()
        }
        self.departure = noon


@pytest.fixture(scope="session")
def two_clusters() -> TwoClusterFixture:
    return TwoClusterFixture()
