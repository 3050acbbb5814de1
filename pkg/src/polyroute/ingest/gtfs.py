"""GTFS feed ingestion: timetable and time-expanded graph construction.

Reads the mandatory CSV tables of a pre-extracted feed directory,
optionally filters trips by a service date against calendar.txt, groups
stop_times by trip in stop_sequence order, and derives connections as
consecutive stop pairs.  Footpaths connect stops within a configurable
radius, get durations from the coordinate metric floored at the transfer
buffer (given transfer durations are rejected), and are closed
transitively per proximity component.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from datetime import date as Date
from pathlib import Path
from typing import Iterable, Optional

from ..geo import GeoPoint, as_the_crow_flies
from ..model.spatial import NearestNodeIndex
from ..model.timetable import Connection, Footpath, StopId, Timetable, TripId
from ..model.transit import TransitGraph, TripEvent, assemble_transit_graph

logger = logging.getLogger(__name__)

MANDATORY_TABLES = ("agency", "routes", "trips", "stop_times", "stops", "calendar")

KMH_TO_MS = 1.0 / 3.6


class GtfsError(ValueError):
    pass


class FootpathExplosionError(GtfsError):
    """The transitive closure of the proximity footpaths exceeded the cap."""


@dataclass(frozen=True)
class GtfsConfig:
    service_date: Optional[Date] = None
    footpath_radius_m: float = 600.0
    transfer_buffer_s: int = 300
    walk_speed_kmh: float = 5.0
    footpath_cap: int = 2_000_000
    # transfer duration of the time-expanded graph; defaults to the buffer
    transfer_duration_s: Optional[int] = None

    @property
    def transfer_duration(self) -> int:
        return (
            self.transfer_duration_s
            if self.transfer_duration_s is not None
            else self.transfer_buffer_s
        )


@dataclass
class StopTimeRow:
    trip: TripId
    arrival: int
    departure: int
    stop: StopId
    sequence: int


@dataclass
class GtfsFeed:
    stops: dict[StopId, GeoPoint]
    trips: dict[TripId, str]  # trip id -> service id
    stop_times: dict[TripId, list[StopTimeRow]]  # ordered by stop_sequence
    transfers: list[tuple[StopId, StopId, int]]  # (from, to, given duration s)
    warnings: list[str] = field(default_factory=list)


def parse_gtfs_time(value: str) -> int:
    """H:MM:SS or HH:MM:SS to seconds; hours may exceed 23 for overnight
    trips."""
    parts = value.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"bad GTFS time {value!r}")
    h, m, s = (int(p) for p in parts)
    if h < 0 or not (0 <= m < 60) or not (0 <= s < 60):
        raise ValueError(f"bad GTFS time {value!r}")
    return h * 3600 + m * 60 + s


def _read_table(path: Path) -> list[dict[str, str]]:
    # Listing-style feeds pad cells with spaces after commas; strip both
    # header names and values.
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for raw in reader:
            row = {}
            for key, value in raw.items():
                if key is None:  # extra unlabeled cells
                    continue
                row[key.strip()] = (value or "").strip()
            rows.append(row)
        return rows


_WEEKDAY_COLUMNS = (
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
)


def _active_services(rows: list[dict[str, str]], service_date: Date) -> set[str]:
    active: set[str] = set()
    column = _WEEKDAY_COLUMNS[service_date.weekday()]
    stamp = int(service_date.strftime("%Y%m%d"))
    for row in rows:
        try:
            start = int(row["start_date"])
            end = int(row["end_date"])
        except (KeyError, ValueError):
            continue
        if start <= stamp <= end and row.get(column, "0") == "1":
            active.add(row["service_id"])
    return active


def parse_gtfs(directory: str | Path, config: GtfsConfig = GtfsConfig()) -> GtfsFeed:
    directory = Path(directory)
    for table in MANDATORY_TABLES:
        if not (directory / f"{table}.txt").exists():
            raise GtfsError(f"mandatory GTFS table {table}.txt missing in {directory}")

    warnings: list[str] = []

    stops: dict[StopId, GeoPoint] = {}
    for row in _read_table(directory / "stops.txt"):
        try:
            stops[row["stop_id"]] = GeoPoint.from_degrees(
                float(row["stop_lat"]), float(row["stop_lon"])
            )
        except (KeyError, ValueError) as exc:
            warnings.append(f"stops.txt row {row}: dropped ({exc})")

    calendar_rows = _read_table(directory / "calendar.txt")
    active: Optional[set[str]] = None
    if config.service_date is not None:
        active = _active_services(calendar_rows, config.service_date)

    trips: dict[TripId, str] = {}
    all_trip_ids: set[str] = set()
    for row in _read_table(directory / "trips.txt"):
        trip_id = row.get("trip_id")
        service = row.get("service_id", "")
        if not trip_id:
            warnings.append(f"trips.txt row {row}: missing trip_id, dropped")
            continue
        all_trip_ids.add(trip_id)
        if active is not None and service not in active:
            continue
        trips[trip_id] = service

    stop_times: dict[TripId, list[StopTimeRow]] = {}
    for row in _read_table(directory / "stop_times.txt"):
        trip_id = row.get("trip_id", "")
        if trip_id not in trips:
            # rows for date-filtered trips drop silently; rows for trips
            # the feed never declared are feed defects worth flagging
            if trip_id not in all_trip_ids:
                warnings.append(f"stop_times.txt row for unknown trip {trip_id!r}: dropped")
            continue
        stop_id = row.get("stop_id", "")
        if stop_id not in stops:
            warnings.append(f"stop_times.txt row for unknown stop {stop_id!r}: dropped")
            continue
        try:
            arrival = parse_gtfs_time(row["arrival_time"])
            departure = parse_gtfs_time(row["departure_time"])
            sequence = int(row["stop_sequence"])
        except (KeyError, ValueError) as exc:
            warnings.append(f"stop_times.txt row {row}: dropped ({exc})")
            continue
        if departure < arrival:
            warnings.append(
                f"stop_times.txt row {trip_id}/{sequence}: departs before it arrives, dropped"
            )
            continue
        stop_times.setdefault(trip_id, []).append(
            StopTimeRow(trip_id, arrival, departure, stop_id, sequence)
        )
    for rows in stop_times.values():
        rows.sort(key=lambda r: r.sequence)

    transfers: list[tuple[StopId, StopId, int]] = []
    transfers_path = directory / "transfers.txt"
    if transfers_path.exists():
        for row in _read_table(transfers_path):
            src = row.get("from_stop_id", "")
            dst = row.get("to_stop_id", "")
            if src not in stops or dst not in stops:
                warnings.append(f"transfers.txt row {row}: unknown stop, dropped")
                continue
            try:
                duration = int(row.get("min_transfer_time") or 0)
            except ValueError:
                warnings.append(f"transfers.txt row {row}: bad duration, dropped")
                continue
            transfers.append((src, dst, duration))

    for msg in warnings:
        logger.warning("%s", msg)
    return GtfsFeed(stops, trips, stop_times, transfers, warnings)


def generate_footpaths(
    stops: dict[StopId, GeoPoint],
    given_transfers: Iterable[tuple[StopId, StopId, int]],
    radius_m: float,
    buffer_s: int,
    walk_speed_kmh: float,
    cap: int = 2_000_000,
) -> list[Footpath]:
    """Self-loops, proximity pairs and their transitive closure.

    Durations are always derived from the coordinate distance at walking
    speed, floored at the transfer buffer; given transfer durations are
    rejected, though given pairs still seed the closure.  Closure works
    per connected component of the proximity-or-given graph, which is
    transitively closed and triangle-consistent by construction.
    """
    if radius_m <= 0:
        raise ValueError("footpath radius must be > 0")
    if buffer_s < 0:
        raise ValueError("transfer buffer must be >= 0")
    if walk_speed_kmh <= 0:
        raise ValueError("walk speed must be > 0")

    walk_ms = walk_speed_kmh * KMH_TO_MS
    stop_ids = list(stops)

    # union-find over proximity pairs and given transfer pairs
    parent: dict[StopId, StopId] = {s: s for s in stop_ids}

    def find(x: StopId) -> StopId:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: StopId, b: StopId) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    if len(stop_ids) > 256:
        index = NearestNodeIndex.build((s, stops[s]) for s in stop_ids)
        for s in stop_ids:
            for other in index.neighborhood(stops[s], radius_m):
                if other != s:
                    union(s, other)
    else:
        for i, a in enumerate(stop_ids):
            for b in stop_ids[i + 1 :]:
                if as_the_crow_flies(stops[a], stops[b]) <= radius_m:
                    union(a, b)

    for src, dst, _given_duration in given_transfers:
        if src in parent and dst in parent:
            union(src, dst)

    components: dict[StopId, list[StopId]] = {}
    for s in stop_ids:
        components.setdefault(find(s), []).append(s)

    total = sum(len(c) * len(c) for c in components.values())
    if total > cap:
        raise FootpathExplosionError(
            f"footpath closure would create {total} footpaths (cap {cap}); "
            "lower the proximity radius"
        )

    footpaths: list[Footpath] = []
    for members in components.values():
        for a in members:
            for b in members:
                if a == b:
                    footpaths.append(Footpath(a, buffer_s, a))
                else:
                    duration = max(
                        buffer_s,
                        int(math.ceil(as_the_crow_flies(stops[a], stops[b]) / walk_ms)),
                    )
                    footpaths.append(Footpath(a, duration, b))
    return footpaths


def _trip_events(feed: GtfsFeed) -> dict[TripId, list[TripEvent]]:
    events: dict[TripId, list[TripEvent]] = {}
    for trip, rows in feed.stop_times.items():
        if not rows:
            continue
        events[trip] = [TripEvent(r.stop, r.arrival, r.departure) for r in rows]
    return events


def build_timetable(feed: GtfsFeed, config: GtfsConfig = GtfsConfig()) -> Timetable:
    connections: list[Connection] = []
    for trip, rows in feed.stop_times.items():
        for a, b in zip(rows, rows[1:]):
            if a.stop == b.stop:
                feed.warnings.append(
                    f"trip {trip}: consecutive halts at the same stop {a.stop}; skipped"
                )
                continue
            connections.append(Connection(a.stop, b.stop, a.departure, b.arrival, trip))
    footpaths = generate_footpaths(
        feed.stops,
        feed.transfers,
        config.footpath_radius_m,
        config.transfer_buffer_s,
        config.walk_speed_kmh,
        config.footpath_cap,
    )
    return Timetable(
        stops=dict(feed.stops),
        trips=tuple(feed.trips),
        connections=tuple(connections),
        footpaths=tuple(footpaths),
    )


def build_transit_graph(feed: GtfsFeed, config: GtfsConfig = GtfsConfig()) -> TransitGraph:
    return assemble_transit_graph(
        dict(feed.stops), _trip_events(feed), config.transfer_duration
    )
