"""Timetable: the non-graph transit representation scanned by CSA.

Connections are kept sorted ascending by departure time.  Footpaths must
be transitively closed, satisfy the triangle inequality and include a
self-loop per stop; ``validate_timetable`` reports every violation.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..geo import GeoPoint

StopId = str
TripId = str


@dataclass(frozen=True, slots=True)
class Connection:
    dep_stop: StopId
    arr_stop: StopId
    dep_time: int  # seconds since service-day midnight; may exceed 86400
    arr_time: int
    trip: TripId


@dataclass(frozen=True, slots=True)
class Footpath:
    dep_stop: StopId
    duration: int  # seconds
    arr_stop: StopId


@dataclass
class Timetable:
    stops: dict[StopId, GeoPoint]
    trips: tuple[TripId, ...]
    connections: tuple[Connection, ...]  # ascending by dep_time
    footpaths: tuple[Footpath, ...]

    _footpaths_from: dict[StopId, list[Footpath]] = field(init=False, repr=False)
    _dep_times: list[int] = field(init=False, repr=False)
    _trip_connections: dict[TripId, list[Connection]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.connections = tuple(sorted(self.connections, key=lambda c: c.dep_time))
        by_stop: dict[StopId, list[Footpath]] = {}
        for f in self.footpaths:
            by_stop.setdefault(f.dep_stop, []).append(f)
        self._footpaths_from = by_stop
        self._dep_times = [c.dep_time for c in self.connections]
        by_trip: dict[TripId, list[Connection]] = {}
        for c in self.connections:
            by_trip.setdefault(c.trip, []).append(c)
        self._trip_connections = by_trip

    def footpaths_from(self, stop: StopId) -> list[Footpath]:
        return self._footpaths_from.get(stop, [])

    def first_connection_at_or_after(self, departure: int) -> int:
        """Index of the first connection departing at or after ``departure``."""
        return bisect.bisect_left(self._dep_times, departure)

    def trip_connections(self, trip: TripId) -> list[Connection]:
        return self._trip_connections.get(trip, [])


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_timetable(tt: Timetable) -> list[Violation]:
    """Check connection invariants and the three footpath properties.

    Returns an empty list iff the timetable is well formed; every
    violation names the offending tuple(s).
    """
    violations: list[Violation] = []

    prev_dep: Optional[int] = None
    for c in tt.connections:
        if c.dep_time > c.arr_time:
            violations.append(
                Violation("connection-times", f"{c} departs after it arrives")
            )
        if c.dep_stop == c.arr_stop:
            violations.append(
                Violation("connection-loop", f"{c} departs and arrives at the same stop")
            )
        if prev_dep is not None and c.dep_time < prev_dep:
            violations.append(
                Violation("connection-order", f"{c} breaks ascending departure order")
            )
        prev_dep = c.dep_time

    by_pair: dict[tuple[StopId, StopId], int] = {}
    for f in tt.footpaths:
        key = (f.dep_stop, f.arr_stop)
        if key not in by_pair or f.duration < by_pair[key]:
            by_pair[key] = f.duration

    for stop in tt.stops:
        if (stop, stop) not in by_pair:
            violations.append(
                Violation("footpath-self-loop", f"stop {stop} has no self-loop footpath")
            )

    for (a, b), d1 in by_pair.items():
        for f2 in tt.footpaths_from(b):
            c = f2.arr_stop
            d3 = by_pair.get((a, c))
            if d3 is None:
                violations.append(
                    Violation(
                        "footpath-closure",
                        f"({a}, {d1}, {b}) and ({b}, {f2.duration}, {c}) "
                        f"have no closing footpath ({a}, ·, {c})",
                    )
                )
            elif d3 > d1 + f2.duration:
                violations.append(
                    Violation(
                        "footpath-triangle",
                        f"({a}, {d3}, {c}) is longer than "
                        f"({a}, {d1}, {b}) + ({b}, {f2.duration}, {c})",
                    )
                )
    return violations


def make_timetable(
    stops: dict[StopId, GeoPoint],
    trips: Iterable[TripId],
    connections: Iterable[Connection],
    footpaths: Iterable[Footpath],
) -> Timetable:
    return Timetable(
        stops=dict(stops),
        trips=tuple(trips),
        connections=tuple(connections),
        footpaths=tuple(footpaths),
    )
