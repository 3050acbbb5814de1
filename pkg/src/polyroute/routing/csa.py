"""Connection scan: earliest-arrival queries over a timetable.

Connections are examined ascending by departure time, starting from the
first one departing at or after the query time (binary search).  A
connection is used when its trip was boarded before or the stop was
reached early enough to transfer; each improvement relaxes the outgoing
footpaths.  The scan stops once a connection departs after the best
known arrival at the target.

The reported arrival at the target includes the target's self-loop
footpath (the egress transfer), matching the model's transfer buffers;
``include_final_transfer=False`` reports the raw vehicle arrival
instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from ..model.timetable import Connection, Footpath, StopId, Timetable, TripId


class UnknownStopError(KeyError):
    pass


@dataclass(frozen=True)
class TripLeg:
    trip: TripId
    connections: tuple[Connection, ...]  # boarded segment, in ride order

    @property
    def dep_stop(self) -> StopId:
        return self.connections[0].dep_stop

    @property
    def arr_stop(self) -> StopId:
        return self.connections[-1].arr_stop

    @property
    def departure(self) -> int:
        return self.connections[0].dep_time

    @property
    def arrival(self) -> int:
        return self.connections[-1].arr_time


@dataclass(frozen=True)
class FootLeg:
    footpath: Footpath
    departure: int
    arrival: int

    @property
    def dep_stop(self) -> StopId:
        return self.footpath.dep_stop

    @property
    def arr_stop(self) -> StopId:
        return self.footpath.arr_stop


Leg = Union[TripLeg, FootLeg]


@dataclass(frozen=True)
class Journey:
    legs: tuple[Leg, ...]
    departure: int
    arrival: int


@dataclass
class CsaStats:
    scanned_connections: int = 0


@dataclass
class CsaResult:
    arrival: Optional[int]
    journey: Optional[Journey]
    stats: CsaStats = field(default_factory=CsaStats)

    @property
    def reachable(self) -> bool:
        return self.arrival is not None


def csa_query(
    tt: Timetable,
    source: StopId,
    target: StopId,
    departure: int,
    include_final_transfer: bool = True,
) -> CsaResult:
    if source not in tt.stops:
        raise UnknownStopError(source)
    if target not in tt.stops:
        raise UnknownStopError(target)

    best: dict[StopId, float] = {}  # S: best arrival per stop
    boarded: dict[TripId, Connection] = {}  # T: first used connection per trip
    # J: (enter, exit, footpath) parent pointer per stop
    parent: dict[StopId, tuple[Optional[Connection], Optional[Connection], Footpath]] = {}
    stats = CsaStats()

    # raw vehicle arrival at the target, without its egress self-loop
    pure_best: float = departure if source == target else math.inf
    pure_parent: Optional[tuple[Optional[Connection], Optional[Connection], Optional[Footpath]]] = None

    for f in tt.footpaths_from(source):
        arr = departure + f.duration
        if arr < best.get(f.arr_stop, math.inf):
            best[f.arr_stop] = arr
            parent[f.arr_stop] = (None, None, f)
        if f.arr_stop == target and source != target and arr < pure_best:
            pure_best = arr
            pure_parent = (None, None, f)

    start = tt.first_connection_at_or_after(departure)
    target_best = best.get(target, math.inf)
    for i in range(start, len(tt.connections)):
        c = tt.connections[i]
        if c.dep_time >= target_best:
            break
        stats.scanned_connections += 1
        if c.trip in boarded or c.dep_time >= best.get(c.dep_stop, math.inf):
            if c.trip not in boarded:
                boarded[c.trip] = c
            if c.arr_time < best.get(c.arr_stop, math.inf):
                enter = boarded[c.trip]
                for f in tt.footpaths_from(c.arr_stop):
                    arr = c.arr_time + f.duration
                    if arr < best.get(f.arr_stop, math.inf):
                        best[f.arr_stop] = arr
                        parent[f.arr_stop] = (enter, c, f)
                        if f.arr_stop == target:
                            target_best = arr
                    if f.arr_stop == target:
                        pure = c.arr_time if c.arr_stop == target else arr
                        if pure < pure_best:
                            pure_best = pure
                            pure_parent = (
                                enter,
                                c,
                                None if c.arr_stop == target else f,
                            )

    if include_final_transfer:
        if target not in best:
            return CsaResult(None, None, stats)
        arrival = int(best[target])
        journey = _extract_journey(tt, parent, target, departure, arrival)
        return CsaResult(arrival, journey, stats)

    if math.isinf(pure_best):
        return CsaResult(None, None, stats)
    arrival = int(pure_best)
    journey = _extract_pure_journey(tt, parent, pure_parent, departure, arrival)
    return CsaResult(arrival, journey, stats)


def _trip_segment(tt: Timetable, enter: Connection, exit_: Connection) -> TripLeg:
    conns = tt.trip_connections(enter.trip)
    i = conns.index(enter)
    j = conns.index(exit_)
    return TripLeg(enter.trip, tuple(conns[i : j + 1]))


def _extract_journey(
    tt: Timetable,
    parent: dict,
    target: StopId,
    departure: int,
    arrival: int,
) -> Journey:
    """Backtrack the parent pointers from the target to the source's
    initial footpath, then assign times on a forward pass."""
    raw: list[Union[TripLeg, Footpath]] = []
    u = target
    while True:
        enter, exit_, f = parent[u]
        if enter is None:
            raw.append(f)
            break
        raw.append(f)
        raw.append(_trip_segment(tt, enter, exit_))
        u = enter.dep_stop
    raw.reverse()
    return Journey(tuple(_assign_times(raw, departure)), departure, arrival)


def _extract_pure_journey(
    tt: Timetable,
    parent: dict,
    pure_parent,
    departure: int,
    arrival: int,
) -> Journey:
    if pure_parent is None:  # source == target, no travel needed
        return Journey((), departure, arrival)
    enter, exit_, f = pure_parent
    raw: list[Union[TripLeg, Footpath]] = []
    if enter is None:
        raw.append(f)
    else:
        if f is not None:
            raw.append(f)
        raw.append(_trip_segment(tt, enter, exit_))
        u = enter.dep_stop
        while True:
            p_enter, p_exit, p_f = parent[u]
            if p_enter is None:
                raw.append(p_f)
                break
            raw.append(p_f)
            raw.append(_trip_segment(tt, p_enter, p_exit))
            u = p_enter.dep_stop
    raw.reverse()
    return Journey(tuple(_assign_times(raw, departure)), departure, arrival)


def _assign_times(raw: list, departure: int) -> list[Leg]:
    legs: list[Leg] = []
    clock = departure
    for item in raw:
        if isinstance(item, TripLeg):
            legs.append(item)
            clock = item.arrival
        else:
            legs.append(FootLeg(item, clock, clock + item.duration))
            clock = clock + item.duration
    return legs
