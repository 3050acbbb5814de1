"""Earliest-arrival queries on the time-expanded transit graph.

Being at a stop at time tau means the first boardable departure is at
tau plus the transfer buffer, exactly like the timetable's self-loop
footpath.  All departure nodes from that time on seed the search with
their waiting time; edge weights are time differences, so the distance
to any node is its event time minus tau, and the first settled arrival
node at the target stop is the earliest one.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Optional

from ..model.timetable import StopId
from ..model.transit import TransitGraph
from .csa import UnknownStopError
from .graph import SearchStats, _run


@dataclass
class TransitArrival:
    arrival: Optional[int]  # event time of the earliest reachable arrival node
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def reachable(self) -> bool:
        return self.arrival is not None


def transit_earliest_arrival(
    tg: TransitGraph, source: StopId, target: StopId, departure: int
) -> TransitArrival:
    if source not in tg.stops:
        raise UnknownStopError(source)
    if target not in tg.stops:
        raise UnknownStopError(target)

    dep_ids = tg.departures_by_stop.get(source, [])
    boardable_from = departure + tg.transfer_duration
    times = [tg.nodes[i].time for i in dep_ids]
    first = bisect.bisect_left(times, boardable_from)
    sources = {i: float(tg.nodes[i].time - departure) for i in dep_ids[first:]}
    if not sources:
        return TransitArrival(None)

    targets = set(tg.arrivals_by_stop.get(target, []))
    if not targets:
        return TransitArrival(None)

    _, _, stats, hit = _run(tg, sources, targets, None, None)
    if hit is None:
        return TransitArrival(None, stats)
    return TransitArrival(tg.nodes[hit].time, stats)
