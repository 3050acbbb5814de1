"""Realistic time-expanded transit graph.

Every scheduled stop event expands into arrival/departure nodes; each
arrival spawns a transfer node one buffer later.  Transfer nodes chain
per stop ascending in time, and each departure is boarded from the
latest transfer node not after it.  Edge weights are always the time
difference between their endpoints.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..geo import GeoPoint
from .timetable import StopId, TripId


class EventType(Enum):
    ARRIVAL = "arrival"
    DEPARTURE = "departure"
    TRANSFER = "transfer"


@dataclass(frozen=True, slots=True)
class TransitNode:
    id: int
    stop: StopId
    point: GeoPoint
    time: int
    event: EventType
    trip: Optional[TripId] = None  # None for transfer nodes
    synthetic: bool = False  # leading arrival added for link-graph entry


@dataclass(frozen=True, slots=True)
class TripEvent:
    """One scheduled halt of a trip; first halts may lack an arrival and
    final halts may lack a departure."""

    stop: StopId
    arrival: Optional[int]
    departure: Optional[int]


class TransitGraph:
    def __init__(
        self,
        stops: dict[StopId, GeoPoint],
        trip_events: dict[TripId, list[TripEvent]],
        transfer_duration: int,
    ) -> None:
        self.stops = stops
        self.trip_events = trip_events
        self.transfer_duration = transfer_duration
        self.nodes: list[TransitNode] = []
        self._out: list[list[tuple[int, float]]] = []
        self._in: list[list[tuple[int, float]]] = []
        self.arrivals_by_stop: dict[StopId, list[int]] = {}
        self.departures_by_stop: dict[StopId, list[int]] = {}
        self.transfers_by_stop: dict[StopId, list[int]] = {}

    # -- construction helpers ------------------------------------------

    def _add_node(self, node: TransitNode) -> int:
        self.nodes.append(node)
        self._out.append([])
        self._in.append([])
        idx = node.id
        if node.event is EventType.ARRIVAL:
            self.arrivals_by_stop.setdefault(node.stop, []).append(idx)
        elif node.event is EventType.DEPARTURE:
            self.departures_by_stop.setdefault(node.stop, []).append(idx)
        else:
            self.transfers_by_stop.setdefault(node.stop, []).append(idx)
        return idx

    def _add_edge(self, u: int, v: int) -> None:
        w = float(self.nodes[v].time - self.nodes[u].time)
        if w < 0:
            raise ValueError(
                f"transit edge {self.nodes[u]} -> {self.nodes[v]} would go back in time"
            )
        self._out[u].append((v, w))
        self._in[v].append((u, w))

    # -- graph interface -------------------------------------------------

    def __contains__(self, u: int) -> bool:
        return 0 <= u < len(self.nodes)

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return sum(len(es) for es in self._out)

    def nodes_ids(self) -> range:
        return range(len(self.nodes))

    def edges(self):
        for u, es in enumerate(self._out):
            for v, w in es:
                yield (u, w, v)

    def out_edges(self, u: int, modes: object = None) -> list[tuple[int, float]]:
        return self._out[u]

    def in_edges(self, u: int, modes: object = None) -> list[tuple[int, float]]:
        return self._in[u]


def assemble_transit_graph(
    stops: dict[StopId, GeoPoint],
    trip_events: dict[TripId, list[TripEvent]],
    transfer_duration: int,
    ensure_leading_arrivals: bool = False,
) -> TransitGraph:
    """Build the event graph from per-trip halt sequences.

    With ``ensure_leading_arrivals`` every trip whose first halt has no
    arrival gains a synthetic arrival node at the departure time, joined
    by a zero-weight edge, so journeys entering from a road network can
    board the trip's first connection.
    """
    g = TransitGraph(stops, trip_events, transfer_duration)

    arr_idx: dict[tuple[TripId, int], int] = {}
    dep_idx: dict[tuple[TripId, int], int] = {}
    next_id = 0

    for trip, events in trip_events.items():
        for pos, ev in enumerate(events):
            if ev.stop not in stops:
                raise KeyError(f"trip {trip} references unknown stop {ev.stop}")
            point = stops[ev.stop]
            arrival = ev.arrival
            synthetic = False
            if (
                ensure_leading_arrivals
                and pos == 0
                and arrival is None
                and ev.departure is not None
            ):
                arrival = ev.departure
                synthetic = True
            if arrival is not None:
                arr_idx[(trip, pos)] = next_id
                g._add_node(
                    TransitNode(
                        next_id, ev.stop, point, arrival, EventType.ARRIVAL, trip, synthetic
                    )
                )
                next_id += 1
            if ev.departure is not None:
                dep_idx[(trip, pos)] = next_id
                g._add_node(
                    TransitNode(next_id, ev.stop, point, ev.departure, EventType.DEPARTURE, trip)
                )
                next_id += 1

    # one transfer node per distinct (stop, time); several simultaneous
    # arrivals at a stop share it
    transfer_idx: dict[tuple[StopId, int], int] = {}
    for (trip, pos), a in sorted(arr_idx.items(), key=lambda kv: kv[1]):
        node = g.nodes[a]
        key = (node.stop, node.time + transfer_duration)
        if key not in transfer_idx:
            transfer_idx[key] = next_id
            g._add_node(
                TransitNode(
                    next_id,
                    node.stop,
                    node.point,
                    node.time + transfer_duration,
                    EventType.TRANSFER,
                )
            )
            next_id += 1

    # ride edges and same-halt arrival->departure edges
    for trip, events in trip_events.items():
        for pos in range(len(events)):
            a = arr_idx.get((trip, pos))
            d = dep_idx.get((trip, pos))
            if a is not None and d is not None:
                g._add_edge(a, d)
            if d is not None and pos + 1 < len(events):
                nxt = arr_idx.get((trip, pos + 1))
                if nxt is None:
                    raise ValueError(
                        f"trip {trip} halt {pos + 1} lacks an arrival time after a departure"
                    )
                g._add_edge(d, nxt)

    # arrival -> its transfer node
    for (trip, pos), a in arr_idx.items():
        node = g.nodes[a]
        g._add_edge(a, transfer_idx[(node.stop, node.time + transfer_duration)])

    # waiting chains and boarding edges per stop
    for stop, transfer_ids in g.transfers_by_stop.items():
        transfer_ids.sort(key=lambda i: g.nodes[i].time)
        times = [g.nodes[i].time for i in transfer_ids]
        for prev, nxt in zip(transfer_ids, transfer_ids[1:]):
            g._add_edge(prev, nxt)
        for d in g.departures_by_stop.get(stop, []):
            pos = bisect.bisect_right(times, g.nodes[d].time) - 1
            if pos >= 0:
                g._add_edge(transfer_ids[pos], d)

    for ids in g.arrivals_by_stop.values():
        ids.sort(key=lambda i: g.nodes[i].time)
    for ids in g.departures_by_stop.values():
        ids.sort(key=lambda i: g.nodes[i].time)
    return g
