"""Link graph: road and transit graphs joined at stops.

Each stop is linked to the road node nearest to it.  Link edges run from
that road node to every arrival node of the stop with weight 0; matching
zero-weight exit edges lead from each arrival node back to the road
node, since a journey must also be able to leave the transit network.
The transit part is rebuilt with synthetic leading arrivals so every
trip can be boarded at its first departure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .road import RoadGraph
from .spatial import NearestNodeIndex
from .timetable import StopId
from .transit import TransitGraph, assemble_transit_graph


class LinkConfigurationError(RuntimeError):
    pass


@dataclass
class LinkGraph:
    road: RoadGraph
    transit: TransitGraph
    stop_link: dict[StopId, Hashable]  # stop -> nearest road node
    road_to_stops: dict[Hashable, list[StopId]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.road_to_stops:
            for stop, node in self.stop_link.items():
                self.road_to_stops.setdefault(node, []).append(stop)

    def link_edge_count(self) -> int:
        return sum(
            len(self.transit.arrivals_by_stop.get(stop, []))
            for stop in self.stop_link
        )


def build_link_graph(
    road: RoadGraph,
    transit: TransitGraph,
    road_index: NearestNodeIndex,
) -> LinkGraph:
    """Join a road graph and a transit graph at each stop's nearest road node."""
    if road.node_count() == 0 or road_index.is_empty():
        raise LinkConfigurationError("cannot link stops into an empty road graph")

    extended = assemble_transit_graph(
        transit.stops,
        transit.trip_events,
        transit.transfer_duration,
        ensure_leading_arrivals=True,
    )

    stop_link: dict[StopId, Hashable] = {}
    for stop, point in extended.stops.items():
        if stop in extended.arrivals_by_stop:
            stop_link[stop] = road_index.nearest(point)
    return LinkGraph(road=road, transit=extended, stop_link=stop_link)
