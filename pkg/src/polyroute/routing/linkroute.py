"""Mode-restricted Dijkstra over a link graph.

Road edges cost the travel time of the fastest allowed mode.  Crossing a
link edge is only feasible into an arrival node whose event time has not
passed yet; the crossing costs the remaining wait.  Transit edges are
fixed time differences, and exit edges return to the stop's road node
for free.  This is the exact baseline the access-node scheme is compared
against.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Optional

from ..model.link import LinkGraph
from ..model.modes import ROAD_MODES, TransportMode
from ..model.transit import EventType
from .graph import SearchStats, UnknownNodeError

# link-graph nodes are tagged: ("r", road node id) or ("t", transit node index)
LinkNode = tuple[str, Any]


@dataclass
class LinkSearchResult:
    cost: Optional[float]  # elapsed seconds from the departure time
    nodes: list[LinkNode] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def reachable(self) -> bool:
        return self.cost is not None


def modified_dijkstra_link_graph(
    lg: LinkGraph,
    source: Hashable,
    target: Hashable,
    modes: frozenset[TransportMode],
    departure: int,
) -> LinkSearchResult:
    if source not in lg.road:
        raise UnknownNodeError(source)
    if target not in lg.road:
        raise UnknownNodeError(target)

    road_modes = frozenset(modes) & ROAD_MODES
    use_transit = TransportMode.TRAM in modes
    tg = lg.transit

    start: LinkNode = ("r", source)
    goal: LinkNode = ("r", target)
    dist: dict[LinkNode, float] = {start: 0.0}
    prev: dict[LinkNode, LinkNode] = {}
    stats = SearchStats()
    settled: set[LinkNode] = set()
    heap: list[tuple[float, int, LinkNode]] = [(0.0, 0, start)]
    seq = 1

    def relax(u: LinkNode, v: LinkNode, w: float, du: float) -> None:
        nonlocal seq
        stats.relaxed_edge_count += 1
        nd = du + w
        if nd < dist.get(v, math.inf):
            dist[v] = nd
            prev[v] = u
            heapq.heappush(heap, (nd, seq, v))
            seq += 1

    while heap:
        _, _, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled.add(u)
        stats.settled_count += 1
        if u == goal:
            break
        du = dist[u]
        kind, ref = u
        if kind == "r":
            if road_modes:
                for v, w in lg.road.out_edges(ref, road_modes):
                    relax(u, ("r", v), w, du)
            if use_transit:
                now = departure + du
                for stop in lg.road_to_stops.get(ref, []):
                    for a in lg.transit.arrivals_by_stop.get(stop, []):
                        event_time = tg.nodes[a].time
                        if event_time >= now:
                            relax(u, ("t", a), event_time - now, du)
        else:
            for v, w in tg.out_edges(ref):
                relax(u, ("t", v), w, du)
            node = tg.nodes[ref]
            if node.event is EventType.ARRIVAL:
                road_node = lg.stop_link.get(node.stop)
                if road_node is not None:
                    relax(u, ("r", road_node), 0.0, du)

    if goal not in dist:
        return LinkSearchResult(None, stats=stats)

    nodes: list[LinkNode] = [goal]
    u = goal
    while u in prev:
        u = prev[u]
        nodes.append(u)
    nodes.reverse()
    return LinkSearchResult(dist[goal], nodes, stats)
