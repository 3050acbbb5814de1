"""Simplified access-node routing.

A query resolves source and target to road nodes, picks the k nearest
stops to each as access nodes, and evaluates every composition: road leg
to a source access node, transit between access nodes (departure time
advanced by the road leg), road leg from the destination access node.
The plain road-only path always competes; the earliest final arrival
wins.  The composition is an approximation: the exact link-graph search
may still beat it.

Sub-query counts are instrumented: with k access nodes a full query
issues 2 nearest-neighbor lookups, 2k road searches, k^2 timetable
queries and 1 road-only search.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Optional, Union

from ..geo import GeoPoint
from ..model.modes import ROAD_MODES, TransportMode
from ..model.road import RoadGraph
from ..model.spatial import NearestNodeIndex
from ..model.timetable import StopId, Timetable
from .csa import FootLeg, TripLeg, csa_query
from .graph import Path, SearchResult, shortest_path


class ResolutionError(ValueError):
    """Query endpoint could not be resolved to a road node."""


def select_access_nodes(
    stop_index: NearestNodeIndex, point: GeoPoint, k: int
) -> list[StopId]:
    """The up-to-k stops closest to a coordinate, ascending by distance;
    empty when no stops are indexed (the query then stays on the road)."""
    if k < 1:
        raise ValueError("access-node count k must be >= 1")
    if stop_index.is_empty():
        return []
    return stop_index.k_nearest(point, k)


@dataclass(frozen=True)
class AnrQuery:
    source: Union[Hashable, GeoPoint]
    target: Union[Hashable, GeoPoint]
    departure: int
    modes: frozenset[TransportMode]
    k: int = 3

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("access-node count k must be >= 1")
        if not self.modes:
            raise ValueError("mode set must be non-empty")


@dataclass(frozen=True)
class JourneyLeg:
    mode: TransportMode
    coordinates: tuple[GeoPoint, ...]
    departure: float
    arrival: float
    name: Optional[str] = None

    @property
    def cost(self) -> float:
        return self.arrival - self.departure


@dataclass(frozen=True)
class MultiModalJourney:
    legs: tuple[JourneyLeg, ...]
    departure: float
    arrival: float

    @property
    def total_cost(self) -> float:
        return sum(leg.cost for leg in self.legs)

    @property
    def elapsed(self) -> float:
        return self.arrival - self.departure


@dataclass
class AnrStats:
    nn_queries: int = 0
    road_searches: int = 0
    csa_queries: int = 0
    road_only_searches: int = 0
    settled_nodes: int = 0
    scanned_connections: int = 0


@dataclass
class AnrResult:
    best: Optional[MultiModalJourney]
    road_only: Optional[MultiModalJourney]
    via_transit: bool
    stats: AnrStats = field(default_factory=AnrStats)

    @property
    def reachable(self) -> bool:
        return self.best is not None


class AnrEngine:
    def __init__(
        self,
        road: RoadGraph,
        timetable: Timetable,
        stop_index: NearestNodeIndex,
        stop_link: dict[StopId, Hashable],
        road_index: Optional[NearestNodeIndex] = None,
    ) -> None:
        self.road = road
        self.timetable = timetable
        self.stop_index = stop_index
        self.stop_link = stop_link
        self.road_index = road_index

    # -- endpoint resolution -------------------------------------------

    def _resolve(self, endpoint: Union[Hashable, GeoPoint]) -> Hashable:
        if isinstance(endpoint, GeoPoint):
            if self.road_index is None or self.road_index.is_empty():
                raise ResolutionError("no road index available to resolve coordinates")
            return self.road_index.nearest(endpoint)
        if endpoint not in self.road:
            raise ResolutionError(f"unknown road node {endpoint!r}")
        return endpoint

    # -- query ------------------------------------------------------------

    def query(self, q: AnrQuery) -> AnrResult:
        stats = AnrStats()
        source = self._resolve(q.source)
        target = self._resolve(q.target)
        road_modes = frozenset(q.modes) & ROAD_MODES

        road_only_result: Optional[SearchResult] = None
        road_only_journey: Optional[MultiModalJourney] = None
        if road_modes:
            road_only_result = shortest_path(self.road, source, target, road_modes)
            stats.road_only_searches += 1
            stats.settled_nodes += road_only_result.stats.settled_count
            if road_only_result.reachable:
                road_only_journey = self._road_journey(
                    road_only_result.path, road_modes, q.departure
                )

        use_transit = (
            TransportMode.TRAM in q.modes
            and not self.stop_index.is_empty()
            and bool(self.stop_link)
        )

        best_transit: Optional[MultiModalJourney] = None
        if use_transit and road_modes:
            best_transit = self._transit_composition(source, target, q, road_modes, stats)

        candidates = [j for j in (best_transit, road_only_journey) if j is not None]
        if not candidates:
            return AnrResult(None, None, False, stats)
        # road-only wins ties: fewer mode changes for the same arrival
        if road_only_journey is not None and all(
            road_only_journey.arrival <= j.arrival for j in candidates
        ):
            best = road_only_journey
        else:
            best = min(candidates, key=lambda j: j.arrival)
        return AnrResult(best, road_only_journey, best is not road_only_journey, stats)

    # -- composition pieces ---------------------------------------------

    def _transit_composition(
        self,
        source: Hashable,
        target: Hashable,
        q: AnrQuery,
        road_modes: frozenset[TransportMode],
        stats: AnrStats,
    ) -> Optional[MultiModalJourney]:
        src_access = select_access_nodes(self.stop_index, self.road.point(source), q.k)
        stats.nn_queries += 1
        dst_access = select_access_nodes(self.stop_index, self.road.point(target), q.k)
        stats.nn_queries += 1

        entry_paths: dict[StopId, SearchResult] = {}
        for stop in src_access:
            node = self.stop_link.get(stop)
            if node is None:
                continue
            res = shortest_path(self.road, source, node, road_modes)
            stats.road_searches += 1
            stats.settled_nodes += res.stats.settled_count
            entry_paths[stop] = res

        exit_paths: dict[StopId, SearchResult] = {}
        for stop in dst_access:
            node = self.stop_link.get(stop)
            if node is None:
                continue
            res = shortest_path(self.road, node, target, road_modes)
            stats.road_searches += 1
            stats.settled_nodes += res.stats.settled_count
            exit_paths[stop] = res

        best: Optional[tuple[float, StopId, StopId, int, object]] = None
        for a, entry in entry_paths.items():
            if not entry.reachable:
                continue
            dep_at_stop = q.departure + entry.cost
            for b, exit_ in exit_paths.items():
                if not exit_.reachable:
                    continue
                csa = csa_query(self.timetable, a, b, int(math.ceil(dep_at_stop)))
                stats.csa_queries += 1
                stats.scanned_connections += csa.stats.scanned_connections
                if not csa.reachable:
                    continue
                final_arrival = csa.arrival + exit_.cost
                if best is None or final_arrival < best[0]:
                    best = (final_arrival, a, b, csa.arrival, csa.journey)
        if best is None:
            return None

        _, a, b, csa_arrival, csa_journey = best
        legs: list[JourneyLeg] = []
        legs += self._road_legs(entry_paths[a].path, road_modes, q.departure)
        legs += self._transit_legs(csa_journey)
        legs += self._road_legs(exit_paths[b].path, road_modes, csa_arrival)
        arrival = csa_arrival + exit_paths[b].cost
        return MultiModalJourney(tuple(legs), q.departure, arrival)

    # -- journey assembly -------------------------------------------------

    def _road_journey(
        self, path: Path, road_modes: frozenset[TransportMode], departure: float
    ) -> MultiModalJourney:
        return road_journey(self.road, path, road_modes, departure)

    def _road_legs(
        self, path: Path, road_modes: frozenset[TransportMode], start: float
    ) -> list[JourneyLeg]:
        return road_legs(self.road, path, road_modes, start)

    def _transit_legs(self, journey) -> list[JourneyLeg]:
        stops = self.timetable.stops
        legs: list[JourneyLeg] = []
        for leg in journey.legs:
            if isinstance(leg, TripLeg):
                coords = [stops[leg.dep_stop]] + [stops[c.arr_stop] for c in leg.connections]
                legs.append(
                    JourneyLeg(
                        TransportMode.TRAM,
                        tuple(coords),
                        leg.departure,
                        leg.arrival,
                        name=str(leg.trip),
                    )
                )
            elif isinstance(leg, FootLeg):
                legs.append(
                    JourneyLeg(
                        TransportMode.FOOT,
                        (stops[leg.dep_stop], stops[leg.arr_stop]),
                        leg.departure,
                        leg.arrival,
                    )
                )
        return legs


def road_legs(
    road: RoadGraph,
    path: Path,
    road_modes: frozenset[TransportMode],
    start: float,
) -> list[JourneyLeg]:
    """Split a road path into maximal runs of one chosen mode."""
    if path is None or not path.edges:
        return []
    runs: list[tuple[TransportMode, Optional[str], list[Hashable], float]] = []
    for u, w, v in path.edges:
        found = road.best_edge(u, v, road_modes)
        mode = found[2] if found else TransportMode.FOOT
        name = found[0].name if found else None
        if runs and runs[-1][0] == mode:
            prev_mode, prev_name, nodes, cost = runs[-1]
            nodes.append(v)
            runs[-1] = (prev_mode, prev_name or name, nodes, cost + w)
        else:
            runs.append((mode, name, [u, v], w))
    legs = []
    clock = start
    for mode, name, nodes, cost in runs:
        coords = tuple(road.point(n) for n in nodes)
        legs.append(JourneyLeg(mode, coords, clock, clock + cost, name))
        clock += cost
    return legs


def road_journey(
    road: RoadGraph,
    path: Path,
    road_modes: frozenset[TransportMode],
    departure: float,
) -> MultiModalJourney:
    legs = road_legs(road, path, road_modes, departure)
    arrival = departure + path.total_cost
    return MultiModalJourney(tuple(legs), departure, arrival)
