"""Multi-modal road graph.

Edges carry a distance in meters plus per-mode speeds; travel times are
computed on demand for the fastest mode usable under the caller's mode
restriction, so no per-mode-subset weights are ever precomputed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional

from ..geo import GeoPoint
from .modes import TransportMode, mode_mask

NodeId = Any

KMH_TO_MS = 1.0 / 3.6


@dataclass(frozen=True)
class RoadEdge:
    src: NodeId
    dst: NodeId
    distance: float  # meters
    modes: frozenset[TransportMode]
    speed_by_mode: dict[TransportMode, float]  # km/h
    name: Optional[str] = None
    # travel seconds per mode, indexed by mode value; None where unusable
    _seconds: tuple[Optional[float], ...] = field(init=False, repr=False, compare=False)
    _mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.distance < 0:
            raise ValueError(f"negative edge distance {self.distance}")
        if not self.modes:
            raise ValueError("edge must allow at least one mode")
        if set(self.speed_by_mode) != set(self.modes):
            raise ValueError("speed_by_mode must be defined exactly on the edge modes")
        secs: list[Optional[float]] = [None] * len(TransportMode)
        for mode, speed in self.speed_by_mode.items():
            if speed <= 0:
                raise ValueError(f"non-positive speed {speed} for {mode}")
            secs[mode] = self.distance / (speed * KMH_TO_MS)
        object.__setattr__(self, "_seconds", tuple(secs))
        object.__setattr__(self, "_mask", mode_mask(self.modes))

    def weight(self, allowed: frozenset[TransportMode] | None) -> Optional[float]:
        """Seconds using the fastest usable mode, or None if unusable."""
        usable = self._mask & mode_mask(allowed)
        if not usable:
            return None
        return self._seconds[usable.bit_length() - 1]

    def chosen_mode(self, allowed: frozenset[TransportMode] | None) -> Optional[TransportMode]:
        usable = self._mask & mode_mask(allowed)
        if not usable:
            return None
        return TransportMode(usable.bit_length() - 1)


def edge_weight(
    edge: RoadEdge, allowed: frozenset[TransportMode] | set[TransportMode]
) -> Optional[float]:
    """Travel time in seconds under a mode restriction; None if the edge
    allows none of the requested modes."""
    if not allowed:
        raise ValueError("allowed mode set must be non-empty")
    return edge.weight(frozenset(allowed))


class RoadGraph:
    def __init__(self) -> None:
        self._points: dict[NodeId, GeoPoint] = {}
        self._out: dict[NodeId, list[RoadEdge]] = {}
        self._in: dict[NodeId, list[RoadEdge]] = {}
        self._max_speed = 0.0

    def add_node(self, node_id: NodeId, point: GeoPoint) -> None:
        if node_id in self._points and self._points[node_id] != point:
            raise ValueError(f"node {node_id!r} already present with a different coordinate")
        self._points.setdefault(node_id, point)
        self._out.setdefault(node_id, [])
        self._in.setdefault(node_id, [])

    def add_edge(self, edge: RoadEdge) -> None:
        if edge.src not in self._points or edge.dst not in self._points:
            raise KeyError("edge endpoints must be added before the edge")
        self._out[edge.src].append(edge)
        self._in[edge.dst].append(edge)
        self._max_speed = max(self._max_speed, max(edge.speed_by_mode.values()))

    def __contains__(self, node_id: NodeId) -> bool:
        return node_id in self._points

    def node_count(self) -> int:
        return len(self._points)

    def edge_count(self) -> int:
        return sum(len(es) for es in self._out.values())

    def nodes(self) -> Iterable[NodeId]:
        return self._points.keys()

    def point(self, node_id: NodeId) -> GeoPoint:
        return self._points[node_id]

    def points(self) -> dict[NodeId, GeoPoint]:
        return self._points

    def max_speed_kmh(self) -> float:
        return self._max_speed

    def road_edges(self) -> Iterator[RoadEdge]:
        for es in self._out.values():
            yield from es

    def edges(
        self, modes: frozenset[TransportMode] | None = None
    ) -> Iterator[tuple[NodeId, float, NodeId]]:
        """(src, seconds, dst) triples under a mode restriction; edges the
        restriction makes unusable are omitted."""
        mask = mode_mask(modes)
        for es in self._out.values():
            for e in es:
                usable = e._mask & mask
                if usable:
                    yield (e.src, e._seconds[usable.bit_length() - 1], e.dst)

    def out_road_edges(self, u: NodeId) -> list[RoadEdge]:
        return self._out[u]

    def out_edges(
        self, u: NodeId, modes: frozenset[TransportMode] | None = None
    ) -> Iterator[tuple[NodeId, float]]:
        mask = mode_mask(modes)
        for e in self._out[u]:
            usable = e._mask & mask
            if usable:
                yield (e.dst, e._seconds[usable.bit_length() - 1])

    def in_edges(
        self, u: NodeId, modes: frozenset[TransportMode] | None = None
    ) -> Iterator[tuple[NodeId, float]]:
        mask = mode_mask(modes)
        for e in self._in[u]:
            usable = e._mask & mask
            if usable:
                yield (e.src, e._seconds[usable.bit_length() - 1])

    def best_edge(
        self, u: NodeId, v: NodeId, modes: frozenset[TransportMode] | None = None
    ) -> Optional[tuple[RoadEdge, float, TransportMode]]:
        """Cheapest usable parallel edge u->v with its weight and mode."""
        best: Optional[tuple[RoadEdge, float, TransportMode]] = None
        for e in self._out[u]:
            if e.dst != v:
                continue
            w = e.weight(modes)
            if w is not None and (best is None or w < best[1]):
                best = (e, w, e.chosen_mode(modes))  # type: ignore[arg-type]
        return best
