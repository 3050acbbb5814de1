"""Goal-direction heuristics for A*: straight-line travel time and
landmark lower bounds.

Both must never overestimate.  The straight-line estimate therefore
assumes the network's fastest speed, and landmark distances are
precomputed without any mode restriction; a restricted query can only
be slower, so the bounds stay admissible.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

from ..geo import as_the_crow_flies
from ..model.graph import reverse_view
from .graph import Node, distances_from

logger = logging.getLogger(__name__)

KMH_TO_MS = 1.0 / 3.6


def crow_flies_seconds(point_a, point_b, top_speed_kmh: float) -> float:
    """Straight-line distance traveled at the network's top speed."""
    return as_the_crow_flies(point_a, point_b) / (top_speed_kmh * KMH_TO_MS)


def crow_flies_heuristic(
    g: Any, target: Node, top_speed_kmh: Optional[float] = None
) -> Callable[[Node], float]:
    """Heuristic factory for A* on graphs whose nodes carry coordinates."""
    if top_speed_kmh is None:
        top_speed_kmh = g.max_speed_kmh()
    target_point = g.point(target)
    speed_ms = top_speed_kmh * KMH_TO_MS

    def h(u: Node) -> float:
        return as_the_crow_flies(g.point(u), target_point) / speed_ms

    return h


@dataclass(frozen=True)
class LandmarkTable:
    landmarks: tuple[Node, ...]
    dist_from: dict[Node, dict[Node, float]]  # landmark -> dist(l, v)
    dist_to: dict[Node, dict[Node, float]]  # landmark -> dist(v, l)
    seed: Optional[int] = None


def precompute_landmarks(g: Any, count: int, seed: Optional[int] = None) -> LandmarkTable:
    """Pick ``count`` random landmarks and run one forward and one
    reverse-view full Dijkstra per landmark, unrestricted modes."""
    if count < 1:
        raise ValueError("landmark count must be >= 1")
    nodes = list(g.nodes())
    if count > len(nodes):
        logger.warning(
            "requested %d landmarks but graph has %d nodes; clamping", count, len(nodes)
        )
        count = len(nodes)
    rng = random.Random(seed)
    landmarks = tuple(rng.sample(nodes, count))

    reversed_g = reverse_view(g)
    dist_from: dict[Node, dict[Node, float]] = {}
    dist_to: dict[Node, dict[Node, float]] = {}
    for l in landmarks:
        dist_from[l], _ = distances_from(g, l, modes=None)
        dist_to[l], _ = distances_from(reversed_g, l, modes=None)
    return LandmarkTable(landmarks, dist_from, dist_to, seed)


def landmark_heuristic(tbl: LandmarkTable, u: Node, v: Node) -> float:
    """Triangle-inequality lower bound on dist(u, v), floored at 0.

    Terms with an unreachable minuend are skipped; an unreachable
    subtrahend makes its term negative infinity, which the max ignores.
    """
    best = 0.0
    for l in tbl.landmarks:
        to_l = tbl.dist_to[l]
        from_l = tbl.dist_from[l]
        du_l = to_l.get(u)
        dv_l = to_l.get(v)
        if du_l is not None and dv_l is not None:
            diff = du_l - dv_l
            if diff > best:
                best = diff
        dl_v = from_l.get(v)
        dl_u = from_l.get(u)
        if dl_v is not None and dl_u is not None:
            diff = dl_v - dl_u
            if diff > best:
                best = diff
    return best


def landmark_heuristic_to(tbl: LandmarkTable, target: Node) -> Callable[[Node], float]:
    """Bind the landmark bound to a fixed target for use in A*."""
    pairs = []
    for l in tbl.landmarks:
        dt = tbl.dist_to[l].get(target)
        df = tbl.dist_from[l].get(target)
        pairs.append((tbl.dist_to[l], dt, tbl.dist_from[l], df))

    def h(u: Node) -> float:
        best = 0.0
        for to_l, dt, from_l, df in pairs:
            if dt is not None:
                du = to_l.get(u)
                if du is not None:
                    diff = du - dt
                    if diff > best:
                        best = diff
            if df is not None:
                du = from_l.get(u)
                if du is not None:
                    diff = df - du
                    if diff > best:
                        best = diff
        return best

    return h


def random_landmark_count() -> int:
    """Default landmark count, inside the customary 20-50 band."""
    return 24


__all__ = [
    "crow_flies_seconds",
    "crow_flies_heuristic",
    "LandmarkTable",
    "precompute_landmarks",
    "landmark_heuristic",
    "landmark_heuristic_to",
    "random_landmark_count",
]
