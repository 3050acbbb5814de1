"""Shared test oracles and fixture builders.

Everything here is deliberately independent of the implementation paths
it checks: brute-force scans, Bellman-Ford, haversine, and structural
audits that re-derive the cover-tree properties from first principles.
"""
from __future__ import annotations

import math
import random

import numpy as np

from polyroute.geo import GeoPoint
from polyroute.model.graph import Digraph
from polyroute.model.modes import TransportMode
from polyroute.model.road import RoadEdge, RoadGraph
from polyroute.model.timetable import Connection, Footpath, Timetable
from polyroute.model.transit import TripEvent


def euclid(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    s = (
        math.sin((b.lat - a.lat) / 2) ** 2
        + math.cos(a.lat) * math.cos(b.lat) * math.sin((b.lng - a.lng) / 2) ** 2
    )
    return 2 * 6_371_000.0 * math.asin(math.sqrt(s))


# -- brute-force nearest-neighbor oracles --------------------------------


def scan_nearest(points, query, metric=euclid):
    dists = [(metric(query, p), i) for i, p in enumerate(points) if metric(query, p) > 0]
    if not dists:
        return None
    d, i = min(dists)
    return points[i], d


def scan_k_nearest(points, query, k, metric=euclid):
    dists = sorted(
        (metric(query, p), i) for i, p in enumerate(points) if metric(query, p) > 0
    )
    return [(points[i], d) for d, i in dists[:k]]


def scan_neighborhood(points, query, radius, metric=euclid):
    return {
        i: metric(query, p)
        for i, p in enumerate(points)
        if 0 < metric(query, p) <= radius
    }


# -- cover tree audit ------------------------------------------------------


def audit_cover_tree(tree, metric) -> list[str]:
    """Re-derive the four structural properties from the exported nodes.

    Covering uses the insert algorithm's bound d <= 2^(child level + 1);
    separation and uniqueness are strict.  Per-pair separation at the
    smaller of the two creation levels is equivalent to quantifying over
    every level, because a point belongs to all covers below its own.
    """
    nodes = list(tree.iter_nodes())
    errors: list[str] = []
    if not nodes:
        return errors
    if len(nodes) == 1:
        return errors

    points = [p for p, _, _, _ in nodes]
    levels = [lvl for _, lvl, _, _ in nodes]
    if any(lvl is None for lvl in levels):
        errors.append("multi-point tree has a node without a level")
        return errors
    if max(levels) != tree.max_level:
        errors.append("root level disagrees with max_level")
    if min(levels) != tree.min_level:
        errors.append("lowest node level disagrees with min_level")

    for point, level, parent, parent_level in nodes:
        if parent is None:
            continue
        if parent_level <= level:
            errors.append(f"child {point!r} not below its parent {parent!r}")
        d = metric(point, parent)
        if d > 2.0 ** (level + 1):
            errors.append(
                f"covering violated: d({point!r}, {parent!r}) = {d} > 2^{level + 1}"
            )

    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            d = metric(points[i], points[j])
            if d == 0:
                errors.append(f"duplicate stored points {points[i]!r}")
            if d <= 2.0 ** min(levels[i], levels[j]):
                errors.append(
                    f"separation violated at level {min(levels[i], levels[j])}: "
                    f"d({points[i]!r}, {points[j]!r}) = {d}"
                )
    return errors


def audit_cover_tree_2d(tree) -> list[str]:
    """Vectorized audit for trees over 2-D float tuples with the
    Euclidean metric; same checks as ``audit_cover_tree``."""
    nodes = list(tree.iter_nodes())
    errors: list[str] = []
    if len(nodes) <= 1:
        return errors
    pts = np.array([p for p, _, _, _ in nodes], dtype=float)
    levels = np.array([lvl for _, lvl, _, _ in nodes], dtype=float)

    for point, level, parent, parent_level in nodes:
        if parent is None:
            continue
        if parent_level <= level:
            errors.append(f"child {point!r} not below its parent")
        if euclid(point, parent) > 2.0 ** (level + 1):
            errors.append(f"covering violated for {point!r}")

    n = len(pts)
    block = 1024
    for start in range(0, n, block):
        rows = slice(start, min(start + block, n))
        d = np.sqrt(((pts[rows, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
        thr = 2.0 ** np.minimum(levels[rows, None], levels[None, :])
        bad = d <= thr
        idx = np.arange(start, min(start + block, n))
        bad[np.arange(len(idx)), idx] = False  # diagonal
        if bad.any():
            where = np.argwhere(bad)
            i, j = idx[where[0][0]], where[0][1]
            errors.append(
                f"separation violated: d={d[where[0][0], j]} "
                f"levels=({levels[i]}, {levels[j]})"
            )
            break
    return errors


# -- Bellman-Ford oracle ---------------------------------------------------


def bellman_ford(g: Digraph, source) -> dict:
    """Vectorized Bellman-Ford distances from source over a Digraph."""
    nodes = list(g.nodes())
    index = {n: i for i, n in enumerate(nodes)}
    src = []
    dst = []
    wgt = []
    for u, w, v in g.edges():
        src.append(index[u])
        dst.append(index[v])
        wgt.append(w)
    dist = np.full(len(nodes), np.inf)
    dist[index[source]] = 0.0
    if src:
        src_a = np.array(src)
        dst_a = np.array(dst)
        wgt_a = np.array(wgt, dtype=float)
        for _ in range(len(nodes)):
            before = dist.copy()
            np.minimum.at(dist, dst_a, dist[src_a] + wgt_a)
            if np.array_equal(before, dist, equal_nan=True):
                break
    return {n: dist[i] for n, i in index.items() if np.isfinite(dist[i])}


# -- random graph generators ----------------------------------------------


def random_digraph(rng: random.Random, max_nodes: int = 40) -> Digraph:
    n = rng.randint(2, max_nodes)
    g = Digraph()
    for i in range(n):
        g.add_node(i)
    m = rng.randint(n, min(n * (n - 1), 4 * n))
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            g.add_edge(u, rng.randint(1, 100), v)
    return g


def random_geometric_road_graph(
    rng: random.Random,
    n: int,
    neighbors: int = 4,
    base_lat: float = 48.0,
    span_deg: float = 0.3,
) -> RoadGraph:
    """Random road network: nodes scattered in a small box, each joined
    bidirectionally to its closest few neighbors; edge distance is the
    exact coordinate metric so the straight-line heuristic is tight.

    Neighbor ranking is vectorized with the same projection formula the
    coordinate metric uses, so the chosen edges match a scalar scan."""
    from polyroute.geo import as_the_crow_flies

    g = RoadGraph()
    pts = []
    for i in range(n):
        p = GeoPoint.from_degrees(
            base_lat + rng.random() * span_deg, 7.8 + rng.random() * span_deg
        )
        pts.append(p)
        g.add_node(i, p)
    lat = np.array([p.lat for p in pts])
    lng = np.array([p.lng for p in pts])
    speeds = [50.0, 80.0, 100.0, 120.0]
    all_road = frozenset({TransportMode.FOOT, TransportMode.BIKE, TransportMode.CAR})
    seen: set[tuple[int, int]] = set()
    for i in range(n):
        dx = (lng - lng[i]) * np.cos((lat + lat[i]) / 2.0)
        dy = lat - lat[i]
        d2 = dx * dx + dy * dy
        d2[i] = np.inf
        take = min(neighbors, n - 1)
        nearest = np.argpartition(d2, take - 1)[:take]
        for j in sorted(int(j) for j in nearest):
            key = (min(i, j), max(i, j))
            if key in seen:
                continue
            seen.add(key)
            d = as_the_crow_flies(pts[i], pts[j])
            speed = rng.choice(speeds)
            speed_map = {
                TransportMode.CAR: speed,
                TransportMode.BIKE: min(14.0, speed),
                TransportMode.FOOT: min(5.0, speed),
            }
            g.add_edge(RoadEdge(i, j, d, all_road, dict(speed_map)))
            g.add_edge(RoadEdge(j, i, d, all_road, dict(speed_map)))
    return g


# -- worked-example fixtures ----------------------------------------------


def fig51_graph() -> Digraph:
    """Five-node toy network; optimum v1->v5 has cost 6 and is unique."""
    g = Digraph()
    for e in [(1, 8, 2), (1, 1, 3), (3, 2, 4), (4, 1, 2), (4, 4, 5), (2, 2, 5)]:
        g.add_edge(*e)
    return g


def fig21_graph() -> Digraph:
    g = Digraph()
    for e in [(1, 8, 2), (1, 1, 3), (2, 1, 1), (2, 2, 5), (3, 2, 4), (4, 1, 2)]:
        g.add_edge(*e)
    g.add_node(5)
    return g


FIG41_POINTS = {
    1: (50.0, 50.0),
    2: (30.0, 30.0),
    3: (30.0, 70.0),
    4: (70.0, 30.0),
    5: (70.0, 70.0),
    6: (30.0, 15.0),
    7: (20.0, 30.0),
    8: (70.0, 15.0),
    9: (85.0, 30.0),
    10: (20.0, 70.0),
    11: (10.0, 80.0),
}


def pm(h: int, m: int) -> int:
    """Seconds since midnight for an afternoon clock time."""
    return (h + 12) * 3600 + m * 60


TOY_STOP_POINTS = {
    "f": GeoPoint.from_degrees(47.9990, 7.8421),  # Freiburg Hbf
    "o": GeoPoint.from_degrees(48.4766, 7.9466),  # Offenburg
    "k": GeoPoint.from_degrees(49.0069, 8.4037),  # Karlsruhe Hbf
}


def toy_timetable() -> Timetable:
    """Three stops, four trains, five connections, self-loop footpaths."""
    connections = [
        Connection("f", "o", pm(3, 56), pm(4, 28), "t104"),
        Connection("f", "o", pm(4, 3), pm(4, 50), "t17024"),
        Connection("o", "k", pm(4, 29), pm(4, 58), "t104"),
        Connection("o", "k", pm(4, 35), pm(5, 19), "t17322"),
        Connection("k", "f", pm(7, 10), pm(8, 10), "t79"),
    ]
    footpaths = [Footpath(s, 300, s) for s in ("f", "o", "k")]
    return Timetable(
        stops=dict(TOY_STOP_POINTS),
        trips=("t104", "t17024", "t17322", "t79"),
        connections=tuple(connections),
        footpaths=tuple(footpaths),
    )


def toy_trip_events() -> dict[str, list[TripEvent]]:
    """The same schedule as per-trip halt sequences; trains begin with a
    bare departure, exactly like the drawn example graph."""
    return {
        "t104": [
            TripEvent("f", None, pm(3, 56)),
            TripEvent("o", pm(4, 28), pm(4, 29)),
            TripEvent("k", pm(4, 58), None),
        ],
        "t17024": [
            TripEvent("f", None, pm(4, 3)),
            TripEvent("o", pm(4, 50), None),
        ],
        "t17322": [
            TripEvent("o", None, pm(4, 35)),
            TripEvent("k", pm(5, 19), None),
        ],
        "t79": [
            TripEvent("k", None, pm(7, 10)),
            TripEvent("f", pm(8, 10), None),
        ],
    }


def random_parity_feed(rng: random.Random):
    """Feed whose timetable footpaths are exactly the self-loops and whose
    graph transfer duration equals the self-loop duration, so the scan and
    the expanded graph must agree."""
    from polyroute.model.timetable import Connection as C, Footpath as F, Timetable as T

    n_stops = rng.randint(2, 10)
    stops = {
        f"s{i}": GeoPoint.from_degrees(40 + i, -30 + 2 * i) for i in range(n_stops)
    }
    stop_ids = list(stops)
    buffer_s = rng.choice([0, 60, 300])
    trip_events: dict[str, list[TripEvent]] = {}
    connections = []
    for t in range(rng.randint(1, 20)):
        length = rng.randint(2, min(5, n_stops))
        route = rng.sample(stop_ids, length)
        clock = rng.randint(0, 40000)
        events = []
        for pos, stop in enumerate(route):
            arrival = clock
            dwell = rng.randint(0, 120)
            departure = arrival + (dwell if pos < length - 1 else 0)
            events.append(TripEvent(stop, arrival, departure))
            clock = departure + rng.randint(60, 3600)
        trip = f"t{t}"
        trip_events[trip] = events
        for a, b in zip(events, events[1:]):
            connections.append(C(a.stop, b.stop, a.departure, b.arrival, trip))
    tt = T(
        stops=stops,
        trips=tuple(trip_events),
        connections=tuple(connections),
        footpaths=tuple(F(s, buffer_s, s) for s in stop_ids),
    )
    from polyroute.model.transit import assemble_transit_graph

    graph = assemble_transit_graph(dict(stops), trip_events, buffer_s)
    return tt, graph, buffer_s
