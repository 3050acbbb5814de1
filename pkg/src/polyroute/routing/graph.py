"""Time-independent shortest paths: Dijkstra, A*, many-to-one.

One engine drives all variants: A* is Dijkstra with the queue keyed by
tentative distance plus heuristic, and many-to-one seeds the queue with
every source at distance zero.  The priority queue uses lazy deletion;
stale entries are skipped when polled.  Insertion order breaks ties, so
runs are deterministic and a zero heuristic settles nodes in exactly
Dijkstra's order.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional

Node = Any
Heuristic = Callable[[Node], float]


class UnknownNodeError(KeyError):
    """Query referenced a node that is not part of the graph."""


@dataclass
class SearchStats:
    settled_count: int = 0
    relaxed_edge_count: int = 0


@dataclass(frozen=True)
class Path:
    """A chained edge sequence; ``anchor`` carries the node of an empty
    path (source equals target)."""

    edges: tuple[tuple[Node, float, Node], ...]
    total_cost: float
    anchor: Optional[Node] = None

    def __post_init__(self) -> None:
        for first, second in zip(self.edges, self.edges[1:]):
            if first[2] != second[0]:
                raise ValueError("path edges do not chain")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def source(self) -> Node:
        return self.edges[0][0] if self.edges else self.anchor

    @property
    def target(self) -> Node:
        return self.edges[-1][2] if self.edges else self.anchor

    def nodes(self) -> list[Node]:
        if not self.edges:
            return [self.anchor]
        return [self.edges[0][0]] + [v for _, _, v in self.edges]


@dataclass
class SearchResult:
    path: Optional[Path]
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def reachable(self) -> bool:
        return self.path is not None

    @property
    def cost(self) -> float:
        return self.path.total_cost if self.path is not None else math.inf


def _run(
    g: Any,
    sources: Mapping[Node, float],
    targets: Optional[set[Node]],
    modes: Any,
    heuristic: Optional[Heuristic],
) -> tuple[dict[Node, float], dict[Node, Node], SearchStats, Optional[Node]]:
    dist: dict[Node, float] = {}
    prev: dict[Node, Node] = {}
    stats = SearchStats()
    settled: set[Node] = set()
    heap: list[tuple[float, int, Node]] = []
    seq = 0
    for s, d0 in sources.items():
        dist[s] = d0
        key = d0 + (heuristic(s) if heuristic else 0.0)
        heap.append((key, seq, s))
        seq += 1
    heapq.heapify(heap)

    hit: Optional[Node] = None
    while heap:
        _, _, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled.add(u)
        stats.settled_count += 1
        if targets is not None and u in targets:
            hit = u
            break
        du = dist[u]
        for v, w in g.out_edges(u, modes):
            stats.relaxed_edge_count += 1
            nd = du + w
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                prev[v] = u
                key = nd + (heuristic(v) if heuristic else 0.0)
                heapq.heappush(heap, (key, seq, v))
                seq += 1
    return dist, prev, stats, hit


def _extract_path(
    dist: Mapping[Node, float], prev: Mapping[Node, Node], t: Node
) -> Optional[Path]:
    if t not in dist:
        return None
    edges: list[tuple[Node, float, Node]] = []
    u = t
    while u in prev:
        p = prev[u]
        edges.append((p, dist[u] - dist[p], u))
        u = p
    edges.reverse()
    return Path(tuple(edges), total_cost=dist[t] - dist[u], anchor=u)


def _check_node(g: Any, u: Node) -> None:
    if u not in g:
        raise UnknownNodeError(u)


def shortest_path(
    g: Any,
    s: Node,
    t: Node,
    modes: Any = None,
    heuristic: Optional[Heuristic] = None,
) -> SearchResult:
    """Minimum-cost path from s to t, or unreachable."""
    _check_node(g, s)
    _check_node(g, t)
    dist, prev, stats, _ = _run(g, {s: 0.0}, {t}, modes, heuristic)
    return SearchResult(_extract_path(dist, prev, t), stats)


def dijkstra(g: Any, s: Node, t: Node, modes: Any = None) -> SearchResult:
    return shortest_path(g, s, t, modes, heuristic=None)


def a_star(
    g: Any, s: Node, t: Node, heuristic: Heuristic, modes: Any = None
) -> SearchResult:
    return shortest_path(g, s, t, modes, heuristic=heuristic)


def distances_from(
    g: Any, s: Node, modes: Any = None
) -> tuple[dict[Node, float], SearchStats]:
    """Full one-to-all run (no early termination)."""
    _check_node(g, s)
    dist, _, stats, _ = _run(g, {s: 0.0}, None, modes, None)
    return dist, stats


def many_to_one(
    g: Any, sources: Iterable[Node], t: Node, modes: Any = None
) -> SearchResult:
    """Cheapest path from any of several sources to t."""
    source_list = list(sources)
    if not source_list:
        raise ValueError("many_to_one requires at least one source")
    for s in source_list:
        _check_node(g, s)
    _check_node(g, t)
    dist, prev, stats, _ = _run(g, {s: 0.0 for s in source_list}, {t}, modes, None)
    return SearchResult(_extract_path(dist, prev, t), stats)
