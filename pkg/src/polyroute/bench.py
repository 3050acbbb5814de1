"""Dijkstra-rank benchmark harness.

Targets are picked by rank: the r-th node polled by a full Dijkstra from
the source, so query ranges are comparable across machines.  Sources
whose reachable set is smaller than the largest requested rank are
redrawn.  Road algorithms sweep ranks; timetable algorithms sweep the
service day in fixed steps with random stop pairs.  Runtimes are
reported, never asserted: settled-node counts carry the comparisons.
"""
from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, TextIO

from .model.link import LinkGraph
from .model.modes import ALL_MODES, TransportMode
from .model.road import RoadGraph
from .model.timetable import Timetable
from .model.transit import TransitGraph
from .routing.anr import AnrEngine, AnrQuery
from .routing.csa import csa_query
from .routing.graph import SearchStats, UnknownNodeError, _run, shortest_path
from .routing.heuristics import (
    crow_flies_heuristic,
    landmark_heuristic_to,
    precompute_landmarks,
    random_landmark_count,
)
from .routing.linkroute import modified_dijkstra_link_graph
from .routing.transit import transit_earliest_arrival

ROAD_ALGORITHMS = ("dijkstra", "astar", "alt", "linkgraph-dijkstra", "anr")
TIME_ALGORITHMS = ("csa", "graph-dijkstra-transit")
ALL_ALGORITHMS = ROAD_ALGORITHMS + TIME_ALGORITHMS

CSV_HEADER = ("algo", "param", "mean_ms", "mean_settled", "n")


class UsageError(ValueError):
    pass


@dataclass
class BenchConfig:
    algorithms: tuple[str, ...] = ("dijkstra",)
    sources: int = 50
    max_rank_exp: int = 10
    seed: int = 0
    modes: frozenset[TransportMode] = ALL_MODES
    fixed_time: int = 12 * 3600  # multi-modal queries run at noon
    time_step_s: int = 600
    day_seconds: int = 24 * 3600
    queries_per_time_point: int = 50
    warmup_queries: int = 10
    landmark_count: int = field(default_factory=random_landmark_count)

    def __post_init__(self) -> None:
        unknown = [a for a in self.algorithms if a not in ALL_ALGORITHMS]
        if unknown:
            raise UsageError(
                f"unknown algorithm(s) {unknown}; choose from {', '.join(ALL_ALGORITHMS)}"
            )


@dataclass(frozen=True)
class BenchRow:
    algo: str
    param: int
    mean_ms: float
    mean_settled: float
    n: int


def dijkstra_rank_order(g: Any, s: Any, modes: Any = None) -> list[Any]:
    """Nodes in poll order of a full Dijkstra from s; the source itself
    is polled first (rank 1)."""
    if s not in g:
        raise UnknownNodeError(s)
    order: list[Any] = []

    class _Recorder:
        def out_edges(self, u, m=None):
            order.append(u)
            return g.out_edges(u, modes)

        def __contains__(self, u):
            return u in g

    _run(_Recorder(), {s: 0.0}, None, modes, None)
    return order


@dataclass
class RankedQuery:
    source: Any
    targets: dict[int, Any]  # rank exponent -> target node


def generate_ranked_queries(
    g: Any,
    n_sources: int,
    max_rank_exp: int,
    seed: int,
    modes: Any = None,
    max_redraws: int = 1000,
) -> list[RankedQuery]:
    """Random sources with targets at ranks 2^0 .. 2^max_rank_exp.

    A source that cannot reach 2^max_rank_exp nodes is rejected and
    redrawn, mirroring the ranked-query protocol.
    """
    rng = random.Random(seed)
    nodes = list(g.nodes())
    need = 2**max_rank_exp
    if len(nodes) < need:
        raise UsageError(
            f"graph has {len(nodes)} nodes; rank 2^{max_rank_exp} needs at least {need}"
        )
    queries: list[RankedQuery] = []
    attempts = 0
    while len(queries) < n_sources:
        attempts += 1
        if attempts > max_redraws + n_sources:
            raise UsageError("could not find enough well-connected sources")
        s = rng.choice(nodes)
        order = dijkstra_rank_order(g, s, modes)
        if len(order) < need:
            continue
        targets = {e: order[2**e - 1] for e in range(max_rank_exp + 1)}
        queries.append(RankedQuery(s, targets))
    return queries


def _timed(fn: Callable[[], SearchStats | int]) -> tuple[float, float]:
    start = time.perf_counter()
    out = fn()
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    settled = out.settled_count if isinstance(out, SearchStats) else out
    return elapsed_ms, settled


@dataclass
class BenchModels:
    road: Optional[RoadGraph] = None
    timetable: Optional[Timetable] = None
    transit: Optional[TransitGraph] = None
    link: Optional[LinkGraph] = None
    anr: Optional[AnrEngine] = None


def _road_query_fn(
    algo: str, models: BenchModels, config: BenchConfig
) -> Callable[[Any, Any], SearchStats | int]:
    road = models.road
    if road is None:
        raise UsageError(f"algorithm {algo} needs a road graph")
    if algo == "dijkstra":
        return lambda s, t: shortest_path(road, s, t, config.modes).stats
    if algo == "astar":
        return lambda s, t: shortest_path(
            road, s, t, config.modes, heuristic=crow_flies_heuristic(road, t)
        ).stats
    if algo == "alt":
        table = precompute_landmarks(road, config.landmark_count, config.seed)
        return lambda s, t: shortest_path(
            road, s, t, config.modes, heuristic=landmark_heuristic_to(table, t)
        ).stats
    if algo == "linkgraph-dijkstra":
        link = models.link
        if link is None:
            raise UsageError("linkgraph-dijkstra needs a link graph")
        return lambda s, t: modified_dijkstra_link_graph(
            link, s, t, config.modes, config.fixed_time
        ).stats
    if algo == "anr":
        anr = models.anr
        if anr is None:
            raise UsageError("anr needs an access-node engine")

        def run(s: Any, t: Any) -> int:
            result = anr.query(
                AnrQuery(s, t, config.fixed_time, config.modes)
            )
            return result.stats.settled_nodes

        return run
    raise UsageError(f"unknown road algorithm {algo}")


def _run_rank_sweep(
    algo: str,
    models: BenchModels,
    config: BenchConfig,
    queries: list[RankedQuery],
) -> list[BenchRow]:
    fn = _road_query_fn(algo, models, config)
    for q in queries[: config.warmup_queries]:
        fn(q.source, q.targets[max(q.targets)])
    rows: list[BenchRow] = []
    for exp in range(config.max_rank_exp + 1):
        total_ms = 0.0
        total_settled = 0.0
        for q in queries:
            ms, settled = _timed(lambda: fn(q.source, q.targets[exp]))
            total_ms += ms
            total_settled += settled
        n = len(queries)
        rows.append(
            BenchRow(algo, 2**exp, total_ms / n, total_settled / n, n)
        )
    return rows


def _run_time_sweep(
    algo: str, models: BenchModels, config: BenchConfig
) -> list[BenchRow]:
    rng = random.Random(config.seed)
    rows: list[BenchRow] = []
    if algo == "csa":
        tt = models.timetable
        if tt is None:
            raise UsageError("csa needs a timetable")
        stops = list(tt.stops)

        def run(s: Any, t: Any, tau: int) -> int:
            return csa_query(tt, s, t, tau).stats.scanned_connections

    else:  # graph-dijkstra-transit
        tg = models.transit
        if tg is None:
            raise UsageError("graph-dijkstra-transit needs a transit graph")
        stops = list(tg.stops)

        def run(s: Any, t: Any, tau: int) -> int:
            return transit_earliest_arrival(tg, s, t, tau).stats.settled_count

    if len(stops) < 2:
        raise UsageError(f"{algo} needs at least two stops")
    for _ in range(config.warmup_queries):
        s, t = rng.sample(stops, 2)
        run(s, t, config.fixed_time)
    for tau in range(0, config.day_seconds, config.time_step_s):
        total_ms = 0.0
        total_settled = 0.0
        n = config.queries_per_time_point
        for _ in range(n):
            s, t = rng.sample(stops, 2)
            ms, settled = _timed(lambda: run(s, t, tau))
            total_ms += ms
            total_settled += settled
        rows.append(BenchRow(algo, tau, total_ms / n, total_settled / n, n))
    return rows


def run_benchmark(models: BenchModels, config: BenchConfig) -> list[BenchRow]:
    rows: list[BenchRow] = []
    rank_algos = [a for a in config.algorithms if a in ROAD_ALGORITHMS]
    time_algos = [a for a in config.algorithms if a in TIME_ALGORITHMS]
    queries: list[RankedQuery] = []
    if rank_algos:
        if models.road is None:
            raise UsageError("rank-parameterized algorithms need a road graph")
        queries = generate_ranked_queries(
            models.road, config.sources, config.max_rank_exp, config.seed, config.modes
        )
    for algo in rank_algos:
        rows.extend(_run_rank_sweep(algo, models, config, queries))
    for algo in time_algos:
        rows.extend(_run_time_sweep(algo, models, config))
    return rows


def write_csv(rows: Iterable[BenchRow], out: TextIO) -> None:
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [row.algo, row.param, f"{row.mean_ms:.6f}", f"{row.mean_settled:.2f}", row.n]
        )
