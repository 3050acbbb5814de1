import pytest

from polyroute.geo import GeoPoint
from polyroute.model.link import build_link_graph
from polyroute.model.modes import ALL_MODES, TransportMode
from polyroute.routing.anr import AnrEngine, AnrQuery, ResolutionError
from polyroute.routing.graph import dijkstra
from polyroute.routing.linkroute import modified_dijkstra_link_graph


def make_engine(fx) -> AnrEngine:
    return AnrEngine(
        road=fx.road,
        timetable=fx.timetable,
        stop_index=fx.stop_index,
        stop_link=fx.stop_link,
        road_index=fx.road_index,
    )


def test_access_node_selection(two_clusters):
    fx = two_clusters
    one = fx.stop_index.k_nearest(fx.road.point("a0"), 1)
    assert one == ["SA1"]
    three = fx.stop_index.k_nearest(fx.road.point("a0"), 3)
    assert three[0] == "SA1" and three[1] == "SA2"
    assert len(three) == 3
    everything = fx.stop_index.k_nearest(fx.road.point("a0"), 99)
    assert len(everything) == 4  # k larger than the stop count


def test_query_decomposition_counters(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(AnrQuery("a0", "b2", fx.departure, ALL_MODES, k=3))
    assert result.stats.nn_queries == 2
    assert result.stats.road_searches == 6
    assert result.stats.csa_queries == 9
    assert result.stats.road_only_searches == 1


def test_transit_beats_slow_road(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(AnrQuery("a0", "b2", fx.departure, ALL_MODES))
    assert result.via_transit
    # the 12:10 train wins: board at SA1, arrive SB1 12:25, leave after
    # the 5-minute egress buffer
    assert result.best.arrival == pytest.approx(12 * 3600 + 30 * 60)
    modes = [leg.mode for leg in result.best.legs]
    assert TransportMode.TRAM in modes
    assert result.road_only is not None
    assert result.best.arrival < result.road_only.arrival


def test_cost_sandwich_against_baseline_and_road(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    anr = engine.query(AnrQuery("a0", "b2", fx.departure, ALL_MODES))
    lg = build_link_graph(fx.road, fx.transit, fx.road_index)
    baseline = modified_dijkstra_link_graph(lg, "a0", "b2", ALL_MODES, fx.departure)
    road_only = anr.road_only

    assert baseline.reachable and anr.reachable and road_only is not None
    anr_elapsed = anr.best.arrival - fx.departure
    road_elapsed = road_only.arrival - fx.departure
    assert baseline.cost <= anr_elapsed <= road_elapsed
    # the baseline strictly beats the composition here: it can enter at
    # the synthetic arrival and skip both transfer buffers
    assert baseline.cost < anr_elapsed


def test_leg_chaining(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(AnrQuery("a0", "b2", fx.departure, ALL_MODES))
    legs = result.best.legs
    times = [t for leg in legs for t in (leg.departure, leg.arrival)]
    assert times == sorted(times)
    for prev, nxt in zip(legs, legs[1:]):
        end, start = prev.coordinates[-1], nxt.coordinates[0]
        if end == start:
            continue
        # road<->transit junction: the stop and its linked road node
        junctions = {
            (fx.road.point(node), fx.stop_points[stop])
            for stop, node in fx.stop_link.items()
        }
        assert (end, start) in junctions or (start, end) in junctions


def test_modes_without_tram_degenerate_to_road_only(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    modes = frozenset({TransportMode.CAR, TransportMode.FOOT, TransportMode.BIKE})
    result = engine.query(AnrQuery("a0", "b2", fx.departure, modes))
    assert not result.via_transit
    assert result.stats.csa_queries == 0
    assert result.best.arrival == result.road_only.arrival
    road = dijkstra(fx.road, "a0", "b2", modes)
    assert result.best.arrival - fx.departure == pytest.approx(road.cost)


def test_departure_after_all_trains_falls_back_to_road(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(AnrQuery("a0", "b2", 20 * 3600, ALL_MODES))
    assert not result.via_transit
    assert result.best.arrival == result.road_only.arrival


def test_geopoint_resolution(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(
        AnrQuery(
            GeoPoint.from_degrees(48.0002, 7.8002),  # next to a0
            GeoPoint.from_degrees(48.0002, 8.4198),  # next to b2
            fx.departure,
            ALL_MODES,
        )
    )
    assert result.reachable
    assert result.via_transit


def test_unknown_node_resolution_error(two_clusters):
    engine = make_engine(two_clusters)
    with pytest.raises(ResolutionError):
        engine.query(AnrQuery("missing", "b2", 0, ALL_MODES))


def test_adjacent_nodes_prefer_road(two_clusters):
    fx = two_clusters
    engine = make_engine(fx)
    result = engine.query(AnrQuery("a0", "a1", fx.departure, ALL_MODES))
    assert not result.via_transit
    assert result.best.arrival == result.road_only.arrival


# -- link-graph baseline extras ----------------------------------------------


def test_link_dijkstra_without_tram_equals_road(two_clusters):
    fx = two_clusters
    lg = build_link_graph(fx.road, fx.transit, fx.road_index)
    modes = frozenset({TransportMode.CAR, TransportMode.FOOT, TransportMode.BIKE})
    res = modified_dijkstra_link_graph(lg, "a0", "b2", modes, fx.departure)
    road = dijkstra(fx.road, "a0", "b2", modes)
    assert res.cost == pytest.approx(road.cost)
    assert all(kind == "r" for kind, _ in res.nodes)


def test_link_dijkstra_after_last_train_equals_road(two_clusters):
    fx = two_clusters
    lg = build_link_graph(fx.road, fx.transit, fx.road_index)
    res = modified_dijkstra_link_graph(lg, "a0", "b2", ALL_MODES, 20 * 3600)
    road = dijkstra(fx.road, "a0", "b2", ALL_MODES)
    assert res.cost == pytest.approx(road.cost)


def test_link_dijkstra_rides_the_train(two_clusters):
    fx = two_clusters
    lg = build_link_graph(fx.road, fx.transit, fx.road_index)
    res = modified_dijkstra_link_graph(lg, "a0", "b2", ALL_MODES, fx.departure)
    # wait for the 12:10 departure at the linked stop, ride 15 minutes,
    # exit at b2's stop: 25 minutes door to door
    assert res.cost == pytest.approx(25 * 60)
    assert any(kind == "t" for kind, _ in res.nodes)


def test_select_access_nodes_surface(two_clusters):
    from polyroute.model.spatial import NearestNodeIndex
    from polyroute.routing.anr import select_access_nodes

    fx = two_clusters
    point = fx.road.point("a0")
    assert select_access_nodes(fx.stop_index, point, 1) == ["SA1"]
    assert len(select_access_nodes(fx.stop_index, point, 99)) == 4
    assert select_access_nodes(NearestNodeIndex(), point, 3) == []
    with pytest.raises(ValueError):
        select_access_nodes(fx.stop_index, point, 0)
