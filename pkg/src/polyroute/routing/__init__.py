from .graph import (
    Path,
    SearchResult,
    SearchStats,
    UnknownNodeError,
    a_star,
    dijkstra,
    distances_from,
    many_to_one,
    shortest_path,
)
from .heuristics import (
    LandmarkTable,
    crow_flies_heuristic,
    crow_flies_seconds,
    landmark_heuristic,
    landmark_heuristic_to,
    precompute_landmarks,
)
from .csa import CsaResult, CsaStats, FootLeg, Journey, TripLeg, UnknownStopError, csa_query
from .transit import transit_earliest_arrival
from .linkroute import LinkSearchResult, modified_dijkstra_link_graph
from .anr import (
    AnrEngine,
    select_access_nodes,
    AnrQuery,
    AnrResult,
    AnrStats,
    JourneyLeg,
    MultiModalJourney,
    ResolutionError,
)

__all__ = [
    "Path",
    "SearchResult",
    "SearchStats",
    "UnknownNodeError",
    "a_star",
    "dijkstra",
    "distances_from",
    "many_to_one",
    "shortest_path",
    "LandmarkTable",
    "crow_flies_heuristic",
    "crow_flies_seconds",
    "landmark_heuristic",
    "landmark_heuristic_to",
    "precompute_landmarks",
    "CsaResult",
    "CsaStats",
    "FootLeg",
    "Journey",
    "TripLeg",
    "UnknownStopError",
    "csa_query",
    "transit_earliest_arrival",
    "LinkSearchResult",
    "modified_dijkstra_link_graph",
    "AnrEngine",
    "select_access_nodes",
    "AnrQuery",
    "AnrResult",
    "AnrStats",
    "JourneyLeg",
    "MultiModalJourney",
    "ResolutionError",
]
