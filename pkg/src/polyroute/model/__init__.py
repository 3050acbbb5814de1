from .modes import TransportMode, ALL_MODES, ROAD_MODES, parse_mode
from .graph import Digraph, ReverseView, reverse_view
from .road import RoadEdge, RoadGraph, edge_weight
from .timetable import Connection, Footpath, Timetable, Violation, validate_timetable
from .transit import (
    EventType,
    TransitGraph,
    TransitNode,
    TripEvent,
    assemble_transit_graph,
)
from .spatial import NearestNodeIndex
from .link import LinkGraph, build_link_graph

__all__ = [
    "TransportMode",
    "ALL_MODES",
    "ROAD_MODES",
    "parse_mode",
    "Digraph",
    "ReverseView",
    "reverse_view",
    "RoadEdge",
    "RoadGraph",
    "edge_weight",
    "Connection",
    "Footpath",
    "Timetable",
    "Violation",
    "validate_timetable",
    "EventType",
    "TransitGraph",
    "TransitNode",
    "TripEvent",
    "assemble_transit_graph",
    "NearestNodeIndex",
    "LinkGraph",
    "build_link_graph",
]
