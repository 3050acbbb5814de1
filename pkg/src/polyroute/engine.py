"""Model building: parse the input data once, then serve queries from
immutable structures.  Built models can be snapshotted to disk and
reloaded, skipping the parse on restart."""
from __future__ import annotations

import logging
import pickle
from dataclasses import dataclass, field
from datetime import date as Date
from pathlib import Path
from typing import Optional

from .ingest.gtfs import GtfsConfig, build_timetable, build_transit_graph, parse_gtfs
from .ingest.osm import DEFAULT_FILTER, OsmFilter, parse_osm
from .model.link import LinkGraph, build_link_graph
from .model.road import RoadGraph
from .model.spatial import NearestNodeIndex
from .model.timetable import StopId, Timetable
from .model.transit import TransitGraph
from .routing.anr import AnrEngine

logger = logging.getLogger(__name__)

SNAPSHOT_VERSION = 1


class SnapshotVersionError(RuntimeError):
    pass


@dataclass
class RouteModels:
    road: RoadGraph
    road_index: NearestNodeIndex
    timetable: Optional[Timetable] = None
    transit: Optional[TransitGraph] = None
    stop_index: Optional[NearestNodeIndex] = None
    stop_link: dict[StopId, object] = field(default_factory=dict)
    anr: Optional[AnrEngine] = None
    _link: Optional[LinkGraph] = None

    @property
    def link(self) -> Optional[LinkGraph]:
        if self._link is None and self.transit is not None:
            self._link = build_link_graph(self.road, self.transit, self.road_index)
        return self._link


def build_models(
    osm_path: str | Path,
    gtfs_path: str | Path | None = None,
    service_date: Optional[Date] = None,
    osm_filter: OsmFilter = DEFAULT_FILTER,
    gtfs_config: Optional[GtfsConfig] = None,
) -> RouteModels:
    logger.info("parsing OSM data from %s", osm_path)
    osm_result = parse_osm(osm_path, osm_filter)
    road = osm_result.graph
    logger.info(
        "road graph: %d nodes, %d edges (%d warnings)",
        road.node_count(),
        road.edge_count(),
        len(osm_result.warnings),
    )
    road_index = NearestNodeIndex.build((n, road.point(n)) for n in road.nodes())

    models = RouteModels(road=road, road_index=road_index)
    if gtfs_path is None:
        return models

    config = gtfs_config or GtfsConfig(service_date=service_date)
    if service_date is not None and config.service_date is None:
        config = GtfsConfig(
            service_date=service_date,
            footpath_radius_m=config.footpath_radius_m,
            transfer_buffer_s=config.transfer_buffer_s,
            walk_speed_kmh=config.walk_speed_kmh,
            footpath_cap=config.footpath_cap,
            transfer_duration_s=config.transfer_duration_s,
        )
    logger.info("parsing GTFS feed from %s", gtfs_path)
    feed = parse_gtfs(gtfs_path, config)
    models.timetable = build_timetable(feed, config)
    models.transit = build_transit_graph(feed, config)
    logger.info(
        "timetable: %d stops, %d connections, %d footpaths; transit graph: %d nodes",
        len(models.timetable.stops),
        len(models.timetable.connections),
        len(models.timetable.footpaths),
        models.transit.node_count(),
    )
    models.stop_index = NearestNodeIndex.build(
        (s, p) for s, p in models.timetable.stops.items()
    )
    if road.node_count() > 0:
        models.stop_link = {
            s: road_index.nearest(p) for s, p in models.timetable.stops.items()
        }
        models.anr = AnrEngine(
            road=road,
            timetable=models.timetable,
            stop_index=models.stop_index,
            stop_link=models.stop_link,
            road_index=road_index,
        )
    return models


def save_models(models: RouteModels, path: str | Path) -> None:
    """Write a versioned snapshot of the built models."""
    with open(path, "wb") as fh:
        pickle.dump({"version": SNAPSHOT_VERSION, "models": models}, fh)


def load_models(path: str | Path) -> RouteModels:
    with open(path, "rb") as fh:
        payload = pickle.load(fh)
    version = payload.get("version") if isinstance(payload, dict) else None
    if version != SNAPSHOT_VERSION:
        raise SnapshotVersionError(
            f"snapshot {path} has version {version!r}, expected {SNAPSHOT_VERSION}"
        )
    return payload["models"]
