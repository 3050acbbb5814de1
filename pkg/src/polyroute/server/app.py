"""HTTP query service: journey planning and nearest-node lookup.

Stateless JSON over HTTP on top of immutable, pre-built models; the
listener only opens once building finished.  The optional static
directory serves the web front end; API routes take precedence.
"""
from __future__ import annotations

import logging
import re
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Query
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..engine import RouteModels
from ..geo import GeoPoint
from ..model.modes import ROAD_MODES, TransportMode, parse_mode
from ..routing.anr import AnrQuery, MultiModalJourney, ResolutionError, road_journey
from ..routing.graph import UnknownNodeError, shortest_path
from .schemas import (
    Coordinate,
    JourneyModel,
    LegModel,
    NearestResponse,
    RouteRequest,
    RouteResponse,
)

logger = logging.getLogger(__name__)

_TIME_OF_DAY = re.compile(r"^(\d{1,2}):(\d{2})(?::(\d{2}))?$")
_ISO_WITH_TIME = re.compile(r"^\d{4}-\d{2}-\d{2}[T ](\d{2}):(\d{2})(?::(\d{2}))?")


def parse_departure_time(value: Union[int, str]) -> int:
    """Seconds of the service day from an integer, HH:MM[:SS] or an ISO
    local timestamp (whose date part is ignored: one service day)."""
    if isinstance(value, int):
        if value < 0:
            raise ValueError("departure time must be >= 0")
        return value
    text = value.strip()
    if text.isdigit():
        return int(text)
    m = _TIME_OF_DAY.match(text) or _ISO_WITH_TIME.match(text)
    if not m:
        raise ValueError(f"unparseable departure time {value!r}")
    h, mi, s = int(m.group(1)), int(m.group(2)), int(m.group(3) or 0)
    if mi >= 60 or s >= 60:
        raise ValueError(f"unparseable departure time {value!r}")
    return h * 3600 + mi * 60 + s


def _journey_model(journey: MultiModalJourney) -> JourneyModel:
    legs = [
        LegModel(
            mode=str(leg.mode),
            coordinates=[[p.lat_deg, p.lng_deg] for p in leg.coordinates],
            departure=leg.departure,
            arrival=leg.arrival,
            name=leg.name,
        )
        for leg in journey.legs
    ]
    return JourneyModel(
        legs=legs,
        departure=journey.departure,
        arrival=journey.arrival,
        totalCost=journey.total_cost,
    )


def create_app(models: Optional[RouteModels], static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="polyroute", version="0.1.0")
    app.state.models = models

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def require_models() -> RouteModels:
        m: Optional[RouteModels] = app.state.models
        if m is None or m.road_index.is_empty():
            raise HTTPException(status_code=503, detail="models not built yet")
        return m

    @app.post("/route", response_model=RouteResponse, response_model_exclude_none=True)
    def handle_route(request: RouteRequest) -> RouteResponse:
        m = require_models()
        try:
            departure = parse_departure_time(request.dep_time)
            modes = frozenset(parse_mode(name) for name in request.modes)
            if not modes:
                raise ValueError("mode list must be non-empty")
            source = _resolve_endpoint(m, request.from_)
            target = _resolve_endpoint(m, request.to)
        except (ValueError, ResolutionError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        if source == target:
            point = m.road.point(source)
            leg = LegModel(
                mode=str(TransportMode.FOOT),
                coordinates=[[point.lat_deg, point.lng_deg]] * 2,
                departure=departure,
                arrival=departure,
            )
            return RouteResponse(
                journeys=[
                    JourneyModel(
                        legs=[leg], departure=departure, arrival=departure, totalCost=0.0
                    )
                ]
            )

        journeys: list[JourneyModel] = []
        if m.anr is not None:
            try:
                result = m.anr.query(AnrQuery(source, target, departure, modes))
            except (ResolutionError, UnknownNodeError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            if result.best is not None:
                journeys.append(_journey_model(result.best))
            if (
                result.road_only is not None
                and result.best is not result.road_only
            ):
                journeys.append(_journey_model(result.road_only))
        else:
            road_modes = modes & ROAD_MODES
            if road_modes:
                res = shortest_path(m.road, source, target, road_modes)
                if res.reachable:
                    journeys.append(
                        _journey_model(road_journey(m.road, res.path, road_modes, departure))
                    )
        return RouteResponse(journeys=journeys)

    @app.get("/nearest", response_model=NearestResponse)
    def handle_nearest(lat: float = Query(...), lng: float = Query(...)) -> NearestResponse:
        m = require_models()
        try:
            point = GeoPoint.from_degrees(lat, lng)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        node_id = m.road_index.nearest(point)
        node_point = m.road.point(node_id)
        return NearestResponse(id=node_id, lat=node_point.lat_deg, lng=node_point.lng_deg)

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def _resolve_endpoint(m: RouteModels, endpoint: Union[int, str, Coordinate]):
    if isinstance(endpoint, Coordinate):
        point = GeoPoint.from_degrees(endpoint.lat, endpoint.lng)
        return m.road_index.nearest(point)
    if endpoint in m.road:
        return endpoint
    # OSM ids arrive as strings through JSON sometimes
    if isinstance(endpoint, str):
        try:
            as_int = int(endpoint)
        except ValueError as exc:
            raise ResolutionError(f"unknown road node {endpoint!r}") from exc
        if as_int in m.road:
            return as_int
    raise ResolutionError(f"unknown road node {endpoint!r}")
