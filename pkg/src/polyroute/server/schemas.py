"""Request and response shapes of the HTTP API.

Coordinates cross the wire in degrees; conversion to radians happens at
this boundary.
"""
from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class Coordinate(BaseModel):
    lat: float  # degrees
    lng: float


class RouteRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dep_time: Union[int, str] = Field(alias="depTime")
    modes: list[str]
    from_: Union[int, str, Coordinate] = Field(alias="from")
    to: Union[int, str, Coordinate]


class LegModel(BaseModel):
    mode: str
    coordinates: list[list[float]]  # [[lat, lng], ...] in degrees
    departure: float
    arrival: float
    name: Optional[str] = None


class JourneyModel(BaseModel):
    legs: list[LegModel]
    departure: float
    arrival: float
    totalCost: float


class RouteResponse(BaseModel):
    journeys: list[JourneyModel]


class NearestResponse(BaseModel):
    id: Union[int, str]
    lat: float
    lng: float
