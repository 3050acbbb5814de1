"""Transportation modes and their speed ordering."""
from __future__ import annotations

from enum import IntEnum


class TransportMode(IntEnum):
    """Available modes, ordered slowest to fastest: foot < bike < tram < car.

    The integer order doubles as the fastest-mode tie-break on edges
    usable by several modes.
    """

    FOOT = 0
    BIKE = 1
    TRAM = 2
    CAR = 3

    def __str__(self) -> str:  # wire format uses lower-case names
        return self.name.lower()


ALL_MODES: frozenset[TransportMode] = frozenset(TransportMode)
ROAD_MODES: frozenset[TransportMode] = frozenset(
    {TransportMode.FOOT, TransportMode.BIKE, TransportMode.CAR}
)

_BY_NAME = {m.name.lower(): m for m in TransportMode}


def parse_mode(name: str) -> TransportMode:
    try:
        return _BY_NAME[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown transportation mode {name!r}") from None


def mode_mask(modes: frozenset[TransportMode] | set[TransportMode] | None) -> int:
    """Bitmask form used in adjacency hot loops; None means all modes."""
    if modes is None:
        return 0b1111
    mask = 0
    for m in modes:
        mask |= 1 << m
    return mask
