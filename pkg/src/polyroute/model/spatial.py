"""Nearest-neighbor index over payload-carrying geographic points.

Wraps a cover tree on the as-the-crow-flies metric.  The tree stores one
representative per distinct coordinate; payloads (node or stop ids) live
in a coordinate -> ids multimap, so coordinate collisions are legal.
Unlike the raw tree queries, an exact coordinate match is part of every
answer: the index answers "which payload is closest", not "which other
point".
"""
from __future__ import annotations

from typing import Hashable, Iterable

from ..covertree import CoverTree, DuplicatePointError, EmptyTreeError
from ..geo import GeoPoint, as_the_crow_flies


class NearestNodeIndex:
    def __init__(self) -> None:
        self._tree = CoverTree(as_the_crow_flies)
        self._ids_by_point: dict[GeoPoint, list[Hashable]] = {}

    @classmethod
    def build(cls, items: Iterable[tuple[Hashable, GeoPoint]]) -> "NearestNodeIndex":
        index = cls()
        for key, point in items:
            index.add(key, point)
        return index

    def add(self, key: Hashable, point: GeoPoint) -> None:
        ids = self._ids_by_point.setdefault(point, [])
        if not ids:
            try:
                self._tree.insert(point)
            except DuplicatePointError:
                # distinct GeoPoint values can still be metrically equal
                # (e.g. lng differing at the antimeridian); fold them in
                pass
        ids.append(key)

    def __len__(self) -> int:
        return sum(len(ids) for ids in self._ids_by_point.values())

    def is_empty(self) -> bool:
        return not self._ids_by_point

    def nearest(self, point: GeoPoint) -> Hashable:
        """Closest stored payload; an exact coordinate match wins."""
        exact = self._ids_by_point.get(point)
        if exact:
            return exact[0]
        try:
            best = self._tree.nearest(point)
        except EmptyTreeError:
            raise EmptyTreeError("index holds no points") from None
        if best is None:
            raise EmptyTreeError("index holds no points")
        return self._ids_by_point[best][0]

    def k_nearest(self, point: GeoPoint, k: int) -> list[Hashable]:
        """Up to k payloads ascending by distance, distance-0 matches first."""
        if self.is_empty():
            return []
        result: list[Hashable] = []
        exact = self._ids_by_point.get(point)
        if exact:
            result.extend(exact)
        for p in self._tree.k_nearest(point, k):
            result.extend(self._ids_by_point[p])
            if len(result) >= k:
                break
        return result[:k]

    def neighborhood(self, point: GeoPoint, radius: float) -> list[Hashable]:
        result: list[Hashable] = []
        exact = self._ids_by_point.get(point)
        if exact:
            result.extend(exact)
        if len(self._tree) > 0:
            for p in self._tree.neighborhood(point, radius):
                result.extend(self._ids_by_point[p])
        return result
