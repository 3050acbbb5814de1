"""Cover tree: a leveled metric-space index for nearest-neighbor queries.

Level radii are powers of two.  A node at level i covers its children at
level i-1 within 2^i, and points sharing a level are pairwise more than
2^i apart.  Every node is implicitly its own child one level further
down, so only the topmost occurrence of each point is stored explicitly.

Construction is single-writer; once built, concurrent read-only queries
are safe.
"""
from __future__ import annotations

import heapq
import math
from typing import Any, Callable, Iterator, Optional

Metric = Callable[[Any, Any], float]


class EmptyTreeError(LookupError):
    """Query issued against a tree with no points."""


class DuplicatePointError(ValueError):
    """Point at metric distance 0 to a stored point was inserted."""


class _Node:
    __slots__ = ("point", "level", "children")

    def __init__(self, point: Any, level: Optional[int]):
        self.point = point
        self.level = level
        # explicit children keyed by the level they were created at
        self.children: dict[int, list[_Node]] = {}

    def attach(self, child: "_Node") -> None:
        self.children.setdefault(child.level, []).append(child)


def _level_for(d: float) -> int:
    """Smallest integer j with 2^(j-1) < d <= 2^j."""
    j = math.ceil(math.log2(d))
    while 2.0 ** j < d:
        j += 1
    while 2.0 ** (j - 1) >= d:
        j -= 1
    return j


class CoverTree:
    """Metric-space index supporting nearest / k-nearest / range queries.

    ``metric`` must satisfy the metric axioms; in particular d(x, y) = 0
    must hold exactly when x and y are the same point.  Points at metric
    distance 0 to a stored point are rejected; callers that need several
    payloads per coordinate keep a coordinate -> payload multimap beside
    the tree.

    Queries exclude the query point itself: a stored point at distance 0
    is never part of an answer.
    """

    def __init__(self, metric: Metric):
        self._metric = metric
        self._root: Optional[_Node] = None
        self._max_level: Optional[int] = None
        self._min_level: Optional[int] = None
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def max_level(self) -> Optional[int]:
        return self._max_level

    @property
    def min_level(self) -> Optional[int]:
        return self._min_level

    # -- construction --------------------------------------------------

    def insert(self, point: Any) -> None:
        if self._root is None:
            self._root = _Node(point, None)
            self._size = 1
            return
        root = self._root
        d_root = self._metric(point, root.point)
        if d_root == 0.0:
            raise DuplicatePointError(f"point {point!r} already stored")

        if self._size == 1:
            level = _level_for(d_root)
            root.level = level
            self._max_level = level
            self._min_level = level - 1
            root.attach(_Node(point, level - 1))
            self._size = 2
            return

        assert self._max_level is not None and self._min_level is not None
        # Descend one level at a time, remembering the candidate set seen
        # at each level; stop once the point is separated from every
        # candidate child at the current scale.
        cands: list[tuple[_Node, float]] = [(root, d_root)]
        stack: list[tuple[int, list[tuple[_Node, float]]]] = []
        i = self._max_level
        while True:
            kids = list(cands)
            child_level = i - 1
            for node, _ in cands:
                for child in node.children.get(child_level, ()):
                    d = self._metric(point, child.point)
                    if d == 0.0:
                        raise DuplicatePointError(f"point {point!r} already stored")
                    kids.append((child, d))
            stack.append((i, cands))
            radius = 2.0 ** i
            if min(d for _, d in kids) > radius:
                break
            cands = [(n, d) for n, d in kids if d <= radius]
            i -= 1

        # Unwind: the lowest level whose candidate set still covers the
        # point receives it as a child one level below.
        for level, level_cands in reversed(stack):
            parent, d = min(level_cands, key=lambda nd: nd[1])
            if d <= 2.0 ** level:
                parent.attach(_Node(point, level - 1))
                self._min_level = min(self._min_level, level - 1)
                self._size += 1
                return

        # Point lies outside the root's coverage: raise the root level.
        new_level = _level_for(d_root)
        root.level = new_level
        self._max_level = new_level
        root.attach(_Node(point, new_level - 1))
        self._min_level = min(self._min_level, new_level - 1)
        self._size += 1

    # -- queries ---------------------------------------------------------

    def _require_nonempty(self) -> _Node:
        if self._root is None:
            raise EmptyTreeError("cover tree is empty")
        return self._root

    def _expand(
        self, cands: list[tuple[_Node, float]], point: Any, child_level: int
    ) -> list[tuple[_Node, float]]:
        kids = list(cands)
        metric = self._metric
        for node, _ in cands:
            for child in node.children.get(child_level, ()):
                kids.append((child, metric(point, child.point)))
        return kids

    def _leaf_candidates(
        self, point: Any, bound: Callable[[list[tuple[_Node, float]], float], float]
    ) -> list[tuple[_Node, float]]:
        """Run the shared level descent; ``bound(kids, radius)`` yields the
        per-level pruning threshold."""
        root = self._require_nonempty()
        cands = [(root, self._metric(point, root.point))]
        if self._max_level is None:  # single stored point
            return cands
        assert self._min_level is not None
        for i in range(self._max_level, self._min_level, -1):
            kids = self._expand(cands, point, i - 1)
            threshold = bound(kids, 2.0 ** i)
            cands = [(n, d) for n, d in kids if d <= threshold]
        return cands

    def nearest(self, point: Any) -> Any:
        """A stored point with minimal positive distance to ``point``.

        Returns None when the only stored point coincides with the query.
        """

        def bound(kids: list[tuple[_Node, float]], radius: float) -> float:
            best = min((d for _, d in kids if d > 0.0), default=math.inf)
            return best + radius

        eligible = [(d, n) for n, d in self._leaf_candidates(point, bound) if d > 0.0]
        if not eligible:
            return None
        return min(eligible, key=lambda dn: dn[0])[1].point

    def k_nearest(self, point: Any, k: int) -> list[Any]:
        """The up-to-k stored points closest to ``point``, ascending."""
        if k < 1:
            raise ValueError("k must be >= 1")

        def bound(kids: list[tuple[_Node, float]], radius: float) -> float:
            dists = heapq.nsmallest(k, (d for _, d in kids if d > 0.0))
            if not dists:
                return math.inf
            return dists[-1] + radius

        eligible = [(d, i, n) for i, (n, d) in enumerate(self._leaf_candidates(point, bound)) if d > 0.0]
        eligible.sort(key=lambda e: (e[0], e[1]))
        return [n.point for _, _, n in eligible[:k]]

    def neighborhood(self, point: Any, radius: float) -> list[Any]:
        """All stored points other than ``point`` within ``radius``."""
        if radius < 0:
            raise ValueError("radius must be >= 0")

        def bound(kids: list[tuple[_Node, float]], level_radius: float) -> float:
            return radius + level_radius

        return [
            n.point
            for n, d in self._leaf_candidates(point, bound)
            if 0.0 < d <= radius
        ]

    # -- structural inspection -------------------------------------------

    def iter_nodes(self) -> Iterator[tuple[Any, Optional[int], Optional[Any], Optional[int]]]:
        """Yield (point, level, parent_point, parent_level) for every node.

        Levels are the explicit creation levels; a point is implicitly
        present at every level below its own.  Intended for invariant
        audits and diagnostics.
        """
        if self._root is None:
            return
        todo: list[tuple[_Node, Optional[_Node]]] = [(self._root, None)]
        while todo:
            node, parent = todo.pop()
            yield (
                node.point,
                node.level,
                parent.point if parent is not None else None,
                parent.level if parent is not None else None,
            )
            for kids in node.children.values():
                for child in kids:
                    todo.append((child, node))
