"""Generic directed graph with static non-negative weights.

Both outgoing and incoming adjacency are kept so a reverse view costs
nothing to create.
"""
from __future__ import annotations

from typing import Any, Iterable, Iterator


class Digraph:
    def __init__(self) -> None:
        self._out: dict[Any, list[tuple[Any, float]]] = {}
        self._in: dict[Any, list[tuple[Any, float]]] = {}

    def add_node(self, u: Any) -> None:
        self._out.setdefault(u, [])
        self._in.setdefault(u, [])

    def add_edge(self, u: Any, w: float, v: Any) -> None:
        if w < 0:
            raise ValueError(f"negative edge weight {w} on ({u!r}, {v!r})")
        self.add_node(u)
        self.add_node(v)
        self._out[u].append((v, w))
        self._in[v].append((u, w))

    def __contains__(self, u: Any) -> bool:
        return u in self._out

    def node_count(self) -> int:
        return len(self._out)

    def edge_count(self) -> int:
        return sum(len(es) for es in self._out.values())

    def nodes(self) -> Iterable[Any]:
        return self._out.keys()

    def edges(self) -> Iterator[tuple[Any, float, Any]]:
        for u, es in self._out.items():
            for v, w in es:
                yield (u, w, v)

    # ``modes`` is accepted for interface parity with mode-labeled graphs
    # and ignored: a plain digraph has no transportation-mode labels.
    def out_edges(self, u: Any, modes: Any = None) -> list[tuple[Any, float]]:
        return self._out[u]

    def in_edges(self, u: Any, modes: Any = None) -> list[tuple[Any, float]]:
        return self._in[u]


class ReverseView:
    """Non-copying reversed view: edges (u, w, v) read as (v, w, u)."""

    def __init__(self, base: Any):
        self.base = base

    def __contains__(self, u: Any) -> bool:
        return u in self.base

    def node_count(self) -> int:
        return self.base.node_count()

    def edge_count(self) -> int:
        return self.base.edge_count()

    def nodes(self) -> Iterable[Any]:
        return self.base.nodes()

    def edges(self) -> Iterator[tuple[Any, float, Any]]:
        for u, w, v in self.base.edges():
            yield (v, w, u)

    def out_edges(self, u: Any, modes: Any = None) -> list[tuple[Any, float]]:
        return self.base.in_edges(u, modes)

    def in_edges(self, u: Any, modes: Any = None) -> list[tuple[Any, float]]:
        return self.base.out_edges(u, modes)


def reverse_view(g: Any) -> Any:
    """Reverse a graph in O(1); reversing twice yields the original."""
    if isinstance(g, ReverseView):
        return g.base
    return ReverseView(g)
