"""Planarizations: a graph plus an ordered list of crossings along every edge.

A crossing between original edges ``e`` and ``f`` becomes a degree-4 dummy
vertex splitting both.  The public :class:`Planarization` is an immutable
value; :class:`HostState` is the mutable version the search and the
heuristic update in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import networkx as nx

from .graph import Graph, GraphError


@dataclass(frozen=True)
class Planarization:
    """``order[e]`` lists the edges crossing ``e``, walking from ``graph.edges[e][0]``."""

    graph: Graph
    order: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        order = tuple(tuple(int(f) for f in seq) for seq in self.order)
        if len(order) != self.graph.m:
            raise GraphError("one crossing sequence per edge required")
        object.__setattr__(self, "order", order)

    @classmethod
    def empty(cls, g: Graph) -> "Planarization":
        return cls(g, tuple(() for _ in g.edges))

    @cached_property
    def crossings(self) -> tuple[tuple[int, int], ...]:
        """Crossing pairs ``(e, f)`` with ``e < f``, sorted."""
        return tuple(sorted({(min(e, f), max(e, f)) for e, seq in enumerate(self.order) for f in seq}))

    @property
    def k(self) -> int:
        return len(self.crossings)

    def position(self, e: int, f: int) -> int:
        """Index of the crossing with ``f`` along ``e`` (0 = nearest the first endpoint)."""
        return self.order[e].index(f)

    def crossing_list(self) -> list[tuple[int, int, int, int]]:
        """``(e, position on e, f, position on f)`` for every crossing."""
        return [(e, self.position(e, f), f, self.position(f, e)) for e, f in self.crossings]

    def problems(self) -> list[str]:
        """Violations of the good-drawing rules; empty when the record is sound."""
        g = self.graph
        out = []
        for e, seq in enumerate(self.order):
            if len(set(seq)) != len(seq):
                out.append(f"edge {g.edges[e]} crosses some edge twice")
            for f in seq:
                if not 0 <= f < g.m:
                    out.append(f"edge index {f} out of range")
                    continue
                if f == e:
                    out.append(f"edge {g.edges[e]} crosses itself")
                elif g.edges_adjacent(e, f):
                    out.append(f"adjacent edges {g.edges[e]} and {g.edges[f]} cross")
                if self.order[f].count(e) != 1:
                    out.append(f"crossing {g.edges[e]} x {g.edges[f]} is not recorded on both edges")
        return out

    def dummy(self, e: int, f: int) -> int:
        e, f = min(e, f), max(e, f)
        return self.graph.n + e * self.graph.m + f

    def host(self) -> nx.Graph:
        """The planarized graph; dummies are numbered ``n + e*m + f`` for ``e < f``."""
        g = self.graph
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        for e, (u, v) in enumerate(g.edges):
            path = [u] + [self.dummy(e, f) for f in self.order[e]] + [v]
            nx.add_path(h, path)
        return h

    def host_graph(self) -> tuple[Graph, list[int]]:
        """Host as a :class:`Graph` on ``0..N-1`` plus the node id of each index."""
        h = self.host()
        ids = sorted(h.nodes())
        pos = {x: i for i, x in enumerate(ids)}
        return Graph(len(ids), tuple((pos[a], pos[b]) for a, b in h.edges())), ids

    def relabel(self, perm) -> "Planarization":
        """The same certificate for ``graph.relabel(perm)``."""
        g2 = self.graph.relabel(perm)
        new_index = [g2.edge_index[tuple(sorted((perm[u], perm[v])))] for u, v in self.graph.edges]
        order: list[tuple[int, ...]] = [()] * g2.m
        for e, (u, v) in enumerate(self.graph.edges):
            seq = [new_index[f] for f in self.order[e]]
            a = perm[u]
            if g2.edges[new_index[e]][0] != a:
                seq.reverse()
            order[new_index[e]] = tuple(seq)
        return Planarization(g2, tuple(order))

    def to_json(self) -> dict:
        return {
            "crossings": [list(c) for c in self.crossings],
            "order": {f"{u}-{v}": list(seq) for (u, v), seq in zip(self.graph.edges, self.order) if seq},
        }

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "Planarization":
        order: list[tuple[int, ...]] = [()] * g.m
        for key, seq in data.get("order", {}).items():
            u, v = (int(x) for x in key.split("-"))
            if (u, v) not in g.edge_index:
                raise GraphError(f"certificate refers to non-edge {u}-{v}")
            order[g.edge_index[(u, v)]] = tuple(int(f) for f in seq)
        return cls(g, tuple(order))


def verify_certificate(g: Graph, p: Planarization) -> bool:
    """Rebuild the host from scratch and check goodness, degrees and planarity."""
    if p.graph.n != g.n or p.graph.edges != g.edges:
        return False
    if p.problems():
        return False
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for e, (u, v) in enumerate(g.edges):
        nodes = [u] + [("x",) + tuple(sorted((e, f))) for f in p.order[e]] + [v]
        for a, b in zip(nodes, nodes[1:]):
            if h.has_edge(a, b):
                return False
            h.add_edge(a, b)
    for x in h.nodes():
        want = g.degree(x) if isinstance(x, int) else 4
        if h.degree(x) != want:
            return False
    return nx.check_planarity(h)[0]


class HostState:
    """Mutable planarization with undo, used by search and insertion."""

    def __init__(self, g: Graph, p: Optional[Planarization] = None) -> None:
        self.g = g
        self.n, self.m = g.n, g.m
        self.paths: list[list[int]] = [[u, v] for u, v in g.edges]
        self.host = nx.Graph()
        self.host.add_nodes_from(range(g.n))
        self.host.add_edges_from(g.edges)
        self.owner: dict[tuple[int, int], int] = {e: i for i, e in enumerate(g.edges)}
        self.crossed: set[tuple[int, int]] = set()
        self.history: list[tuple] = []
        if p is not None:
            self._load(p)

    def _load(self, p: Planarization) -> None:
        # insert crossings edge by edge in path order
        for e, seq in enumerate(p.order):
            for f in seq:
                a, b = min(e, f), max(e, f)
                if (a, b) in self.crossed:
                    continue
                je = self._slot(e, f, p)
                jf = self._slot(f, e, p)
                self.add_crossing(e, je, f, jf)

    def _slot(self, e: int, f: int, p: Planarization) -> int:
        """Segment of ``e`` where its crossing with ``f`` belongs given those already placed."""
        target = p.order[e].index(f)
        placed = [self.partner(e, x) for x in self.paths[e][1:-1]]
        before = sum(1 for q in placed if p.order[e].index(q) < target)
        return before

    def dummy(self, e: int, f: int) -> int:
        e, f = min(e, f), max(e, f)
        return self.n + e * self.m + f

    def is_dummy(self, x: int) -> bool:
        return x >= self.n

    def dummy_edges(self, x: int) -> tuple[int, int]:
        return divmod(x - self.n, self.m)

    def partner(self, e: int, x: int) -> int:
        a, b = self.dummy_edges(x)
        return b if a == e else a

    @staticmethod
    def _k(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def segment_owner(self, a: int, b: int) -> int:
        return self.owner[self._k(a, b)]

    def segment_index(self, e: int, a: int, b: int) -> int:
        path = self.paths[e]
        i = path.index(a)
        j = path.index(b)
        if abs(i - j) != 1:
            raise GraphError("not a segment")
        return min(i, j)

    def can_cross(self, e: int, f: int) -> bool:
        return e != f and self._k(e, f) not in self.crossed and not self.g.edges_adjacent(e, f)

    def add_crossing(self, e: int, je: int, f: int, jf: int) -> int:
        x = self.dummy(e, f)
        for edge, j in ((e, je), (f, jf)):
            path = self.paths[edge]
            a, b = path[j], path[j + 1]
            self.host.remove_edge(a, b)
            del self.owner[self._k(a, b)]
            path.insert(j + 1, x)
            self.host.add_edge(a, x)
            self.host.add_edge(x, b)
            self.owner[self._k(a, x)] = edge
            self.owner[self._k(x, b)] = edge
        self.crossed.add(self._k(e, f))
        self.history.append((e, je, f, jf, x))
        return x

    def undo(self) -> None:
        e, je, f, jf, x = self.history.pop()
        for edge, j in ((f, jf), (e, je)):
            path = self.paths[edge]
            a, b = path[j], path[j + 2]
            del path[j + 1]
            del self.owner[self._k(a, x)]
            del self.owner[self._k(x, b)]
            self.owner[self._k(a, b)] = edge
            self.host.add_edge(a, b)
        self.host.remove_node(x)
        self.crossed.discard(self._k(e, f))

    @property
    def count(self) -> int:
        return len(self.crossed)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.partner(e, x) for x in path[1:-1]) for e, path in enumerate(self.paths))

    def freeze(self) -> Planarization:
        return Planarization(self.g, self.key())

    def segments(self, e: int) -> list[tuple[int, int]]:
        p = self.paths[e]
        return list(zip(p, p[1:]))
