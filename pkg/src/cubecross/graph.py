"""Immutable simple graphs and the structural queries built on them."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

VertexSubset = Union[int, Iterable[int]]
"""A vertex subset: either a bitmask or an iterable of vertex indices."""


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Labeled undirected simple graph on vertices ``0..n-1``.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``, in sorted
    order, so two graphs with the same edge set compare equal.  ``labels``
    are metadata only (bit strings for the cube families).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[str, ...]] = None
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise GraphError(f"parallel edge {key}")
            norm.add(key)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise GraphError("one label per vertex required")
            if len(set(labels)) != self.n:
                raise GraphError("labels must be distinct")
            if len({len(s) for s in labels}) > 1:
                raise GraphError("labels must have equal length")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None, name: str = "") -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), labels, name)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def is_regular(self, d: Optional[int] = None) -> bool:
        degs = set(self.degrees())
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index_of_label(self, s: str) -> int:
        if self.labels is None:
            raise GraphError("graph has no labels")
        return self.labels.index(s)

    def edges_adjacent(self, i: int, j: int) -> bool:
        """True when edges ``i`` and ``j`` share an endpoint (or are equal)."""
        a, b = self.edges[i], self.edges[j]
        return bool({a[0], a[1]} & {b[0], b[1]})

    def relabel(self, perm: Sequence[int], name: str = "") -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``; labels travel along."""
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for v in range(self.n):
                labels[perm[v]] = self.labels[v]
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges), labels, name or self.name)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


# ---------------------------------------------------------------------------
# Subsets
# ---------------------------------------------------------------------------


def subset_list(g: Graph, s: VertexSubset) -> list[int]:
    """Sorted vertex list for a bitmask or iterable; validates indices."""
    if isinstance(s, int):
        if s < 0 or s >> g.n:
            raise GraphError(f"bitmask {s:#x} has bits outside 0..{g.n - 1}")
        return [v for v in range(g.n) if (s >> v) & 1]
    out = sorted(set(int(v) for v in s))
    if out and (out[0] < 0 or out[-1] >= g.n):
        raise GraphError(f"subset {out} not within 0..{g.n - 1}")
    return out


def subset_mask(g: Graph, s: VertexSubset) -> int:
    return sum(1 << v for v in subset_list(g, s))


def complement(g: Graph, s: VertexSubset) -> list[int]:
    chosen = set(subset_list(g, s))
    return [v for v in range(g.n) if v not in chosen]


def induced_subgraph(g: Graph, s: VertexSubset) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``s`` plus the map new index -> index in ``g``."""
    verts = subset_list(g, s)
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    labels = None if g.labels is None else tuple(g.labels[v] for v in verts)
    return Graph(len(verts), tuple(edges), labels), verts


def boundary_and_counts(g: Graph, x: VertexSubset, y: VertexSubset) -> tuple[list[tuple[int, int]], int]:
    """``E[X, Y]`` and ``e(X, Y)``: edges with one end in X and the other in Y.

    X and Y may overlap; an edge with both ends in ``X & Y`` is counted once.
    With ``y = complement(x)`` this is the cut ``∂(X)``.
    """
    xs = set(subset_list(g, x))
    ys = set(subset_list(g, y))
    out = [(u, v) for u, v in g.edges if (u in xs and v in ys) or (v in xs and u in ys)]
    return out, len(out)


def edges_within(g: Graph, s: VertexSubset) -> int:
    """e(X): number of edges with both ends in X."""
    return boundary_and_counts(g, s, s)[1]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == g.n


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        todo = [s]
        while todo:
            v = todo.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    todo.append(w)
        out.append(sorted(comp))
    return out


# ---------------------------------------------------------------------------
# Path / cycle classification
# ---------------------------------------------------------------------------


def classify_induced(g: Graph, s: VertexSubset) -> str:
    """``"P<k>"`` if ⟨S⟩ is a path on k vertices, ``"C<k>"`` if a k-cycle, else ``"other"``.

    A single vertex is ``P1``; a triangle is ``C3``.
    """
    verts = subset_list(g, s)
    if not verts:
        raise GraphError("classify_induced needs a nonempty subset")
    h, _ = induced_subgraph(g, verts)
    k = h.n
    degs = h.degrees()
    if not is_connected(h):
        return "other"
    if h.m == k - 1 and max(degs) <= 2:
        return f"P{k}"
    if k >= 3 and h.m == k and all(d == 2 for d in degs):
        return f"C{k}"
    return "other"


def is_path(g: Graph, s: VertexSubset, k: Optional[int] = None) -> bool:
    c = classify_induced(g, s)
    return c.startswith("P") and (k is None or c == f"P{k}")


def is_cycle(g: Graph, s: VertexSubset, k: Optional[int] = None) -> bool:
    c = classify_induced(g, s)
    return c.startswith("C") and (k is None or c == f"C{k}")


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests), BFS from every vertex."""
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            v = q.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in g.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def find_c4_partitions(g: Graph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All unordered partitions {V1, V2} of an 8-vertex graph with ⟨V1⟩ ≅ ⟨V2⟩ ≅ C4."""
    if g.n != 8:
        raise GraphError(f"find_c4_partitions needs 8 vertices, got {g.n}")
    out = []
    rest = list(range(1, 8))
    for trio in itertools.combinations(rest, 3):
        v1 = (0,) + trio
        v2 = tuple(v for v in range(8) if v not in v1)
        if is_cycle(g, v1, 4) and is_cycle(g, v2, 4):
            out.append((v1, v2))
    return out
