"""Isomorphism and automorphism search for small graphs.

Colour refinement (1-dimensional Weisfeiler-Leman) splits vertices by
iterated neighbourhood degree multisets; the backtracking kernel then only
tries colour-preserving assignments.  Every returned map is re-checked edge by
edge before it leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .graph import Graph


@dataclass(frozen=True)
class IsoMapping:
    """Verified bijection ``mapping[v]`` from one graph's vertices to another's."""

    mapping: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def inverse(self) -> "IsoMapping":
        inv = [0] * len(self.mapping)
        for v, w in enumerate(self.mapping):
            inv[w] = v
        return IsoMapping(tuple(inv))


@dataclass(frozen=True)
class AutomorphismGroup:
    order: int
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]


def verify_mapping(g: Graph, h: Graph, mapping) -> bool:
    if g.n != h.n or g.m != h.m or len(mapping) != g.n:
        return False
    if sorted(mapping) != list(range(h.n)):
        return False
    return all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges)


def _refine(graphs: list[Graph]) -> list[list[int]]:
    """Joint stable colouring, so colours are comparable across the graphs."""
    colours = [[len(g.adj[v]) for v in range(g.n)] for g in graphs]
    while True:
        sigs = [
            [(col[v], tuple(sorted(col[w] for w in g.adj[v]))) for v in range(g.n)]
            for g, col in zip(graphs, colours)
        ]
        palette = {s: i for i, s in enumerate(sorted({s for row in sigs for s in row}))}
        new = [[palette[s] for s in row] for row in sigs]
        if all(len(set(a)) == len(set(b)) for a, b in zip(colours, new)):
            return new
        colours = new


def _search_order(g: Graph, colours: list[int]) -> list[int]:
    """Vertex order for backtracking: rare colours first, then stay connected."""
    count: dict[int, int] = {}
    for c in colours:
        count[c] = count.get(c, 0) + 1
    order: list[int] = []
    placed = set()
    while len(order) < g.n:
        frontier = [v for v in range(g.n) if v not in placed and any(w in placed for w in g.adj[v])]
        pool = frontier or [v for v in range(g.n) if v not in placed]
        v = min(pool, key=lambda u: (count[colours[u]], -sum(w in placed for w in g.adj[u]), u))
        order.append(v)
        placed.add(v)
    return order


def _adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


def is_isomorphic(g: Graph, h: Graph) -> Optional[IsoMapping]:
    """A verified isomorphism ``g -> h``, or ``None`` if none exists."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg, ch = _refine([g, h])
    if sorted(cg) != sorted(ch):
        return None
    order = _search_order(g, cg)
    found = _kernels.match_all(_adjacency(g), _adjacency(h), cg, ch, order, 1)
    if len(found) == 0:
        return None
    mapping = tuple(int(x) for x in found[0])
    if not verify_mapping(g, h, mapping):  # pragma: no cover - kernel bug guard
        raise AssertionError("isomorphism kernel returned an invalid map")
    return IsoMapping(mapping)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def _closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _compose(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def automorphisms(g: Graph, limit: int = 1_000_000) -> AutomorphismGroup:
    """Full automorphism group by exhaustive colour-respecting backtracking.

    Intended for small graphs; ``limit`` caps the enumeration.  Generators are
    chosen greedily among the enumerated elements until they generate all of
    them.
    """
    (col,) = _refine([g])
    order = _search_order(g, col)
    adj = _adjacency(g)
    rows = _kernels.match_all(adj, adj, col, col, order, limit)
    elements = sorted(tuple(int(x) for x in r) for r in rows)
    for p in elements:
        if not verify_mapping(g, g, p):  # pragma: no cover - kernel bug guard
            raise AssertionError("automorphism kernel returned an invalid map")
    gens: list[tuple[int, ...]] = []
    group = {tuple(range(g.n))}
    target = set(elements)
    for p in elements:
        if p in group:
            continue
        gens.append(p)
        group = _closure(gens, g.n)
        if group >= target:
            break
    return AutomorphismGroup(len(elements), tuple(gens), tuple(elements))


def edge_pair_orbits(g: Graph, group: AutomorphismGroup, pairs) -> list[list[tuple[int, int]]]:
    """Partition edge-index pairs into orbits under the group's action."""
    idx = g.edge_index
    remaining = {tuple(sorted(p)) for p in pairs}
    orbits = []
    for p in sorted(remaining):
        if p not in remaining:
            continue
        orbit = set()
        e1, e2 = g.edges[p[0]], g.edges[p[1]]
        for s in group.elements:
            a = tuple(sorted((s[e1[0]], s[e1[1]])))
            b = tuple(sorted((s[e2[0]], s[e2[1]])))
            q = tuple(sorted((idx[a], idx[b])))
            orbit.add(q)
        orbit &= remaining
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits
