"""Upper bounds by planar subgraph plus edge insertion.

Each restart shuffles the edges with a seeded generator, grows a planar
subgraph (spanning forest first, then every edge that keeps it planar), and
routes each leftover edge through the dual of the current embedding along a
shortest path.  A route never crosses an edge twice or an edge sharing an
endpoint with the inserted one, so every intermediate planarization stays
good.  Afterwards each crossed edge is pulled out and reinserted while that
lowers the count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from collections import deque
from typing import Optional

import networkx as nx

from .graph import Graph
from .planarization import Planarization
from .realize import normalize, realize_drawing
from .solver import euler_girth_bound


class _Partial:
    """Planarization of a subset of the edges, as per-edge crossing sequences."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.present: set[int] = set()
        self.order: dict[int, list[int]] = {}

    def dummy(self, e: int, f: int) -> int:
        e, f = min(e, f), max(e, f)
        return self.g.n + e * self.g.m + f

    def path(self, e: int) -> list[int]:
        u, v = self.g.edges[e]
        return [u] + [self.dummy(e, f) for f in self.order[e]] + [v]

    def host(self) -> tuple[nx.Graph, dict]:
        h = nx.Graph()
        h.add_nodes_from(range(self.g.n))
        owner = {}
        for e in self.present:
            p = self.path(e)
            for a, b in zip(p, p[1:]):
                h.add_edge(a, b)
                owner[(a, b)] = owner[(b, a)] = e
        return h, owner

    def add_plain(self, e: int) -> None:
        self.present.add(e)
        self.order[e] = []

    def remove(self, e: int) -> None:
        for f in self.order.pop(e):
            self.order[f].remove(e)
        self.present.discard(e)

    def crossings(self) -> int:
        return sum(len(s) for s in self.order.values()) // 2

    def freeze(self) -> Planarization:
        return Planarization(self.g, tuple(tuple(self.order.get(e, ())) for e in range(self.g.m)))

    def insert(self, e: int) -> bool:
        """Route ``e`` through the dual with fewest crossings; False if impossible."""
        g = self.g
        s, t = g.edges[e]
        h, owner = self.host()
        ok, emb = nx.check_planarity(h)
        if not ok:  # pragma: no cover - construction keeps hosts planar
            raise AssertionError("host lost planarity during insertion")
        face_of: dict = {}
        faces: list[list] = []
        for v, w in emb.edges():
            if (v, w) in face_of:
                continue
            marked: set = set()
            emb.traverse_face(v, w, mark_half_edges=marked)
            fid = len(faces)
            faces.append(sorted(marked, key=repr))
            for he in marked:
                face_of[he] = fid
        start = sorted({face_of[(s, w)] for w in emb.neighbors_cw_order(s)}) if h.degree(s) else []
        goal = {face_of[(t, w)] for w in emb.neighbors_cw_order(t)} if h.degree(t) else set()
        if not start or not goal:
            # an endpoint is isolated in the host: it can sit in any face next to the other
            self.present.add(e)
            self.order[e] = []
            return True
        adjacent_to_e = {f for f in self.present if g.edges_adjacent(e, f)}
        parent: dict = {fid: None for fid in start}
        crossed_on_path: dict = {fid: frozenset() for fid in start}
        q = deque(start)
        hit = next((fid for fid in start if fid in goal), None)
        while q and hit is None:
            fid = q.popleft()
            for a, b in faces[fid]:
                f = owner[(a, b)]
                if f in adjacent_to_e or f in crossed_on_path[fid]:
                    continue
                nxt = face_of[(b, a)]
                if nxt in parent:
                    continue
                parent[nxt] = (fid, a, b, f)
                crossed_on_path[nxt] = crossed_on_path[fid] | {f}
                if nxt in goal:
                    hit = nxt
                    break
                q.append(nxt)
        if hit is None:
            return False
        steps = []
        cur = hit
        while parent[cur] is not None:
            fid, a, b, f = parent[cur]
            steps.append((a, b, f))
            cur = fid
        steps.reverse()  # from s to t
        self.present.add(e)
        self.order[e] = []
        for a, b, f in steps:
            p = self.path(f)
            i, j = p.index(a), p.index(b)
            self.order[f].insert(min(i, j), e)
            self.order[e].append(f)
        return True


def _spanning_first(g: Graph, perm: list[int]) -> list[int]:
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, rest = [], []
    for e in perm:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
        else:
            rest.append(e)
    return tree + rest


def _one_restart(g: Graph, rng: random.Random) -> Optional[_Partial]:
    perm = list(range(g.m))
    rng.shuffle(perm)
    perm = _spanning_first(g, perm)
    part = _Partial(g)
    probe = nx.Graph()
    probe.add_nodes_from(range(g.n))
    leftovers = []
    for e in perm:
        probe.add_edge(*g.edges[e])
        if nx.check_planarity(probe)[0]:
            part.add_plain(e)
        else:
            probe.remove_edge(*g.edges[e])
            leftovers.append(e)
    for e in leftovers:
        if not part.insert(e):
            return None
    return part


def _improve(part: _Partial, rounds: int = 4) -> None:
    for _ in range(rounds):
        better = False
        for e in sorted(part.present, key=lambda x: (-len(part.order[x]), x)):
            if not part.order[e]:
                continue
            before = part.crossings()
            saved = {f: list(s) for f, s in part.order.items()}
            part.remove(e)
            if part.insert(e) and part.crossings() < before:
                better = True
                continue
            part.order = saved
            part.present = set(saved)
        if not better:
            return


@dataclass
class UpperBound:
    """Unpacks as ``(k, planarization, drawing)``; ``seed`` replays the winning restart."""

    k: int
    planarization: Planarization
    drawing: object
    seed: int
    restarts: int

    def __iter__(self):
        return iter((self.k, self.planarization, self.drawing))


def cr_upper_bound(g: Graph, effort: int = 32, seed: int = 0, realize: bool = True, polish: int = 8) -> UpperBound:
    """Best of ``effort`` seeded restarts.

    Restart ``r`` uses ``random.Random(seed + r)``.  All restarts run plain
    insertion; the ``polish`` best are then improved by removing and
    reinserting crossed edges.  The search stops early once the Euler bound is
    met, since nothing can beat it.
    """
    floor = euler_girth_bound(g)
    runs = []
    for r in range(max(1, effort)):
        part = _one_restart(g, random.Random(seed + r))
        if part is None:  # pragma: no cover - insertion always succeeds on simple graphs
            continue
        runs.append((part.crossings(), r, part))
        if part.crossings() <= floor:
            break
    if not runs:  # pragma: no cover
        raise RuntimeError("edge insertion failed on every restart")
    runs.sort(key=lambda t: (t[0], t[1]))
    best: Optional[tuple[int, int, Planarization]] = None
    for _, r, part in runs[: max(1, polish)]:
        _improve(part)
        p = normalize(part.freeze())
        if best is None or (p.k, r) < (best[0], best[1]):
            best = (p.k, r, p)
    k, r, p = best
    drawing = realize_drawing(p) if realize else None
    return UpperBound(k, p, drawing, seed + r, len(runs))
