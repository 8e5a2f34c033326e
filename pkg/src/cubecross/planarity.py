"""Planarity testing with embeddings on success and Kuratowski witnesses on failure.

The left-right planarity test comes from networkx; witnesses are re-derived
here as branch vertices plus subdivision paths and re-validated structurally,
so nothing downstream trusts the library's counterexample blindly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

import networkx as nx

from .graph import Graph, GraphError


@dataclass(frozen=True)
class KuratowskiWitness:
    """A subdivision of K5 or K3,3.

    ``paths`` holds one vertex sequence per branch-vertex pair joined in the
    underlying Kuratowski graph; each path starts and ends at branch
    vertices.  For ``K33`` the first three branch vertices form one side.
    """

    kind: str
    branch_vertices: tuple
    paths: tuple[tuple, ...]

    def edges(self) -> set[frozenset]:
        return {frozenset(p[i : i + 2]) for p in self.paths for i in range(len(p) - 1)}

    def vertices(self) -> set:
        return {v for p in self.paths for v in p}


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: Optional[dict] = None
    witness: Optional[KuratowskiWitness] = None

    def __bool__(self) -> bool:
        return self.planar


def _as_nx(g) -> nx.Graph:
    return g.to_networkx() if isinstance(g, Graph) else g


def verify_witness(g, w: KuratowskiWitness) -> bool:
    """Structural re-check of a witness against a Graph or networkx graph."""
    h = _as_nx(g)
    branch = list(w.branch_vertices)
    if w.kind == "K5":
        if len(branch) != 5:
            return False
        need = {frozenset(p) for p in itertools.combinations(branch, 2)}
    elif w.kind == "K33":
        if len(branch) != 6:
            return False
        need = {frozenset((a, b)) for a in branch[:3] for b in branch[3:]}
    else:
        return False
    if len(set(branch)) != len(branch) or len(w.paths) != len(need):
        return False
    got = set()
    interior_seen: set = set()
    bset = set(branch)
    for p in w.paths:
        if len(p) < 2 or p[0] not in bset or p[-1] not in bset:
            return False
        ends = frozenset((p[0], p[-1]))
        if len(ends) != 2 or ends in got:
            return False
        got.add(ends)
        inner = p[1:-1]
        if len(set(inner)) != len(inner) or bset & set(inner) or interior_seen & set(inner):
            return False
        interior_seen |= set(inner)
        if not all(h.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
    return got == need


def witness_from_subgraph(sub: nx.Graph) -> KuratowskiWitness:
    """Read branch vertices and paths off a subgraph homeomorphic to K5 or K3,3."""
    sub = sub.copy()
    sub.remove_nodes_from([v for v in list(sub) if sub.degree(v) == 0])
    deg = dict(sub.degree())
    branch = sorted((v for v, d in deg.items() if d > 2), key=repr)
    if any(d not in (2, 3, 4) for d in deg.values()):
        raise GraphError("subgraph is not a Kuratowski subdivision")
    paths = []
    seen = set()
    for b in branch:
        for nb in sorted(sub[b], key=repr):
            path = [b, nb]
            while deg[path[-1]] == 2:
                a, c = sub[path[-1]]
                path.append(c if a == path[-2] else a)
            key = frozenset(zip(path, path[1:]))
            key = frozenset(frozenset(e) for e in key)
            if key not in seen:
                seen.add(key)
                paths.append(tuple(path))
    if len(branch) == 5:
        kind = "K5"
    elif len(branch) == 6:
        kind = "K33"
        side = {branch[0]: 0}
        todo = [branch[0]]
        while todo:
            v = todo.pop()
            for p in paths:
                if v in (p[0], p[-1]):
                    o = p[-1] if p[0] == v else p[0]
                    if o not in side:
                        side[o] = 1 - side[v]
                        todo.append(o)
        branch = [v for v in branch if side.get(v) == 0] + [v for v in branch if side.get(v) == 1]
    else:
        raise GraphError("subgraph is not a Kuratowski subdivision")
    paths.sort(key=lambda p: (branch.index(min(p[0], p[-1], key=branch.index)), branch.index(max(p[0], p[-1], key=branch.index))))
    return KuratowskiWitness(kind, tuple(branch), tuple(paths))


def minimal_nonplanar_edges(h: nx.Graph, keep_first: Iterable = ()) -> list:
    """Edge list of a minimal nonplanar subgraph, by the deletion method.

    A binary search first finds the shortest nonplanar prefix of the edge
    order so the deletion loop runs on few edges.  ``keep_first`` edges are
    moved to the end of the deletion order, which biases the result toward
    containing them.
    """
    keep = {frozenset(e) for e in keep_first}
    edges = sorted(h.edges(), key=lambda e: frozenset(e) in keep)
    edges = list(reversed(edges))

    def planar(es) -> bool:
        t = nx.Graph()
        t.add_edges_from(es)
        return nx.check_planarity(t)[0]

    lo, hi = 0, len(edges)
    if planar(edges):
        raise GraphError("graph is planar")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if planar(edges[:mid]):
            lo = mid
        else:
            hi = mid
    core = edges[:hi]
    # core[-1] is in every nonplanar subgraph of core
    i = len(core) - 2
    while i >= 0:
        trial = core[:i] + core[i + 1 :]
        if not planar(trial):
            core = trial
        i -= 1
    return core


def kuratowski_witness(h, keep_first: Iterable = ()) -> KuratowskiWitness:
    hx = _as_nx(h)
    sub = nx.Graph()
    sub.add_edges_from(minimal_nonplanar_edges(hx, keep_first))
    w = witness_from_subgraph(sub)
    if not verify_witness(hx, w):  # pragma: no cover - defensive
        raise AssertionError("extracted Kuratowski witness failed re-validation")
    return w


def is_planar(g) -> PlanarityResult:
    """Planarity of a Graph (or networkx graph) with an embedding or a witness.

    ``rotation`` maps each vertex to its neighbours in clockwise order.
    """
    hx = _as_nx(g)
    ok, emb = nx.check_planarity(hx)
    if ok:
        return PlanarityResult(True, rotation=emb.get_data())
    return PlanarityResult(False, witness=kuratowski_witness(hx))


def planar_quick(h: nx.Graph) -> bool:
    return nx.check_planarity(h)[0]


def find_k33_subdivision(g: Graph, max_edges: int = 40) -> Optional[KuratowskiWitness]:
    """Search specifically for a K3,3 subdivision.

    Cheap attempts first: minimal nonplanar subgraphs from several edge
    orders.  If none is a K3,3, an exact search over choices of the six
    branch vertices and disjoint connecting paths settles it.
    """
    if g.n < 6 or g.m < 9:
        return None
    hx = g.to_networkx()
    if nx.check_planarity(hx)[0]:
        return None
    for rot in range(min(g.m, 12)):
        es = list(g.edges[rot:]) + list(g.edges[:rot])
        w = kuratowski_witness(hx, keep_first=es[: g.m // 2])
        if w.kind == "K33":
            return w
    if g.m > max_edges:
        raise GraphError(f"exact K3,3 search limited to {max_edges} edges")
    return _exact_k33(g)


def _exact_k33(g: Graph) -> Optional[KuratowskiWitness]:
    cands = [v for v in range(g.n) if g.degree(v) >= 3]
    for six in itertools.combinations(cands, 6):
        for side in itertools.combinations(six[1:], 2):
            a = (six[0],) + side
            b = tuple(v for v in six if v not in a)
            paths = _disjoint_paths(g, a, b)
            if paths is not None:
                w = KuratowskiWitness("K33", a + b, tuple(paths))
                if verify_witness(g, w):
                    return w
    return None


def _disjoint_paths(g: Graph, a, b) -> Optional[list[tuple[int, ...]]]:
    """Nine internally disjoint paths between sides ``a`` and ``b`` by backtracking."""
    pairs = [(x, y) for x in a for y in b]
    branch = set(a) | set(b)

    def paths_between(x, y, used):
        stack = [(x, (x,))]
        while stack:
            v, p = stack.pop()
            for w in sorted(g.adj[v], reverse=True):
                if w == y:
                    yield p + (y,)
                elif w not in branch and w not in used and w not in p:
                    stack.append((w, p + (w,)))

    out: list[tuple[int, ...]] = []

    def rec(i, used):
        if i == len(pairs):
            return True
        x, y = pairs[i]
        for p in paths_between(x, y, used):
            if any(frozenset((p[j], p[j + 1])) in taken for j in range(len(p) - 1)):
                continue
            out.append(p)
            for j in range(len(p) - 1):
                taken.add(frozenset((p[j], p[j + 1])))
            if rec(i + 1, used | set(p[1:-1])):
                return True
            out.pop()
            for j in range(len(p) - 1):
                taken.discard(frozenset((p[j], p[j + 1])))
        return False

    taken: set = set()
    return list(out) if rec(0, frozenset()) else None
