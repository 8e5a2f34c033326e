"""Exhaustive checkers for the finite cut and partition statements about order-3 cubes.

Every checker enumerates the full quantifier range on a concrete graph and
returns a :class:`LemmaReport`.  A failing report carries the first
violating object as its witness, so the failure can be recomputed by hand.
Cut sizes come from a table of ``e(X)`` over all vertex subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import networkx as nx

from ._kernels import subset_edge_counts
from .cubes import pi_map, split
from .graph import Graph, GraphError, classify_induced, find_c4_partitions, is_cycle
from .planarity import find_k33_subdivision, verify_witness


@dataclass
class LemmaReport:
    lemma_id: str
    graph: str
    passed: bool
    cases: int
    witness: Optional[object] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.passed != (self.witness is None):
            raise ValueError("a report passes exactly when it has no witness")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.lemma_id} on {self.graph}: {self.cases} cases"
        if self.witness is not None:
            out += f"; witness {self.witness}"
        return out


class _CutTable:
    """``e(X)`` for every subset mask plus degree sums, for O(1) cut queries."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.inside = subset_edge_counts(g.n, g.edges)
        self.deg = g.degrees()

    def mask(self, verts) -> int:
        m = 0
        for v in verts:
            m |= 1 << v
        return m

    def within(self, mask: int) -> int:
        return int(self.inside[mask])

    def boundary(self, mask: int) -> int:
        return sum(self.deg[v] for v in range(self.g.n) if mask >> v & 1) - 2 * self.within(mask)

    def between(self, a: int, b: int) -> int:
        return self.within(a | b) - self.within(a) - self.within(b)


def _name(g: Graph) -> str:
    return g.name or f"graph(n={g.n}, m={g.m})"


def _need_cubic(g: Graph, n: Optional[int] = None) -> None:
    if not g.is_regular(3):
        raise GraphError(f"{_name(g)} is not 3-regular")
    if n is not None and g.n != n:
        raise GraphError(f"{_name(g)} has {g.n} vertices, expected {n}")


def set_partitions(items: Sequence[int], parts: int) -> Iterator[list[list[int]]]:
    """Every unordered partition of ``items`` into exactly ``parts`` nonempty blocks, once."""
    items = list(items)

    def rec(i: int, blocks: list[list[int]]):
        left = len(items) - i
        if len(blocks) + left < parts:
            return
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < parts:
            blocks.append([x])
            yield from rec(i + 1, blocks)
            blocks.pop()

    if parts <= 0 or parts > len(items):
        return
    yield from rec(0, [])


def size_ordered(blocks: list[list[int]]) -> list[tuple[int, ...]]:
    """Blocks labelled so sizes are non-increasing; ties broken by smallest vertex."""
    return [tuple(b) for b in sorted((sorted(b) for b in blocks), key=lambda b: (-len(b), b))]


def _pair_counts(t: _CutTable, blocks: Sequence[Sequence[int]]) -> dict[tuple[int, int], int]:
    masks = [t.mask(b) for b in blocks]
    return {(i, j): t.between(masks[i], masks[j]) for i, j in itertools.combinations(range(len(blocks)), 2)}


def _partition_witness(blocks, pairs, why: str) -> dict:
    return {
        "blocks": [list(b) for b in blocks],
        "e": {f"{i + 1},{j + 1}": c for (i, j), c in pairs.items()},
        "total": sum(pairs.values()),
        "reason": why,
    }


# -- cut bound table --------------------------------------------------------


def cut_lower_bound(size: int, shape: str) -> int:
    """The claimed minimum of ``|∂(X)|`` for a set of ``size`` vertices inducing ``shape``."""
    if size == 1:
        return 3
    if size == 2:
        return 4 if shape == "P2" else 6
    if size == 3:
        return 5
    if size == 4:
        return 4 if shape == "C4" else 6
    raise ValueError("bound table covers 1 <= |X| <= 4")


def check_lemma_2_4(g: Graph) -> LemmaReport:
    """Cut sizes of sets with at most four vertices, and the shape of tight triples."""
    _need_cubic(g)
    t = _CutTable(g)
    cases = 0
    witness = None
    violations = 0
    tight_triples = 0
    for size in range(1, min(4, g.n) + 1):
        for xs in itertools.combinations(range(g.n), size):
            cases += 1
            m = t.mask(xs)
            cut = t.boundary(m)
            shape = classify_induced(g, xs)
            bound = cut_lower_bound(size, shape)
            bad = None
            if cut < bound:
                bad = f"|boundary| = {cut} < {bound}"
            elif size == 3 and cut == 5:
                tight_triples += 1
                rest = [v for v in range(g.n) if not m >> v & 1]
                if not _tight_triple_shape(g, rest):
                    bad = "complement is neither C5 nor C4 plus a vertex"
            if bad is not None:
                violations += 1
                if witness is None:
                    witness = {"X": list(xs), "shape": shape, "boundary": cut, "reason": bad}
    return LemmaReport(
        "lemma2.4", _name(g), witness is None, cases, witness,
        {"violations": violations, "tight_triples": tight_triples},
    )


def _tight_triple_shape(g: Graph, rest: list[int]) -> bool:
    if is_cycle(g, rest, 5):
        return True
    return any(is_cycle(g, [w for w in rest if w != v], 4) for v in rest)


# -- partitions into three parts --------------------------------------------


def _three_part(g: Graph):
    _need_cubic(g, 8)
    t = _CutTable(g)
    for raw in set_partitions(range(g.n), 3):
        blocks = size_ordered(raw)
        yield blocks, _pair_counts(t, blocks)


def check_lemma_2_5(g: Graph) -> LemmaReport:
    """Three-part partitions have at least five cross edges; equality forces sizes 6, 1, 1."""
    cases, witness, least = 0, None, None
    for blocks, pairs in _three_part(g):
        cases += 1
        total = sum(pairs.values())
        least = total if least is None else min(least, total)
        why = None
        if total < 5:
            why = "fewer than 5 cross edges"
        elif total == 5:
            if tuple(len(b) for b in blocks) != (6, 1, 1):
                why = "equality with sizes other than (6, 1, 1)"
            elif min(pairs.values()) == 0:
                why = "equality with an empty pair"
        if why and witness is None:
            witness = _partition_witness(blocks, pairs, why)
    return LemmaReport("lemma2.5", _name(g), witness is None, cases, witness, {"minimum_total": least})


def check_lemma_2_6(g: Graph) -> LemmaReport:
    """Six cross edges, all pairs joined, one pair joined once: one of two shapes."""
    cases, witness = 0, None
    seen = {"(i)": 0, "(ii)": 0}
    hypothesis = 0
    for blocks, pairs in _three_part(g):
        cases += 1
        if sum(pairs.values()) != 6 or min(pairs.values()) == 0 or 1 not in pairs.values():
            continue
        hypothesis += 1
        sizes = tuple(len(b) for b in blocks)
        first = sizes == (5, 2, 1) and pairs[(1, 2)] == 1 and classify_induced(g, blocks[1]) == "P2"
        second = sizes == (4, 3, 1) and pairs[(0, 2)] == 1 and classify_induced(g, blocks[0]) == "C4"
        seen["(i)"] += first
        seen["(ii)"] += second
        if not (first or second) and witness is None:
            witness = _partition_witness(blocks, pairs, "neither alternative holds")
    return LemmaReport(
        "lemma2.6", _name(g), witness is None, cases, witness,
        {"hypothesis_cases": hypothesis, "alternatives_seen": seen},
    )


def check_lemma_2_7(g: Graph) -> LemmaReport:
    """An empty pair forces a singleton later part or at least eight cross edges."""
    cases, witness, hypothesis = 0, None, 0
    for blocks, pairs in _three_part(g):
        cases += 1
        total = sum(pairs.values())
        for (s, tt), c in pairs.items():
            if c != 0:
                continue
            hypothesis += 1
            if len(blocks[tt]) != 1 and total < 8 and witness is None:
                witness = _partition_witness(blocks, pairs, f"e(X{s + 1},X{tt + 1}) = 0 but |X{tt + 1}| > 1 and total < 8")
    return LemmaReport("lemma2.7", _name(g), witness is None, cases, witness, {"hypothesis_cases": hypothesis})


# -- four or more parts -----------------------------------------------------


def check_lemma_2_8(g: Graph) -> LemmaReport:
    """Four-part partitions: at least seven cross edges, with the equality shapes."""
    _need_cubic(g, 8)
    t = _CutTable(g)
    cases, witness, least = 0, None, None
    shapes = {"(i)": 0, "(ii)": 0}
    for raw in set_partitions(range(g.n), 4):
        cases += 1
        blocks = size_ordered(raw)
        pairs = _pair_counts(t, blocks)
        total = sum(pairs.values())
        least = total if least is None else min(least, total)
        why = None
        if total < 7:
            why = "fewer than 7 cross edges"
        elif total == 7:
            empty = [p for p, c in pairs.items() if c == 0]
            if not empty:
                shapes["(i)"] += 1
            elif len(blocks[0]) == 5 and len(empty) == 1 and empty[0][0] >= 1:
                shapes["(ii)"] += 1
            else:
                why = "equality without either shape"
        if why and witness is None:
            witness = _partition_witness(blocks, pairs, why)
    return LemmaReport(
        "lemma2.8", _name(g), witness is None, cases, witness, {"minimum_total": least, "equality_shapes": shapes}
    )


def check_lemma_2_9(g: Graph) -> LemmaReport:
    """Partitions into five or more parts have at least eight cross edges."""
    _need_cubic(g, 8)
    t = _CutTable(g)
    cases, witness, least = 0, None, None
    for parts in range(5, g.n + 1):
        for raw in set_partitions(range(g.n), parts):
            cases += 1
            blocks = size_ordered(raw)
            pairs = _pair_counts(t, blocks)
            total = sum(pairs.values())
            least = total if least is None else min(least, total)
            if total < 8 and witness is None:
                witness = _partition_witness(blocks, pairs, "fewer than 8 cross edges")
    return LemmaReport("lemma2.9", _name(g), witness is None, cases, witness, {"minimum_total": least})


# -- structural observations ------------------------------------------------


def check_obs_2_1(g: Graph) -> LemmaReport:
    """Pass iff a K3,3 subdivision exists (a K5 subdivision alone does not count)."""
    w = find_k33_subdivision(g)
    if w is not None and w.kind == "K33" and verify_witness(g, w):
        return LemmaReport("obs2.1", _name(g), True, 1, None, {"branch_vertices": list(w.branch_vertices)})
    return LemmaReport("obs2.1", _name(g), False, 1, {"reason": "no K3,3 subdivision"})


def check_obs_3_1(g: Graph) -> LemmaReport:
    """Exactly two splits into two induced 4-cycles, crossing each other in edges."""
    if g.n != 8:
        raise GraphError(f"{_name(g)} has {g.n} vertices, expected 8")
    found = find_c4_partitions(g)
    details = {"partitions": [[list(a), list(b)] for a, b in found]}
    if len(found) != 2:
        return LemmaReport("obs3.1", _name(g), False, len(found), {"reason": f"{len(found)} partitions"}, details)
    cases = 0
    for a in found[0]:
        for b in found[1]:
            cases += 1
            both = sorted(set(a) & set(b))
            if not both or classify_induced(g, both) != "P2":
                return LemmaReport(
                    "obs3.1", _name(g), False, cases, {"V1": list(a), "V2": list(b), "intersection": both}, details
                )
    return LemmaReport("obs3.1", _name(g), True, cases, None, details)


def _induced_c4s(g: Graph, verts: Sequence[int]) -> list[tuple[int, ...]]:
    return [q for q in itertools.combinations(verts, 4) if is_cycle(g, q, 4)]


def check_obs_4_1(g: Graph) -> LemmaReport:
    """Every induced edge extends to an induced 4-cycle; every induced 4-cycle has a
    4-cycle complement joined to it by a perfect matching."""
    cases, witness = 0, None
    verts = range(g.n)
    c4s = _induced_c4s(g, verts)
    for u, v in g.edges:
        cases += 1
        if not any(u in q and v in q for q in c4s) and witness is None:
            witness = {"part": "(i)", "X": [u, v], "reason": "no induced 4-cycle through this edge"}
    for q in c4s:
        cases += 1
        rest = [w for w in verts if w not in q]
        if not is_cycle(g, rest, 4):
            why = "complement is not an induced 4-cycle"
        else:
            b = nx.Graph()
            b.add_edges_from((x, y) for x in q for y in rest if g.has_edge(x, y))
            size = len(nx.max_weight_matching(b, maxcardinality=True))
            why = None if size == 4 else f"largest matching across has {size} edges"
        if why and witness is None:
            witness = {"part": "(ii)", "X": list(q), "reason": why}
    return LemmaReport("obs4.1", _name(g), witness is None, cases, witness, {"induced_c4": len(c4s)})


def _halves(g: Graph):
    sv = split(g)
    if g.n != 16 or not g.is_regular(4):
        raise GraphError(f"{_name(g)} is not a 4-regular graph on 16 vertices")
    return sv, pi_map(sv)


def check_obs_4_2(g: Graph) -> LemmaReport:
    """Matching images of left-half 5-cycles and of 4-cycles plus a vertex, minus one
    vertex, never induce a 4-cycle."""
    sv, pi = _halves(g)
    left = sv.left_vertices
    cases, witness = 0, None
    five = [u for u in itertools.combinations(left, 5) if is_cycle(g, u, 5)]
    for u in five:
        for drop in u:
            cases += 1
            img = [pi[x] for x in u if x != drop]
            if is_cycle(g, img, 4) and witness is None:
                witness = {"part": "(i)", "U": list(u), "removed": drop, "image": img}
    four = _induced_c4s(g, left)
    for q in four:
        for extra in (x for x in left if x not in q):
            for drop in q:
                cases += 1
                img = [pi[x] for x in q if x != drop] + [pi[extra]]
                if is_cycle(g, img, 4) and witness is None:
                    witness = {"part": "(ii)", "C4": list(q), "u5": extra, "removed": drop, "image": img}
    return LemmaReport(
        "obs4.2", _name(g), witness is None, cases, witness, {"induced_c5": len(five), "induced_c4": len(four)}
    )


def check_obs_4_3(g: Graph) -> LemmaReport:
    """A left path of two edges whose matching image is also a path lies on an induced 4-cycle."""
    sv, pi = _halves(g)
    left = set(sv.left_vertices)
    cases, witness, hypothesis = 0, None, 0
    for mid in sorted(left):
        nbrs = sorted(w for w in g.adj[mid] if w in left)
        for a, b in itertools.combinations(nbrs, 2):
            cases += 1
            if not (g.has_edge(pi[a], pi[mid]) and g.has_edge(pi[mid], pi[b])):
                continue
            hypothesis += 1
            closing = [u for u in left if u not in (a, mid, b) and is_cycle(g, (a, mid, b, u), 4)]
            if not closing and witness is None:
                witness = {"path": [a, mid, b], "reason": "no fourth vertex closes an induced 4-cycle"}
    return LemmaReport("obs4.3", _name(g), witness is None, cases, witness, {"hypothesis_cases": hypothesis})


def _four_vertex_paths(g: Graph, a: int, b: int, avoid: set[int], prefer: set[int]) -> list[tuple[int, ...]]:
    out = []
    for x in sorted(g.adj[a]):
        if x in avoid or x == b:
            continue
        for y in sorted(g.adj[x]):
            if y in avoid or y in (a, b) or not g.has_edge(y, b):
                continue
            out.append((a, x, y, b))
    out.sort(key=lambda p: (not (p[1] in prefer and p[2] in prefer), p))
    return out


def _linkage(g: Graph, ends: tuple[int, int, int, int], prefer: set[int], taken: frozenset = frozenset()):
    """Two disjoint 4-vertex paths joining {u1, u2} to {u3, u4} in some order."""
    u1, u2, u3, u4 = ends
    for j1, j2 in ((u3, u4), (u4, u3)):
        for p in _four_vertex_paths(g, u1, j1, set(ends) - {u1, j1} | taken, prefer):
            used = set(p) | set(taken)
            for q in _four_vertex_paths(g, u2, j2, used - {u2, j2}, prefer):
                return p, q
    return None


def check_obs_4_4(g: Graph) -> LemmaReport:
    """Disjoint left edges separated by every induced 4-cycle are linked by two
    disjoint 4-vertex paths.

    Paths through the right half are preferred.  The details also record a
    system of four pairwise disjoint such paths covering the whole left half,
    built from two hypothesis cases with complementary endpoints.
    """
    sv, pi = _halves(g)
    left = sv.left_vertices
    right = set(sv.right_vertices)
    c4s = _induced_c4s(g, left)
    ledges = [e for e in g.edges if e[0] in set(left) and e[1] in set(left)]
    cases, witness = 0, None
    linked: dict[frozenset, tuple] = {}
    for (u1, u2), (u3, u4) in itertools.combinations(ledges, 2):
        if len({u1, u2, u3, u4}) < 4:
            continue
        ok = all({x for x in q if x in (u1, u2, u3, u4)} in ({u1, u2}, {u3, u4}) for q in c4s)
        if not ok:
            continue
        cases += 1
        found = _linkage(g, (u1, u2, u3, u4), right)
        if found is None:
            if witness is None:
                witness = {"edges": [[u1, u2], [u3, u4]], "reason": "no two disjoint 4-vertex paths"}
        else:
            linked[frozenset((u1, u2, u3, u4))] = ((u1, u2, u3, u4), found)
    four = None
    for key, (ends, _) in sorted(linked.items(), key=lambda kv: kv[1][0]):
        other = frozenset(left) - key
        if other not in linked:
            continue
        first = _linkage(g, ends, right)
        second = _linkage(g, linked[other][0], right, frozenset(v for p in first for v in p))
        if second is not None:
            four = [list(p) for p in first + second]
            break
    return LemmaReport(
        "obs4.4", _name(g), witness is None, cases, witness,
        {"hypothesis_cases": cases, "four_paths": four},
    )


CHECKS = {
    "2.4": check_lemma_2_4,
    "2.5": check_lemma_2_5,
    "2.6": check_lemma_2_6,
    "2.7": check_lemma_2_7,
    "2.8": check_lemma_2_8,
    "2.9": check_lemma_2_9,
    "obs2.1": check_obs_2_1,
    "obs3.1": check_obs_3_1,
    "obs4.1": check_obs_4_1,
    "obs4.2": check_obs_4_2,
    "obs4.3": check_obs_4_3,
    "obs4.4": check_obs_4_4,
}

ORDER3 = ("2.4", "2.5", "2.6", "2.7", "2.8", "2.9", "obs2.1", "obs3.1", "obs4.1")
ORDER4 = ("obs4.2", "obs4.3", "obs4.4")
