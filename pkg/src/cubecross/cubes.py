"""Hypercube variants: Q_n, crossed cubes, locally twisted cubes, Möbius cubes.

Every vertex is identified with the integer whose binary expansion is its
printed label, so vertex ``i`` of an order-n cube carries label
``format(i, f"0{n}b")``.  The families disagree on how they number the bits of
that string:

* crossed cubes number them ``x_n ... x_1`` (the last character is ``x_1``);
* locally twisted and Möbius cubes number them ``x_1 ... x_n`` (the first
  character is ``x_1``).

The helpers below convert between "bit position in the family's convention"
and "character in the printed label" so each adjacency rule reads like its
definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph, GraphError, induced_subgraph

FAMILIES = ("Q", "CQ", "LTQ", "MQ")

_PAIR_RELATED = frozenset({("00", "00"), ("10", "10"), ("01", "11"), ("11", "01")})


@dataclass(frozen=True)
class CubeSpec:
    family: str
    order: int
    variant: int = 0

    def __post_init__(self) -> None:
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.order, int) or self.order < 1:
            raise GraphError(f"order must be a positive integer, got {self.order!r}")
        if fam == "LTQ" and self.order < 2:
            raise GraphError("locally twisted cubes start at order 2")
        if self.variant not in (0, 1):
            raise GraphError(f"variant must be 0 or 1, got {self.variant!r}")
        if fam != "MQ" and self.variant != 0:
            raise GraphError("variant is only meaningful for the Möbius family")

    @property
    def name(self) -> str:
        if self.family == "MQ":
            return f"{self.variant}-MQ{self.order}"
        return f"{self.family}{self.order}"


def pair_related(x: str, y: str) -> bool:
    """The 2-bit relation underlying crossed-cube adjacency."""
    if len(x) != 2 or len(y) != 2 or set(x + y) - {"0", "1"}:
        raise GraphError(f"pair_related needs two 2-bit strings, got {x!r}, {y!r}")
    return (x, y) in _PAIR_RELATED


def _labels(n: int) -> tuple[str, ...]:
    return tuple(format(i, f"0{n}b") for i in range(1 << n))


def _cq_bit(label: str, j: int) -> str:
    """``x_j`` in crossed-cube numbering (``x_1`` is the last character)."""
    return label[-j]


def _cq_adjacent(x: str, y: str) -> bool:
    n = len(x)
    for j in range(1, n + 1):
        if any(_cq_bit(x, t) != _cq_bit(y, t) for t in range(j + 1, n + 1)):
            continue
        if _cq_bit(x, j) == _cq_bit(y, j):
            continue
        if j % 2 == 0 and _cq_bit(x, j - 1) != _cq_bit(y, j - 1):
            continue
        # Pairs strictly below the differing bit; with the floor form of the
        # range the graph stops being regular, see README "Crossed cube".
        top = (j + 1) // 2 - 1
        if all(
            pair_related(_cq_bit(x, 2 * i) + _cq_bit(x, 2 * i - 1), _cq_bit(y, 2 * i) + _cq_bit(y, 2 * i - 1))
            for i in range(1, top + 1)
        ):
            return True
    return False


def _crossed(n: int) -> list[tuple[int, int]]:
    labels = _labels(n)
    return [
        (u, v)
        for u in range(len(labels))
        for v in range(u + 1, len(labels))
        if _cq_adjacent(labels[u], labels[v])
    ]


def _flip(bits: list[int], positions) -> str:
    out = list(bits)
    for p in positions:
        out[p - 1] ^= 1
    return "".join(map(str, out))


def _twisted(n: int) -> list[tuple[int, int]]:
    edges = set()
    for u in range(1 << n):
        x = [int(c) for c in format(u, f"0{n}b")]  # x[0] is x_1
        for i in range(1, n + 1):
            flips = [i]
            if i <= n - 2 and x[n - 1] == 1:
                flips.append(i + 1)
            v = int(_flip(x, flips), 2)
            edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def _mobius(n: int, variant: int) -> list[tuple[int, int]]:
    edges = set()
    for u in range(1 << n):
        x = [int(c) for c in format(u, f"0{n}b")]
        for i in range(1, n + 1):
            prev = variant if i == 1 else x[i - 2]
            flips = range(i, n + 1) if prev == 1 else [i]
            v = int(_flip(x, flips), 2)
            edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def _hyper(n: int) -> list[tuple[int, int]]:
    return [(u, u ^ (1 << b)) for u in range(1 << n) for b in range(n) if u < u ^ (1 << b)]


def generate(spec: CubeSpec | str, order: Optional[int] = None, variant: int = 0) -> Graph:
    """Build a cube-family graph with bit-string labels.

    Accepts a :class:`CubeSpec` or ``generate("CQ", 4)``.
    """
    if not isinstance(spec, CubeSpec):
        spec = CubeSpec(spec, order, variant)
    n = spec.order
    if spec.family == "Q":
        edges = _hyper(n)
    elif spec.family == "CQ":
        edges = _crossed(n)
    elif spec.family == "LTQ":
        edges = _twisted(n)
    else:
        edges = _mobius(n, spec.variant)
    return Graph(1 << n, tuple(edges), _labels(n), spec.name)


@dataclass(frozen=True)
class SplitView:
    """The two halves of a cube by leading printed bit, plus the edges between them."""

    graph: Graph
    left: Graph
    right: Graph
    left_vertices: tuple[int, ...]
    right_vertices: tuple[int, ...]
    cross_edges: tuple[tuple[int, int], ...]

    def left_edges(self) -> list[tuple[int, int]]:
        return [(self.left_vertices[u], self.left_vertices[v]) for u, v in self.left.edges]

    def right_edges(self) -> list[tuple[int, int]]:
        return [(self.right_vertices[u], self.right_vertices[v]) for u, v in self.right.edges]

    def reglue(self) -> Graph:
        edges = self.left_edges() + self.right_edges() + list(self.cross_edges)
        return Graph(self.graph.n, tuple(edges), self.graph.labels, self.graph.name)


def split(g: Graph) -> SplitView:
    if g.labels is None:
        raise GraphError("split needs bit-string labels")
    if g.n < 4 or len(g.labels[0]) < 2:
        raise GraphError("split needs order at least 2")
    left = tuple(v for v in range(g.n) if g.labels[v][0] == "0")
    right = tuple(v for v in range(g.n) if g.labels[v][0] == "1")
    side = {v: 0 for v in left} | {v: 1 for v in right}
    cross = tuple((u, v) for u, v in g.edges if side[u] != side[v])
    lg, _ = induced_subgraph(g, left)
    rg, _ = induced_subgraph(g, right)
    return SplitView(g, lg, rg, left, right, cross)


def pi_map(sv: SplitView) -> dict[int, int]:
    """The bijection left half -> right half given by the cross edges."""
    left = set(sv.left_vertices)
    out: dict[int, int] = {}
    hit: set[int] = set()
    for u, v in sv.cross_edges:
        a, b = (u, v) if u in left else (v, u)
        if a in out or b in hit:
            raise GraphError("cross edges are not a perfect matching")
        out[a] = b
        hit.add(b)
    if len(out) != len(sv.left_vertices) or len(hit) != len(sv.right_vertices):
        raise GraphError("cross edges are not a perfect matching")
    return dict(sorted(out.items()))


def parse_spec(text: str) -> CubeSpec:
    """Parse names such as ``CQ4``, ``LTQ3``, ``Q2``, ``0-MQ4`` or ``MQ3``."""
    t = text.strip().upper()
    variant = 0
    if "-" in t:
        head, t = t.split("-", 1)
        variant = int(head)
    for fam in sorted(FAMILIES, key=len, reverse=True):
        if t.startswith(fam) and t[len(fam):].isdigit():
            return CubeSpec(fam, int(t[len(fam):]), variant)
    raise GraphError(f"cannot parse cube name {text!r}")
