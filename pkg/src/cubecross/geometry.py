"""Exact-coordinate polyline drawings, crossing detection and good-drawing checks.

All coordinates are :class:`fractions.Fraction`.  Floating point is only used
when writing SVG.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, GraphError

Point = tuple[Fraction, Fraction]


class DegenerateGeometryError(ValueError):
    """Touching or overlapping segments, or an edge through a vertex."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass ints, Fractions or 'num/den' strings")
    return Fraction(x)


def as_point(p) -> Point:
    return (as_fraction(p[0]), as_fraction(p[1]))


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if ``p`` lies on the closed segment ``ab``."""
    return (
        orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segment_contact(a: Point, b: Point, c: Point, d: Point):
    """Intersection of closed segments ``ab`` and ``cd``.

    Returns ``None`` (disjoint), ``("proper", point, s, t)`` for an interior
    crossing at parameters ``s`` on ``ab`` and ``t`` on ``cd``,
    ``("point", point)`` for any other single contact point, or
    ``("overlap", (p, q))`` for a collinear overlap of positive length.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        rx, ry = b[0] - a[0], b[1] - a[1]
        sx, sy = d[0] - c[0], d[1] - c[1]
        den = rx * sy - ry * sx
        s = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
        t = ((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / den
        return ("proper", (a[0] + s * rx, a[1] + s * ry), s, t)
    if o1 == o2 == o3 == o4 == 0:
        pts = sorted(p for p in (a, b, c, d) if on_segment(p, a, b) and on_segment(p, c, d))
        if not pts:
            return None
        if pts[0] == pts[-1]:
            return ("point", pts[0])
        return ("overlap", (pts[0], pts[-1]))
    for p, (x, y) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if on_segment(p, x, y):
            return ("point", p)
    return None


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolylineDrawing:
    """A drawing of ``graph``: a point per vertex and bend points per edge.

    ``bends[i]`` runs from ``graph.edges[i][0]`` to ``graph.edges[i][1]``.
    """

    graph: Graph
    positions: tuple[Point, ...]
    bends: tuple[tuple[Point, ...], ...] = ()

    def __post_init__(self) -> None:
        pos = tuple(as_point(p) for p in self.positions)
        if len(pos) != self.graph.n:
            raise GraphError("one position per vertex required")
        if len(set(pos)) != len(pos):
            raise DegenerateGeometryError("two vertices share a position")
        bends = tuple(tuple(as_point(p) for p in b) for b in self.bends) if self.bends else tuple(() for _ in self.graph.edges)
        if len(bends) != self.graph.m:
            raise GraphError("one bend list per edge required")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "bends", bends)
        for i in range(self.graph.m):
            r = self.route(i)
            if any(p == q for p, q in zip(r, r[1:])):
                raise DegenerateGeometryError(f"edge {self.graph.edges[i]} has a zero-length segment")

    def route(self, i: int) -> list[Point]:
        u, v = self.graph.edges[i]
        return [self.positions[u], *self.bends[i], self.positions[v]]

    @cached_property
    def segments(self) -> list[tuple[int, int, Point, Point]]:
        """``(edge index, segment index, start, end)`` for every straight piece."""
        out = []
        for i in range(self.graph.m):
            r = self.route(i)
            out.extend((i, k, r[k], r[k + 1]) for k in range(len(r) - 1))
        return out

    def restrict(self, vertices: Iterable[int]) -> tuple["PolylineDrawing", list[int]]:
        """Sub-drawing of the induced subgraph on ``vertices`` and its index map."""
        from .graph import induced_subgraph

        sub, verts = induced_subgraph(self.graph, list(vertices))
        bends = [self.bends[self.graph.edge_index[(verts[u], verts[v])]] for u, v in sub.edges]
        return PolylineDrawing(sub, tuple(self.positions[v] for v in verts), tuple(bends)), verts

    def transformed(self, a, b, c, d, tx=0, ty=0) -> "PolylineDrawing":
        """Image under the affine map ``(x, y) -> (a x + b y + tx, c x + d y + ty)``."""
        a, b, c, d, tx, ty = map(as_fraction, (a, b, c, d, tx, ty))
        if a * d - b * c == 0:
            raise GraphError("affine map must be invertible")

        def f(p: Point) -> Point:
            return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)

        return PolylineDrawing(
            self.graph, tuple(f(p) for p in self.positions), tuple(tuple(f(p) for p in bl) for bl in self.bends)
        )


@dataclass(frozen=True)
class CrossingRecord:
    edges: tuple[int, int]
    point: Point
    segments: tuple[int, int]
    params: tuple[Fraction, Fraction]


@dataclass
class GoodnessReport:
    self_crossings: list = field(default_factory=list)
    adjacent_crossings: list = field(default_factory=list)
    multiple_crossings: list = field(default_factory=list)
    triple_points: list = field(default_factory=list)
    edge_through_vertex: list = field(default_factory=list)
    degenerate_contacts: list = field(default_factory=list)

    @property
    def good(self) -> bool:
        return not (
            self.self_crossings
            or self.adjacent_crossings
            or self.multiple_crossings
            or self.triple_points
            or self.edge_through_vertex
            or self.degenerate_contacts
        )

    def summary(self) -> str:
        if self.good:
            return "good"
        parts = [
            f"{name}={len(getattr(self, name))}"
            for name in (
                "self_crossings",
                "adjacent_crossings",
                "multiple_crossings",
                "triple_points",
                "edge_through_vertex",
                "degenerate_contacts",
            )
            if getattr(self, name)
        ]
        return "not good: " + ", ".join(parts)


def _integer_frame(d: PolylineDrawing) -> Optional[np.ndarray]:
    """Segments as int64 rows after clearing denominators, if small enough."""
    segs = d.segments
    if not segs:
        return np.zeros((0, 4), dtype=np.int64)
    den = 1
    for _, _, p, q in segs:
        for c in (*p, *q):
            den = math.lcm(den, c.denominator)
    rows = []
    for _, _, p, q in segs:
        row = [int(c * den) for c in (*p, *q)]
        if max(abs(x) for x in row) >= _kernels.INT_COORD_LIMIT:
            return None
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def _candidate_pairs(d: PolylineDrawing) -> list[tuple[int, int]]:
    """Segment index pairs that touch at all (screened by the integer kernel)."""
    segs = d.segments
    s = len(segs)
    if s < 2:
        return []
    ii, jj = np.triu_indices(s, k=1)
    frame = _integer_frame(d)
    if frame is None:
        return list(zip(ii.tolist(), jj.tolist()))
    cls = _kernels.classify_pairs(frame, ii, jj)
    hit = np.flatnonzero(cls != _kernels.DISJOINT)
    return list(zip(ii[hit].tolist(), jj[hit].tolist()))


@dataclass
class _Analysis:
    records: list[CrossingRecord]
    self_records: list[tuple]
    report: GoodnessReport


def _analyse(d: PolylineDrawing) -> _Analysis:
    g = d.graph
    segs = d.segments
    pos_to_vertex = {p: v for v, p in enumerate(d.positions)}
    rep = GoodnessReport()
    records: list[CrossingRecord] = []
    selfs = []
    for a, b in _candidate_pairs(d):
        ea, ka, p1, p2 = segs[a]
        eb, kb, q1, q2 = segs[b]
        c = segment_contact(p1, p2, q1, q2)
        if c is None:
            continue
        if c[0] == "proper":
            if ea == eb:
                selfs.append((ea, c[1]))
                rep.self_crossings.append((g.edges[ea], c[1]))
            else:
                rec = CrossingRecord((ea, eb), c[1], (ka, kb), (c[2], c[3]))
                if ea > eb:
                    rec = CrossingRecord((eb, ea), c[1], (kb, ka), (c[3], c[2]))
                records.append(rec)
            continue
        if c[0] == "point":
            pt = c[1]
            if ea == eb and abs(ka - kb) == 1:
                shared = p2 if ka < kb else p1
                if pt == shared:
                    continue
            if ea != eb and pt in pos_to_vertex:
                v = pos_to_vertex[pt]
                if v in g.edges[ea] and v in g.edges[eb]:
                    continue
            if pt in pos_to_vertex:
                continue  # reported by the vertex scan below
            rep.degenerate_contacts.append(("touch", g.edges[ea], g.edges[eb], pt))
        else:
            rep.degenerate_contacts.append(("overlap", g.edges[ea], g.edges[eb], c[1]))
    for v, p in enumerate(d.positions):
        for e, k, a, b in segs:
            if v in g.edges[e] and (p == a or p == b):
                continue
            if on_segment(p, a, b):
                rep.edge_through_vertex.append((g.edges[e], v))
    by_pair: dict[tuple[int, int], list] = defaultdict(list)
    by_point: dict[Point, set] = defaultdict(set)
    for r in records:
        by_pair[r.edges].append(r.point)
        by_point[r.point].update(r.edges)
        i, j = r.edges
        if g.edges_adjacent(i, j):
            rep.adjacent_crossings.append((g.edges[i], g.edges[j], r.point))
    for pair, pts in sorted(by_pair.items()):
        if len(pts) > 1:
            rep.multiple_crossings.append((g.edges[pair[0]], g.edges[pair[1]], len(pts)))
    for pt, es in by_point.items():
        if len(es) > 2:
            rep.triple_points.append((pt, tuple(sorted(g.edges[e] for e in es))))
    for sc in selfs:
        by_point[sc[1]].add(sc[0])
    records.sort(key=lambda r: (r.edges, r.segments, r.params))
    rep.triple_points.sort()
    rep.self_crossings.sort()
    rep.edge_through_vertex.sort()
    return _Analysis(records, selfs, rep)


def crossings(d: PolylineDrawing) -> list[CrossingRecord]:
    """Every interior crossing between two distinct edges, in a canonical order.

    ``len(crossings(d))`` is the crossing count of the drawing.  Touches,
    overlaps and edges through vertices raise :class:`DegenerateGeometryError`.
    """
    an = _analyse(d)
    if an.report.degenerate_contacts or an.report.edge_through_vertex:
        raise DegenerateGeometryError(
            f"degenerate geometry: {an.report.degenerate_contacts[:3]} {an.report.edge_through_vertex[:3]}"
        )
    return an.records


def crossing_count(d: PolylineDrawing) -> int:
    return len(crossings(d))


def validate_good(d: PolylineDrawing) -> GoodnessReport:
    return _analyse(d).report


@dataclass(frozen=True)
class NuPartition:
    matrix: tuple[tuple[int, ...], ...]
    total: int

    def within(self, i: int) -> int:
        return self.matrix[i][i]

    def between(self, i: int, j: int) -> int:
        return self.matrix[i][j]


def _edge_ids(g: Graph, part) -> list[int]:
    out = []
    for e in part:
        if isinstance(e, (int, np.integer)):
            if not 0 <= e < g.m:
                raise GraphError(f"edge index {e} out of range")
            out.append(int(e))
        else:
            key = tuple(sorted((int(e[0]), int(e[1]))))
            if key not in g.edge_index:
                raise GraphError(f"{key} is not an edge")
            out.append(g.edge_index[key])
    return out


def nu_partition(d: PolylineDrawing, parts: Sequence[Iterable]) -> NuPartition:
    """Crossings within each part (diagonal) and between parts (off-diagonal).

    Parts may list edge indices or endpoint pairs and must partition the edges.
    """
    g = d.graph
    owner = {}
    for k, part in enumerate(parts):
        for e in _edge_ids(g, part):
            if e in owner:
                raise GraphError(f"edge {g.edges[e]} in two parts")
            owner[e] = k
    if len(owner) != g.m:
        raise GraphError("parts do not cover every edge")
    t = len(parts)
    mat = [[0] * t for _ in range(t)]
    recs = crossings(d)
    for r in recs:
        a, b = owner[r.edges[0]], owner[r.edges[1]]
        if a == b:
            mat[a][a] += 1
        else:
            mat[a][b] += 1
            mat[b][a] += 1
    return NuPartition(tuple(tuple(row) for row in mat), len(recs))


# ---------------------------------------------------------------------------
# Cycle-pair parity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityReport:
    cycles: int
    pairs_checked: int
    odd_pairs: int
    examples: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return self.odd_pairs == 0


def _mask_vertices(mask: int) -> tuple[int, ...]:
    return tuple(v for v in range(mask.bit_length()) if (mask >> v) & 1)


def cycle_parity_check(d: PolylineDrawing, max_report: int = 16) -> ParityReport:
    """Mutual crossings of every pair of vertex-disjoint cycles, mod 2.

    Every pair should be even in a good drawing; odd pairs are returned as
    vertex tuples.
    """
    g = d.graph
    if g.n > 16:
        raise GraphError("cycle enumeration limited to 16 vertices")
    recs = crossings(d)
    vm, em = _kernels.simple_cycles(g.n, g.edges)
    if len(recs) <= 64:
        first = np.array([1 << r.edges[0] for r in recs], dtype=np.uint64)
        second = np.array([1 << r.edges[1] for r in recs], dtype=np.uint64)
        amask = np.zeros(len(vm), dtype=np.uint64)
        bmask = np.zeros(len(vm), dtype=np.uint64)
        for x in range(len(recs)):
            bit = np.uint64(1 << x)
            amask[(em & first[x]) != 0] |= bit
            bmask[(em & second[x]) != 0] |= bit
        checked, n_odd, odd = _kernels.disjoint_pair_parity(vm, amask, bmask, max_report)
        pairs = [(int(i), int(j)) for i, j in odd]
    else:
        checked, n_odd, pairs = _parity_python(vm, em, recs, max_report)
    examples = tuple((_mask_vertices(int(vm[i])), _mask_vertices(int(vm[j]))) for i, j in pairs)
    return ParityReport(len(vm), int(checked), int(n_odd), examples)


def _parity_python(vm, em, recs, max_report):
    vm = [int(x) for x in vm]
    em = [int(x) for x in em]
    checked = n_odd = 0
    out = []
    for i in range(len(vm)):
        for j in range(i + 1, len(vm)):
            if vm[i] & vm[j]:
                continue
            checked += 1
            c = sum(
                1
                for r in recs
                if ((em[i] >> r.edges[0]) & 1 and (em[j] >> r.edges[1]) & 1)
                or ((em[j] >> r.edges[0]) & 1 and (em[i] >> r.edges[1]) & 1)
            )
            if c % 2:
                n_odd += 1
                if len(out) < max_report:
                    out.append((i, j))
    return checked, n_odd, out


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def svg_text(d: PolylineDrawing, mark_crossings: bool = True, size: int = 640) -> str:
    """Deterministic SVG 1.1 document for the drawing."""
    g = d.graph
    pts = list(d.positions) + [p for bl in d.bends for p in bl]
    margin = 30
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, Fraction(1))
    else:
        x0 = y1 = Fraction(0)
        span = Fraction(1)
    scale = (size - 2 * margin) / span

    def tx(p: Point) -> tuple[str, str]:
        return _fmt(float((p[0] - x0) * scale) + margin), _fmt(float((y1 - p[1]) * scale) + margin)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g fill="none" stroke="#333" stroke-width="1.5">',
    ]
    for i in range(g.m):
        coords = " ".join(",".join(tx(p)) for p in d.route(i))
        lines.append(f'<polyline points="{coords}"/>')
    lines.append("</g>")
    if mark_crossings and g.m:
        lines.append('<g fill="#d22">')
        for r in crossings(d):
            x, y = tx(r.point)
            lines.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
        lines.append("</g>")
    lines.append('<g font-family="monospace" font-size="10" text-anchor="middle">')
    for v, p in enumerate(d.positions):
        x, y = tx(p)
        lines.append(f'<circle cx="{x}" cy="{y}" r="9" fill="#fff" stroke="#000"/>')
        lines.append(f'<text x="{x}" y="{_fmt(float(y) + 3.5)}">{g.label(v)}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(d: PolylineDrawing, path, mark_crossings: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg_text(d, mark_crossings))
