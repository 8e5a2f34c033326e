"""Faces of a good drawing, with crossings promoted to nodes.

Edges are cut at their crossings into *pieces*; bend points stay inside a
piece.  Faces are traced from darts sorted by exact angle around each node.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .geometry import (
    DegenerateGeometryError,
    Point,
    PolylineDrawing,
    as_point,
    crossings,
    on_segment,
    validate_good,
)


@dataclass(frozen=True)
class Piece:
    """Part of edge ``edge`` between two consecutive nodes, bends included."""

    edge: int
    tail: int
    head: int
    polyline: tuple[Point, ...]


@dataclass(frozen=True)
class Face:
    boundary: tuple[tuple[int, ...], ...]
    """Dart cycles bounding the face (darts are ``2 * piece + side``)."""
    bounded: bool
    nodes: frozenset[int]
    pieces: frozenset[int]


@dataclass(frozen=True)
class Arrangement:
    nodes: tuple[Point, ...]
    node_vertex: tuple[Optional[int], ...]
    pieces: tuple[Piece, ...]
    faces: tuple[Face, ...]
    outer_face: int
    components: int

    def v_on(self, f: int) -> frozenset[int]:
        """Graph vertices on the boundary of face ``f``."""
        return frozenset(self.node_vertex[x] for x in self.faces[f].nodes if self.node_vertex[x] is not None)

    def adjacent(self, f: int, h: int) -> int:
        """1 if distinct faces ``f`` and ``h`` share a boundary piece, else 0."""
        if f == h:
            return 0
        return int(bool(self.faces[f].pieces & self.faces[h].pieces))

    def euler_holds(self) -> bool:
        return len(self.nodes) - len(self.pieces) + len(self.faces) == 1 + self.components


def _half(v: tuple[Fraction, Fraction]) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b) -> int:
    """Counter-clockwise order of direction vectors starting at angle 0."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cr = a[0] * b[1] - a[1] * b[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _signed_area(poly: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return s / 2


def point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    """Exact even-odd test; ``p`` must not lie on the boundary."""
    inside = False
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def arrangement(d: PolylineDrawing) -> Arrangement:
    rep = validate_good(d)
    if not rep.good:
        raise DegenerateGeometryError(f"arrangement needs a good drawing ({rep.summary()})")
    g = d.graph
    recs = crossings(d)
    nodes: list[Point] = list(d.positions)
    node_vertex: list[Optional[int]] = list(range(g.n))
    # per edge: list of (segment index, parameter, node id) for interior cuts
    cuts: dict[int, list] = defaultdict(list)
    for r in recs:
        nid = len(nodes)
        nodes.append(r.point)
        node_vertex.append(None)
        for side in (0, 1):
            cuts[r.edges[side]].append((r.segments[side], r.params[side], nid))
    pieces: list[Piece] = []
    for e in range(g.m):
        route = d.route(e)
        u, v = g.edges[e]
        marks = sorted(cuts[e])
        cur_node, cur_poly = u, [route[0]]
        seg = 0
        for k in range(len(route) - 1):
            for s, _, nid in [m for m in marks if m[0] == k]:
                cur_poly.append(nodes[nid])
                pieces.append(Piece(e, cur_node, nid, tuple(cur_poly)))
                cur_node, cur_poly = nid, [nodes[nid]]
            cur_poly.append(route[k + 1])
            seg += 1
        pieces.append(Piece(e, cur_node, v, tuple(cur_poly)))

    # darts: 2*i runs tail->head, 2*i+1 runs head->tail
    def dart_origin(dt: int) -> int:
        pc = pieces[dt // 2]
        return pc.tail if dt % 2 == 0 else pc.head

    def dart_poly(dt: int) -> tuple[Point, ...]:
        pc = pieces[dt // 2]
        return pc.polyline if dt % 2 == 0 else tuple(reversed(pc.polyline))

    around: dict[int, list[int]] = defaultdict(list)
    for dt in range(2 * len(pieces)):
        around[dart_origin(dt)].append(dt)
    rot_pos = {}
    for x, darts in around.items():
        o = nodes[x]

        def direction(dt: int, o=o):
            q = dart_poly(dt)[1]
            return (q[0] - o[0], q[1] - o[1])

        darts.sort(key=cmp_to_key(lambda a, b: _angle_cmp(direction(a), direction(b))))
        for i, dt in enumerate(darts):
            rot_pos[dt] = (x, i)

    def next_dart(dt: int) -> int:
        twin = dt ^ 1
        x, i = rot_pos[twin]
        ring = around[x]
        return ring[(i - 1) % len(ring)]

    seen = [False] * (2 * len(pieces))
    cycles: list[list[int]] = []
    for dt in range(2 * len(pieces)):
        if seen[dt]:
            continue
        cyc = []
        cur = dt
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = next_dart(cur)
        cycles.append(cyc)

    # connected components of the subdivision (isolated vertices included)
    parent = list(range(len(nodes)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for pc in pieces:
        parent[find(pc.tail)] = find(pc.head)
    comp_of_node = [find(x) for x in range(len(nodes))]
    comps = sorted(set(comp_of_node))

    def cycle_poly(cyc: list[int]) -> list[Point]:
        out: list[Point] = []
        for dt in cyc:
            out.extend(dart_poly(dt)[:-1])
        return out

    areas = [_signed_area(cycle_poly(c)) for c in cycles]
    comp_cycles: dict[int, list[int]] = defaultdict(list)
    for ci, c in enumerate(cycles):
        comp_cycles[comp_of_node[dart_origin(c[0])]].append(ci)
    outer_cycle_of = {}
    for comp, cis in comp_cycles.items():
        outer_cycle_of[comp] = min(cis, key=lambda ci: (areas[ci], ci))
    bounded = [ci for ci in range(len(cycles)) if ci not in set(outer_cycle_of.values())]
    # each component's outer boundary (or lone vertex) sits in the innermost
    # bounded cycle of another component that contains it
    holes: dict[Optional[int], list] = defaultdict(list)
    for comp in comps:
        probe = nodes[comp]
        best = None
        for ci in bounded:
            owner = comp_of_node[dart_origin(cycles[ci][0])]
            if owner == comp:
                continue
            if point_in_polygon(probe, cycle_poly(cycles[ci])):
                if best is None or areas[ci] < areas[best]:
                    best = ci
        holes[best].append(comp)

    def face_from(cis: list[int], extra_nodes: list[int], is_bounded: bool) -> Face:
        ns = set(extra_nodes)
        ps = set()
        for ci in cis:
            for dt in cycles[ci]:
                ns.add(dart_origin(dt))
                ps.add(dt // 2)
        return Face(tuple(tuple(cycles[ci]) for ci in cis), is_bounded, frozenset(ns), frozenset(ps))

    raw_faces = []
    for ci in bounded:
        cis = [ci]
        lone = []
        for comp in holes.get(ci, []):
            if comp in outer_cycle_of:
                cis.append(outer_cycle_of[comp])
            else:
                lone.append(comp)
        raw_faces.append(face_from(cis, lone, True))
    cis, lone = [], []
    for comp in holes.get(None, []):
        if comp in outer_cycle_of:
            cis.append(outer_cycle_of[comp])
        else:
            lone.append(comp)
    outer = face_from(cis, lone, False)
    raw_faces.append(outer)

    def face_key(f: Face):
        pts = sorted(nodes[x] for x in f.nodes)
        return (pts[0] if pts else (Fraction(0), Fraction(0)), pts, not f.bounded)

    faces = sorted(raw_faces, key=face_key)
    arr = Arrangement(tuple(nodes), tuple(node_vertex), tuple(pieces), tuple(faces), faces.index(outer), len(comps))
    if not arr.euler_holds():  # pragma: no cover - would indicate a tracing bug
        raise AssertionError("arrangement violates Euler's formula")
    return arr


def locate(d: PolylineDrawing, a: Arrangement, pts) -> list[int]:
    """Face index containing each point; points on the drawing are rejected."""
    out = []
    polys = []
    for fi, f in enumerate(a.faces):
        if not f.bounded:
            continue
        first = f.boundary[0]
        poly: list[Point] = []
        for dt in first:
            pc = a.pieces[dt // 2]
            pl = pc.polyline if dt % 2 == 0 else tuple(reversed(pc.polyline))
            poly.extend(pl[:-1])
        polys.append((_signed_area(poly), fi, poly))
    polys.sort(key=lambda t: t[0])
    for raw in pts:
        p = as_point(raw)
        if p in a.nodes or any(
            on_segment(p, pc.polyline[k], pc.polyline[k + 1]) for pc in a.pieces for k in range(len(pc.polyline) - 1)
        ):
            raise DegenerateGeometryError(f"point {p} lies on the drawing")
        hit = a.outer_face
        for _, fi, poly in polys:
            if point_in_polygon(p, poly):
                hit = fi
                break
        out.append(hit)
    return out


def v_in(d: PolylineDrawing, a: Arrangement, points_by_vertex: dict) -> dict[int, set]:
    """Group labelled points by the face containing them."""
    faces = locate(d, a, list(points_by_vertex.values()))
    out: dict[int, set] = defaultdict(set)
    for key, f in zip(points_by_vertex, faces):
        out[f].add(key)
    return dict(out)
