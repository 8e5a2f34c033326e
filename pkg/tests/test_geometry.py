import random
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest
import shapely.geometry as sg
from hypothesis import given, strategies as st

from cubecross.cubes import generate, split
from cubecross.geometry import (
    DegenerateGeometryError,
    PolylineDrawing,
    as_fraction,
    crossing_count,
    crossings,
    cycle_parity_check,
    nu_partition,
    segment_contact,
    svg_text,
    validate_good,
)
from cubecross.graph import Graph, GraphError
from conftest import complete


def square_with_diagonals():
    g = complete(4)
    return PolylineDrawing(g, ((0, 0), (2, 0), (2, 2), (0, 2)))


def random_straight_drawing(g: Graph, rng: random.Random, box: int = 60) -> PolylineDrawing:
    """A good straight-line drawing (resampled until no contact is degenerate)."""
    while True:
        pts = set()
        while len(pts) < g.n:
            pts.add((rng.randrange(box), rng.randrange(box)))
        d = PolylineDrawing(g, tuple(rng.sample(sorted(pts), g.n)))
        if validate_good(d).good:  # straight lines can only fail by a triple point
            return d


def shapely_count(d: PolylineDrawing) -> int:
    g = d.graph
    lines = [sg.LineString([(float(x), float(y)) for x, y in d.route(i)]) for i in range(g.m)]
    return sum(
        1
        for i in range(g.m)
        for j in range(i + 1, g.m)
        if not g.edges_adjacent(i, j) and lines[i].intersects(lines[j])
    )


class TestPredicates:
    def test_proper_crossing_point_and_parameters(self):
        c = segment_contact((F(0), F(0)), (F(2), F(2)), (F(0), F(2)), (F(2), F(0)))
        assert c[0] == "proper" and c[1] == (1, 1) and c[2] == c[3] == F(1, 2)

    def test_touch_overlap_disjoint(self):
        P = lambda x, y: (F(x), F(y))  # noqa: E731
        assert segment_contact(P(0, 0), P(2, 0), P(1, 0), P(1, 5))[0] == "point"
        assert segment_contact(P(0, 0), P(2, 0), P(1, 0), P(3, 0))[0] == "overlap"
        assert segment_contact(P(0, 0), P(1, 0), P(0, 1), P(1, 1)) is None
        assert segment_contact(P(0, 0), P(1, 0), P(1, 0), P(2, 0)) == ("point", P(1, 0))

    def test_floats_are_rejected(self):
        with pytest.raises(TypeError):
            as_fraction(0.5)
        assert as_fraction("3/4") == F(3, 4)


class TestDrawing:
    def test_square_with_diagonals_has_one_good_crossing(self):
        d = square_with_diagonals()
        recs = crossings(d)
        assert len(recs) == 1 and recs[0].point == (1, 1)
        assert validate_good(d).good

    def test_duplicate_positions_and_zero_segments(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(DegenerateGeometryError):
            PolylineDrawing(g, ((0, 0), (0, 0)))
        with pytest.raises(DegenerateGeometryError):
            PolylineDrawing(g, ((0, 0), (1, 0)), (((0, 0),),))
        with pytest.raises(GraphError):
            PolylineDrawing(g, ((0, 0),))

    def test_adjacent_crossing_is_not_good(self):
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        # edge 0-2 bends around and crosses 0-1
        d = PolylineDrawing(g, ((0, 0), (4, 0), (0, 4)), ((), ((3, 1), (2, -1))))
        rep = validate_good(d)
        assert rep.adjacent_crossings and not rep.good

    def test_double_crossing_is_not_good(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        d = PolylineDrawing(g, ((0, 0), (6, 0), (1, -2), (5, -2)), ((), ((2, 2), (4, -1))))
        # 2-3 goes up through 0-1 and back down
        assert validate_good(d).multiple_crossings
        assert crossing_count(d) == 2

    def test_self_crossing_is_not_good(self):
        g = Graph.from_edges(2, [(0, 1)])
        d = PolylineDrawing(g, ((0, 0), (4, 0)), (((2, 2), (2, -2), (1, 0), (3, 3)),))
        assert validate_good(d).self_crossings

    def test_triple_point_is_not_good(self):
        g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
        d = PolylineDrawing(g, ((0, 0), (2, 2), (0, 2), (2, 0), (1, -1), (1, 3)))
        assert validate_good(d).triple_points

    def test_edge_through_vertex_raises_on_count(self):
        g = Graph.from_edges(3, [(0, 1)])
        d = PolylineDrawing(g, ((0, 0), (2, 0), (1, 0)))
        assert validate_good(d).edge_through_vertex
        with pytest.raises(DegenerateGeometryError):
            crossing_count(d)

    def test_restrict(self):
        d = square_with_diagonals()
        sub, verts = d.restrict([0, 1, 2])
        assert sub.graph.m == 3 and crossing_count(sub) == 0 and verts == [0, 1, 2]


@given(st.integers(min_value=0, max_value=10**6))
def test_count_matches_shapely_on_random_drawings(seed):
    d = random_straight_drawing(generate("CQ", 3), random.Random(seed))
    assert crossing_count(d) == shapely_count(d)


@given(
    st.integers(min_value=0, max_value=10**6),
    st.tuples(*[st.integers(min_value=-3, max_value=3)] * 4).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0),
)
def test_count_is_affine_invariant(seed, mat):
    d = random_straight_drawing(complete(6), random.Random(seed))
    assert crossing_count(d.transformed(*mat, F(1, 3), -7)) == crossing_count(d)


def test_nu_partition_additivity_on_100_random_drawings():
    """Crossing counts split additively over any edge partition, and merging parts adds."""
    rng = random.Random(2024)
    graphs = [generate("CQ", 3), generate("LTQ", 3), complete(6), generate("Q", 3)]
    for trial in range(100):
        g = graphs[trial % len(graphs)]
        d = random_straight_drawing(g, rng)
        k = rng.randint(2, 4)
        owner = [rng.randrange(k) for _ in range(g.m)]
        parts = [[e for e in range(g.m) if owner[e] == p] for p in range(k)]
        nu = nu_partition(d, parts)
        total = crossing_count(d)
        assert nu.total == total
        assert sum(nu.within(i) for i in range(k)) + sum(
            nu.between(i, j) for i in range(k) for j in range(i + 1, k)
        ) == total
        merged = nu_partition(d, [parts[0] + parts[1]] + parts[2:])
        for j in range(2, k):
            assert merged.between(0, j - 1) == nu.between(0, j) + nu.between(1, j)
        assert merged.within(0) == nu.within(0) + nu.within(1) + nu.between(0, 1)


def test_six_term_identity_for_cube_halves():
    rng = random.Random(7)
    g = generate("CQ", 4)
    sv = split(g)
    left, right = set(sv.left_vertices), set(sv.right_vertices)
    el = [e for e in g.edges if set(e) <= left]
    er = [e for e in g.edges if set(e) <= right]
    elr = list(sv.cross_edges)
    for _ in range(10):
        d = random_straight_drawing(g, rng, box=200)
        nu = nu_partition(d, [el, er, elr])
        six = nu.within(0) + nu.within(1) + nu.within(2) + nu.between(0, 1) + nu.between(0, 2) + nu.between(1, 2)
        assert six == crossing_count(d)


def test_nu_partition_rejects_bad_parts():
    d = square_with_diagonals()
    with pytest.raises(GraphError):
        nu_partition(d, [[0, 1], [1, 2, 3, 4, 5]])
    with pytest.raises(GraphError):
        nu_partition(d, [[0, 1]])
    with pytest.raises(GraphError):
        nu_partition(d, [[(0, 1), (0, 2), (0, 3)], [(1, 2), (1, 3), (2, 9)]])


@given(st.integers(min_value=0, max_value=10**6))
def test_disjoint_cycles_cross_evenly(seed):
    d = random_straight_drawing(generate("CQ", 3), random.Random(seed))
    rep = cycle_parity_check(d)
    assert rep.ok and rep.pairs_checked > 0


def test_svg_is_well_formed_and_deterministic():
    d = square_with_diagonals()
    text = svg_text(d)
    assert text == svg_text(d)
    root = ET.fromstring(text.split("\n", 1)[1])
    ns = "{http://www.w3.org/2000/svg}"
    assert root.get("version") == "1.1"
    assert len(root.findall(f".//{ns}polyline")) == 6
    assert len(root.findall(f".//{ns}text")) == 4
