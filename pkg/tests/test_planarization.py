import pytest

from cubecross.cubes import generate
from cubecross.graph import GraphError
from cubecross.planarization import HostState, Planarization, verify_certificate
from conftest import complete


def _k5_one_crossing():
    g = complete(5)
    e, f = g.edge_index[(0, 2)], g.edge_index[(1, 3)]
    order = [()] * g.m
    order[e], order[f] = (f,), (e,)
    return g, Planarization(g, tuple(order))


def test_valid_certificate():
    g, p = _k5_one_crossing()
    assert p.k == 1 and p.crossings == ((g.edge_index[(0, 2)], g.edge_index[(1, 3)]),)
    assert p.problems() == []
    assert verify_certificate(g, p)
    h = p.host()
    assert h.number_of_nodes() == 6 and h.number_of_edges() == 12
    assert sorted(d for _, d in h.degree()) == [4] * 6


def test_adjacent_pair_is_rejected():
    g = complete(5)
    e, f = g.edge_index[(0, 1)], g.edge_index[(0, 2)]
    order = [()] * g.m
    order[e], order[f] = (f,), (e,)
    p = Planarization(g, tuple(order))
    assert any("adjacent" in s for s in p.problems())
    assert not verify_certificate(g, p)


def test_nonplanar_host_is_rejected():
    g = complete(6)
    assert not verify_certificate(g, Planarization.empty(g))


def test_one_sided_record_is_rejected():
    g = complete(5)
    e, f = g.edge_index[(0, 2)], g.edge_index[(1, 3)]
    order = [()] * g.m
    order[e] = (f,)
    assert not verify_certificate(g, Planarization(g, tuple(order)))


def test_json_round_trip_and_relabel():
    g, p = _k5_one_crossing()
    assert Planarization.from_json(g, p.to_json()) == p
    perm = [4, 3, 2, 1, 0]
    q = p.relabel(perm)
    assert verify_certificate(q.graph, q) and q.k == 1
    with pytest.raises(GraphError):
        Planarization.from_json(g, {"order": {"0-9": [1]}})


def test_host_state_undo_restores_everything():
    g = generate("CQ", 3)
    st = HostState(g)
    before = (sorted(map(sorted, st.host.edges())), dict(st.owner), [list(p) for p in st.paths])
    pairs = [(i, j) for i in range(g.m) for j in range(i + 1, g.m) if st.can_cross(i, j)][:3]
    for e, f in pairs:
        st.add_crossing(e, 0, f, 0)
    assert st.count == 3 and st.freeze().problems() == []
    for _ in pairs:
        st.undo()
    after = (sorted(map(sorted, st.host.edges())), dict(st.owner), [list(p) for p in st.paths])
    assert before == after and st.count == 0


def test_host_state_loads_planarization_order():
    g = complete(6)
    a, b, c = g.edge_index[(0, 3)], g.edge_index[(1, 4)], g.edge_index[(2, 5)]
    order = [()] * g.m
    order[a] = (b, c)
    order[b] = (a,)
    order[c] = (a,)
    p = Planarization(g, tuple(order))
    assert HostState(g, p).freeze() == p
