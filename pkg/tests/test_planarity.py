import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubecross.cubes import generate
from cubecross.graph import Graph, GraphError
from cubecross.planarity import (
    KuratowskiWitness,
    find_k33_subdivision,
    is_planar,
    kuratowski_witness,
    minimal_nonplanar_edges,
    verify_witness,
)
from conftest import complete, complete_bipartite, petersen


def _face_count(rotation):
    emb = nx.PlanarEmbedding()
    emb.set_data(rotation)
    emb.check_structure()
    seen, faces = set(), 0
    for v, w in emb.edges():
        if (v, w) not in seen:
            emb.traverse_face(v, w, mark_half_edges=seen)
            faces += 1
    return faces


def test_q3_is_planar_with_valid_rotation(q3):
    res = is_planar(q3)
    assert res and res.witness is None
    # Euler: n - m + f = 2 for a connected plane graph
    assert q3.n - q3.m + _face_count(res.rotation) == 2


def test_cq3_has_k33_witness(cq3):
    res = is_planar(cq3)
    assert not res
    assert res.witness.kind == "K33" and verify_witness(cq3, res.witness)


def test_k5_witness_is_k5(k5):
    w = is_planar(k5).witness
    assert w.kind == "K5" and verify_witness(k5, w)
    assert find_k33_subdivision(k5) is None


def test_find_k33_in_petersen_and_cq3(cq3):
    for g in (cq3, petersen(), generate("LTQ", 4)):
        w = find_k33_subdivision(g)
        assert w is not None and w.kind == "K33" and verify_witness(g, w)


def test_find_k33_on_planar_graph_is_none(q3):
    assert find_k33_subdivision(q3) is None


def test_tampered_witnesses_are_rejected(k33):
    w = kuratowski_witness(k33)
    assert verify_witness(k33, w)
    bad_kind = KuratowskiWitness("K5", w.branch_vertices, w.paths)
    assert not verify_witness(k33, bad_kind)
    assert not verify_witness(k33, KuratowskiWitness("K33", w.branch_vertices, w.paths[:-1]))
    swapped = KuratowskiWitness("K33", w.branch_vertices[1:] + w.branch_vertices[:1], w.paths)
    assert not verify_witness(k33, swapped)
    # a witness that uses a non-edge
    g = Graph.from_edges(6, [e for e in k33.edges if e != k33.edges[0]])
    assert not verify_witness(g, w)


def test_minimal_nonplanar_core_is_minimal():
    h = complete(6).to_networkx()
    core = minimal_nonplanar_edges(h)
    t = nx.Graph(core)
    assert not nx.check_planarity(t)[0]
    for e in core:
        t2 = t.copy()
        t2.remove_edge(*e)
        assert nx.check_planarity(t2)[0]


def test_planar_graph_has_no_core(q3):
    with pytest.raises(GraphError):
        minimal_nonplanar_edges(q3.to_networkx())


@given(st.integers(min_value=0, max_value=100_000), st.integers(min_value=8, max_value=20))
def test_agrees_with_networkx_and_witness_verifies(seed, m):
    h = nx.gnm_random_graph(9, m, seed=seed)
    g = Graph.from_edges(9, h.edges())
    res = is_planar(g)
    assert res.planar == nx.check_planarity(h)[0]
    if not res.planar:
        assert verify_witness(g, res.witness)


def test_k34_witness_kind():
    g = complete_bipartite(3, 4)
    assert is_planar(g).witness.kind == "K33"
