import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubecross import _kernels as K
from cubecross.cubes import generate
from conftest import complete


def random_edges(rng, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


@pytest.mark.parametrize("seed", range(6))
def test_subset_edge_counts_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    e = random_edges(rng, n, 0.4)
    eu = np.array([a for a, _ in e], dtype=np.int64)
    ev = np.array([b for _, b in e], dtype=np.int64)
    a = K.subset_edge_counts_numba(n, eu, ev)
    b = K.subset_edge_counts_numpy(n, eu, ev)
    assert np.array_equal(a, b)
    for mask in rng.sample(range(1 << n), min(20, 1 << n)):
        assert a[mask] == sum(1 for u, v in e if mask >> u & 1 and mask >> v & 1)


def _adj(n, edges):
    m = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        m[u, v] = m[v, u] = 1
    return m


@pytest.mark.parametrize("name", ["Q3", "CQ3", "LTQ4", "0-MQ4"])
def test_match_all_agree(name):
    from cubecross.cubes import parse_spec

    g = generate(parse_spec(name))
    adj = _adj(g.n, g.edges)
    col = np.zeros(g.n, dtype=np.int64)
    order = np.arange(g.n, dtype=np.int64)
    a = K.match_all_numba(adj, adj, col, col, order, 10000)
    b = K.match_all_numpy(adj, adj, col, col, order, 10000)
    assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))


def _cycle_inputs(n, edges):
    nb = [[] for _ in range(n)]
    eid = -np.ones((n, n), dtype=np.int64)
    for k, (u, v) in enumerate(edges):
        nb[u].append(v)
        nb[v].append(u)
        eid[u, v] = eid[v, u] = k
    w = max(1, max(len(x) for x in nb))
    nbr = -np.ones((n, w), dtype=np.int64)
    for v, row in enumerate(nb):
        nbr[v, : len(row)] = sorted(row)
    return nbr, eid


@pytest.mark.parametrize("g", [generate("Q", 3), generate("CQ", 3), complete(5)], ids=lambda g: g.name)
def test_simple_cycles_agree(g):
    nbr, eid = _cycle_inputs(g.n, g.edges)
    a = K.simple_cycles_numba(g.n, nbr, eid)
    b = K.simple_cycles_numpy(g.n, nbr, eid)
    assert sorted(zip(a[0].tolist(), a[1].tolist())) == sorted(zip(b[0].tolist(), b[1].tolist()))


def test_cycle_counts_known():
    assert len(K.simple_cycles(5, complete(5).edges)[0]) == 37
    assert len(K.simple_cycles(8, generate("Q", 3).edges)[0]) == 28


@given(st.integers(0, 2**32))
def test_disjoint_pair_parity_agree(seed):
    rng = np.random.default_rng(seed)
    c = int(rng.integers(2, 30))
    vm = rng.integers(1, 1 << 10, size=c).astype(np.int64)
    am = rng.integers(0, 1 << 20, size=c).astype(np.uint64)
    bm = rng.integers(0, 1 << 20, size=c).astype(np.uint64)
    a = K.disjoint_pair_parity_numba(vm, am, bm, 8)
    b = K.disjoint_pair_parity_numpy(vm, am, bm, 8)
    assert int(a[0]) == int(b[0]) and int(a[1]) == int(b[1])
    assert a[2].tolist() == b[2].tolist()


@given(st.integers(0, 2**32))
def test_classify_pairs_agree(seed):
    rng = np.random.default_rng(seed)
    s = int(rng.integers(2, 25))
    seg = rng.integers(-4, 5, size=(s, 4)).astype(np.int64)
    ii, jj = np.triu_indices(s, 1)
    assert np.array_equal(K.classify_pairs_numba(seg, ii, jj), K.classify_pairs_numpy(seg, ii, jj))


def test_dispatch_follows_flag(monkeypatch):
    g = generate("CQ", 3)
    monkeypatch.setattr(K, "USE_NUMBA", False)
    assert K.backend() == "numpy"
    slow = K.subset_edge_counts(g.n, g.edges)
    monkeypatch.setattr(K, "USE_NUMBA", True)
    assert np.array_equal(slow, K.subset_edge_counts(g.n, g.edges))
