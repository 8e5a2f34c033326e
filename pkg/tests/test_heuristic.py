import pytest

from cubecross.arrangement import arrangement
from cubecross.cubes import generate
from cubecross.geometry import crossing_count, cycle_parity_check, validate_good
from cubecross.heuristic import cr_upper_bound
from cubecross.planarization import Planarization, verify_certificate
from cubecross.realize import normalize, realize_drawing
from cubecross.solver import euler_girth_bound
from conftest import complete, complete_bipartite, petersen

GRAPHS = [generate("Q", 3), generate("CQ", 3), generate("LTQ", 3), generate("MQ", 3, 1), complete(5), complete(6),
          complete_bipartite(3, 4), petersen()]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: g.name or str(g.m))
def test_upper_bound_is_certified_and_drawn(g):
    ub = cr_upper_bound(g, effort=8, seed=3)
    assert ub.k >= euler_girth_bound(g)
    assert verify_certificate(g, ub.planarization) and ub.planarization.k == ub.k
    assert validate_good(ub.drawing).good
    assert crossing_count(ub.drawing) == ub.k


def test_small_cube_upper_values():
    assert cr_upper_bound(generate("Q", 3), effort=4).k == 0
    assert cr_upper_bound(generate("CQ", 3), effort=8).k == 1


def test_seed_reproducibility():
    g = generate("CQ", 4)
    a = cr_upper_bound(g, effort=6, seed=5, realize=False)
    b = cr_upper_bound(g, effort=6, seed=5, realize=False)
    assert a.k == b.k and a.planarization == b.planarization and a.seed == b.seed
    replay = cr_upper_bound(g, effort=1, seed=a.seed, polish=1, realize=False)
    assert replay.k == a.k and replay.seed == a.seed


def test_cq4_upper_bound_respects_euler():
    g = generate("CQ", 4)
    ub = cr_upper_bound(g, effort=16)
    assert 4 <= ub.k
    d = ub.drawing
    assert cycle_parity_check(d).ok
    arr = arrangement(d)
    assert arr.euler_holds()


def test_normalize_is_idempotent_and_never_increases():
    g = complete(6)
    ub = cr_upper_bound(g, effort=4, realize=False)
    p = ub.planarization
    q = normalize(p)
    assert q.k <= p.k and normalize(q) == q
    assert verify_certificate(g, q)


def test_realize_empty_planarization():
    g = generate("Q", 3)
    d = realize_drawing(Planarization.empty(g))
    assert validate_good(d).good and crossing_count(d) == 0
