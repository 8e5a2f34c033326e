"""Turn a planarization with a planar host into an exact good drawing.

The host is embedded and laid out on an integer grid (Chrobak-Payne, via
networkx).  A dummy whose two edges alternate in its rotation becomes a real
crossing: one edge keeps a bend at the dummy's position and the other is
rerouted through a short chord cutting across it.  A dummy whose edges do not
alternate only touches, so it is split into two bend points and the crossing
disappears; the drawing then has fewer crossings than the planarization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .geometry import PolylineDrawing, crossing_count, orient, validate_good
from .graph import GraphError
from .planarization import HostState, Planarization


@dataclass
class _Embedded:
    planarization: Planarization
    embedding: nx.PlanarEmbedding
    paths: list[list]
    crossing_nodes: dict


def _alternates(rot: list, e_nbrs: tuple) -> bool:
    i, j = rot.index(e_nbrs[0]), rot.index(e_nbrs[1])
    return (i - j) % 4 == 2


def embed_normalized(p: Planarization) -> _Embedded:
    """Embed the host and split every dummy whose edges only touch."""
    st = HostState(p.graph, p)
    ok, emb = nx.check_planarity(st.host)
    if not ok:
        raise GraphError("planarization host is not planar")
    data = emb.get_data()
    paths = [list(path) for path in st.paths]
    keep = {}
    for x in [v for v in list(data) if st.is_dummy(v)]:
        e, f = st.dummy_edges(x)
        pe, pf = paths[e], paths[f]
        ie, jf = pe.index(x), pf.index(x)
        e_nbrs = (pe[ie - 1], pe[ie + 1])
        f_nbrs = (pf[jf - 1], pf[jf + 1])
        rot = data[x]
        if _alternates(rot, e_nbrs):
            keep[x] = (e, f)
            continue
        # e_nbrs are consecutive in the rotation; splitting x keeps planarity
        xe, xf = ("bend", x, e), ("bend", x, f)
        data[xe] = [w for w in rot if w in e_nbrs]
        data[xf] = [w for w in rot if w in f_nbrs]
        del data[x]
        for w, new in [(w, xe) for w in e_nbrs] + [(w, xf) for w in f_nbrs]:
            data[w] = [new if y == x else y for y in data[w]]
        pe[ie] = xe
        pf[jf] = xf
    emb2 = nx.PlanarEmbedding()
    emb2.set_data(data)
    emb2.check_structure()
    order = []
    for e, path in enumerate(paths):
        seq = []
        for x in path[1:-1]:
            if x in keep:
                a, b = keep[x]
                seq.append(b if a == e else a)
        order.append(tuple(seq))
    q = Planarization(p.graph, tuple(order))
    return _Embedded(q, emb2, paths, keep)


def normalize(p: Planarization) -> Planarization:
    """The planarization after removing crossings that are only touchings."""
    return embed_normalized(p).planarization


def _grid_positions(emb: nx.PlanarEmbedding) -> dict:
    """Integer straight-line positions respecting the embedding, per component."""
    pos = {}
    offset = 0
    for comp in sorted(nx.connected_components(emb.to_undirected()), key=lambda c: min(map(repr, c))):
        sub = nx.PlanarEmbedding()
        sub.set_data({v: list(emb.neighbors_cw_order(v)) for v in comp})
        local = nx.combinatorial_embedding_to_pos(sub) if len(comp) > 1 else {next(iter(comp)): (0, 0)}
        width = max(x for x, _ in local.values())
        for v, (x, y) in local.items():
            pos[v] = (Fraction(x + offset), Fraction(y))
        offset += width + 2
    return pos


def _toward(x, a, t: Fraction):
    return (x[0] + t * (a[0] - x[0]), x[1] + t * (a[1] - x[1]))


def _routes(emb: _Embedded, pos: dict, t: Fraction) -> list[tuple]:
    g = emb.planarization.graph
    bends: list[list] = [[pos[x] for x in path[1:-1]] for path in emb.paths]
    for x, (e, f) in emb.crossing_nodes.items():
        here = pos[x]
        pe, pf = emb.paths[e], emb.paths[f]
        ie, jf = pe.index(x), pf.index(x)
        a, b = pos[pe[ie - 1]], pos[pe[ie + 1]]
        c, d = pos[pf[jf - 1]], pos[pf[jf + 1]]
        e_straight = orient(a, here, b) == 0
        f_straight = orient(c, here, d) == 0
        # which edge keeps the dummy as a bend, and which one takes a chord
        if e_straight and f_straight:
            bends[e][ie - 1] = None
            bends[f][jf - 1] = None
            continue
        if f_straight:
            (e, ie, a, b), (f, jf, c, d) = (f, jf, c, d), (e, ie, a, b)
            e_straight = True
        if e_straight:
            bends[e][ie - 1] = None
        bends[f][jf - 1] = (_toward(here, c, t), _toward(here, d, t))
    out = []
    for i, bl in enumerate(bends):
        flat = []
        for item in bl:
            if item is None:
                continue
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], tuple):
                flat.extend(item)
            else:
                flat.append(item)
        out.append(tuple(flat))
    return out


def realize_drawing(p: Planarization, max_halvings: int = 40) -> PolylineDrawing:
    """A good exact drawing whose crossings are the alternating dummies of ``p``.

    The returned drawing has exactly ``normalize(p).k`` crossings, which equals
    ``p.k`` whenever no crossing of ``p`` is a mere touching.
    """
    emb = embed_normalized(p)
    g = p.graph
    pos = _grid_positions(emb.embedding)
    vpos = tuple(pos[v] for v in range(g.n))
    want = emb.planarization.k
    t = Fraction(1, 4)
    for _ in range(max_halvings):
        d = PolylineDrawing(g, vpos, tuple(_routes(emb, pos, t)))
        rep = validate_good(d)
        if rep.good and crossing_count(d) == want:
            return d
        t /= 2
    raise GraphError("could not realize the planarization as a good drawing")  # pragma: no cover
