"""Exact crossing numbers by branch-and-bound over planarizations.

Search nodes are planarizations of the input graph.  A node whose host is
planar certifies "at most k crossings".  Otherwise the host contains a
Kuratowski subdivision W, and any completion to a planar host must put a new
crossing between two segments of W (crossing a W segment with anything else
leaves a subdivided copy of W behind).  Children are therefore the crossable
segment pairs of W, tried in a fixed order; child t forbids the pairs of
children 1..t-1 so no completion is explored twice.
"""

from __future__ import annotations

import math
import os
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import networkx as nx

from .graph import Graph, components, girth, induced_subgraph
from .iso import AutomorphismGroup, automorphisms
from .planarity import kuratowski_witness
from .planarization import HostState, Planarization, verify_certificate

BUDGET_ENV = "CUBECROSS_BUDGET"


def parse_duration(text: str) -> float:
    """Seconds from strings like ``90``, ``90s``, ``5m`` or ``1.5h``."""
    t = str(text).strip().lower()
    scale = {"s": 1, "m": 60, "h": 3600}
    if t and t[-1] in scale:
        return float(t[:-1]) * scale[t[-1]]
    return float(t)


@dataclass(frozen=True)
class Budget:
    """Wall-clock seconds, search-node cap and worker count; ``None`` means unlimited."""

    wall: Optional[float] = None
    nodes: Optional[int] = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.wall is not None and self.wall < 0:
            raise ValueError("wall budget must be nonnegative")
        if self.nodes is not None and self.nodes < 0:
            raise ValueError("node budget must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @classmethod
    def from_env(cls, default: Optional[str] = None) -> "Budget":
        raw = os.environ.get(BUDGET_ENV, default)
        return cls(wall=parse_duration(raw)) if raw else cls()


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    bound_prunes: int = 0
    witnesses_extracted: int = 0
    witnesses_reused: int = 0
    root_branches: int = 0
    root_orbit_reduction: bool = False

    def merge(self, other: "SearchStats") -> None:
        for name in ("nodes", "memo_hits", "bound_prunes", "witnesses_extracted", "witnesses_reused"):
            setattr(self, name, getattr(self, name) + getattr(other, name))


@dataclass
class DecideResult:
    status: str
    k: int
    certificate: Optional[Planarization] = None
    stats: SearchStats = field(default_factory=SearchStats)
    elapsed: float = 0.0

    @property
    def yes(self) -> bool:
        return self.status == "YES"


@dataclass
class CrResult:
    graph_name: str
    lower: int
    lower_source: str
    upper: Optional[int]
    certificate: Optional[Planarization]
    drawing: object = None
    exact: bool = False
    elapsed: float = 0.0
    nodes: int = 0
    seed: int = 0
    log: list = field(default_factory=list)

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None

    def __post_init__(self) -> None:
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact result needs matching bounds")


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


def _euler(m: int, n: int, g: float) -> int:
    if n < 3 or g == math.inf:
        return 0
    return max(0, math.ceil(Fraction(m) - Fraction(int(g) * (n - 2), int(g) - 2)))


def euler_girth_bound(g: Graph) -> int:
    """Planar edge-count bound at the graph's girth, summed over components.

    Forests and components with fewer than three vertices contribute 0.
    """
    total = 0
    for comp in components(g):
        sub, _ = induced_subgraph(g, comp)
        total += _euler(sub.m, sub.n, girth(sub))
    return total


def _triangle_hitting_set(h: nx.Graph) -> int:
    """Size of a greedy edge set meeting every triangle of ``h``."""
    tris = set()
    for a, b in h.edges():
        for c in set(h[a]) & set(h[b]):
            tris.add(frozenset((a, b, c)))
    removed = 0
    while tris:
        count: dict = {}
        for t in tris:
            x, y, z = sorted(t)
            for e in ((x, y), (x, z), (y, z)):
                count[e] = count.get(e, 0) + 1
        best = max(sorted(count), key=count.get)
        removed += 1
        tris = {t for t in tris if not (best[0] in t and best[1] in t)}
    return removed


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


class _Timeout(Exception):
    pass


class _Search:
    memo_cap = 200_000
    pool_cap = 48

    def __init__(self, g: Graph, k: int, deadline: Optional[float], node_cap: Optional[int], group=None):
        self.g = g
        self.k = k
        self.deadline = deadline
        self.node_cap = node_cap
        self.group = group
        self.state = HostState(g)
        self.stats = SearchStats()
        self.memo: OrderedDict = OrderedDict()
        self.pool: list[tuple[tuple, tuple]] = []
        self.found: Optional[Planarization] = None
        self.girth = girth(g)
        self._orbit_of: Optional[dict] = None

    # -- bookkeeping -------------------------------------------------------

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.node_cap is not None and self.stats.nodes > self.node_cap:
            raise _Timeout
        if self.deadline is not None and (self.stats.nodes & 7) == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def _remember(self, key, forb: frozenset) -> None:
        entry = self.memo.get(key)
        if entry is None:
            self.memo[key] = [forb]
            if len(self.memo) > self.memo_cap:
                self.memo.popitem(last=False)
        else:
            entry[:] = [f for f in entry if not forb <= f] + [forb]
            self.memo.move_to_end(key)

    def _lower(self) -> int:
        st = self.state
        c = st.count
        crossed_edges = {e for pair in st.crossed for e in pair}
        lb = c + _euler(self.g.m - len(crossed_edges), self.g.n, self.girth)
        if lb > self.k or self.girth < 4 or c == 0:
            return lb
        h = st.host
        r = _triangle_hitting_set(h)
        return max(lb, c + _euler(h.number_of_edges() - r, h.number_of_nodes(), 4))

    # -- witnesses ---------------------------------------------------------

    def _lift(self, paths) -> Optional[list[list[int]]]:
        """Re-express a stored witness in the current host, or ``None`` if broken."""
        st = self.state
        h = st.host
        out = []
        for p in paths:
            q = [p[0]]
            for a, b in zip(p, p[1:]):
                if h.has_edge(a, b):
                    q.append(b)
                    continue
                e = self._edge_through(a, b)
                if e is None:
                    return None
                path = st.paths[e]
                i, j = path.index(a), path.index(b)
                q.extend(path[i + 1 : j + 1] if i < j else path[j:i][::-1])
            out.append(q)
        used = set()
        branch = {p[0] for p in out} | {p[-1] for p in out}
        for q in out:
            inner = q[1:-1]
            for x in inner:
                if x in used or x in branch:
                    return None
                used.add(x)
        return out

    def _edge_through(self, a: int, b: int) -> Optional[int]:
        st = self.state
        cands = []
        for x in (a, b):
            if st.is_dummy(x):
                if x not in st.host:
                    return None
                cands.extend(st.dummy_edges(x))
        if not cands:
            key = (min(a, b), max(a, b))
            return self.g.edge_index.get(key)
        for e in cands:
            path = st.paths[e]
            if a in path and b in path:
                return e
        return None

    def _witness_segments(self) -> list[list[tuple[int, int]]]:
        """Candidate witnesses as lists of host segments."""
        found = []
        keep = []
        for branch, paths in self.pool:
            lifted = self._lift(paths)
            if lifted is not None:
                found.append([(a, b) for q in lifted for a, b in zip(q, q[1:])])
                keep.append((branch, paths))
                if len(found) >= 4:
                    break
        if found:
            self.stats.witnesses_reused += 1
            for item in keep:
                self.pool.remove(item)
                self.pool.insert(0, item)
            return found
        w = kuratowski_witness(self.state.host)
        self.stats.witnesses_extracted += 1
        self.pool.insert(0, (w.branch_vertices, w.paths))
        del self.pool[self.pool_cap :]
        return [[(a, b) for p in w.paths for a, b in zip(p, p[1:])]]

    # -- branching ---------------------------------------------------------

    def _forbidden(self, e, je, f, jf, forb) -> bool:
        st = self.state
        for fe, a, b, ff, c, d in forb:
            if fe != e or ff != f:
                continue
            pe, pf = st.paths[e], st.paths[f]
            if pe.index(a) <= je < pe.index(b) and pf.index(c) <= jf < pf.index(d):
                return True
        return False

    def _candidates(self, segs, forb) -> list[tuple[int, int, int, int]]:
        st = self.state
        placed = []
        for a, b in segs:
            e = st.segment_owner(a, b)
            placed.append((e, st.segment_index(e, a, b)))
        placed = sorted(set(placed))
        out = []
        for i, (e, je) in enumerate(placed):
            for f, jf in placed[i + 1 :]:
                if f == e or not st.can_cross(e, f):
                    continue
                if self._forbidden(e, je, f, jf, forb):
                    continue
                out.append((e, je, f, jf))
        return out

    def _ban(self, e, je, f, jf) -> tuple:
        pe, pf = self.state.paths[e], self.state.paths[f]
        return (e, pe[je], pe[je + 1], f, pf[jf], pf[jf + 1])

    def _whole_ban(self, e, f) -> tuple:
        pe, pf = self.state.paths[e], self.state.paths[f]
        return (e, pe[0], pe[-1], f, pf[0], pf[-1])

    def _orbit_map(self) -> dict:
        if self._orbit_of is None:
            g = self.g
            idx = g.edge_index
            orbit_of: dict = {}
            for e in range(g.m):
                for f in range(e + 1, g.m):
                    if (e, f) in orbit_of or g.edges_adjacent(e, f):
                        continue
                    oid = (e, f)
                    a, b = g.edges[e], g.edges[f]
                    for s in self.group.elements:
                        x = idx[tuple(sorted((s[a[0]], s[a[1]])))]
                        y = idx[tuple(sorted((s[b[0]], s[b[1]])))]
                        orbit_of[(min(x, y), max(x, y))] = oid
            self._orbit_of = orbit_of
        return self._orbit_of

    def root_children(self) -> list[tuple[tuple[int, int, int, int], frozenset]]:
        """First-level branches with the bans each one carries."""
        cands = self._candidates(self._witness_segments()[0], frozenset())
        children = []
        if self.group is not None and self.group.order > 1:
            orbit_of = self._orbit_map()
            reps: "OrderedDict[tuple, tuple]" = OrderedDict()
            for cand in cands:
                oid = orbit_of[(cand[0], cand[2])]
                reps.setdefault(oid, cand)
            if len(reps) < len(cands):
                self.stats.root_orbit_reduction = True
                members: dict = {}
                for pair, oid in orbit_of.items():
                    members.setdefault(oid, []).append(pair)
                banned: set = set()
                for oid, cand in reps.items():
                    children.append((cand, frozenset(banned)))
                    banned |= {self._whole_ban(e, f) for e, f in members[oid]}
                self.stats.root_branches = len(children)
                return children
        banned = set()
        for cand in cands:
            children.append((cand, frozenset(banned)))
            banned.add(self._ban(*cand))
        self.stats.root_branches = len(children)
        return children

    def dfs(self, forb: frozenset) -> bool:
        self._tick()
        st = self.state
        key = st.key()
        seen = self.memo.get(key)
        if seen is not None and any(f <= forb for f in seen):
            self.stats.memo_hits += 1
            return False
        if nx.check_planarity(st.host)[0]:
            self.found = st.freeze()
            return True
        if st.count >= self.k or self._lower() > self.k:
            if st.count < self.k:
                self.stats.bound_prunes += 1
            self._remember(key, forb)
            return False
        best = None
        for segs in self._witness_segments():
            cands = self._candidates(segs, forb)
            if best is None or len(cands) < len(best):
                best = cands
            if not cands:
                break
        extra: list = []
        for cand in best:
            ban = self._ban(*cand)
            st.add_crossing(*cand)
            try:
                ok = self.dfs(forb | frozenset(extra))
            finally:
                st.undo()
            if ok:
                return True
            extra.append(ban)
        self._remember(key, forb)
        return False

    def run_child(self, cand, banned: frozenset) -> bool:
        st = self.state
        st.add_crossing(*cand)
        try:
            return self.dfs(banned)
        finally:
            st.undo()

    def run(self) -> bool:
        self._tick()
        if nx.check_planarity(self.state.host)[0]:
            self.found = self.state.freeze()
            return True
        if self.k == 0 or self._lower() > self.k:
            return False
        for cand, banned in self.root_children():
            if self.run_child(cand, banned):
                return True
        return False


def _deadline(budget: Budget, start: float) -> Optional[float]:
    return None if budget.wall is None else start + budget.wall


def _child_job(args):
    g, k, cand, banned, wall_left, node_cap = args
    start = time.monotonic()
    s = _Search(g, k, None if wall_left is None else start + wall_left, node_cap)
    try:
        ok = s.run_child(cand, banned)
        status = "YES" if ok else "NO"
    except _Timeout:
        status = "TIMEOUT"
    return status, s.found, s.stats


def cr_decide(g: Graph, k: int, budget: Budget = Budget(), group: Optional[AutomorphismGroup] = None) -> DecideResult:
    """Decide whether ``g`` has a good drawing with at most ``k`` crossings.

    ``YES`` carries a planarization with a planar host; ``NO`` means the
    branch space was exhausted; ``TIMEOUT`` means the budget ran out first.
    Pass ``group`` (see :func:`automorphisms`) to enable root orbit reduction.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    start = time.monotonic()
    search = _Search(g, k, _deadline(budget, start), budget.nodes, group)
    try:
        if budget.jobs > 1:
            status = _decide_parallel(search, budget, start)
        else:
            status = "YES" if search.run() else "NO"
    except _Timeout:
        status = "TIMEOUT"
    cert = search.found
    if cert is not None and not verify_certificate(g, cert):  # pragma: no cover - search bug guard
        raise AssertionError("search produced an invalid certificate")
    return DecideResult(status, k, cert, search.stats, time.monotonic() - start)


def _decide_parallel(search: _Search, budget: Budget, start: float) -> str:
    search._tick()
    st = search.state
    if nx.check_planarity(st.host)[0]:
        search.found = st.freeze()
        return "YES"
    if search.k == 0 or search._lower() > search.k:
        return "NO"
    children = search.root_children()
    wall_left = None if budget.wall is None else max(0.0, budget.wall - (time.monotonic() - start))
    cap = None if budget.nodes is None else max(1, budget.nodes // max(1, len(children)))
    jobs = [(search.g, search.k, cand, banned, wall_left, cap) for cand, banned in children]
    timed_out = False
    with ProcessPoolExecutor(max_workers=budget.jobs) as ex:
        for status, found, stats in ex.map(_child_job, jobs):
            search.stats.merge(stats)
            if status == "YES" and search.found is None:
                search.found = found
            timed_out |= status == "TIMEOUT"
    if search.found is not None:
        return "YES"
    return "TIMEOUT" if timed_out else "NO"


def crossing_number(
    g: Graph,
    budget: Budget = Budget(),
    effort: int = 32,
    seed: int = 0,
    use_symmetry: bool = True,
    realize: bool = True,
) -> CrResult:
    """Bracket, and if the budget allows pin down, the crossing number of ``g``.

    The heuristic supplies the upper bound; decisions ``cr <= k`` run upward
    from the Euler bound until one succeeds or the budget runs out.
    """
    from .heuristic import cr_upper_bound
    from .realize import realize_drawing

    start = time.monotonic()
    log = []
    lower = euler_girth_bound(g)
    source = "euler-girth"
    ub = cr_upper_bound(g, effort=effort, seed=seed, realize=realize)
    upper, cert, drawing = ub
    log.append(f"euler-girth bound {lower}; heuristic upper bound {upper}")
    nodes = 0
    if lower < upper:
        group = automorphisms(g) if use_symmetry and g.n <= 64 else None
        for k in range(lower, upper):
            left = None if budget.wall is None else budget.wall - (time.monotonic() - start)
            if left is not None and left <= 0:
                log.append(f"k={k}: budget exhausted before search")
                break
            res = cr_decide(g, k, replace(budget, wall=left), group)
            nodes += res.stats.nodes
            log.append(f"k={k}: {res.status} after {res.stats.nodes} nodes in {res.elapsed:.2f}s")
            if res.status == "NO":
                lower, source = k + 1, f"exhausted search at k={k}"
            elif res.status == "YES":
                upper, cert = res.certificate.k, res.certificate
                drawing = realize_drawing(cert) if realize else None
                lower = upper
                break
            else:
                break
    return CrResult(
        graph_name=g.name,
        lower=lower,
        lower_source=source,
        upper=upper,
        certificate=cert,
        drawing=drawing,
        exact=lower == upper,
        elapsed=time.monotonic() - start,
        nodes=nodes,
        seed=ub.seed,
        log=log,
    )
