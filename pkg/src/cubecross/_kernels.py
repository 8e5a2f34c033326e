"""Integer hot loops, compiled with numba when available.

Every kernel has two implementations with identical results: a numba
``@njit`` version and a numpy (or plain Python, for the backtracking search)
fallback.  The active backend is chosen once at import time:

* ``CUBECROSS_NUMBA=0`` (or ``false``/``off``) forces the fallback path;
* otherwise numba is used if it imports cleanly.

Both variants stay importable as ``<name>_numba`` / ``<name>_numpy`` so the
benchmark and the agreement tests can call them side by side.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("CUBECROSS_NUMBA", "1").strip().lower()

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = NUMBA_AVAILABLE and _FLAG not in {"0", "false", "no", "off"}

# Integer coordinates above this magnitude could overflow int64 cross products.
INT_COORD_LIMIT = 1 << 30


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# e(X) for every vertex subset X
# ---------------------------------------------------------------------------


@njit(cache=True)
def subset_edge_counts_numba(n, eu, ev):
    size = 1 << n
    nbr = np.zeros(n, np.int64)
    for k in range(eu.shape[0]):
        nbr[eu[k]] |= 1 << ev[k]
        nbr[ev[k]] |= 1 << eu[k]
    out = np.zeros(size, np.int64)
    for mask in range(1, size):
        low = 0
        while not (mask >> low) & 1:
            low += 1
        rest = mask & ~(1 << low)
        x = nbr[low] & rest
        c = 0
        while x:
            x &= x - 1
            c += 1
        out[mask] = out[rest] + c
    return out


def subset_edge_counts_numpy(n, eu, ev):
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for u, v in zip(eu.tolist(), ev.tolist()):
        out += (masks >> u) & (masks >> v) & 1
    return out


def subset_edge_counts(n: int, edges) -> np.ndarray:
    """Array ``c`` with ``c[mask] = e(X)`` for the subset encoded by ``mask``."""
    if n > 24:
        raise ValueError("subset tables are limited to n <= 24")
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    if USE_NUMBA:
        return subset_edge_counts_numba(n, eu, ev)
    return subset_edge_counts_numpy(n, eu, ev)


# ---------------------------------------------------------------------------
# Colour-respecting isomorphism backtracking
# ---------------------------------------------------------------------------


@njit(cache=True)
def match_all_numba(adj_a, adj_b, col_a, col_b, order, limit):
    n = adj_a.shape[0]
    found = np.empty((max(limit, 1), n), np.int64)
    count = 0
    mapping = -np.ones(n, np.int64)
    used = np.zeros(n, np.bool_)
    cand = np.zeros(n + 1, np.int64)
    depth = 0
    if n == 0:
        return found[:0]
    while depth >= 0:
        v = order[depth]
        if mapping[v] >= 0:
            used[mapping[v]] = False
            mapping[v] = -1
        placed = False
        w = cand[depth]
        while w < n:
            if not used[w] and col_b[w] == col_a[v]:
                ok = True
                for d in range(depth):
                    u = order[d]
                    if adj_a[v, u] != adj_b[w, mapping[u]]:
                        ok = False
                        break
                if ok:
                    mapping[v] = w
                    used[w] = True
                    cand[depth] = w + 1
                    placed = True
                    break
            w += 1
        if not placed:
            cand[depth] = 0
            depth -= 1
            continue
        if depth == n - 1:
            for i in range(n):
                found[count, i] = mapping[i]
            count += 1
            if count >= limit:
                return found[:count]
        else:
            depth += 1
    return found[:count]


def match_all_numpy(adj_a, adj_b, col_a, col_b, order, limit):
    n = adj_a.shape[0]
    nbr_a = [set(np.flatnonzero(adj_a[v]).tolist()) for v in range(n)]
    nbr_b = [set(np.flatnonzero(adj_b[v]).tolist()) for v in range(n)]
    col_a = col_a.tolist()
    col_b = col_b.tolist()
    order = order.tolist()
    by_colour: dict[int, list[int]] = {}
    for w in range(n):
        by_colour.setdefault(col_b[w], []).append(w)
    mapping = [-1] * n
    used = [False] * n
    out: list[list[int]] = []

    def extend(depth: int) -> bool:
        if depth == n:
            out.append(list(mapping))
            return len(out) >= limit
        v = order[depth]
        done = order[:depth]
        for w in by_colour.get(col_a[v], ()):
            if used[w]:
                continue
            if all((u in nbr_a[v]) == (mapping[u] in nbr_b[w]) for u in done):
                mapping[v] = w
                used[w] = True
                if extend(depth + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    if n:
        extend(0)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def match_all(adj_a, adj_b, col_a, col_b, order, limit: int) -> np.ndarray:
    """All (up to ``limit``) adjacency- and colour-preserving bijections A -> B.

    ``order`` is the sequence in which vertices of A are assigned; row ``k`` of
    the result maps vertex ``i`` of A to ``row[i]`` in B.
    """
    args = (
        np.ascontiguousarray(adj_a, dtype=np.uint8),
        np.ascontiguousarray(adj_b, dtype=np.uint8),
        np.asarray(col_a, dtype=np.int64),
        np.asarray(col_b, dtype=np.int64),
        np.asarray(order, dtype=np.int64),
        int(limit),
    )
    if USE_NUMBA:
        return match_all_numba(*args)
    return match_all_numpy(*args)


# ---------------------------------------------------------------------------
# Simple cycles as bitmasks
# ---------------------------------------------------------------------------


@njit(cache=True)
def simple_cycles_numba(n, nbr, eid):
    # nbr[v, :] padded with -1; eid[u, v] = edge index or -1
    cap = 1024
    vm = np.empty(cap, np.int64)
    em = np.empty(cap, np.uint64)
    count = 0
    path = np.empty(n, np.int64)
    ptr = np.zeros(n, np.int64)
    deg = nbr.shape[1]
    for s in range(n):
        path[0] = s
        ptr[0] = 0
        depth = 0
        vmask = np.int64(1) << s
        emask = np.uint64(0)
        while depth >= 0:
            v = path[depth]
            if ptr[depth] >= deg or nbr[v, ptr[depth]] < 0:
                # backtrack
                if depth > 0:
                    u = path[depth - 1]
                    vmask &= ~(np.int64(1) << v)
                    emask &= ~(np.uint64(1) << np.uint64(eid[u, v]))
                depth -= 1
                continue
            w = nbr[v, ptr[depth]]
            ptr[depth] += 1
            if w == s and depth >= 2:
                # report each cycle once: second vertex < last vertex
                if path[1] < v:
                    if count == cap:
                        cap *= 2
                        vm2 = np.empty(cap, np.int64)
                        em2 = np.empty(cap, np.uint64)
                        vm2[:count] = vm[:count]
                        em2[:count] = em[:count]
                        vm = vm2
                        em = em2
                    vm[count] = vmask
                    em[count] = emask | (np.uint64(1) << np.uint64(eid[v, s]))
                    count += 1
                continue
            if w <= s or (vmask >> w) & 1:
                continue
            depth += 1
            path[depth] = w
            ptr[depth] = 0
            vmask |= np.int64(1) << w
            emask |= np.uint64(1) << np.uint64(eid[v, w])
    return vm[:count], em[:count]


def simple_cycles_numpy(n, nbr, eid):
    adj = [[w for w in row if w >= 0] for row in nbr.tolist()]
    eid = eid.tolist()
    vms: list[int] = []
    ems: list[int] = []
    for s in range(n):
        stack = [(s, iter(adj[s]))]
        path = [s]
        vmask = 1 << s
        emask = 0
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == s and len(path) >= 3:
                    if path[1] < v:
                        vms.append(vmask)
                        ems.append(emask | (1 << eid[v][s]))
                    continue
                if w <= s or (vmask >> w) & 1:
                    continue
                path.append(w)
                vmask |= 1 << w
                emask |= 1 << eid[v][w]
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                path.pop()
                if stack:
                    u = stack[-1][0]
                    vmask &= ~(1 << v)
                    emask &= ~(1 << eid[u][v])
    return np.array(vms, dtype=np.int64), np.array(ems, dtype=np.uint64)


def simple_cycles(n: int, edges) -> tuple[np.ndarray, np.ndarray]:
    """Every simple cycle once, as (vertex bitmask, edge bitmask) arrays."""
    if n > 62 or len(edges) > 64:
        raise ValueError("cycle bitmasks need n <= 62 and m <= 64")
    nb: list[list[int]] = [[] for _ in range(n)]
    eid = -np.ones((n, n), dtype=np.int64)
    for k, (u, v) in enumerate(edges):
        nb[u].append(v)
        nb[v].append(u)
        eid[u, v] = eid[v, u] = k
    width = max((len(x) for x in nb), default=0)
    nbr = -np.ones((n, max(width, 1)), dtype=np.int64)
    for v, row in enumerate(nb):
        nbr[v, : len(row)] = sorted(row)
    if USE_NUMBA:
        return simple_cycles_numba(n, nbr, eid)
    return simple_cycles_numpy(n, nbr, eid)


# ---------------------------------------------------------------------------
# Crossing parity between vertex-disjoint cycles
# ---------------------------------------------------------------------------


@njit(cache=True)
def _parity64(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return x & np.uint64(1)


@njit(cache=True)
def disjoint_pair_parity_numba(vmask, amask, bmask, max_report):
    k = vmask.shape[0]
    checked = 0
    odd = np.empty((max(max_report, 1), 2), np.int64)
    n_odd = 0
    for i in range(k):
        vi = vmask[i]
        ai = amask[i]
        bi = bmask[i]
        for j in range(i + 1, k):
            if vi & vmask[j]:
                continue
            checked += 1
            p = _parity64(ai & bmask[j]) ^ _parity64(bi & amask[j])
            if p:
                if n_odd < max_report:
                    odd[n_odd, 0] = i
                    odd[n_odd, 1] = j
                n_odd += 1
    return checked, n_odd, odd[: min(n_odd, max_report)]


def _parity_vec(x):
    x = x.copy()
    for s in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(s)
    return x & np.uint64(1)


def disjoint_pair_parity_numpy(vmask, amask, bmask, max_report):
    k = vmask.shape[0]
    checked = 0
    n_odd = 0
    odd: list[tuple[int, int]] = []
    for i in range(k - 1):
        vj = vmask[i + 1 :]
        sel = (vj & vmask[i]) == 0
        if not sel.any():
            continue
        idx = np.flatnonzero(sel) + i + 1
        checked += idx.size
        p = _parity_vec(amask[i] & bmask[idx]) ^ _parity_vec(bmask[i] & amask[idx])
        hits = idx[p.astype(bool)]
        n_odd += hits.size
        for j in hits[: max(0, max_report - len(odd))].tolist():
            odd.append((i, j))
    return checked, n_odd, np.array(odd, dtype=np.int64).reshape(len(odd), 2)


def disjoint_pair_parity(vmask, amask, bmask, max_report: int = 16):
    """Scan vertex-disjoint cycle pairs for an odd number of mutual crossings.

    ``amask[c]``/``bmask[c]`` flag the crossings whose first/second edge lies on
    cycle ``c``.  Returns ``(pairs_checked, odd_pairs, first_odd_pairs)``.
    """
    args = (
        np.asarray(vmask, dtype=np.int64),
        np.asarray(amask, dtype=np.uint64),
        np.asarray(bmask, dtype=np.uint64),
        int(max_report),
    )
    if USE_NUMBA:
        return disjoint_pair_parity_numba(*args)
    return disjoint_pair_parity_numpy(*args)


# ---------------------------------------------------------------------------
# Integer segment-pair screening
# ---------------------------------------------------------------------------

DISJOINT, PROPER, DEGENERATE = 0, 1, 2


@njit(cache=True)
def _orient(ax, ay, bx, by, cx, cy):
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


@njit(cache=True)
def classify_pairs_numba(seg, ii, jj):
    out = np.zeros(ii.shape[0], np.int8)
    for k in range(ii.shape[0]):
        p = seg[ii[k]]
        q = seg[jj[k]]
        if (
            max(p[0], p[2]) < min(q[0], q[2])
            or max(q[0], q[2]) < min(p[0], p[2])
            or max(p[1], p[3]) < min(q[1], q[3])
            or max(q[1], q[3]) < min(p[1], p[3])
        ):
            continue
        o1 = _orient(p[0], p[1], p[2], p[3], q[0], q[1])
        o2 = _orient(p[0], p[1], p[2], p[3], q[2], q[3])
        o3 = _orient(q[0], q[1], q[2], q[3], p[0], p[1])
        o4 = _orient(q[0], q[1], q[2], q[3], p[2], p[3])
        if o1 * o2 < 0 and o3 * o4 < 0:
            out[k] = 1
        elif o1 * o2 <= 0 and o3 * o4 <= 0:
            out[k] = 2
    return out


def classify_pairs_numpy(seg, ii, jj):
    p = seg[ii]
    q = seg[jj]

    def orient(a, b, c):
        return np.sign((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))

    p0, p1, q0, q1 = p[:, 0:2], p[:, 2:4], q[:, 0:2], q[:, 2:4]
    box = ~(
        (np.maximum(p[:, 0], p[:, 2]) < np.minimum(q[:, 0], q[:, 2]))
        | (np.maximum(q[:, 0], q[:, 2]) < np.minimum(p[:, 0], p[:, 2]))
        | (np.maximum(p[:, 1], p[:, 3]) < np.minimum(q[:, 1], q[:, 3]))
        | (np.maximum(q[:, 1], q[:, 3]) < np.minimum(p[:, 1], p[:, 3]))
    )
    s1 = orient(p0, p1, q0) * orient(p0, p1, q1)
    s2 = orient(q0, q1, p0) * orient(q0, q1, p1)
    out = np.zeros(len(ii), dtype=np.int8)
    out[box & (s1 <= 0) & (s2 <= 0)] = DEGENERATE
    out[box & (s1 < 0) & (s2 < 0)] = PROPER
    return out


def classify_pairs(seg: np.ndarray, ii: np.ndarray, jj: np.ndarray) -> np.ndarray:
    """Classify segment pairs given as int64 rows ``(x0, y0, x1, y1)``.

    0: disjoint, 1: proper interior crossing, 2: any other contact.
    Coordinates must stay below ``INT_COORD_LIMIT`` in magnitude.
    """
    seg = np.ascontiguousarray(seg, dtype=np.int64)
    ii = np.asarray(ii, dtype=np.int64)
    jj = np.asarray(jj, dtype=np.int64)
    if USE_NUMBA:
        return classify_pairs_numba(seg, ii, jj)
    return classify_pairs_numpy(seg, ii, jj)
