"""Time each hot kernel under numba and under the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Also times two end-to-end tasks in subprocesses with ``CUBECROSS_NUMBA``
set to 1 and 0, so import-time backend selection is exercised too.
"""

import argparse
import json
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from cubecross import _kernels as K
from cubecross.cubes import generate


def _inputs():
    q4 = generate("Q", 4)
    eu = np.array([u for u, _ in q4.edges], dtype=np.int64)
    ev = np.array([v for _, v in q4.edges], dtype=np.int64)

    adj = np.zeros((16, 16), dtype=np.uint8)
    for u, v in q4.edges:
        adj[u, v] = adj[v, u] = 1
    col = np.zeros(16, dtype=np.int64)
    order = np.arange(16, dtype=np.int64)

    cq3 = generate("CQ", 3)
    nb = [[] for _ in range(cq3.n)]
    eid = -np.ones((cq3.n, cq3.n), dtype=np.int64)
    for k, (u, v) in enumerate(cq3.edges):
        nb[u].append(v)
        nb[v].append(u)
        eid[u, v] = eid[v, u] = k
    nbr = np.array([sorted(r) for r in nb], dtype=np.int64)

    rng = np.random.default_rng(0)
    vm = rng.integers(1, 1 << 16, size=400).astype(np.int64)
    am = rng.integers(0, 1 << 40, size=400).astype(np.uint64)
    bm = rng.integers(0, 1 << 40, size=400).astype(np.uint64)

    seg = rng.integers(-1000, 1000, size=(300, 4)).astype(np.int64)
    ii, jj = np.triu_indices(300, 1)
    return {
        "subset_edge_counts (Q4, 65536 masks)": (K.subset_edge_counts_numba, K.subset_edge_counts_numpy, (16, eu, ev)),
        "match_all (Q4 automorphisms)": (K.match_all_numba, K.match_all_numpy, (adj, adj, col, col, order, 1000)),
        "simple_cycles (CQ3)": (K.simple_cycles_numba, K.simple_cycles_numpy, (cq3.n, nbr, eid)),
        "disjoint_pair_parity (400 cycles)": (
            K.disjoint_pair_parity_numba, K.disjoint_pair_parity_numpy, (vm, am, bm, 16)),
        "classify_pairs (44850 segment pairs)": (K.classify_pairs_numba, K.classify_pairs_numpy, (seg, ii, jj)),
    }


# (setup, timed statement); imports stay outside the timer
END_TO_END = {
    "lemma lab on CQ3": ("from cubecross.lemmas import CHECKS, ORDER3\nfrom cubecross.cubes import generate\n"
                         "g = generate('CQ', 3)", "[CHECKS[k](g) for k in ORDER3]"),
    "automorphisms of Q4": ("from cubecross.iso import automorphisms\nfrom cubecross.cubes import generate\n"
                            "g = generate('Q', 4)", "automorphisms(g)"),
}


def _subprocess_time(task: tuple, flag: str) -> float:
    setup, stmt = task
    wrapper = f"import time\n{setup}\nt = time.perf_counter()\n{stmt}\nprint(time.perf_counter() - t)"
    env = dict(os.environ, CUBECROSS_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", wrapper], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write results here")
    a = ap.parse_args()
    if not K.NUMBA_AVAILABLE:
        sys.exit("numba is not importable; nothing to compare")

    kernels = _inputs()
    rows = []
    print(f"{'kernel':45s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, (fast, slow, args) in kernels.items():
        fast(*args)  # compile outside the timing
        tf = min(timeit.repeat(lambda: fast(*args), number=1, repeat=a.repeat)) * 1e3
        ts = min(timeit.repeat(lambda: slow(*args), number=1, repeat=a.repeat)) * 1e3
        rows.append({"kernel": name, "numba_ms": tf, "numpy_ms": ts})
        print(f"{name:45s} {tf:10.3f} {ts:10.3f} {ts / tf:8.1f}x")

    print(f"\n{'end to end (fresh process, warm cache)':45s} {'numba s':>10s} {'numpy s':>10s}")
    for name, task in END_TO_END.items():
        _subprocess_time(task, "1")  # fill the numba on-disk cache
        tf, ts = _subprocess_time(task, "1"), _subprocess_time(task, "0")
        rows.append({"task": name, "numba_s": tf, "numpy_s": ts})
        print(f"{name:45s} {tf:10.3f} {ts:10.3f}")

    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"created": time.strftime("%Y-%m-%dT%H:%M:%S"), "rows": rows}, fh, indent=1)


if __name__ == "__main__":
    main()
