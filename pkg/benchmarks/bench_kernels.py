"""Time one walk step: compiled kernel vs numpy fallback vs scipy CSC matvec.

    python benchmarks/bench_kernels.py [--nodes 2000 5000] [--steps 200] [--batch 64]
"""

import argparse
import time

import numpy as np

from qwalk import _pykernels
from qwalk.graph import random_connected_graph
from qwalk.walk import arc_basis, scattering_matrix

try:
    from qwalk import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeats):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def bench(n, steps, batch):
    g = random_connected_graph(n, 4 * n, seed=n)
    b = arc_basis(g)
    mat = scattering_matrix(b)
    rng = np.random.default_rng(0)
    x = rng.normal(size=len(b)) + 1j * rng.normal(size=len(b))
    xs = np.ascontiguousarray(np.tile(x, (batch, 1)))
    out, outs = np.empty_like(x), np.empty_like(xs)
    w = b.weight

    impls = {"numpy": _pykernels}
    if _ckernels is not None:
        impls["cython"] = _ckernels
    rows = []
    for name, k in impls.items():
        single = _time(lambda: k.step(x, out, b.reverse, b.offsets, w), steps)
        batched = _time(lambda: k.step_batch(xs, outs, b.reverse, b.offsets, w), max(1, steps // 10))
        rows.append((name, single, batched))
    csc_single = _time(lambda: mat @ x, steps)
    csc_batch = _time(lambda: (mat @ xs.T).T, max(1, steps // 10))
    rows.append(("scipy-csc", csc_single, csc_batch))

    print(f"N={n} arcs={len(b)} batch={batch}")
    base = rows[0][1]
    for name, s, bt in rows:
        print(f"  {name:<10} step {s * 1e6:9.1f} us   batch step {bt * 1e3:8.2f} ms   x{base / s:5.1f} vs numpy")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, nargs="+", default=[500, 2000, 8000])
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--batch", type=int, default=64)
    args = ap.parse_args()
    for n in args.nodes:
        bench(n, args.steps, args.batch)


if __name__ == "__main__":
    main()
