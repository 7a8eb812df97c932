"""Time the numba and numpy kernel paths on the same dense grids.

    python benchmarks/bench_kernels.py --side 200 --layers 8 --repeat 5

Also times a full ``solve`` under each backend by re-running this script in
a subprocess with ``CANNONBALL_BACKEND`` set (the flag is read at import).
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from cannonball import kernels
from cannonball.lattice import StackingSequence, color_tables, local_cliques


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_table(side, layers, repeat, seed=0):
    s = StackingSequence.fcc(layers)
    rng = np.random.default_rng(seed)
    dem = np.zeros((layers, side + 2, side + 2), dtype=np.int64)
    dem[:, 1:-1, 1:-1] = rng.integers(0, 51, size=(layers, side, side))
    tables = np.array(color_tables(s), dtype=np.int64)
    idx = np.arange(side + 2) % 2
    bc = tables[:, idx[:, None], idx[None, :]]

    rows = []
    for size, name in ((1, "edges"), (2, "triangles"), (3, "tetrahedra")):
        off, cnt = kernels.pack_offsets([local_cliques(s, z)[size - 1] for z in range(layers)], size)
        kernels.clique_sums_numba(dem, off, cnt)  # compile outside the timing
        a = kernels.clique_sums_numba(dem, off, cnt)
        b = kernels.clique_sums_numpy(dem, off, cnt)
        assert np.array_equal(a, b)
        rows.append((f"clique_sums[{name}]",
                     best_of(lambda: kernels.clique_sums_numba(dem, off, cnt), repeat),
                     best_of(lambda: kernels.clique_sums_numpy(dem, off, cnt), repeat)))
    off, cnt = kernels.pack_offsets([local_cliques(s, z)[0] for z in range(layers)], 1)
    kernels.color_neighbor_max_numba(dem, bc, off, cnt)
    assert np.array_equal(kernels.color_neighbor_max_numba(dem, bc, off, cnt),
                          kernels.color_neighbor_max_numpy(dem, bc, off, cnt))
    rows.append(("color_neighbor_max",
                 best_of(lambda: kernels.color_neighbor_max_numba(dem, bc, off, cnt), repeat),
                 best_of(lambda: kernels.color_neighbor_max_numpy(dem, bc, off, cnt), repeat)))
    return rows


def solve_timing(side, layers):
    from cannonball.generate import GenParams, generate
    from cannonball.multicolor import solve

    g = generate(GenParams(layers, side, side, "fcc", 50, 0.7, seed=1))
    solve(g)  # warm-up (jit compile for numba)
    g = generate(GenParams(layers, side, side, "fcc", 50, 0.7, seed=2))
    t0 = time.perf_counter()
    _, stats = solve(g)
    return time.perf_counter() - t0, stats.colors_used


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--side", type=int, default=200)
    ap.add_argument("--layers", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--solve-side", type=int, default=30)
    ap.add_argument("--_solve-only", action="store_true", dest="solve_only", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.solve_only:
        t, colors = solve_timing(args.solve_side, 4)
        print(f"{t:.4f} {colors}")
        return

    print(f"kernels on {args.layers} x {args.side} x {args.side} (best of {args.repeat})")
    print(f"{'kernel':<26}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, tn, tp in kernel_table(args.side, args.layers, args.repeat):
        print(f"{name:<26}{tn:>12.5f}{tp:>12.5f}{tp / tn:>10.2f}")

    print(f"\nfull solve, 4 x {args.solve_side} x {args.solve_side} FCC window")
    for backend in ("numba", "numpy"):
        env = dict(os.environ, CANNONBALL_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--_solve-only", "--solve-side", str(args.solve_side)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.split()
        print(f"  {backend:<6} {float(out[0]):.4f} s  colors_used={out[1]}")


if __name__ == "__main__":
    main()
