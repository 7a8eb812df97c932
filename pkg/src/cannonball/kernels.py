"""Stencil kernels over a dense, zero-padded demand array.

The array has shape ``(layers, H, W)`` and always carries one ring of zero
cells around the instance box, so every clique offset from an interior
cell stays in bounds.  Ring cells are never evaluated and come back as -1.

Two interchangeable implementations exist: explicit loops compiled with
numba, and vectorized numpy slicing.  ``CANNONBALL_BACKEND=numpy`` (or a
missing numba) selects the numpy path at import time.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = os.environ.get("CANNONBALL_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"CANNONBALL_BACKEND must be 'numba' or 'numpy', not {BACKEND!r}")
if BACKEND == "numba" and not HAVE_NUMBA:
    BACKEND = "numpy"


def pack_offsets(per_layer, size):
    """Pack per-layer lists of clique offsets into ``(L, K, size, 3)`` plus counts."""
    layers = len(per_layer)
    kmax = max((len(c) for c in per_layer), default=0)
    off = np.zeros((layers, max(kmax, 1), size, 3), dtype=np.int64)
    cnt = np.zeros(layers, dtype=np.int64)
    for z, cliques in enumerate(per_layer):
        cnt[z] = len(cliques)
        for t, members in enumerate(cliques):
            off[z, t] = members
    return off, cnt


# -- numpy ------------------------------------------------------------------

def _shifted(arr, z, du, dv):
    H, W = arr.shape[1:3]
    return arr[z, 1 + du:H - 1 + du, 1 + dv:W - 1 + dv]


def clique_sums_numpy(dem, off, cnt):
    n, H, W = dem.shape
    out = np.full(dem.shape, -1, dtype=np.int64)
    for z in range(n):
        acc = out[z, 1:H - 1, 1:W - 1]
        for t in range(cnt[z]):
            s = dem[z, 1:H - 1, 1:W - 1].copy()
            for dz, du, dv in off[z, t]:
                s += _shifted(dem, z + dz, du, dv)
            np.maximum(acc, s, out=acc)
    return out


def color_neighbor_max_numpy(dem, bc, off, cnt):
    n, H, W = dem.shape
    out = np.full(dem.shape + (4,), -1, dtype=np.int64)
    for z in range(n):
        acc = out[z, 1:H - 1, 1:W - 1]
        for t in range(cnt[z]):
            dz, du, dv = off[z, t, 0]
            nd = _shifted(dem, z + dz, du, dv)
            nc = _shifted(bc, z + dz, du, dv)
            for c in range(4):
                np.maximum(acc[..., c], np.where(nc == c, nd, -1), out=acc[..., c])
    return out


# -- numba ------------------------------------------------------------------

def _clique_sums_loops(dem, off, cnt):
    n, H, W = dem.shape
    out = np.full(dem.shape, -1, dtype=np.int64)
    m = off.shape[2]
    for z in range(n):
        for t in range(cnt[z]):
            # hoist up to three member offsets out of the sweep
            za, ua, va = z + off[z, t, 0, 0], off[z, t, 0, 1], off[z, t, 0, 2]
            zb, ub, vb = z + off[z, t, m - 1, 0], off[z, t, m - 1, 1], off[z, t, m - 1, 2]
            zc, uc, vc = z + off[z, t, m // 2, 0], off[z, t, m // 2, 1], off[z, t, m // 2, 2]
            for i in range(1, H - 1):
                for j in range(1, W - 1):
                    s = dem[z, i, j] + dem[za, i + ua, j + va]
                    if m > 1:
                        s += dem[zb, i + ub, j + vb]
                    if m > 2:
                        s += dem[zc, i + uc, j + vc]
                    if s > out[z, i, j]:
                        out[z, i, j] = s
    return out


def _color_neighbor_max_loops(dem, bc, off, cnt):
    n, H, W = dem.shape
    out = np.full((n, H, W, 4), -1, dtype=np.int64)
    for z in range(n):
        for t in range(cnt[z]):
            zz = z + off[z, t, 0, 0]
            du = off[z, t, 0, 1]
            dv = off[z, t, 0, 2]
            for i in range(1, H - 1):
                for j in range(1, W - 1):
                    c = bc[zz, i + du, j + dv]
                    d = dem[zz, i + du, j + dv]
                    if d > out[z, i, j, c]:
                        out[z, i, j, c] = d
    return out


if HAVE_NUMBA:
    clique_sums_numba = njit(cache=True)(_clique_sums_loops)
    color_neighbor_max_numba = njit(cache=True)(_color_neighbor_max_loops)
else:  # pragma: no cover
    clique_sums_numba = clique_sums_numpy
    color_neighbor_max_numba = color_neighbor_max_numpy


def clique_sums(dem, off, cnt):
    """Max over cliques at each cell of the cell demand plus its members' demands."""
    if BACKEND == "numba":
        return clique_sums_numba(dem, off, cnt)
    return clique_sums_numpy(dem, off, cnt)


def color_neighbor_max(dem, bc, off, cnt):
    """``out[z, i, j, c]``: largest demand among tangent cells of base colour ``c``
    (-1 when there is none)."""
    if BACKEND == "numba":
        return color_neighbor_max_numba(dem, bc, off, cnt)
    return color_neighbor_max_numpy(dem, bc, off, cnt)
