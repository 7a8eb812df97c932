import os
import subprocess
import sys

import numpy as np
import pytest

from cannonball import kernels, solve
from cannonball.generate import GenParams, generate
from cannonball.lattice import StackingSequence, color_tables, local_cliques


def python_clique_sums(dem, per_layer):
    n, H, W = dem.shape
    out = np.full(dem.shape, -1, dtype=np.int64)
    for z in range(n):
        for i in range(1, H - 1):
            for j in range(1, W - 1):
                for members in per_layer[z]:
                    s = dem[z, i, j] + sum(dem[z + dz, i + du, j + dv] for dz, du, dv in members)
                    out[z, i, j] = max(out[z, i, j], s)
    return out


def python_color_max(dem, bc, per_layer):
    n, H, W = dem.shape
    out = np.full(dem.shape + (4,), -1, dtype=np.int64)
    for z in range(n):
        for i in range(1, H - 1):
            for j in range(1, W - 1):
                for ((dz, du, dv),) in per_layer[z]:
                    c = bc[z + dz, i + du, j + dv]
                    out[z, i, j, c] = max(out[z, i, j, c], dem[z + dz, i + du, j + dv])
    return out


def random_grid(letters, h, w, seed):
    s = StackingSequence(letters)
    rng = np.random.default_rng(seed)
    dem = np.zeros((len(s), h + 2, w + 2), dtype=np.int64)
    dem[:, 1:-1, 1:-1] = rng.integers(0, 20, size=(len(s), h, w))
    tables = np.array(color_tables(s), dtype=np.int64)
    bc = tables[:, (np.arange(h + 2) % 2)[:, None], (np.arange(w + 2) % 2)[None, :]]
    return s, dem, bc


@pytest.mark.parametrize("letters, h, w, seed", [("A", 4, 5, 0), ("ABC", 5, 4, 1), ("ABACBC", 6, 6, 2), ("CB", 1, 7, 3)])
@pytest.mark.parametrize("size", [1, 2, 3])
def test_clique_sums_backends_agree_with_reference(letters, h, w, seed, size):
    s, dem, _ = random_grid(letters, h, w, seed)
    per_layer = [local_cliques(s, z)[size - 1] for z in range(len(s))]
    off, cnt = kernels.pack_offsets(per_layer, size)
    ref = python_clique_sums(dem, per_layer)
    assert np.array_equal(kernels.clique_sums_numpy(dem, off, cnt), ref)
    assert np.array_equal(kernels.clique_sums_numba(dem, off, cnt), ref)
    assert np.array_equal(kernels.clique_sums(dem, off, cnt), ref)


@pytest.mark.parametrize("letters, seed", [("A", 0), ("ABC", 1), ("ACBCAB", 2)])
def test_color_neighbor_max_backends_agree_with_reference(letters, seed):
    s, dem, bc = random_grid(letters, 5, 6, seed)
    per_layer = [local_cliques(s, z)[0] for z in range(len(s))]
    off, cnt = kernels.pack_offsets(per_layer, 1)
    ref = python_color_max(dem, bc, per_layer)
    assert np.array_equal(kernels.color_neighbor_max_numpy(dem, bc, off, cnt), ref)
    assert np.array_equal(kernels.color_neighbor_max_numba(dem, bc, off, cnt), ref)


def test_ring_cells_are_not_evaluated():
    s, dem, bc = random_grid("AB", 3, 3, 5)
    off, cnt = kernels.pack_offsets([local_cliques(s, z)[1] for z in range(2)], 2)
    out = kernels.clique_sums(dem, off, cnt)
    assert (out[:, 0, :] == -1).all() and (out[:, :, -1] == -1).all()
    assert (out[:, 1:-1, 1:-1] >= 0).all()


def test_clique_offsets_per_layer_count():
    s = StackingSequence("ABC")
    edges, tris, tets = local_cliques(s, 1)
    assert (len(edges), len(tris), len(tets)) == (12, 24, 8)
    edges, tris, tets = local_cliques(s, 0)
    assert (len(edges), len(tris), len(tets)) == (9, 15, 4)


def test_backend_flag_is_recognised():
    assert kernels.BACKEND in ("numba", "numpy")


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_env_flag_selects_backend_with_identical_results(backend):
    script = (
        "from cannonball import kernels, solve\n"
        "from cannonball.generate import GenParams, generate\n"
        "g = generate(GenParams(3, 6, 6, 'fcc', 30, 0.8, 4))\n"
        "f, st = solve(g)\n"
        "print(kernels.BACKEND, st.colors_used, list(st.omega))\n"
    )
    env = dict(os.environ, CANNONBALL_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    name, rest = out.stdout.split(" ", 1)
    assert name == backend
    _, st = solve(generate(GenParams(3, 6, 6, "fcc", 30, 0.8, 4)))
    assert rest.strip() == f"{st.colors_used} {list(st.omega)}"


def test_unknown_backend_is_rejected():
    env = dict(os.environ, CANNONBALL_BACKEND="fortran")
    res = subprocess.run([sys.executable, "-c", "import cannonball"], env=env, capture_output=True, text=True)
    assert res.returncode != 0 and "CANNONBALL_BACKEND" in res.stderr
