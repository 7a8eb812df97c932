"""Demand-weighted cannonball graphs and the per-vertex quantities the
colouring algorithm is driven by."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, InputError
from .lattice import (
    GridRegion,
    GridVertex,
    base_color,
    color_tables,
    grid_neighbors,
    local_cliques,
    neighbors,
    triangles_containing,
)


class VertexClass(enum.Enum):
    LIGHT = "light"
    HEAVY = "heavy"
    VERY_HEAVY = "very_heavy"


class CliqueNumbers(NamedTuple):
    w1: int
    w2: int
    w3: int
    w4: int

    @property
    def omega(self) -> int:
        return self.w4


@dataclass(frozen=True)
class DenseGrid:
    """Zero-padded dense view of a graph's demands plus kernel outputs."""

    origin: tuple[int, int]  # (u, v) of array cell [., 0, 0]
    demand: np.ndarray
    base: np.ndarray
    edge_max: np.ndarray
    tri_max: np.ndarray
    tet_max: np.ndarray
    color_max: np.ndarray

    def index(self, v):
        return v[0], v[1] - self.origin[0], v[2] - self.origin[1]


@dataclass(frozen=True, eq=False)
class CannonballGraph:
    """Vertices of positive demand in a region of the grid.

    Vertices outside ``demand`` (or listed with 0) are grid vertices of
    weight 0.  With ``padded`` set, grid queries (base function, palette
    deficits) see the unbounded grid; otherwise they are confined to
    ``region``.
    """

    region: GridRegion
    demand: Mapping[GridVertex, int]
    padded: bool = True
    support: tuple[GridVertex, ...] = field(init=False)

    def __post_init__(self):
        sup = tuple(sorted(v for v, d in self.demand.items() if d > 0))
        object.__setattr__(self, "support", sup)

    @property
    def stacking(self):
        return self.region.stacking

    def d(self, v) -> int:
        return self.demand.get(v, 0)

    @cached_property
    def adjacency(self) -> dict[GridVertex, tuple[GridVertex, ...]]:
        """Edges of the induced graph on the support, canonical order."""
        s = self.stacking
        sup = set(self.support)
        return {v: tuple(w for w in grid_neighbors(v, s) if w in sup) for v in self.support}

    def edges(self):
        for v, nb in self.adjacency.items():
            for w in nb:
                if v < w:
                    yield v, w

    @cached_property
    def dense(self) -> DenseGrid:
        s = self.stacking
        umin, umax, vmin, vmax = self.region.bounds()
        origin = (umin - 1, vmin - 1)
        H = max(umax - umin + 1, 0) + 2
        W = max(vmax - vmin + 1, 0) + 2
        n = len(s)
        dem = np.zeros((n, H, W), dtype=np.int64)
        for v, d in self.demand.items():
            dem[v[0], v[1] - origin[0], v[2] - origin[1]] = d

        tables = np.array(color_tables(s), dtype=np.int64)
        iu = (np.arange(H) + origin[0]) % 2
        iv = (np.arange(W) + origin[1]) % 2
        base = tables[:, iu[:, None], iv[None, :]]

        cliques = [local_cliques(s, z) for z in range(n)]
        e_off, e_cnt = kernels.pack_offsets([c[0] for c in cliques], 1)
        t_off, t_cnt = kernels.pack_offsets([c[1] for c in cliques], 2)
        q_off, q_cnt = kernels.pack_offsets([c[2] for c in cliques], 3)
        return DenseGrid(
            origin=origin,
            demand=dem,
            base=base,
            edge_max=kernels.clique_sums(dem, e_off, e_cnt),
            tri_max=kernels.clique_sums(dem, t_off, t_cnt),
            tet_max=kernels.clique_sums(dem, q_off, q_cnt),
            color_max=kernels.color_neighbor_max(dem, base, e_off, e_cnt),
        )

    def base_color(self, v) -> int:
        return base_color(v, self.stacking)


def build_graph(region: GridRegion, demands: Iterable, padded: bool = True) -> CannonballGraph:
    """Validate ``(vertex, demand)`` pairs and wrap them as a graph."""
    table: dict[GridVertex, int] = {}
    for item, d in demands:
        v = GridVertex(*item)
        if v in table:
            raise InputError(f"duplicate vertex {v}")
        if v not in region:
            raise InputError(f"vertex {v} lies outside the region")
        if isinstance(d, bool) or int(d) != d:
            raise InputError(f"demand at {v} is not an integer: {d!r}")
        if d < 0:
            raise InputError(f"negative demand {d} at {v}")
        table[v] = int(d)
    return CannonballGraph(region, table, padded)


def clique_numbers(g: CannonballGraph) -> CliqueNumbers:
    if not g.support:
        return CliqueNumbers(0, 0, 0, 0)
    dense = g.dense
    w1 = int(dense.demand.max())
    w2 = max(w1, int(dense.edge_max.max()))
    w3 = max(w2, int(dense.tri_max.max()))
    w4 = max(w3, int(dense.tet_max.max()))
    return CliqueNumbers(w1, w2, w3, w4)


def _ceil3(x: int) -> int:
    return -(-x // 3)


def kappa(g: CannonballGraph, v) -> int:
    """Largest rounded-up average demand over grid triangles through ``v``."""
    v = GridVertex(*v)
    if v not in g.region:
        raise DomainError(f"vertex {v} is outside the region")
    if g.padded:
        best = int(g.dense.tri_max[g.dense.index(v)])
    else:
        tris = triangles_containing(v, g.region)
        if not tris:
            raise DomainError(
                f"vertex {v} lies on no grid triangle inside the region; "
                "build the graph with padded=True or enlarge the region"
            )
        best = max(sum(g.d(w) for w in t) for t in tris)
    return _ceil3(best)


def classify(g: CannonballGraph, v) -> VertexClass:
    k = kappa(g, v)
    d = g.d(GridVertex(*v))
    if d > 2 * k:
        return VertexClass.VERY_HEAVY
    if d > k:
        return VertexClass.HEAVY
    return VertexClass.LIGHT


def neighbor_color_max(g: CannonballGraph, v, c: int) -> int:
    """Largest demand among grid neighbours of ``v`` with base colour ``c``."""
    v = GridVertex(*v)
    if g.padded:
        m = int(g.dense.color_max[g.dense.index(v) + (c,)])
    else:
        ds = [g.d(w) for w in neighbors(v, g.region) if g.base_color(w) == c]
        m = max(ds) if ds else -1
    if m < 0:
        raise DomainError(f"vertex {v} has no grid neighbour of base colour {c}")
    return m


def palette_deficit(g: CannonballGraph, v, c: int) -> int:
    """``kappa(v)`` minus the largest demand among neighbours of base colour ``c``."""
    v = GridVertex(*v)
    if c == g.base_color(v):
        raise DomainError(f"colour {c} is the base colour of {v}")
    if c not in (0, 1, 2, 3):
        raise DomainError(f"{c} is not a base colour")
    return kappa(g, v) - neighbor_color_max(g, v, c)
