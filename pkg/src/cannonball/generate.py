"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import CannonballGraph, build_graph
from .lattice import GridRegion, StackingSequence


@dataclass(frozen=True)
class GenParams:
    layers: int
    width: int
    height: int
    stacking: str
    max_demand: int
    density: float
    seed: int


def resolve_stacking(name: str, layers: int, seed: int = 0) -> StackingSequence:
    """``fcc``, ``hcp``, ``random`` or explicit letters (length must equal ``layers``)."""
    key = name.lower()
    if key == "fcc":
        return StackingSequence.fcc(layers)
    if key == "hcp":
        return StackingSequence.hcp(layers)
    if key == "random":
        return StackingSequence.random(layers, random.Random(seed))
    s = StackingSequence(name.upper())
    if len(s) != layers:
        raise InputError(f"stacking {name!r} has {len(s)} layers, expected {layers}")
    return s


def generate(p: GenParams) -> CannonballGraph:
    if p.layers < 1 or p.width < 1 or p.height < 1:
        raise InputError("layers, width and height must be positive")
    if not 0.0 <= p.density <= 1.0:
        raise InputError(f"density must lie in [0, 1], got {p.density}")
    if p.max_demand < 1:
        raise InputError("max_demand must be at least 1")
    stacking = resolve_stacking(p.stacking, p.layers, p.seed)
    region = GridRegion.window(stacking, p.width, p.height)
    rng = np.random.default_rng(p.seed)
    verts = list(region.vertices())
    keep = rng.random(len(verts)) < p.density
    dem = rng.integers(1, p.max_demand + 1, size=len(verts))
    return build_graph(region, [(v, int(d)) for v, k, d in zip(verts, keep, dem) if k])


def standard_corpus(count_per_cell: int = 8, seed: int = 2024, random_stackings: int = 20,
                    max_layers: int = 4, max_side: int = 10, max_demand: int = 50,
                    densities=(0.3, 0.7, 1.0)):
    """Parameter sets over FCC, HCP and random stackings.

    Yields ``(name, GenParams)``; layer counts, window sides and seeds are drawn
    from one ``random.Random(seed)`` so the corpus is reproducible.
    """
    rng = random.Random(seed)
    stackings = ["ABC", "AB"] + [
        str(StackingSequence.random(max_layers, rng)) for _ in range(random_stackings)
    ]
    for si, base in enumerate(stackings):
        for density in densities:
            for rep in range(count_per_cell):
                layers = rng.randint(1, max_layers)
                if base == "ABC":
                    letters = str(StackingSequence.fcc(layers))
                elif base == "AB":
                    letters = str(StackingSequence.hcp(layers))
                else:
                    letters = base[:layers]
                p = GenParams(
                    layers=layers,
                    width=rng.randint(1, max_side),
                    height=rng.randint(1, max_side),
                    stacking=letters,
                    max_demand=max_demand,
                    density=density,
                    seed=rng.randrange(2**31),
                )
                yield f"s{si:02d}-{letters}-d{int(density * 100):03d}-r{rep}", p
