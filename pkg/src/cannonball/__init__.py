"""Weighted multicolouring of cannonball graphs."""

from .graph import (
    CannonballGraph,
    CliqueNumbers,
    VertexClass,
    build_graph,
    classify,
    clique_numbers,
    kappa,
    palette_deficit,
)
from .lattice import GridRegion, GridVertex, StackingSequence
from .multicolor import PaletteColor, SolveStats, naive_solve, solve
from .verify import (
    EXCEEDS_LIMIT,
    brute_cliques,
    count_colors,
    exact_multichromatic,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CannonballGraph",
    "CliqueNumbers",
    "EXCEEDS_LIMIT",
    "GridRegion",
    "GridVertex",
    "PaletteColor",
    "SolveStats",
    "StackingSequence",
    "VertexClass",
    "brute_cliques",
    "build_graph",
    "classify",
    "clique_numbers",
    "count_colors",
    "exact_multichromatic",
    "kappa",
    "naive_solve",
    "palette_deficit",
    "solve",
    "verify",
]
