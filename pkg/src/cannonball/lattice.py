"""Exact integer geometry of close-packed layers of unit spheres.

Each layer is a triangular grid spanned by ``p = (1, 0)`` and
``q = (1/2, sqrt(3)/2)``.  A layer carries one of three horizontal offsets
A, B, C, which shift it by 0, 1/3 or 2/3 of ``p + q``.  Horizontal
coordinates are stored multiplied by 3 so every offset is integral:

    X = 3u + off(letter),   Y = 3v + off(letter),   Z = layer

The squared horizontal distance in the 60 degree basis is
``(a*a + a*b + b*b) / 9`` for a scaled difference ``(a, b)``, and adjacent
layers sit sqrt(6)/3 apart.  Two sphere centres are therefore at distance
one exactly when ``dZ == 0`` and the norm is 9, or ``|dZ| == 1`` and the
norm is 3.  No floating point is involved anywhere in this module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .errors import DomainError, InputError

OFFSETS = {"A": 0, "B": 1, "C": 2}
IN_LAYER_NORM = 9
CROSS_LAYER_NORM = 3


@dataclass(frozen=True)
class StackingSequence:
    """Letters over {A, B, C}, one per layer starting at layer 0."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise InputError("stacking sequence must have at least one layer")
        bad = set(self.letters) - set(OFFSETS)
        if bad:
            raise InputError(f"stacking letters must be A, B or C, got {sorted(bad)}")
        for z in range(1, len(self.letters)):
            if self.letters[z] == self.letters[z - 1]:
                raise InputError(
                    f"layers {z - 1} and {z} share letter {self.letters[z]!r}; "
                    "consecutive close-packed layers must differ"
                )

    @classmethod
    def fcc(cls, layers: int) -> "StackingSequence":
        """Periodic ABC stacking (cubic close packing)."""
        return cls(("ABC" * (layers // 3 + 1))[:layers])

    @classmethod
    def hcp(cls, layers: int) -> "StackingSequence":
        """Periodic AB stacking (hexagonal close packing)."""
        return cls(("AB" * (layers // 2 + 1))[:layers])

    @classmethod
    def random(cls, layers: int, rng: random.Random) -> "StackingSequence":
        letters = [rng.choice("ABC")]
        for _ in range(layers - 1):
            letters.append(rng.choice([c for c in "ABC" if c != letters[-1]]))
        return cls("".join(letters))

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, z):
        return self.letters[z]

    def offset(self, z: int) -> int:
        return OFFSETS[self.letters[z]]

    def __str__(self):
        return self.letters


class GridVertex(NamedTuple):
    layer: int
    u: int
    v: int

    def __str__(self):
        return f"{self.layer},{self.u},{self.v}"


class ScaledPosition(NamedTuple):
    X: int
    Y: int
    Z: int


# (umin, umax, vmin, vmax), inclusive
Box = tuple[int, int, int, int]


@dataclass(frozen=True)
class GridRegion:
    """A finite window onto the grid: one inclusive (u, v) box per layer."""

    stacking: StackingSequence
    boxes: tuple[Box, ...]

    def __post_init__(self):
        if len(self.boxes) != len(self.stacking):
            raise InputError("need exactly one box per stacking layer")
        for b in self.boxes:
            if b[0] > b[1] + 1 or b[2] > b[3] + 1:
                raise InputError(f"malformed box {b}")

    @classmethod
    def window(cls, stacking, width: int, height: int, u0: int = 0, v0: int = 0) -> "GridRegion":
        """The same ``width x height`` box on every layer."""
        if isinstance(stacking, str):
            stacking = StackingSequence(stacking)
        if width < 0 or height < 0:
            raise InputError("window dimensions must be nonnegative")
        box = (u0, u0 + width - 1, v0, v0 + height - 1)
        return cls(stacking, (box,) * len(stacking))

    @property
    def layers(self) -> int:
        return len(self.stacking)

    def __contains__(self, w) -> bool:
        z, u, v = w
        if not 0 <= z < len(self.boxes):
            return False
        umin, umax, vmin, vmax = self.boxes[z]
        return umin <= u <= umax and vmin <= v <= vmax

    def vertices(self) -> Iterator[GridVertex]:
        """All grid vertices of the region in canonical (layer, u, v) order."""
        for z, (umin, umax, vmin, vmax) in enumerate(self.boxes):
            for u in range(umin, umax + 1):
                for v in range(vmin, vmax + 1):
                    yield GridVertex(z, u, v)

    def size(self) -> int:
        return sum(max(0, b[1] - b[0] + 1) * max(0, b[3] - b[2] + 1) for b in self.boxes)

    def padded(self, ring: int = 1) -> "GridRegion":
        boxes = tuple((a - ring, b + ring, c - ring, d + ring) for a, b, c, d in self.boxes)
        return GridRegion(self.stacking, boxes)

    def bounds(self) -> Box:
        """Union bounding box over all layers."""
        return (
            min(b[0] for b in self.boxes),
            max(b[1] for b in self.boxes),
            min(b[2] for b in self.boxes),
            max(b[3] for b in self.boxes),
        )


Triangle = tuple[GridVertex, GridVertex, GridVertex]
Tetrahedron = tuple[GridVertex, GridVertex, GridVertex, GridVertex]


def hex_norm(a: int, b: int) -> int:
    """Squared length (times 9 in scaled units) of ``a p + b q``."""
    return a * a + a * b + b * b


def _check_layer(v, s: StackingSequence):
    if not 0 <= v[0] < len(s):
        raise DomainError(f"layer {v[0]} outside stacking of {len(s)} layers")


def scaled_position(v: GridVertex, s: StackingSequence) -> ScaledPosition:
    _check_layer(v, s)
    off = s.offset(v[0])
    return ScaledPosition(3 * v[1] + off, 3 * v[2] + off, v[0])


def are_adjacent(a: GridVertex, b: GridVertex, s: StackingSequence) -> bool:
    pa = scaled_position(a, s)
    pb = scaled_position(b, s)
    dz = abs(pa.Z - pb.Z)
    norm = hex_norm(pa.X - pb.X, pa.Y - pb.Y)
    if dz == 0:
        return norm == IN_LAYER_NORM
    if dz == 1:
        return norm == CROSS_LAYER_NORM
    return False


IN_LAYER_STEPS = ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0))


@lru_cache(maxsize=None)
def cross_steps(off_from: int, off_to: int) -> tuple[tuple[int, int], ...]:
    """(du, dv) steps from a layer with offset ``off_from`` to a touching
    neighbour layer with offset ``off_to``."""
    delta = off_to - off_from
    steps = tuple(
        (du, dv)
        for du in range(-2, 3)
        for dv in range(-2, 3)
        if hex_norm(3 * du + delta, 3 * dv + delta) == CROSS_LAYER_NORM
    )
    assert len(steps) == 3, (off_from, off_to, steps)
    return steps


@lru_cache(maxsize=None)
def neighbor_offsets(s: StackingSequence, layer: int) -> tuple[tuple[int, int, int], ...]:
    """(dz, du, dv) to every tangent grid vertex, ignoring any region box."""
    out = [(0, du, dv) for du, dv in IN_LAYER_STEPS]
    for dz in (-1, 1):
        z = layer + dz
        if 0 <= z < len(s):
            out.extend((dz, du, dv) for du, dv in cross_steps(s.offset(layer), s.offset(z)))
    return tuple(sorted(out))


def grid_neighbors(v: GridVertex, s: StackingSequence) -> list[GridVertex]:
    """Tangent vertices in the unbounded grid restricted to the stacking's layers."""
    _check_layer(v, s)
    z, u, w = v
    return [GridVertex(z + dz, u + du, w + dv) for dz, du, dv in neighbor_offsets(s, z)]


def neighbors(v: GridVertex, region: GridRegion) -> list[GridVertex]:
    if v not in region:
        raise DomainError(f"vertex {v} is outside the region")
    return [w for w in grid_neighbors(v, region.stacking) if w in region]


def triangles_containing(v: GridVertex, region: GridRegion) -> list[Triangle]:
    s = region.stacking
    nb = neighbors(v, region)
    out = []
    for a, b in itertools.combinations(nb, 2):
        if are_adjacent(a, b, s):
            out.append(tuple(sorted((v, a, b))))
    return sorted(out)


def tetrahedra_containing(v: GridVertex, region: GridRegion) -> list[Tetrahedron]:
    s = region.stacking
    nb = neighbors(v, region)
    out = []
    for a, b, c in itertools.combinations(nb, 3):
        if are_adjacent(a, b, s) and are_adjacent(a, c, s) and are_adjacent(b, c, s):
            out.append(tuple(sorted((v, a, b, c))))
    return sorted(out)


@lru_cache(maxsize=None)
def local_cliques(s: StackingSequence, layer: int):
    """Offsets of the edges, triangles and tetrahedra at a vertex of ``layer``.

    Returns three tuples whose entries are tuples of (dz, du, dv) offsets of
    the *other* members of the clique, i.e. 1, 2 and 3 offsets respectively.
    """
    origin = GridVertex(layer, 0, 0)
    nb = grid_neighbors(origin, s)
    off = {w: (w[0] - layer, w[1], w[2]) for w in nb}
    edges = tuple((off[a],) for a in nb)
    tris = tuple(
        (off[a], off[b])
        for a, b in itertools.combinations(nb, 2)
        if are_adjacent(a, b, s)
    )
    tets = tuple(
        (off[a], off[b], off[c])
        for a, b, c in itertools.combinations(nb, 3)
        if are_adjacent(a, b, s) and are_adjacent(a, c, s) and are_adjacent(b, c, s)
    )
    return edges, tris, tets


@lru_cache(maxsize=None)
def color_tables(s: StackingSequence) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Per-layer base colours indexed by ``[u % 2][v % 2]``.

    Layer 0 uses ``u mod 2 + 2 (v mod 2)``; every higher vertex takes the one
    colour of {0, 1, 2, 3} missing from its three tangent vertices below.
    That the result depends only on parity is checked on a 4x4 patch.
    """
    tables = [((0, 2), (1, 3))]
    for z in range(1, len(s)):
        below = tables[-1]
        down = cross_steps(s.offset(z), s.offset(z - 1))
        table = [[None, None], [None, None]]
        for u in range(4):
            for v in range(4):
                seen = {below[(u + du) % 2][(v + dv) % 2] for du, dv in down}
                assert len(seen) == 3, f"layer {z}: lower neighbours of ({u},{v}) repeat a colour"
                (missing,) = {0, 1, 2, 3} - seen
                prev = table[u % 2][v % 2]
                assert prev is None or prev == missing, f"layer {z}: colour not parity-determined"
                table[u % 2][v % 2] = missing
        flat = {table[a][b] for a in (0, 1) for b in (0, 1)}
        # four distinct colours over the parity classes keeps the layer proper
        assert len(flat) == 4, f"layer {z}: extension is not a proper colouring"
        tables.append(tuple(tuple(row) for row in table))
    return tuple(tables)


def base_color(v: GridVertex, s: StackingSequence) -> int:
    _check_layer(v, s)
    return color_tables(s)[v[0]][v[1] % 2][v[2] % 2]


def fcc_basis_to_layered(x: int, y: int, z: int) -> GridVertex:
    """Map ``x p + y q + z r`` (``r`` the cubic close packing stacking vector)
    to layered coordinates under periodic ABC stacking."""
    return GridVertex(z, x + z // 3, y + z // 3)


def fcc_closed_form_color(x: int, y: int, z: int) -> int:
    """Closed-form base colour for cubic close packing in (p, q, r) coordinates."""
    even = (z + 1) % 2
    odd = z % 2
    return even * (x % 2 + 2 * (y % 2)) + odd * ((x + 1) % 2 + 2 * ((y + 1) % 2))
