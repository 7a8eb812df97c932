"""Multicolouring of cannonball graphs within 11/6 of the weighted clique number.

The pipeline runs in five steps over a shared :class:`PipelineState`:

0. tabulate base colours and base-function values;
1. every vertex takes up to ``kappa(v)`` colours of its own base palette;
2. very heavy vertices borrow ``kappa(v)`` unused colours from the three
   other base palettes;
3. vertices of degree 4 in the residual graph borrow from a free base
   palette and finish;
4. the residual graph (max degree 3) is split over three additional
   palettes via a 3-colouring.

Borrowing is sequential in canonical vertex order.  An index ``j`` of
palette ``c`` is available at ``v`` when it exceeds every demand among
``v``'s grid neighbours of base colour ``c`` and no neighbour holds it
already.  Indices above ``ceil(omega_3 / 3)`` are still handed out when
needed but are recorded as bound-risk events.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ContractViolation, LemmaViolation
from .graph import (
    CannonballGraph,
    CliqueNumbers,
    clique_numbers,
    kappa,
    neighbor_color_max,
)
from .lattice import GridVertex, grid_neighbors
from .subcolor import WeightedGraph, three_color, triple_split_multicolor
from .verify import count_colors, verify

log = logging.getLogger(__name__)

BASE_PALETTES = (0, 1, 2, 3)
ADDITIONAL_PALETTES = (4, 5, 6)
BOUND_SLACK = 10


class PaletteColor(NamedTuple):
    palette: int
    index: int


ColorAssignment = dict  # GridVertex -> set[PaletteColor]


class BoundRiskEvent(NamedTuple):
    step: int
    vertex: GridVertex
    palette: int
    index: int
    cap: int


def bound_value(omega: int) -> int:
    """``ceil(11 omega / 6) + 10``."""
    return -(-11 * omega // 6) + BOUND_SLACK


@dataclass
class PipelineState:
    graph: CannonballGraph
    bc: dict
    kappa: dict
    omega: CliqueNumbers
    cap: int
    assignment: dict
    d1: dict = field(default_factory=dict)
    d2: dict = field(default_factory=dict)
    d3: dict = field(default_factory=dict)
    v1: frozenset = frozenset()
    v2: frozenset = frozenset()
    v3: frozenset = frozenset()
    step3_palette: dict = field(default_factory=dict)
    grants: dict = field(default_factory=dict)
    events: list = field(default_factory=list)
    three_coloring: dict = field(default_factory=dict)

    def induced_adj(self, keep) -> dict:
        adj = self.graph.adjacency
        return {v: tuple(w for w in adj[v] if w in keep) for v in sorted(keep)}

    def neighbor_max(self, v, c) -> int:
        return neighbor_color_max(self.graph, v, c)

    def _taken(self, v, color) -> bool:
        return any(color in self.assignment[w] for w in self.graph.adjacency[v])

    def available(self, v, c, j) -> bool:
        return j > self.neighbor_max(v, c) and not self._taken(v, PaletteColor(c, j))

    def grant(self, step, v, colors):
        self.assignment[v].update(colors)
        self.grants[step] = self.grants.get(step, 0) + len(colors)


def _triangles(adj):
    for v, nb in adj.items():
        for a in nb:
            if a <= v:
                continue
            for b in nb:
                if b > a and b in adj[a]:
                    yield v, a, b


def _weight_clique(adj, dem):
    best = max(dem.values(), default=0)
    for v, nb in adj.items():
        for w in nb:
            best = max(best, dem[v] + dem[w])
    return best


def _local_dump(state, v):
    g = state.graph
    return {
        "stacking": str(g.stacking),
        "vertex": str(v),
        "neighbourhood": {
            str(w): {"d": g.d(w), "bc": g.base_color(w), "in_G2": w in state.v2}
            for w in [v] + grid_neighbors(v, g.stacking)
        },
    }


def step0(g: CannonballGraph) -> PipelineState:
    omega = clique_numbers(g)
    return PipelineState(
        graph=g,
        bc={v: g.base_color(v) for v in g.support},
        kappa={v: kappa(g, v) for v in g.support},
        omega=omega,
        cap=-(-omega.w3 // 3),
        assignment={v: set() for v in g.support},
    )


def step1(state: PipelineState) -> dict:
    g = state.graph
    part = {}
    for v in g.support:
        k = min(state.kappa[v], g.d(v))
        part[v] = {PaletteColor(state.bc[v], i) for i in range(1, k + 1)}
        state.grant(1, v, part[v])
        state.d1[v] = max(g.d(v) - state.kappa[v], 0)
    state.v1 = frozenset(v for v, r in state.d1.items() if r > 0)

    adj1 = state.induced_adj(state.v1)
    for tri in _triangles(adj1):
        raise LemmaViolation(f"triangle {tri} survives among heavy vertices",
                             {"triangle": [str(t) for t in tri]})
    for v, nb in adj1.items():
        for u in nb:
            if state.d1[v] + state.d1[u] > state.kappa[v]:
                raise LemmaViolation(f"residual demands on edge {v}-{u} exceed kappa({v})",
                                     _local_dump(state, v))
    return part


def _borrow(state, step, v, palettes, count):
    """Take ``count`` available colours from ``palettes``, index-major."""
    taken = []
    j = 0
    flagged = False
    while len(taken) < count:
        j += 1
        for c in palettes:
            if len(taken) == count:
                break
            if state.available(v, c, j):
                if j > state.cap and not flagged:
                    flagged = True
                    ev = BoundRiskEvent(step, v, c, j, state.cap)
                    state.events.append(ev)
                    log.warning("bound-risk: %s", ev)
                taken.append(PaletteColor(c, j))
    state.grant(step, v, taken)
    return taken


def step2(state: PipelineState) -> dict:
    adj1 = state.induced_adj(state.v1)
    part = {}
    for v in sorted(state.v1):
        state.d2[v] = state.d1[v]
        if state.d1[v] <= state.kappa[v]:
            continue
        if adj1[v]:
            raise LemmaViolation(f"very heavy vertex {v} has heavy neighbours", _local_dump(state, v))
        want = min(state.d1[v], state.kappa[v])
        others = [c for c in BASE_PALETTES if c != state.bc[v]]
        part[v] = _borrow(state, 2, v, others, want)
        state.d2[v] = state.d1[v] - want
    state.v2 = frozenset(v for v, r in state.d2.items() if r > 0)

    limit = -(-state.omega.omega // 3)
    w2 = _weight_clique(state.induced_adj(state.v2), {v: state.d2[v] for v in state.v2})
    if w2 > limit:
        raise LemmaViolation(f"omega(G2) = {w2} exceeds ceil(omega/3) = {limit}")
    return part


def free_palettes(state: PipelineState, v) -> list:
    """Base colours whose in-layer grid neighbours of ``v`` all lie outside G2."""
    g = state.graph
    z, u, w = v
    out = []
    for c in BASE_PALETTES:
        if c == state.bc[v]:
            continue
        same = [GridVertex(z, u + du, w + dv) for du, dv in _IN_LAYER]
        if all(x not in state.v2 for x in same if g.base_color(x) == c):
            out.append(c)
    return out


_IN_LAYER = ((-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0))


def _free_count(state, v, c):
    return sum(1 for j in range(1, state.cap + 1) if state.available(v, c, j))


def step3(state: PipelineState) -> dict:
    adj2 = state.induced_adj(state.v2)
    part = {}
    for v in sorted(state.v2):
        deg = len(adj2[v])
        if deg > 4:
            raise LemmaViolation(f"{v} has degree {deg} > 4 in G2", _local_dump(state, v))
        state.d3[v] = state.d2[v]
        if deg < 4:
            continue
        cands = free_palettes(state, v)
        if not cands:
            raise LemmaViolation(f"degree-4 vertex {v} of G2 has no free colour", _local_dump(state, v))
        c = min(cands, key=lambda c: (-_free_count(state, v, c), c))
        deficit = state.kappa[v] - state.neighbor_max(v, c)
        if state.d2[v] > deficit:
            raise LemmaViolation(
                f"{v}: residual demand {state.d2[v]} exceeds deficit {deficit} of palette {c}",
                _local_dump(state, v),
            )
        state.step3_palette[v] = c
        part[v] = _borrow(state, 3, v, [c], state.d2[v])
        state.d3[v] = 0
    state.v3 = frozenset(v for v, r in state.d3.items() if r > 0)
    return part


def step4(state: PipelineState) -> dict:
    adj3 = state.induced_adj(state.v3)
    if any(len(nb) > 3 for nb in adj3.values()):
        raise LemmaViolation("G3 has a vertex of degree above 3")
    for tri in _triangles(adj3):
        raise LemmaViolation(f"G3 contains triangle {tri}")
    if not adj3:
        return {}
    H = WeightedGraph(
        {v: state.d3[v] for v in adj3},
        {v: frozenset(nb) for v, nb in adj3.items()},
    )
    state.three_coloring = three_color(H)
    pieces = triple_split_multicolor(H, state.three_coloring, ADDITIONAL_PALETTES)
    part = {}
    for v, sets in pieces.items():
        part[v] = {PaletteColor(cs.palette, i) for cs in sets for i in cs.indices}
        state.grant(4, v, part[v])
    return part


def run_pipeline(g: CannonballGraph) -> PipelineState:
    state = step0(g)
    step1(state)
    step2(state)
    step3(state)
    step4(state)
    return state


@dataclass
class SolveStats:
    colors_used: int
    omega: CliqueNumbers
    cap: int
    bound_value: int
    base_colors: int
    additional_colors: int
    step_grants: dict
    bound_risk_events: list
    state: PipelineState | None = field(default=None, repr=False)

    @property
    def bound_ok(self) -> bool:
        return self.colors_used <= self.bound_value

    def summary(self) -> dict:
        return {
            "colors_used": self.colors_used,
            "omega": list(self.omega),
            "bound_value": self.bound_value,
            "bound_risk_events": len(self.bound_risk_events),
            "base_colors": self.base_colors,
            "additional_colors": self.additional_colors,
            "step_grants": {str(k): v for k, v in sorted(self.step_grants.items())},
        }


def _stats(g, f, omega, cap, grants, events, state=None):
    colors = set().union(*f.values()) if f else set()
    base = sum(1 for c in colors if c.palette in BASE_PALETTES)
    return SolveStats(
        colors_used=count_colors(f),
        omega=omega,
        cap=cap,
        bound_value=bound_value(omega.omega),
        base_colors=base,
        additional_colors=len(colors) - base,
        step_grants=dict(grants),
        bound_risk_events=list(events),
        state=state,
    )


def solve(g: CannonballGraph):
    """Run all steps; returns ``(assignment, stats)``."""
    state = run_pipeline(g)
    f = {v: frozenset(cs) for v, cs in state.assignment.items()}
    report = verify(g, f)
    if not report.ok:
        raise ContractViolation(f"pipeline produced an invalid colouring: {report.violations[:5]}")
    return f, _stats(g, f, state.omega, state.cap, state.grants, state.events, state)


def naive_solve(g: CannonballGraph):
    """Every vertex takes ``1..d(v)`` of its own base palette."""
    f = {
        v: frozenset(PaletteColor(g.base_color(v), i) for i in range(1, g.d(v) + 1))
        for v in g.support
    }
    omega = clique_numbers(g)
    return f, _stats(g, f, omega, -(-omega.w3 // 3), {1: sum(g.d(v) for v in g.support)}, [])
