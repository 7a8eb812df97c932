"""Checks that do not trust the solver: multicolouring validity, colour
counting, an exact multichromatic number for tiny instances and a
brute-force clique scan."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .lattice import are_adjacent, neighbors

EXCEEDS_LIMIT = "exceeds limit"


class Violation(NamedTuple):
    kind: str  # demand_shortfall | edge_conflict | unknown_vertex
    vertices: tuple
    color: object = None


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify(g, f) -> VerificationReport:
    """Demand coverage on the support and disjointness across every edge."""
    report = VerificationReport()
    for v in sorted(f):
        if v not in g.region:
            report.violations.append(Violation("unknown_vertex", (v,)))
    for v in g.support:
        have = len(f.get(v, ()))
        if have < g.d(v):
            report.violations.append(Violation("demand_shortfall", (v,), g.d(v) - have))
    for v in g.support:
        for w in neighbors(v, g.region):
            if w <= v or g.d(w) <= 0:
                continue
            for c in sorted(set(f.get(v, ())) & set(f.get(w, ()))):
                report.violations.append(Violation("edge_conflict", (v, w), c))
    return report


def count_colors(f) -> int:
    colors = set()
    for cs in f.values():
        colors.update(cs)
    return len(colors)


def brute_cliques(g):
    """Clique numbers from an exhaustive scan of support subsets of size <= 4.

    Zero-demand grid vertices can only enlarge a clique without changing its
    weight, so subsets of the support are enough.
    """
    from .graph import CliqueNumbers

    s = g.stacking
    sup = list(g.support)
    best = [0, 0, 0, 0]
    for k in range(1, 5):
        for sub in itertools.combinations(sup, k):
            if all(are_adjacent(a, b, s) for a, b in itertools.combinations(sub, 2)):
                best[k - 1] = max(best[k - 1], sum(g.d(v) for v in sub))
    for k in range(1, 4):
        best[k] = max(best[k], best[k - 1])
    return CliqueNumbers(*best)


def _maximal_independent_sets(n, adj_mask, within):
    """All maximal independent sets of the subgraph induced by bitmask ``within``."""
    out = []

    def grow(chosen, candidates, excluded):
        if not candidates and not excluded:
            out.append(chosen)
            return
        for i in range(n):
            bit = 1 << i
            if candidates & bit:
                grow(chosen | bit, candidates & ~adj_mask[i] & ~bit, excluded & ~adj_mask[i])
                candidates &= ~bit
                excluded |= bit

    grow(0, within, 0)
    return out


def _cliques(n, adj_mask, max_size):
    """All cliques (as index tuples) of at most ``max_size`` vertices."""
    out = []

    def extend(clique, candidates):
        out.append(clique)
        if len(clique) == max_size:
            return
        for i in range(clique[-1] + 1, n):
            if candidates >> i & 1:
                extend(clique + (i,), candidates & adj_mask[i])

    for i in range(n):
        extend((i,), adj_mask[i])
    return out


def exact_multichromatic(g, limit: int, max_states: int = 200_000):
    """Smallest number of colours in a proper multicolouring, or ``EXCEEDS_LIMIT``.

    ``g`` is a cannonball graph or an abstract :class:`~cannonball.subcolor.WeightedGraph`.
    Each colour class is an independent set, and it can always be taken
    maximal among the vertices that still need colours.  The search is a
    memoised recursion over the residual demand vector, with the heaviest
    residual clique as a lower bound.  ``EXCEEDS_LIMIT`` is returned when
    the answer is above ``limit`` or the state budget runs out.
    """
    if hasattr(g, "support"):
        verts = list(g.support)
        demand = [g.d(v) for v in verts]
        s = g.stacking
        edge = lambda a, b: are_adjacent(a, b, s)  # noqa: E731
        max_clique = 4
    else:
        verts = [v for v in g.vertices if g.demand[v] > 0]
        demand = [g.demand[v] for v in verts]
        edge = lambda a, b: b in g.adj[a]  # noqa: E731
        max_clique = len(verts)
    n = len(verts)
    if n == 0:
        return 0
    adj_mask = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if edge(verts[i], verts[j]):
            adj_mask[i] |= 1 << j
            adj_mask[j] |= 1 << i
    cliques = _cliques(n, adj_mask, max_clique)

    def lower(r):
        return max(sum(r[i] for i in c) for c in cliques)

    start = tuple(demand)
    if lower(start) > limit:
        return EXCEEDS_LIMIT

    budget = [max_states]

    class _Budget(Exception):
        pass

    @lru_cache(maxsize=None)
    def mis(mask):
        return tuple(_maximal_independent_sets(n, adj_mask, mask))

    @lru_cache(maxsize=None)
    def need(r):
        # exact number of colours for residual demands r
        budget[0] -= 1
        if budget[0] < 0:
            raise _Budget
        mask = sum(1 << i for i in range(n) if r[i] > 0)
        if not mask:
            return 0
        lb = lower(r)
        best = None
        for ind in mis(mask):
            nxt = tuple(x - 1 if ind >> i & 1 else x for i, x in enumerate(r))
            val = 1 + need(nxt)
            if best is None or val < best:
                best = val
                if best == lb:
                    break
        return best

    try:
        k = need(start)
    except (_Budget, RecursionError):
        return EXCEEDS_LIMIT
    return k if k <= limit else EXCEEDS_LIMIT
