"""Colouring subroutines on small abstract weighted graphs.

* ``bipartite_multicolor`` multicolours a bipartite graph with exactly
  ``omega(H)`` colours.
* ``three_color`` properly 3-colours a graph of maximum degree 3 with no
  K4 component (constructive Brooks).
* ``triple_split_multicolor`` turns a proper 3-colouring into a
  multicolouring with three bipartite pieces, each coloured optimally.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping, NamedTuple

from .errors import ContractViolation

BACKTRACK_LIMIT = 20


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with nonnegative vertex demands."""

    demand: Mapping[Hashable, int]
    adj: Mapping[Hashable, frozenset]

    def __post_init__(self):
        for v, nb in self.adj.items():
            if v in nb:
                raise ContractViolation(f"self-loop at {v!r}")
            for w in nb:
                if v not in self.adj.get(w, ()):
                    raise ContractViolation(f"edge {v!r}-{w!r} is not symmetric")
        for v, d in self.demand.items():
            if d < 0:
                raise ContractViolation(f"negative demand at {v!r}")

    @classmethod
    def from_edges(cls, demand, edges) -> "WeightedGraph":
        adj = {v: set() for v in demand}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        return cls(dict(demand), {v: frozenset(nb) for v, nb in adj.items()})

    @property
    def vertices(self):
        return sorted(self.demand)

    def edges(self):
        for v in self.vertices:
            for w in self.adj[v]:
                if v < w:
                    yield v, w

    def induced(self, keep, demand=None) -> "WeightedGraph":
        keep = set(keep)
        source = self.demand if demand is None else demand
        dem = {v: source[v] for v in keep}
        return WeightedGraph(dem, {v: frozenset(self.adj[v] & keep) for v in keep})

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj.values()), default=0)

    def clique_weight(self) -> int:
        """Weighted clique number; only used on graphs with small cliques."""
        best = max(self.demand.values(), default=0)
        for v, w in self.edges():
            best = max(best, self.demand[v] + self.demand[w])
            for x in self.adj[v] & self.adj[w]:
                if x > w:
                    best = max(best, self.demand[v] + self.demand[w] + self.demand[x])
        return best


class IndexedColorSet(NamedTuple):
    palette: int
    indices: frozenset


def bipartite_multicolor(H: WeightedGraph, part: Mapping, palette: int) -> dict:
    """Side 0 takes ``1..d``; side 1 takes ``m+1..m+d`` with ``m`` the largest
    neighbouring demand."""
    for v, w in H.edges():
        if part[v] == part[w]:
            raise ContractViolation(f"edge {v!r}-{w!r} joins one side of the bipartition")
    out = {}
    for v in H.vertices:
        d = H.demand[v]
        if part[v] == 0:
            start = 0
        else:
            start = max((H.demand[w] for w in H.adj[v]), default=0)
        out[v] = IndexedColorSet(palette, frozenset(range(start + 1, start + d + 1)))
    return out


def _is_proper(H, col) -> bool:
    return all(col[v] != col[w] for v, w in H.edges())


def _components(H, verts):
    verts = set(verts)
    seen = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in H.adj[x]:
                if y in verts and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _bfs_order(H, root, allowed):
    """Vertices of ``allowed`` reachable from ``root``, by BFS distance."""
    order = [root]
    seen = {root}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in sorted(H.adj[x]):
            if y in allowed and y not in seen:
                seen.add(y)
                order.append(y)
                q.append(y)
    return order


def _greedy(H, order, col):
    for v in order:
        used = {col[w] for w in H.adj[v] if w in col}
        free = [c for c in range(3) if c not in used]
        if not free:
            return False
        col[v] = free[0]
    return True


def _brooks_cubic(H, comp):
    """3-colour a connected 3-regular component that is not K4."""
    cset = set(comp)
    for r in comp:
        for x, y in itertools.combinations(sorted(H.adj[r]), 2):
            if y in H.adj[x]:
                continue
            rest = cset - {x, y}
            order = _bfs_order(H, r, rest)
            if len(order) != len(rest):
                continue
            col = {x: 0, y: 0}
            if _greedy(H, order[::-1], col):
                return col
    # no such triple: the component has a cut vertex; colour each piece
    # around it with the cut vertex last (its degree there is at most 2)
    for c in comp:
        rest = cset - {c}
        pieces = _components(H, rest)
        if len(pieces) < 2:
            continue
        col = {c: 0}
        for piece in pieces:
            local = {}
            order = _bfs_order(H, c, set(piece) | {c})
            if not _greedy(H, order[::-1], local):
                break
            shift = local[c]
            for v in piece:
                col[v] = (local[v] - shift) % 3
        else:
            return col
    return None


def _backtrack(H, comp):
    comp = sorted(comp, key=lambda v: -len(H.adj[v]))
    col = {}

    def go(i):
        if i == len(comp):
            return True
        v = comp[i]
        used = {col[w] for w in H.adj[v] if w in col}
        for c in range(3):
            if c not in used:
                col[v] = c
                if go(i + 1):
                    return True
                del col[v]
        return False

    return col if go(0) else None


def three_color(H: WeightedGraph) -> dict:
    """Proper colouring with colours {0, 1, 2}; deterministic for a given graph."""
    if H.max_degree() > 3:
        raise ContractViolation("three_color needs maximum degree at most 3")
    for comp in _components(H, H.vertices):
        if len(comp) == 4 and all(len(H.adj[v]) == 3 for v in comp):
            raise ContractViolation(f"component {comp!r} is K4")

    # peel vertices of degree <= 2; what remains is a union of cubic components
    deg = {v: len(H.adj[v]) for v in H.vertices}
    alive = set(H.vertices)
    stack = []
    queue = deque(v for v in H.vertices if deg[v] <= 2)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        stack.append(v)
        for w in H.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 2:
                    queue.append(w)

    col = {}
    for comp in _components(H, alive):
        sub = _brooks_cubic(H, comp)
        if sub is None or not all(sub[v] != sub[w] for v in comp for w in H.adj[v] if w in sub):
            if len(comp) > BACKTRACK_LIMIT:
                raise ContractViolation(f"could not 3-colour cubic component of size {len(comp)}")
            sub = _backtrack(H, comp)
            if sub is None:
                raise ContractViolation("cubic component is not 3-colourable")
        col.update(sub)

    if not _greedy(H, reversed(stack), col):
        raise ContractViolation("peeled vertex found no free colour")
    assert _is_proper(H, col)
    return col


def triple_split_multicolor(H: WeightedGraph, coloring: Mapping, palettes=(4, 5, 6)) -> dict:
    """Multicolour ``H`` from a proper 3-colouring.

    Subgraph ``i`` drops colour class ``i``; a vertex lies in the two
    subgraphs that keep its class, receiving ``ceil(d/2)`` colours in the
    lower-indexed one and ``floor(d/2)`` in the other.  Returns, per vertex,
    the list of its non-empty :class:`IndexedColorSet` pieces.
    """
    if not _is_proper(H, coloring):
        raise ContractViolation("input colouring is not proper")
    out = {v: [] for v in H.vertices}
    for i, pal in enumerate(palettes):
        keep = [v for v in H.vertices if coloring[v] != i]
        dem = {}
        for v in keep:
            first = min(k for k in range(3) if k != coloring[v])
            d = H.demand[v]
            dem[v] = (d + 1) // 2 if i == first else d // 2
        sub = H.induced(keep, dem)
        low = min(k for k in range(3) if k != i)
        part = {v: 0 if coloring[v] == low else 1 for v in keep}
        for v, cs in bipartite_multicolor(sub, part, pal).items():
            if cs.indices:
                out[v].append(cs)
    return out
