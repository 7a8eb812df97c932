"""Independent reference computations shared by the test modules."""

import itertools
import math

from cannonball import GridRegion, GridVertex, build_graph

SQRT3 = math.sqrt(3.0)
LAYER_HEIGHT = math.sqrt(6.0) / 3.0


def euclid(v, stacking):
    """Float sphere centre: p = (1, 0), q = (1/2, sqrt3/2), layers offset by
    multiples of (p + q) / 3 and stacked sqrt(6)/3 apart."""
    z, u, w = v
    off = "ABC".index(stacking[z]) / 3.0
    a, b = u + off, w + off
    return (a + b / 2.0, b * SQRT3 / 2.0, z * LAYER_HEIGHT)


def touching(a, b, stacking):
    pa, pb = euclid(a, stacking), euclid(b, stacking)
    return a != b and abs(math.dist(pa, pb) - 1.0) < 1e-9


def make_graph(stacking, demands, width=None, height=None, u0=0, v0=0, padded=True):
    """Graph over a window large enough for ``demands`` (a dict vertex -> d)."""
    demands = {GridVertex(*k): d for k, d in demands.items()}
    if width is None:
        us = [v[1] for v in demands] or [0]
        vs = [v[2] for v in demands] or [0]
        u0, v0 = min(us), min(vs)
        width, height = max(us) - u0 + 1, max(vs) - v0 + 1
    region = GridRegion.window(stacking, width, height, u0, v0)
    return build_graph(region, demands.items(), padded=padded)


def float_neighbors(v, region):
    return [w for w in region.vertices() if touching(v, w, region.stacking)]


def brute_base_color(v, stacking, _memo=None):
    """Layer 0 by parity; each higher vertex takes the colour missing among the
    lower-layer spheres it rests on (found by a float distance search)."""
    memo = {} if _memo is None else _memo
    if v in memo:
        return memo[v]
    z, u, w = v
    if z == 0:
        c = u % 2 + 2 * (w % 2)
    else:
        below = [
            GridVertex(z - 1, u + du, w + dv)
            for du in range(-2, 3)
            for dv in range(-2, 3)
            if touching(v, GridVertex(z - 1, u + du, w + dv), stacking)
        ]
        assert len(below) == 3
        used = {brute_base_color(b, stacking, memo) for b in below}
        assert len(used) == 3
        (c,) = {0, 1, 2, 3} - used
    memo[v] = c
    return c


def float_clique_numbers(g):
    """Best demand sum over pairwise-touching support subsets of size <= 1..4."""
    s = g.stacking
    sup = list(g.support)
    best = [0, 0, 0, 0]
    for size in range(1, 5):
        for combo in itertools.combinations(sup, size):
            if all(touching(a, b, s) for a, b in itertools.combinations(combo, 2)):
                best[size - 1] = max(best[size - 1], sum(g.d(v) for v in combo))
    for i in range(1, 4):
        best[i] = max(best[i], best[i - 1])
    return tuple(best)


def float_kappa(g, v):
    """ceil(max triangle sum / 3) over triangles through v among nearby grid points."""
    s = g.stacking
    z, u, w = v
    near = [
        GridVertex(zz, u + du, w + dv)
        for zz in range(max(0, z - 1), min(len(s), z + 2))
        for du in range(-2, 3)
        for dv in range(-2, 3)
    ]
    nb = [x for x in near if touching(v, x, s)]
    best = max(
        g.d(v) + g.d(a) + g.d(b)
        for a, b in itertools.combinations(nb, 2)
        if touching(a, b, s)
    )
    return -(-best // 3)


def residual_violations(g, state):
    """Recheck the structural claims about the residual graphs from a finished
    pipeline state.  Returns human-readable violation strings."""
    from cannonball import clique_numbers, kappa, palette_deficit

    out = []
    adj = g.adjacency
    k = {v: kappa(g, v) for v in g.support}
    omega = clique_numbers(g).omega

    def induced(keep):
        return {v: [w for w in adj[v] if w in keep] for v in keep}

    for v in g.support:
        if state.d1[v] != max(g.d(v) - k[v], 0):
            out.append(f"d1 mismatch at {v}")
    v1 = {v for v in g.support if state.d1[v] > 0}
    g1 = induced(v1)
    for v, nb in g1.items():
        for a, b in itertools.combinations(nb, 2):
            if b in g1[a]:
                out.append(f"triangle {v} {a} {b} in G1")
        for u in nb:
            if state.d1[v] + state.d1[u] > min(k[v], k[u]):
                out.append(f"residual pair {v} {u} too heavy")

    v2 = {v for v in v1 if state.d2[v] > 0}
    g2 = induced(v2)
    w2 = max([state.d2[v] for v in v2] + [state.d2[v] + state.d2[u] for v in v2 for u in g2[v]], default=0)
    if w2 > -(-omega // 3):
        out.append(f"omega(G2) = {w2} above ceil(omega/3)")
    for v, nb in g2.items():
        if len(nb) > 4:
            out.append(f"degree {len(nb)} at {v} in G2")
        if len(nb) == 4:
            c = state.step3_palette.get(v)
            if c is None:
                out.append(f"no free colour recorded at {v}")
            elif state.d2[v] > palette_deficit(g, v, c):
                out.append(f"residual {state.d2[v]} above deficit at {v}")
            else:
                # in-layer neighbours: hex distance 1 in the (u, v) basis
                z, u, w = v
                ring = [
                    GridVertex(z, u + a, w + b)
                    for a in (-1, 0, 1)
                    for b in (-1, 0, 1)
                    if abs(a) + abs(b) + abs(a + b) == 2
                ]
                if any(x in v2 and g.base_color(x) == c for x in ring):
                    out.append(f"colour {c} at {v} is not free")

    v3 = {v for v in v2 if state.d3[v] > 0}
    if any(len(nb) > 3 for nb in induced(v3).values()):
        out.append("G3 degree above 3")
    return out
