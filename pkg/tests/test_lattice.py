import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_base_color, euclid, float_neighbors, touching

from cannonball import GridRegion, GridVertex, StackingSequence
from cannonball.errors import DomainError, InputError
from cannonball.lattice import (
    ScaledPosition,
    are_adjacent,
    base_color,
    fcc_basis_to_layered,
    fcc_closed_form_color,
    grid_neighbors,
    neighbors,
    scaled_position,
    tetrahedra_containing,
    triangles_containing,
)

stackings = st.lists(st.sampled_from("ABC"), min_size=1, max_size=6).filter(
    lambda xs: all(a != b for a, b in zip(xs, xs[1:]))
).map("".join)


# -- stacking sequences -------------------------------------------------------

def test_stacking_rejects_repeats_and_bad_letters():
    with pytest.raises(InputError):
        StackingSequence("ABBA")
    with pytest.raises(InputError):
        StackingSequence("ABD")
    with pytest.raises(InputError):
        StackingSequence("")


def test_named_stackings():
    assert str(StackingSequence.fcc(7)) == "ABCABCA"
    assert str(StackingSequence.hcp(5)) == "ABABA"
    s = StackingSequence.random(12, random.Random(3))
    assert len(s) == 12
    assert s == StackingSequence.random(12, random.Random(3))


# -- positions ------------------------------------------------------------------

@pytest.mark.parametrize(
    "stacking, v, expected",
    [
        ("A", (0, 0, 0), (0, 0, 0)),
        ("AB", (1, 2, -1), (7, -2, 1)),
        ("ABC", (2, 0, 0), (2, 2, 2)),
    ],
)
def test_scaled_position_examples(stacking, v, expected):
    assert scaled_position(GridVertex(*v), StackingSequence(stacking)) == ScaledPosition(*expected)


def test_scaled_position_layer_out_of_range():
    with pytest.raises(DomainError):
        scaled_position(GridVertex(3, 0, 0), StackingSequence("ABC"))


def test_adjacency_examples():
    s = StackingSequence("ABC")
    assert are_adjacent(GridVertex(0, 0, 0), GridVertex(0, 1, 0), s)
    assert are_adjacent(GridVertex(0, 0, 0), GridVertex(1, 0, 0), s)
    for du in range(-3, 4):
        for dv in range(-3, 4):
            assert not are_adjacent(GridVertex(0, 0, 0), GridVertex(2, du, dv), s)
    assert not are_adjacent(GridVertex(1, 2, 2), GridVertex(1, 2, 2), s)


@settings(max_examples=200, deadline=None)
@given(stackings, st.data())
def test_adjacency_matches_euclidean_distance(letters, data):
    s = StackingSequence(letters)
    n = len(s)
    coord = st.integers(-4, 4)
    a = GridVertex(data.draw(st.integers(0, n - 1)), data.draw(coord), data.draw(coord))
    b = GridVertex(data.draw(st.integers(0, n - 1)), data.draw(coord), data.draw(coord))
    assert are_adjacent(a, b, s) == touching(a, b, s)
    assert are_adjacent(a, b, s) == are_adjacent(b, a, s)


# -- neighbourhoods ---------------------------------------------------------------

def test_interior_fcc_vertex_has_twelve_neighbors():
    r = GridRegion.window("ABC", 5, 5)
    nb = neighbors(GridVertex(1, 2, 2), r)
    assert len(nb) == 12
    assert sorted(w[0] for w in nb) == [0] * 3 + [1] * 6 + [2] * 3
    assert nb == sorted(nb)


def test_single_layer_interior_has_six_neighbors():
    r = GridRegion.window("A", 5, 5)
    assert len(neighbors(GridVertex(0, 2, 2), r)) == 6


def test_corner_neighbors_match_exhaustive_distance_scan():
    r = GridRegion.window("ABA", 4, 3)
    for corner in (GridVertex(0, 0, 0), GridVertex(2, 3, 2), GridVertex(1, 0, 2)):
        got = neighbors(corner, r)
        assert got == float_neighbors(corner, r)
        assert len(got) < 12


def test_neighbors_outside_region_raises():
    with pytest.raises(DomainError):
        neighbors(GridVertex(0, 9, 9), GridRegion.window("A", 2, 2))


@settings(max_examples=60, deadline=None)
@given(stackings, st.integers(1, 4), st.integers(1, 4))
def test_neighbors_equal_float_scan_everywhere(letters, w, h):
    r = GridRegion.window(letters, w, h)
    for v in r.vertices():
        nb = neighbors(v, r)
        assert len(nb) <= 12
        assert nb == float_neighbors(v, r)


@settings(max_examples=40, deadline=None)
@given(stackings)
def test_upper_neighbors_form_a_triangle_of_distinct_colors(letters):
    s = StackingSequence(letters)
    for z in range(len(s) - 1):
        for u, v in itertools.product(range(-2, 3), repeat=2):
            up = [w for w in grid_neighbors(GridVertex(z, u, v), s) if w[0] == z + 1]
            assert len(up) == 3
            assert all(are_adjacent(a, b, s) for a, b in itertools.combinations(up, 2))
            assert len({base_color(w, s) for w in up}) == 3


# -- cliques ------------------------------------------------------------------------

def brute_triangles(v, region):
    s = region.stacking
    others = [w for w in region.vertices() if w != v]
    out = []
    for a, b in itertools.combinations(others, 2):
        if touching(v, a, s) and touching(v, b, s) and touching(a, b, s):
            out.append(tuple(sorted((v, a, b))))
    return sorted(out)


def brute_tetrahedra(v, region):
    s = region.stacking
    nb = float_neighbors(v, region)
    out = []
    for trio in itertools.combinations(nb, 3):
        if all(touching(a, b, s) for a, b in itertools.combinations(trio, 2)):
            out.append(tuple(sorted((v, *trio))))
    return sorted(out)


@pytest.mark.parametrize(
    "stacking, v, n_tri, n_tet",
    [
        ("ABC", (1, 2, 2), 24, 8),
        ("ABA", (1, 2, 2), 24, 8),
        ("A", (0, 2, 2), 6, 0),
        ("AB", (0, 2, 2), 15, 4),
    ],
)
def test_clique_counts_at_interior_vertices(stacking, v, n_tri, n_tet):
    r = GridRegion.window(stacking, 5, 5)
    v = GridVertex(*v)
    tris = triangles_containing(v, r)
    tets = tetrahedra_containing(v, r)
    assert len(tris) == n_tri
    assert len(tets) == n_tet
    assert sorted(tris) == brute_triangles(v, r)
    assert sorted(tets) == brute_tetrahedra(v, r)


def test_isolated_corner_has_no_triangle():
    r = GridRegion.window("A", 2, 1)
    assert triangles_containing(GridVertex(0, 0, 0), r) == []


@settings(max_examples=25, deadline=None)
@given(stackings.filter(lambda s: len(s) <= 3), st.integers(1, 3), st.integers(1, 3))
def test_triangles_equal_brute_force_scan(letters, w, h):
    r = GridRegion.window(letters, w, h)
    for v in r.vertices():
        tris = triangles_containing(v, r)
        assert len(set(tris)) == len(tris)
        assert sorted(tris) == brute_triangles(v, r)


# -- base colouring -------------------------------------------------------------------

def test_base_color_examples():
    s = StackingSequence("ABC")
    assert base_color(GridVertex(0, 0, 0), s) == 0
    assert base_color(GridVertex(0, 1, 1), s) == 3
    assert fcc_closed_form_color(1, 1, 1) == 0
    assert base_color(fcc_basis_to_layered(1, 1, 1), StackingSequence.fcc(2)) == 0


@settings(max_examples=60, deadline=None)
@given(stackings)
def test_base_color_matches_recursive_oracle(letters):
    s = StackingSequence(letters)
    memo = {}
    for z in range(len(s)):
        for u, v in itertools.product(range(-3, 4), repeat=2):
            g = GridVertex(z, u, v)
            assert base_color(g, s) == brute_base_color(g, s, memo)


@settings(max_examples=60, deadline=None)
@given(stackings)
def test_base_color_is_proper(letters):
    r = GridRegion.window(letters, 4, 4)
    s = r.stacking
    for v in r.vertices():
        for w in neighbors(v, r):
            assert base_color(v, s) != base_color(w, s)


def test_base_color_depends_only_on_parity():
    s = StackingSequence("ABCBACAB")
    for z in range(len(s)):
        for u, v in itertools.product(range(-4, 4), repeat=2):
            assert base_color(GridVertex(z, u, v), s) == base_color(GridVertex(z, u % 2, v % 2), s)


# -- FCC basis ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "xyz, expected",
    [((0, 0, 0), (0, 0, 0)), ((0, 0, 3), (3, 1, 1)), ((2, -1, 1), (1, 2, -1))],
)
def test_fcc_basis_examples(xyz, expected):
    assert fcc_basis_to_layered(*xyz) == GridVertex(*expected)


@settings(max_examples=200, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 8))
def test_fcc_basis_preserves_position(x, y, z):
    # position x p + y q + z r with r = (1/2, sqrt3/6, sqrt6/3)
    px = x + y / 2.0 + z / 2.0
    py = y * 3 ** 0.5 / 2.0 + z * 3 ** 0.5 / 6.0
    s = StackingSequence.fcc(z + 1)
    got = euclid(fcc_basis_to_layered(x, y, z), s)
    assert got[0] == pytest.approx(px)
    assert got[1] == pytest.approx(py)


def test_fcc_closed_form_on_window():
    s = StackingSequence.fcc(6)
    bad = [
        (x, y, z)
        for x in range(8)
        for y in range(8)
        for z in range(6)
        if base_color(fcc_basis_to_layered(x, y, z), s) != fcc_closed_form_color(x, y, z)
    ]
    assert bad == []
