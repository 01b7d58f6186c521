from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bodies3d, boxes, lattice_polygons, rational_polygons, symmetric_polygons
from gnum.body import (Body, central_symmetral, chord_length, contains, dumps_body, gauge, loads_body,
                       shadow, support, triangulation_volume, volume)
from gnum.errors import Degenerate, MalformedBody, NotSymmetric
from oracles import shoelace, vertex_ratio_gauge

UNIT = Body.box([0, 0], [1, 1])
TRI = Body.from_hrep([(2, 3), (-1, 0), (0, -1)], [6, 0, 0])


def test_contains_examples():
    assert contains(UNIT, (F(1, 2), F(1, 2)), strict=True)
    assert not contains(UNIT, (0, 0), strict=True)
    assert contains(UNIT, (0, 0))
    assert contains(TRI, (1, 1))


def test_support_examples():
    assert support(Body.cube(2, 5), (1, 0)) == 5
    assert support(Body.simplex(2, 3), (1, 1)) == 3
    assert support(UNIT, (-1, 0)) == 0


def test_central_symmetral_examples():
    assert central_symmetral(Body.cube(3, 2)) == Body.box([-1] * 3, [1] * 3)
    hexagon = Body.from_vertices([(F(3, 2), 0), (F(-3, 2), 0), (0, 1), (0, -1), (F(3, 2), -1), (F(-3, 2), 1)])
    assert central_symmetral(Body.from_vertices([(0, 0), (3, 0), (0, 2)])) == hexagon
    S = Body.box([-1, -2], [1, 2])
    assert central_symmetral(S) == S


def test_gauge_examples():
    S = Body.box([-1, -1], [1, 1])
    assert gauge(S, (1, 0)) == 1
    assert gauge(S, (2, 1)) == 2
    assert gauge(S, (0, 0)) == 0
    with pytest.raises(NotSymmetric):
        gauge(UNIT, (1, 0))


def test_volume_examples():
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            assert volume(Body.cube(n, m)) == m ** n
    assert volume(Body.simplex(3, 2)) == F(8, 6)
    assert volume(TRI) == 3 == shoelace([(0, 0), (3, 0), (0, 2)])
    with pytest.raises(Degenerate):
        Body.from_vertices([(0, 0), (1, 1), (2, 2)])


def test_volume_4d_hrep():
    A = []
    b = []
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        A += [tuple(e), tuple(-x for x in e)]
        b += [i + 1, 0]
    assert volume(Body.from_hrep(A, b)) == 24
    A.append((1, 1, 1, 1))
    b.append(1)
    assert volume(Body.from_hrep(A, b)) == F(1, 24)


def test_shadow_examples():
    assert shadow(Body.box([0, 0], [2, 3]), [1]).body == Body.box([0], [2])
    assert shadow(Body.cube(3, 1), [2]).body == Body.cube(2, 1)
    assert shadow(Body.simplex(3, 2), [2]).body == Body.simplex(2, 2)


def test_chord_examples():
    assert chord_length(TRI, (1, 0), 1) == F(4, 3)
    assert chord_length(Body.cube(2, 4), (F(3, 2), 0), 1) == 4
    assert chord_length(UNIT, (5, 0), 1) == 0


def test_json_round_trip():
    K = Body.from_vertices([(0, 0), (F(3, 2), 0), (0, 2)])
    text = dumps_body(K)
    assert loads_body(text) == K
    assert dumps_body(loads_body(text)) == text
    H = Body.from_hrep([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 2, 0])
    assert dumps_body(loads_body(dumps_body(H))) == dumps_body(H)


@pytest.mark.parametrize("text", ['{"vertices": [[0,0],[1,1],[2,2]]}', '[1,2]', 'nope',
                                  '{"dim": 3, "vertices": [[0,0],[1,0],[0,1]]}',
                                  '{"vertices": [[0,0],[1,0],[0,1],[1,1],[1,2]]}'])
def test_loader_rejects(text):
    with pytest.raises((MalformedBody, Degenerate)):
        loads_body(text)


@given(st.one_of(lattice_polygons, rational_polygons))
def test_volume_vs_oracles_2d(K):
    assert volume(K) == triangulation_volume(K) == shoelace(K.vertices)


@given(bodies3d)
def test_volume_vs_triangulation_3d(K):
    assert volume(K) == triangulation_volume(K)


@given(st.one_of(lattice_polygons, bodies3d), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_support_of_symmetral(K, u):
    u = tuple(u[: K.dim])
    if any(u):
        assert support(central_symmetral(K), u) == (support(K, u) + support(K, tuple(-x for x in u))) / 2


@given(symmetric_polygons, st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.fractions(-3, 3, max_denominator=5))
def test_gauge_homogeneous_and_vertex_ratio(S, z, t):
    g = gauge(S, z)
    assert gauge(S, tuple(t * x for x in z)) == abs(t) * g
    assert g == vertex_ratio_gauge(S.vertices, z) == gauge(S, z, method="lp")


@given(st.one_of(lattice_polygons, bodies3d), st.data())
def test_strict_membership(K, data):
    x = tuple(data.draw(st.fractions(-7, 7, max_denominator=3)) for _ in range(K.dim))
    if contains(K, x, strict=True):
        assert contains(K, x)
    for v in K.vertices:
        assert contains(K, v) and not contains(K, v, strict=True)


@given(st.one_of(lattice_polygons, bodies3d, boxes()))
def test_brunn_minkowski_consequence(K):
    assert volume(K) <= volume(central_symmetral(K))


@given(lattice_polygons)
def test_hrep_vrep_agree(K):
    H = Body.from_hrep([a for a, _ in K.rows], [b for _, b in K.rows])
    assert set(H.vertices) == set(K.vertices)
    assert volume(H) == volume(K)
