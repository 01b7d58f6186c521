from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lattice_polygons, rational_polygons
from gnum.body import Body, central_symmetral, gauge, support, volume
from gnum.checks import lemma32_parts, lemma33_parts, lemma51_parts, lemma53_parts, thm31_parts
from gnum.errors import MalformedTranscript, NonLatticePolygon, NotAntiBlocking, Orientation
from gnum.invariants import count_points, successive_minima
from gnum.shaking import (PickData, Polygon, ShakeTranscript, antiblocking_reduce, diagonal_level, is_antiblocking,
                          pick_data, reduce_below_diagonal, shake_axis, shake_line, shake_sequence,
                          swap_coordinates)

P = Polygon.from_points
TRI = P([(0, 1), (1, 0), (1, 1)])
polygons = st.one_of(lattice_polygons, rational_polygons).map(Polygon.from_body)


def test_polygon_canonical():
    assert P([(1, 1), (0, 0), (1, 0), (0, 1), (F(1, 2), 0)]).vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_shake_axis_examples():
    assert shake_axis(TRI, 2) == P([(0, 0), (1, 0), (1, 1)])
    assert shake_axis(P([(0, 0), (1, 0), (1, 1)]), 1) == P([(0, 0), (1, 0), (0, 1)])
    box = P([(0, 0), (3, 0), (3, 2), (0, 2)])
    assert shake_axis(box, 1) == box == shake_axis(box, 2)


def test_shake_line_examples():
    box = P([(0, 0), (3, 0), (3, 2), (0, 2)])
    # vertical fibers of length 2 hanging from x1 + x2 = 6
    out = shake_line(box, (0, -1), 6)
    assert out == P([(0, 6), (0, 4), (3, 3), (3, 1)])
    on_d = P([(0, 6), (0, 4), (3, 3), (3, 1)])
    assert shake_line(on_d, (0, -1), 6) == on_d
    with pytest.raises(Orientation):
        shake_line(box, (0, -1), 4)
    with pytest.raises(ValueError):
        shake_line(box, (1, 0), 6)


def test_fixed_triangle_under_T():
    for a, b in [(3, 2), (4, 1), (5, 5), (F(7, 2), 2)]:
        delta = P([(0, 0), (a, 0), (0, b)])
        A, tr = reduce_below_diagonal(delta)
        lam = successive_minima(delta.to_body()).minima
        # the larger leg goes on e1 when lambda_1 <= lambda_2
        assert A == delta or A == P([(0, 0), (b, 0), (0, a)])
        assert 2 / lam[0] == max(a, b)


def test_antiblocking_examples():
    A, U, tr = antiblocking_reduce(TRI)
    assert A == P([(0, 0), (1, 0), (0, 1)])
    box = P([(0, 0), (3, 0), (3, 2), (0, 2)])
    A, U, tr = antiblocking_reduce(box)
    assert A == box and U == ((1, 0), (0, 1)) and tr.steps[0].op == "shake_axis"
    # witnesses e2, e1 are not upper triangular, so the transform swaps the axes
    tall = P([(0, 0), (2, 0), (2, 3), (0, 3)])
    A, U, tr = antiblocking_reduce(tall)
    assert A == box and U == ((0, 1), (1, 0))
    shifted = P([(3, 3), (4, 3), (4, 4), (3, 4)])
    A, U, tr = antiblocking_reduce(shifted)
    assert all(v == 0 for v in thm31_parts(shifted, A, U).values())


def test_reduce_examples():
    for a, b in [(4, 2), (3, 3), (5, 1)]:
        K = P([(0, 0), (a, 0), (a, b), (0, b)])
        A, tr = reduce_below_diagonal(K)
        assert A.area() == a * b and is_antiblocking(A)
        lam1 = successive_minima(A.to_body()).minima[0]
        assert support(A.to_body(), (1, 1)) <= 2 / lam1
    with pytest.raises(NotAntiBlocking):
        reduce_below_diagonal(TRI)


def test_is_antiblocking_examples():
    assert is_antiblocking(P([(0, 0), (3, 0), (3, 1), (0, 1)]))
    assert is_antiblocking(P([(0, 0), (2, 0), (0, 1)]))
    assert not is_antiblocking(TRI)


def test_pick_examples():
    assert pick_data(P([(0, 0), (3, 0), (0, 2)])) == PickData(3, 6, 1)
    for m in (1, 2, 5):
        d = pick_data(P([(0, 0), (m, 0), (m, m), (0, m)]))
        assert (d.area, d.boundary, d.interior) == (m * m, 4 * m, (m - 1) ** 2)
    assert pick_data(P([(0, 0), (1, 0), (0, 1)])) == PickData(F(1, 2), 3, 0)
    with pytest.raises(NonLatticePolygon):
        pick_data(P([(0, 0), (F(1, 2), 0), (0, 1)]))


def test_transcript_round_trip_and_errors():
    _, tr = reduce_below_diagonal(P([(0, 0), (4, 0), (4, 2), (0, 2)]))
    again = ShakeTranscript.loads(tr.dumps())
    assert again == tr and again.is_consistent() and again.dumps() == tr.dumps()
    for bad in ["{", "[]", '{"steps": [{"op": "shake_axis"}]}', '{"steps": 3}']:
        with pytest.raises(MalformedTranscript):
            ShakeTranscript.loads(bad)
    with pytest.raises(MalformedTranscript):
        ShakeTranscript.loads('{"steps": [{"op": "twirl", "input": [[0,0],[1,0],[0,1]], '
                              '"output": [[0,0],[1,0],[0,1]]}]}').is_consistent()


@given(polygons)
def test_lemma32(Q):
    assert all(v >= 0 for v in lemma32_parts(Q).values())


@given(polygons, st.sampled_from([1, 2]))
def test_shake_axis_idempotent(Q, i):
    S = shake_axis(Q, i)
    assert shake_axis(S, i) == S


@settings(max_examples=25)
@given(polygons)
def test_antiblocking_reduce_postconditions(Q):
    A, U, tr = antiblocking_reduce(Q)
    assert is_antiblocking(A) and tr.is_consistent()
    assert all(v >= 0 for v in thm31_parts(Q, A, U).values())
    assert all(v >= 0 for v in lemma33_parts(A).values())
    # fixed point up to the axis swap forced when lambda_1 sits on e2; exact on the second pass
    A2 = antiblocking_reduce(A)[0]
    assert A2 in (A, swap_coordinates(A))
    assert antiblocking_reduce(A2)[0] == A2


@settings(max_examples=25)
@given(polygons)
def test_lemma51(Q):
    A0 = antiblocking_reduce(Q)[0]
    A, tr = reduce_below_diagonal(A0)
    K = tr.steps[0].output if tr.steps[0].op == "swap" else A0
    parts = lemma51_parts(K, A, tr)
    assert all(v >= 0 for v in parts.values()), parts


@given(polygons)
def test_lemma53(Q):
    assert all(v >= 0 for v in lemma53_parts(Q).values())


@given(lattice_polygons)
def test_pick_matches_counts(K):
    d = pick_data(Polygon.from_body(K))
    assert d.interior == count_points(K, True).count
    assert d.interior + d.boundary == count_points(K).count
    assert d.area == volume(K)


@given(polygons)
def test_shake_preserves_area_and_minima_order(Q):
    A, tr = shake_sequence(Q, ["e1", "e2"])
    assert A.area() == Q.area() and is_antiblocking(A)
    S, SA = central_symmetral(Q.to_body()), central_symmetral(A.to_body())
    for u in ((1, 0), (0, 1)):
        assert gauge(SA, u) <= gauge(S, u)


def test_diagonal_level():
    assert diagonal_level(P([(0, 0), (F(5, 2), 0), (0, 1)])) == 3
    assert diagonal_level(P([(0, 0), (2, 0), (0, 1)])) == 2
