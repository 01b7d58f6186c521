import itertools
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gnum.errors import Infeasible
from gnum.lp import LinearProgram, Sense, Status, interior_margin, maximize, minimize, solve

SQUARE_A = [(1, 0), (-1, 0), (0, 1), (0, -1)]
SQUARE_B = [1, 0, 1, 0]
TRI_A = [(2, 3), (-1, 0), (0, -1)]
TRI_B = [6, 0, 0]


def test_interval():
    out = maximize((1,), [(1,), (-1,)], (1, 0))
    assert out.status == Status.OPTIMAL and out.optimum == 1


def test_triangle_matches_vertex_enumeration():
    out = maximize((1, 1), TRI_A, TRI_B)
    verts = [(0, 0), (3, 0), (0, 2)]
    assert out.optimum == max(x + y for x, y in verts) == 3
    assert out.witness == (3, 0)


def test_infeasible_and_unbounded():
    assert maximize((1,), [(1,), (-1,)], (1, -2)).status == Status.INFEASIBLE
    assert maximize((1,), [(-1,)], (0,)).status == Status.UNBOUNDED


def test_bounds_and_minimize():
    out = minimize((1, 1), [(-1, -1)], (-1,), bounds=((0, None), (F(1, 2), 2)))
    assert out.optimum == 1
    lp = LinearProgram((1,), [], [], Sense.MAXIMIZE, ((None, 5),))
    assert solve(lp).optimum == 5


def test_interior_margin_examples():
    assert interior_margin(SQUARE_A, SQUARE_B, ([(1, 0), (0, 1)], (F(1, 2), F(1, 2)))) == F(1, 2)
    assert interior_margin(SQUARE_A, SQUARE_B, ([(1, 0), (0, 1)], (0, F(1, 2)))) == 0
    assert interior_margin(TRI_A, TRI_B, ([(1, 0)], (1,))) > 0
    with pytest.raises(Infeasible):
        interior_margin(SQUARE_A, SQUARE_B, ([(1, 0)], (2,)))


def test_interior_margin_slice_oracle():
    # oracle: on x = 1 the slack vector is (6 - 2 - 3y, 1, y); maximise the minimum over a fine grid
    best = max(min(F(4) - 3 * y, F(1), y) for y in (F(k, 600) for k in range(0, 1201)))
    assert interior_margin(TRI_A, TRI_B, ([(1, 0)], (1,))) == best == 1


rows2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=5)


@given(rows2, st.lists(st.integers(1, 6), min_size=5, max_size=5), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_optimal_witness_exact_and_matches_scipy(rows, rhs, c):
    from scipy.optimize import linprog

    A = SQUARE_A + [tuple(r) for r in rows]
    b = [3, 3, 3, 3] + rhs[: len(rows)]
    out = maximize(c, A, b)
    ref = linprog([-x for x in c], A_ub=A, b_ub=b, bounds=[(None, None)] * 2, method="highs")
    assert out.status == Status.OPTIMAL and ref.status == 0
    for a, bi in zip(A, b):
        assert sum(F(x) * w for x, w in zip(a, out.witness)) <= bi
    assert sum(F(x) * w for x, w in zip(c, out.witness)) == out.optimum
    assert abs(float(out.optimum) + ref.fun) < 1e-7


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=2, max_size=4),
       st.lists(st.integers(1, 8), min_size=4, max_size=4),
       st.tuples(st.integers(1, 4), st.integers(1, 4)))
def test_duality(rows, rhs, c):
    # primal max c.x, A x <= b, x >= 0; dual min b.y, A^T y >= c, y >= 0
    A = [tuple(r) for r in rows]
    assume(all(any(r[j] for r in A) for j in range(2)))
    b = rhs[: len(A)]
    m = len(A)
    primal = maximize(c, A, b, bounds=((0, None), (0, None)))
    dual = minimize(b, [tuple(-A[i][j] for i in range(m)) for j in range(2)], [-x for x in c],
                    bounds=tuple((0, None) for _ in range(m)))
    assert primal.status == dual.status == Status.OPTIMAL
    assert primal.optimum == dual.optimum


def test_deterministic_witness():
    A = [(1, 1), (-1, 0), (0, -1)]
    outs = {maximize((1, 1), A, (2, 0, 0)).witness for _ in range(3)}
    assert len(outs) == 1


def test_degenerate_cycling_instance_terminates():
    # a classical degenerate instance where naive pivoting cycles
    A = [(F(1, 2), F(-11, 2), F(-5, 2), 9), (F(1, 2), F(-3, 2), F(-1, 2), 1), (1, 0, 0, 0)]
    b = [0, 0, 1]
    out = maximize((10, -57, -9, -24), A, b, bounds=tuple((0, None) for _ in range(4)))
    assert out.status == Status.OPTIMAL and out.optimum == 1


def test_small_grid_oracle():
    # brute force over integer points of a box for an integral-vertex polytope
    c = (2, -1)
    out = maximize(c, SQUARE_A, [2, 2, 2, 2])
    assert out.optimum == max(2 * x - y for x, y in itertools.product(range(-2, 3), repeat=2))
