import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gnum.body import Body
from gnum.errors import Degenerate

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion, printed in the summary."""
    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# strategies

coords = st.integers(min_value=-6, max_value=6)
small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def _body_or_reject(points):
    try:
        return Body.from_vertices(points)
    except Degenerate:
        return None


point2 = st.tuples(coords, coords)
point3 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))

lattice_polygons = st.lists(point2, min_size=3, max_size=8).map(_body_or_reject).filter(lambda b: b is not None)
symmetric_polygons = (
    st.lists(point2, min_size=2, max_size=4)
    .map(lambda ps: _body_or_reject(ps + [(-x, -y) for x, y in ps]))
    .filter(lambda b: b is not None)
)
rational_polygons = (
    st.lists(st.tuples(small_rationals, small_rationals), min_size=3, max_size=6)
    .map(_body_or_reject).filter(lambda b: b is not None)
)
bodies3d = st.lists(point3, min_size=4, max_size=7).map(_body_or_reject).filter(lambda b: b is not None)


@st.composite
def boxes(draw, dim=None, max_side=4):
    n = draw(st.integers(1, 3)) if dim is None else dim
    lo = [draw(st.integers(-2, 2)) for _ in range(n)]
    sides = [draw(st.integers(1, max_side)) for _ in range(n)]
    return Body.box(lo, [a + s for a, s in zip(lo, sides)])


F = Fraction
