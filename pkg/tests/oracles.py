"""Slow independent oracles shared by the unit and acceptance tests."""
import itertools
from fractions import Fraction as F


def shoelace(points):
    """Area of the convex hull of planar points via angular sort around the centroid."""
    import math

    pts = sorted(set(tuple(F(x) for x in p) for p in points))
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    # hull by brute force: keep points that are extreme
    hull = [p for p in pts if _is_extreme(p, pts)]
    hull.sort(key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    s = sum(hull[k][0] * hull[(k + 1) % len(hull)][1] - hull[(k + 1) % len(hull)][0] * hull[k][1]
            for k in range(len(hull)))
    return abs(s) / 2


def _is_extreme(p, pts):
    """p is a vertex iff no triangle of other points (or segment) contains it."""
    others = [q for q in pts if q != p]
    for a, b in itertools.combinations(others, 2):
        if _on_segment(p, a, b):
            return False
    for a, b, c in itertools.combinations(others, 3):
        if _in_triangle(p, a, b, c):
            return False
    return True


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b):
    return _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and \
        min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _in_triangle(p, a, b, c):
    d1, d2, d3 = _cross(a, b, p), _cross(b, c, p), _cross(c, a, p)
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


def vertex_ratio_gauge(vertices, z):
    """Gauge of z in a symmetric polygon: min a + b over z = a p + b q with a, b >= 0."""
    z = tuple(F(x) for x in z)
    if not any(z):
        return F(0)
    best = None
    vs = [tuple(F(x) for x in v) for v in vertices]
    for p, q in itertools.combinations(vs, 2):
        d = p[0] * q[1] - p[1] * q[0]
        if d == 0:
            for v in (p, q):
                # z on the ray through v
                if v[0] * z[1] - v[1] * z[0] == 0:
                    k = z[0] / v[0] if v[0] else z[1] / v[1]
                    if k >= 0:
                        best = k if best is None or k < best else best
            continue
        a = (z[0] * q[1] - z[1] * q[0]) / d
        b = (p[0] * z[1] - p[1] * z[0]) / d
        if a >= 0 and b >= 0:
            best = a + b if best is None or a + b < best else best
    return best


def brute_count(K, strict=False):
    from gnum.body import contains

    lo, hi = K.bounding_box
    import math

    box = [range(math.ceil(l), math.floor(h) + 1) for l, h in zip(lo, hi)]
    return sum(contains(K, x, strict=strict) for x in itertools.product(*box))
