"""Exact convex hulls in dimensions 1-3.

Input points are rational; internally they are scaled by a common
denominator so every orientation predicate is evaluated in integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import Degenerate, DimensionCap


@dataclass(frozen=True)
class Hull:
    vertices: tuple  # lexicographically sorted rational points
    facets: tuple  # normalized integer rows (a, b) meaning a . x <= b
    facet_vertices: tuple  # per facet, indices into ``vertices``


def _scale_to_int(points):
    D = 1
    for p in points:
        for x in p:
            D = lcm(D, Fraction(x).denominator)
    ints = [tuple(int(Fraction(x) * D) for x in p) for p in points]
    return ints, D


def normalize_row(a, b):
    """Scale ``a . x <= b`` to the primitive integer row with the same half-space."""
    a = [Fraction(x) for x in a]
    b = Fraction(b)
    D = 1
    for x in a + [b]:
        D = lcm(D, x.denominator)
    ia = [int(x * D) for x in a]
    ib = int(b * D)
    g = 0
    for x in ia + [ib]:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero row")
    return tuple(x // g for x in ia), ib // g


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_2d_indices(ints):
    """Andrew's monotone chain on integer points; CCW indices, no collinear points."""
    order = sorted(set(range(len(ints))), key=lambda i: ints[i])
    # dedupe identical points, keep first index
    uniq = []
    seen = set()
    for i in order:
        if ints[i] not in seen:
            seen.add(ints[i])
            uniq.append(i)
    if len(uniq) < 3:
        return uniq
    lower, upper = [], []
    for i in uniq:
        while len(lower) >= 2 and _cross2(ints[lower[-2]], ints[lower[-1]], ints[i]) <= 0:
            lower.pop()
        lower.append(i)
    for i in reversed(uniq):
        while len(upper) >= 2 and _cross2(ints[upper[-2]], ints[upper[-1]], ints[i]) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def hull_2d(points):
    """CCW vertex list (rational) of the convex hull of planar points."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    ints, _ = _scale_to_int(pts)
    idx = hull_2d_indices(ints)
    return [pts[i] for i in idx]


def _hull_1d(pts):
    lo, hi = min(pts), max(pts)
    if lo == hi:
        raise Degenerate("all points coincide")
    verts = (lo, hi)
    facets = (normalize_row((-1,), -lo[0]), normalize_row((1,), hi[0]))
    return Hull(verts, facets, ((0,), (1,)))


def _hull_2d_full(pts):
    ints, D = _scale_to_int(pts)
    idx = hull_2d_indices(ints)
    if len(idx) < 3:
        raise Degenerate("points are collinear")
    ring = [pts[i] for i in idx]
    verts = tuple(sorted(ring))
    pos = {v: k for k, v in enumerate(verts)}
    facets, fverts = [], []
    for k in range(len(ring)):
        p, q = ring[k], ring[(k + 1) % len(ring)]
        a = (q[1] - p[1], p[0] - q[0])
        facets.append(normalize_row(a, a[0] * p[0] + a[1] * p[1]))
        fverts.append((pos[p], pos[q]))
    return Hull(verts, tuple(facets), tuple(fverts))


def _sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


def hull_3d_triangles(ints):
    """Incremental hull; returns (outward-oriented triangles, used point indices)."""
    uniq = []
    seen = set()
    for i, p in enumerate(ints):
        if p not in seen:
            seen.add(p)
            uniq.append(i)
    if len(uniq) < 4:
        raise Degenerate("fewer than four distinct points")
    i0 = uniq[0]
    p0 = ints[i0]
    i1 = next((i for i in uniq if ints[i] != p0), None)
    u = _sub3(ints[i1], p0)
    i2 = next((i for i in uniq if _cross3(u, _sub3(ints[i], p0)) != (0, 0, 0)), None)
    if i2 is None:
        raise Degenerate("points are collinear")
    nrm = _cross3(u, _sub3(ints[i2], p0))
    i3 = next((i for i in uniq if _dot3(nrm, _sub3(ints[i], p0)) != 0), None)
    if i3 is None:
        raise Degenerate("points are coplanar")
    if _dot3(nrm, _sub3(ints[i3], p0)) > 0:
        i1, i2 = i2, i1
    faces = {}

    def add_face(a, b, c):
        n = _cross3(_sub3(ints[b], ints[a]), _sub3(ints[c], ints[a]))
        faces[(a, b, c)] = (n, _dot3(n, ints[a]))

    # orientation so that the remaining vertex is strictly inside each face
    add_face(i0, i1, i2)
    add_face(i0, i3, i1)
    add_face(i1, i3, i2)
    add_face(i2, i3, i0)
    start = {i0, i1, i2, i3}
    for i in uniq:
        if i in start:
            continue
        p = ints[i]
        visible = [f for f, (n, off) in faces.items() if _dot3(n, p) > off]
        if not visible:
            continue
        vis_edges = set()
        for a, b, c in visible:
            vis_edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for (a, b) in vis_edges if (b, a) not in vis_edges]
        for f in visible:
            del faces[f]
        for a, b in horizon:
            add_face(a, b, i)
    return faces


def _hull_3d_full(pts):
    ints, D = _scale_to_int(pts)
    faces = hull_3d_triangles(ints)
    planes = {}
    for (a, b, c), (n, off) in faces.items():
        key = _primitive(n + (off,))
        planes.setdefault(key, set()).update((a, b, c))
    vert_idx = set()
    plane_polys = []
    for key, members in planes.items():
        n = key[:3]
        k = max(range(3), key=lambda j: abs(n[j]))
        keep = [j for j in range(3) if j != k]
        members = sorted(members)
        proj = [(ints[m][keep[0]], ints[m][keep[1]]) for m in members]
        ring = [members[j] for j in hull_2d_indices(proj)]
        vert_idx.update(ring)
        plane_polys.append((key, ring))
    verts = tuple(sorted(pts[i] for i in vert_idx))
    pos = {v: k for k, v in enumerate(verts)}
    facets, fverts = [], []
    for key, ring in sorted(plane_polys):
        n = key[:3]
        # plane in scaled coordinates: n . (D x) <= off
        facets.append(normalize_row(tuple(D * x for x in n), key[3]))
        fverts.append(tuple(pos[pts[i]] for i in ring))
    return Hull(verts, tuple(facets), tuple(fverts))


def convex_hull(points) -> Hull:
    """Exact hull of rational points in dimension 1, 2 or 3 (full-dimensional)."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise Degenerate("no points")
    n = len(pts[0])
    if n == 1:
        return _hull_1d(pts)
    if n == 2:
        return _hull_2d_full(pts)
    if n == 3:
        return _hull_3d_full(pts)
    raise DimensionCap(f"convex hull is implemented for n <= 3, got n = {n}")
