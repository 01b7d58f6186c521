"""Convex polytopes in dimension n <= 4 with exact predicates and measures."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial

from . import lp
from .errors import Degenerate, DimensionCap, MalformedBody, NotSymmetric
from .hull import Hull, convex_hull, hull_2d, normalize_row
from .linalg import MAX_DIM, det, format_rational, inverse, matvec, solve, vec

HULL_DIM = 3


class Body:
    """A bounded full-dimensional convex polytope.

    Carries a vertex list (lexicographically sorted), an inequality system of
    primitive integer rows ``a . x <= b``, or both.  Missing representations
    are derived on demand where the dimension allows it (n <= 3).
    """

    def __init__(self, dim: int, vertices=None, rows=None):
        if not 1 <= dim <= MAX_DIM:
            raise DimensionCap(f"dimension {dim} outside 1..{MAX_DIM}")
        if vertices is None and rows is None:
            raise ValueError("a body needs vertices or rows")
        self.dim = dim
        self._vertices = vertices
        self._rows = rows

    # -- construction -----------------------------------------------------

    @classmethod
    def from_vertices(cls, points, strict_input: bool = False) -> "Body":
        pts = [vec(p) for p in points]
        if not pts:
            raise Degenerate("no points")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise MalformedBody("points of mixed dimension")
        if n <= HULL_DIM:
            h = convex_hull(pts)
            if strict_input and len(set(pts)) != len(h.vertices):
                raise MalformedBody("input contains points that are not vertices of their hull")
            body = cls(n, h.vertices, h.facets)
            body.__dict__["hull"] = h
            return body
        return cls(n, tuple(sorted(set(pts))), None)

    @classmethod
    def from_hrep(cls, A, b) -> "Body":
        A = [vec(r) for r in A]
        b = vec(b)
        if not A:
            raise Degenerate("empty inequality system")
        n = len(A[0])
        rows = _dedupe_rows(zip(A, b))
        if not _bounded(rows, n):
            raise Degenerate("inequality system is unbounded")
        if n <= HULL_DIM:
            verts = _enumerate_vertices(rows, n)
            if not verts:
                raise Degenerate("inequality system is empty")
            return cls.from_vertices(verts)
        Af = [tuple(map(Fraction, a)) for a, _ in rows]
        bf = [Fraction(c) for _, c in rows]
        try:
            margin = lp.interior_margin(Af, bf)
        except lp.Infeasible:
            raise Degenerate("inequality system is empty")
        if margin <= 0:
            raise Degenerate("inequality system has empty interior")
        return cls(n, None, tuple(rows))

    @classmethod
    def box(cls, lo, hi) -> "Body":
        lo, hi = vec(lo), vec(hi)
        n = len(lo)
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append(normalize_row(e, hi[i]))
            e[i] = -1
            rows.append(normalize_row(e, -lo[i]))
        if n <= HULL_DIM:
            return cls.from_vertices(itertools.product(*zip(lo, hi)))
        return cls(n, tuple(sorted(itertools.product(*zip(lo, hi)))), tuple(sorted(rows)))

    @classmethod
    def cube(cls, n: int, m) -> "Body":
        return cls.box([0] * n, [m] * n)

    @classmethod
    def simplex(cls, n: int, m=1) -> "Body":
        """The dilated standard simplex m * conv{0, e_1, ..., e_n}."""
        m = Fraction(m)
        pts = [tuple(Fraction(0) for _ in range(n))]
        for i in range(n):
            pts.append(tuple(m if j == i else Fraction(0) for j in range(n)))
        if n <= HULL_DIM:
            return cls.from_vertices(pts)
        rows = [normalize_row([1] * n, m)] + [normalize_row([-int(j == i) for j in range(n)], 0) for i in range(n)]
        return cls(n, tuple(sorted(pts)), tuple(sorted(rows)))

    # -- derived data -----------------------------------------------------

    @cached_property
    def hull(self) -> Hull:
        if self.dim > HULL_DIM:
            raise DimensionCap("hull needs n <= 3")
        return convex_hull(self.vertices)

    @property
    def has_vrep(self) -> bool:
        return self._vertices is not None or self.dim <= HULL_DIM

    @property
    def vertices(self) -> tuple:
        if self._vertices is None:
            if self.dim > HULL_DIM:
                raise DimensionCap("vertex enumeration needs n <= 3")
            self._vertices = tuple(sorted(_enumerate_vertices(self._rows, self.dim)))
        return self._vertices

    @property
    def rows(self) -> tuple:
        """Primitive integer inequalities ``(a, b)`` with ``a . x <= b``."""
        if self._rows is None:
            self._rows = self.hull.facets
        return self._rows

    @cached_property
    def bounding_box(self) -> tuple:
        if self.has_vrep:
            vs = self.vertices
            return tuple(min(v[i] for v in vs) for i in range(self.dim)), tuple(max(v[i] for v in vs) for i in range(self.dim))
        lo, hi = [], []
        for i in range(self.dim):
            e = [Fraction(int(j == i)) for j in range(self.dim)]
            hi.append(support(self, e))
            lo.append(-support(self, [-x for x in e]))
        return tuple(lo), tuple(hi)

    def is_symmetric(self) -> bool:
        if self.has_vrep:
            vs = set(self.vertices)
            return all(tuple(-x for x in v) in vs for v in vs)
        rs = set(self.rows)
        return all((tuple(-x for x in a), b) in rs for a, b in rs)

    # -- transformations --------------------------------------------------

    def translate(self, t) -> "Body":
        t = vec(t)
        if self.has_vrep:
            return Body.from_vertices([tuple(x + s for x, s in zip(v, t)) for v in self.vertices])
        rows = [normalize_row(a, b + sum(ai * ti for ai, ti in zip(a, t))) for a, b in self.rows]
        return Body(self.dim, None, tuple(sorted(rows)))

    def scale(self, r) -> "Body":
        r = Fraction(r)
        if r <= 0:
            raise ValueError("scale factor must be positive")
        if self.has_vrep:
            return Body.from_vertices([tuple(r * x for x in v) for v in self.vertices])
        return Body(self.dim, None, tuple(sorted(normalize_row(a, r * b) for a, b in self.rows)))

    def linear_image(self, U) -> "Body":
        """Image under the invertible linear map x -> U x."""
        U = tuple(vec(r) for r in U)
        if self.has_vrep:
            return Body.from_vertices([matvec(U, v) for v in self.vertices])
        Ui = inverse(U)
        rows = []
        for a, b in self.rows:
            na = tuple(sum(Fraction(a[i]) * Ui[i][j] for i in range(self.dim)) for j in range(self.dim))
            rows.append(normalize_row(na, b))
        return Body(self.dim, None, tuple(sorted(rows)))

    # -- identity / io ----------------------------------------------------

    def _key(self):
        if self.has_vrep:
            return (self.dim, "v", self.vertices)
        return (self.dim, "h", tuple(sorted(self.rows)))

    def __eq__(self, other):
        return isinstance(other, Body) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.has_vrep:
            vs = ", ".join("(" + ", ".join(format_rational(x) for x in v) + ")" for v in self.vertices)
            return f"Body(dim={self.dim}, vertices=[{vs}])"
        return f"Body(dim={self.dim}, rows={len(self.rows)})"

    def to_dict(self) -> dict:
        if self.has_vrep:
            return {"dim": self.dim, "vertices": [[format_rational(x) for x in v] for v in self.vertices]}
        rows = sorted(self.rows)
        return {
            "dim": self.dim,
            "A": [[format_rational(x) for x in a] for a, _ in rows],
            "b": [format_rational(b) for _, b in rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Body":
        try:
            if "vertices" in d:
                body = cls.from_vertices(d["vertices"], strict_input=True)
            elif "A" in d and "b" in d:
                body = cls.from_hrep(d["A"], d["b"])
            else:
                raise MalformedBody("body needs 'vertices' or 'A'/'b'")
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedBody(str(exc)) from exc
        if "dim" in d and d["dim"] != body.dim:
            raise MalformedBody(f"declared dim {d['dim']} but data has dim {body.dim}")
        return body


def dumps_body(body: Body) -> str:
    return json.dumps(body.to_dict(), sort_keys=True)


def loads_body(text: str) -> Body:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedBody(f"invalid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise MalformedBody("body JSON must be an object")
    return Body.from_dict(d)


@dataclass(frozen=True)
class Shadow:
    retained_coords: tuple
    body: Body


# ---------------------------------------------------------------------------
# helpers on inequality rows


def _dedupe_rows(pairs):
    out = set()
    for a, b in pairs:
        if all(x == 0 for x in a):
            if b < 0:
                raise Degenerate("inequality 0 <= b with b < 0")
            continue
        out.add(normalize_row(a, b))
    return sorted(out)


def _bounded(rows, n) -> bool:
    A = [tuple(map(Fraction, a)) for a, _ in rows]
    zero = [Fraction(0)] * len(A)
    box = [(-1, 1)] * n
    for i in range(n):
        for s in (1, -1):
            c = [Fraction(s * int(j == i)) for j in range(n)]
            out = lp.maximize(c, A, zero, box)
            if out.status != lp.Status.OPTIMAL or out.optimum != 0:
                return False
    return True


def _enumerate_vertices(rows, n):
    verts = set()
    A = [tuple(Fraction(x) for x in a) for a, _ in rows]
    b = [Fraction(c) for _, c in rows]
    for combo in itertools.combinations(range(len(rows)), n):
        M = tuple(A[i] for i in combo)
        if det(M) == 0:
            continue
        x = solve(M, [b[i] for i in combo])
        if all(sum(ai * xi for ai, xi in zip(a, x)) <= bi for a, bi in zip(A, b)):
            verts.add(x)
    return sorted(verts)


def _row_value(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


# ---------------------------------------------------------------------------
# operations


def contains(K: Body, x, strict: bool = False) -> bool:
    x = vec(x)
    if len(x) != K.dim:
        raise ValueError("dimension mismatch")
    if K._rows is not None or K.dim <= HULL_DIM:
        if strict:
            return all(_row_value(a, x) < b for a, b in K.rows)
        return all(_row_value(a, x) <= b for a, b in K.rows)
    if strict:
        raise DimensionCap("strict membership for a 4-dimensional V-rep body")
    # x = sum mu_i v_i, sum mu_i = 1, mu >= 0
    vs = K.vertices
    E = [tuple(v[i] for v in vs) for i in range(K.dim)] + [tuple(Fraction(1) for _ in vs)]
    f = list(x) + [Fraction(1)]
    rows, rhs = lp.equality_rows(E, f)
    out = lp.maximize([0] * len(vs), rows, rhs, [(0, None)] * len(vs))
    return out.status == lp.Status.OPTIMAL


def support(K: Body, u) -> Fraction:
    """Exact maximum of <u, x> over K."""
    u = vec(u)
    if K.has_vrep:
        return max(_row_value(u, v) for v in K.vertices)
    A = [tuple(map(Fraction, a)) for a, _ in K.rows]
    out = lp.maximize(u, A, [Fraction(b) for _, b in K.rows])
    return out.optimum


def central_symmetral(K: Body) -> Body:
    """cs(K) = (K - K) / 2."""
    if not K.has_vrep:
        raise DimensionCap("central symmetral of a 4-dimensional H-rep body")
    vs = K.vertices
    half = Fraction(1, 2)
    cands = {tuple(half * (a - b) for a, b in zip(v, w)) for v in vs for w in vs}
    return Body.from_vertices(cands)


def gauge(S: Body, z, method: str = "facets") -> Fraction:
    """|z|_S = min{r >= 0 : z in r S} for an origin-symmetric S."""
    z = vec(z)
    if not S.is_symmetric():
        raise NotSymmetric("gauge needs an origin-symmetric body")
    if all(x == 0 for x in z):
        return Fraction(0)
    if method == "facets":
        best = Fraction(0)
        for a, b in S.rows:
            v = Fraction(_row_value(a, z), b)
            if v > best:
                best = v
        return best
    if method == "lp":
        vs = S.vertices
        E = [tuple(v[i] for v in vs) for i in range(S.dim)]
        rows, rhs = lp.equality_rows(E, z)
        out = lp.minimize([1] * len(vs), rows, rhs, [(0, None)] * len(vs))
        return out.optimum
    raise ValueError(f"unknown gauge method {method!r}")


def _interval(rows):
    lo = hi = None
    for a, b in rows:
        a = a[0]
        if a > 0:
            v = Fraction(b) / a
            hi = v if hi is None or v < hi else hi
        elif a < 0:
            v = Fraction(b) / a
            lo = v if lo is None or v > lo else lo
        elif b < 0:
            return Fraction(0)
    if lo is None or hi is None:
        raise Degenerate("unbounded slice")
    return max(Fraction(0), hi - lo)


def _volume_rows(rows, n) -> Fraction:
    if n == 1:
        return _interval(rows)
    total = Fraction(0)
    for idx, (a, b) in enumerate(rows):
        k = max(range(n), key=lambda j: (abs(a[j]), j))
        ak = Fraction(a[k])
        sub = set()
        empty = False
        for jdx, (c, d) in enumerate(rows):
            if jdx == idx:
                continue
            ck = Fraction(c[k])
            nc = [Fraction(c[j]) - ck * a[j] / ak for j in range(n) if j != k]
            nd = Fraction(d) - ck * b / ak
            if all(x == 0 for x in nc):
                if nd < 0:
                    empty = True
                    break
                continue
            sub.add(normalize_row(nc, nd))
        if empty or not sub:
            continue
        facet = _volume_rows(sorted(sub), n - 1)
        if facet:
            total += Fraction(b) * facet / abs(ak)
    return total / n


def volume(K: Body) -> Fraction:
    """Exact n-volume by recursive facet decomposition of the inequality system."""
    if K._rows is None and K.dim > HULL_DIM:
        raise DimensionCap("volume of a 4-dimensional V-rep body")
    v = _volume_rows(list(K.rows), K.dim)
    if v <= 0:
        raise Degenerate("body has zero volume")
    return v


def triangulation_volume(K: Body) -> Fraction:
    """Independent volume through a fan triangulation of the hull (n <= 3)."""
    n = K.dim
    h = K.hull
    vs = h.vertices
    if n == 1:
        return vs[-1][0] - vs[0][0]
    if n == 2:
        ring = hull_2d(vs)
        s = Fraction(0)
        for k in range(len(ring)):
            (x1, y1), (x2, y2) = ring[k], ring[(k + 1) % len(ring)]
            s += x1 * y2 - x2 * y1
        return abs(s) / 2
    if n == 3:
        apex = vs[0]
        total = Fraction(0)
        for poly in h.facet_vertices:
            if 0 in poly:
                continue
            p0 = vs[poly[0]]
            for j in range(1, len(poly) - 1):
                p1, p2 = vs[poly[j]], vs[poly[j + 1]]
                M = tuple(tuple(p[i] - apex[i] for i in range(3)) for p in (p0, p1, p2))
                total += abs(det(M))
        return total / factorial(3)
    raise DimensionCap("triangulation oracle needs n <= 3")


def shadow(K: Body, dropped) -> Shadow:
    """Orthogonal projection onto the coordinates not listed in ``dropped`` (0-based)."""
    dropped = frozenset(dropped)
    keep = tuple(i for i in range(K.dim) if i not in dropped)
    if not keep:
        raise ValueError("cannot drop every coordinate")
    if len(keep) > HULL_DIM:
        raise DimensionCap("shadow of dimension above 3")
    if not K.has_vrep:
        raise DimensionCap("shadow needs a vertex representation")
    pts = {tuple(v[i] for i in keep) for v in K.vertices}
    return Shadow(keep, Body.from_vertices(pts))


def chord_length(K: Body, base, i: int) -> Fraction:
    """Length of K ∩ (base + R e_i); the i-th coordinate of ``base`` is ignored."""
    base = vec(base)
    rows = []
    for a, b in K.rows:
        rest = sum(Fraction(a[j]) * base[j] for j in range(K.dim) if j != i)
        rows.append(((a[i],), Fraction(b) - rest))
    try:
        return _interval(rows)
    except Degenerate:
        return Fraction(0)
