"""Planar Blaschke shakings, the anti-blocking reduction and the diagonal operator T."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .body import Body, chord_length, support
from .errors import (Degenerate, MalformedTranscript, NonLatticePolygon, NotAntiBlocking,
                     Orientation)
from .hull import hull_2d
from .invariants import successive_minima
from .linalg import format_rational, hnf, parse_rational, transpose, vec


@dataclass(frozen=True)
class Polygon:
    """Strictly convex CCW vertex list, rotated to start at the lexicographically least vertex."""

    vertices: tuple

    @classmethod
    def from_points(cls, points) -> "Polygon":
        ring = hull_2d([vec(p) for p in points])
        if len(ring) < 3:
            raise Degenerate("polygon needs three non-collinear points")
        k = ring.index(min(ring))
        return cls(tuple(ring[k:] + ring[:k]))

    @classmethod
    def from_body(cls, K: Body) -> "Polygon":
        if K.dim != 2:
            raise ValueError("polygon needs a 2D body")
        return cls.from_points(K.vertices)

    def to_body(self) -> Body:
        return Body.from_vertices(self.vertices)

    def area(self) -> Fraction:
        vs = self.vertices
        s = sum(vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[(k + 1) % len(vs)][0] * vs[k][1] for k in range(len(vs)))
        return Fraction(s) / 2

    def to_json(self):
        return [[format_rational(x) for x in v] for v in self.vertices]

    @classmethod
    def from_json(cls, data) -> "Polygon":
        return cls.from_points([[parse_rational(str(x)) for x in v] for v in data])


def as_polygon(P) -> Polygon:
    if isinstance(P, Polygon):
        return P
    if isinstance(P, Body):
        return Polygon.from_body(P)
    return Polygon.from_points(P)


# ---------------------------------------------------------------------------
# transcripts


@dataclass(frozen=True)
class ShakeStep:
    op: str  # "shake_axis" | "shake_line" | "unimodular" | "swap"
    input: Polygon
    output: Polygon
    direction: Optional[tuple] = None
    axis: Optional[int] = None
    level: Optional[int] = None  # diagonal x1 + x2 = level
    matrix: Optional[tuple] = None

    def to_json(self) -> dict:
        d = {"op": self.op, "input": self.input.to_json(), "output": self.output.to_json()}
        if self.direction is not None:
            d["direction"] = [format_rational(x) for x in self.direction]
        if self.axis is not None:
            d["axis"] = self.axis
        if self.level is not None:
            d["level"] = self.level
        if self.matrix is not None:
            d["matrix"] = [[format_rational(x) for x in r] for r in self.matrix]
        return d

    @classmethod
    def from_json(cls, d) -> "ShakeStep":
        try:
            direction = tuple(parse_rational(str(x)) for x in d["direction"]) if "direction" in d else None
            matrix = tuple(tuple(parse_rational(str(x)) for x in r) for r in d["matrix"]) if "matrix" in d else None
            return cls(d["op"], Polygon.from_json(d["input"]), Polygon.from_json(d["output"]),
                       direction, d.get("axis"), d.get("level"), matrix)
        except (KeyError, TypeError, ValueError, Degenerate) as exc:
            raise MalformedTranscript(f"bad step: {exc}") from exc

    def replay(self) -> Polygon:
        if self.op == "shake_axis":
            return shake_axis(self.input, self.axis)
        if self.op == "shake_line":
            return shake_line(self.input, self.direction, self.level)
        if self.op == "unimodular":
            return apply_matrix(self.input, self.matrix)
        if self.op == "swap":
            return swap_coordinates(self.input)
        raise MalformedTranscript(f"unknown op {self.op!r}")


@dataclass(frozen=True)
class ShakeTranscript:
    steps: tuple = field(default_factory=tuple)
    kind: str = "shake"

    def to_json(self) -> dict:
        return {"kind": self.kind, "steps": [s.to_json() for s in self.steps]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, d) -> "ShakeTranscript":
        if not isinstance(d, dict) or not isinstance(d.get("steps"), list):
            raise MalformedTranscript("transcript needs a 'steps' list")
        return cls(tuple(ShakeStep.from_json(s) for s in d["steps"]), d.get("kind", "shake"))

    @classmethod
    def loads(cls, text: str) -> "ShakeTranscript":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedTranscript(f"invalid JSON: {exc}") from exc
        return cls.from_json(d)

    def is_consistent(self) -> bool:
        """Every step's output equals its replayed operation, and steps chain."""
        for k, s in enumerate(self.steps):
            if s.replay() != s.output:
                return False
            if k and self.steps[k - 1].output != s.input:
                return False
        return True


# ---------------------------------------------------------------------------
# elementary maps


def apply_matrix(P, U) -> Polygon:
    P = as_polygon(P)
    U = tuple(vec(r) for r in U)
    return Polygon.from_points([tuple(sum(U[i][j] * v[j] for j in range(2)) for i in range(2)) for v in P.vertices])


def swap_coordinates(P) -> Polygon:
    P = as_polygon(P)
    return Polygon.from_points([(v[1], v[0]) for v in P.vertices])


def _profile(P: Polygon, along: int):
    """Breakpoints s (coordinate ``1 - along``) with chord lengths f(s) in direction ``along``."""
    K = P.to_body()
    other = 1 - along
    out = []
    for s in sorted({v[other] for v in P.vertices}):
        base = [Fraction(0), Fraction(0)]
        base[other] = s
        out.append((s, chord_length(K, base, along)))
    return out


def shake_axis(P, i: int) -> Polygon:
    """sh_{e_i}: every fiber parallel to e_i is moved to start on e_i^⊥."""
    P = as_polygon(P)
    if i not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    along = i - 1
    pts = []
    for s, f in _profile(P, along):
        for t in (Fraction(0), f):
            pts.append((t, s) if along == 0 else (s, t))
    return Polygon.from_points(pts)


def _direction(u) -> int:
    u = tuple(Fraction(x) for x in u)
    if u == (-1, 0):
        return 0
    if u == (0, -1):
        return 1
    raise ValueError("shake_line supports u = -e1 or -e2 only")


def shake_line(P, u, m) -> Polygon:
    """sh_{u,D} against D = {x1 + x2 = m}: fibers along u start on D."""
    P = as_polygon(P)
    along = _direction(u)
    m = Fraction(m)
    if support(P.to_body(), (1, 1)) > m:
        raise Orientation(f"polygon reaches beyond the diagonal x1 + x2 = {format_rational(m)}")
    pts = []
    for s, f in _profile(P, along):
        for t in (m - s, m - s - f):
            pts.append((t, s) if along == 0 else (s, t))
    return Polygon.from_points(pts)


def diagonal_level(P) -> int:
    """Least integer m with P inside {x1 + x2 <= m}."""
    h = support(as_polygon(P).to_body(), (1, 1))
    return -((-h.numerator) // h.denominator)


# ---------------------------------------------------------------------------
# predicates


def is_antiblocking(P) -> bool:
    P = as_polygon(P)
    if any(x < 0 for v in P.vertices for x in v):
        return False
    K = P.to_body()
    for i in range(2):
        top = max(v[i] for v in P.vertices)
        # the section on e_j^⊥ (j != i) must be the full shadow [0, top]
        if min(v[i] for v in P.vertices) != 0 or chord_length(K, (0, 0), i) != top:
            return False
    return True


@dataclass(frozen=True)
class PickData:
    area: Fraction
    boundary: int
    interior: int


def pick_data(P) -> PickData:
    P = as_polygon(P)
    vs = P.vertices
    if not all(Fraction(x).denominator == 1 for v in vs for x in v):
        raise NonLatticePolygon("pick data needs integer vertices")
    area = P.area()
    boundary = sum(
        gcd(int(vs[(k + 1) % len(vs)][0] - vs[k][0]), int(vs[(k + 1) % len(vs)][1] - vs[k][1]))
        for k in range(len(vs))
    )
    interior = area - Fraction(boundary, 2) + 1
    return PickData(area, boundary, int(interior))


# ---------------------------------------------------------------------------
# pipelines


def shake_sequence(P, ops) -> tuple:
    """Apply a list of axis shakings, e.g. ``["e1", "e2"]``."""
    P = as_polygon(P)
    steps = []
    for op in ops:
        op = op.strip()
        if op not in ("e1", "e2"):
            raise ValueError(f"unknown shaking {op!r}; expected e1 or e2")
        i = int(op[1])
        Q = shake_axis(P, i)
        steps.append(ShakeStep("shake_axis", P, Q, direction=(Fraction(i == 1), Fraction(i == 2)), axis=i))
        P = Q
    return P, ShakeTranscript(tuple(steps), "shake")


def antiblocking_reduce(K):
    """Unimodular pre-transform, then sh_{e1} and sh_{e2}; returns (A, U, transcript)."""
    P = as_polygon(K)
    mins = successive_minima(P.to_body())
    V = mins.witnesses  # rows are the witness vectors v_i
    _, W = hnf(V)       # V W = H lower triangular, so W^T [v_1 v_2] is upper triangular
    U = transpose(W)
    steps = []
    if U != ((1, 0), (0, 1)):
        Q = apply_matrix(P, U)
        steps.append(ShakeStep("unimodular", P, Q, matrix=U))
        P = Q
    A, tr = shake_sequence(P, ["e1", "e2"])
    steps.extend(tr.steps)
    return A, U, ShakeTranscript(tuple(steps), "antiblocking")


def reduce_below_diagonal(K):
    """A = sh_{e2} sh_{-e1,D} sh_{-e2,D} (K) for an anti-blocking K; returns (A, transcript).

    Coordinates are first swapped when needed so that |e_1| = λ_1 in cs(K).
    """
    P = as_polygon(K)
    if not is_antiblocking(P):
        raise NotAntiBlocking("diagonal reduction needs an anti-blocking polygon")
    from .body import central_symmetral, gauge

    S = central_symmetral(P.to_body())
    steps = []
    if gauge(S, (1, 0)) > gauge(S, (0, 1)):
        Q = swap_coordinates(P)
        steps.append(ShakeStep("swap", P, Q))
        P = Q
    m = diagonal_level(P)
    for u in ((0, -1), (-1, 0)):
        u = tuple(Fraction(x) for x in u)
        Q = shake_line(P, u, m)
        steps.append(ShakeStep("shake_line", P, Q, direction=u, level=m))
        P = Q
    Q = shake_axis(P, 2)
    steps.append(ShakeStep("shake_axis", P, Q, direction=(Fraction(0), Fraction(1)), axis=2))
    return Q, ShakeTranscript(tuple(steps), "diagonal")
