"""Exact rational linear programming: two-phase tableau simplex with Bland's rule."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import Infeasible
from .linalg import vec


class Sense(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Optimise ``objective . x`` subject to ``constraint_matrix x <= rhs``.

    ``variable_bounds`` is an optional per-variable list of ``(lower, upper)``
    pairs, either of which may be ``None``; variables without bounds are free.
    """

    objective: tuple
    constraint_matrix: tuple
    rhs: tuple
    sense: Sense = Sense.MAXIMIZE
    variable_bounds: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "objective", vec(self.objective))
        object.__setattr__(self, "constraint_matrix", tuple(vec(r) for r in self.constraint_matrix))
        object.__setattr__(self, "rhs", vec(self.rhs))
        if len(self.constraint_matrix) != len(self.rhs):
            raise ValueError("constraint rows and rhs differ in length")
        for r in self.constraint_matrix:
            if len(r) != len(self.objective):
                raise ValueError("constraint row has wrong width")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    optimum: Optional[Fraction] = None
    witness: Optional[tuple] = None


def _pivot(T, basis, r, c):
    row = T[r]
    p = row[c]
    if p != 1:
        T[r] = row = [x / p for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, ncols):
    """Maximise the objective held in the last row (as reduced costs ``-c``).

    The tableau rows are ``[coefficients..., rhs]``; the objective row stores
    ``-c_j`` so that a negative entry signals an improving column.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def _standard_form(lp: LinearProgram):
    """Rewrite with nonnegative variables; returns (A, b, c, recover)."""
    n = lp.num_vars
    bounds = lp.variable_bounds or ((None, None),) * n
    # each original variable x_j = shift_j + sum_k coef * y_k
    subst = []
    ny = 0
    extra_rows = []
    for j, (lo, hi) in enumerate(bounds):
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if lo is not None:
            subst.append((lo, [(ny, Fraction(1))]))
            if hi is not None:
                extra_rows.append(({ny: Fraction(1)}, hi - lo))
            ny += 1
        elif hi is not None:
            subst.append((hi, [(ny, Fraction(-1))]))
            ny += 1
        else:
            subst.append((Fraction(0), [(ny, Fraction(1)), (ny + 1, Fraction(-1))]))
            ny += 2
    A, b = [], []
    for row, rhs in zip(lp.constraint_matrix, lp.rhs):
        new = [Fraction(0)] * ny
        shift = Fraction(0)
        for j, a in enumerate(row):
            if a == 0:
                continue
            s, terms = subst[j]
            shift += a * s
            for k, coef in terms:
                new[k] += a * coef
        A.append(new)
        b.append(rhs - shift)
    for coeffs, rhs in extra_rows:
        new = [Fraction(0)] * ny
        for k, v in coeffs.items():
            new[k] = v
        A.append(new)
        b.append(rhs)
    sign = 1 if lp.sense == Sense.MAXIMIZE else -1
    c = [Fraction(0)] * ny
    const = Fraction(0)
    for j, cj in enumerate(lp.objective):
        s, terms = subst[j]
        const += cj * s
        for k, coef in terms:
            c[k] += sign * cj * coef

    def recover(y):
        return tuple(s + sum((coef * y[k] for k, coef in terms), Fraction(0)) for s, terms in subst)

    return A, b, c, recover


def solve(lp: LinearProgram) -> LpOutcome:
    A, b, c, recover = _standard_form(lp)
    m, ny = len(A), len(c)
    # columns: y (ny) | slack/surplus (m) | artificial (one per negative rhs row)
    neg = [i for i in range(m) if b[i] < 0]
    na = len(neg)
    width = ny + m + na
    T = []
    basis = []
    art_of = {}
    for i in range(m):
        s = 1 if b[i] >= 0 else -1
        row = [s * a for a in A[i]] + [Fraction(0)] * (m + na) + [s * b[i]]
        row[ny + i] = Fraction(s)
        if s < 0:
            k = ny + m + len(art_of)
            art_of[i] = k
            row[k] = Fraction(1)
            basis.append(k)
        else:
            basis.append(ny + i)
        T.append(row)
    if na:
        # phase 1: maximise -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        for i, k in art_of.items():
            obj[k] = Fraction(1)
        for i in art_of:
            obj = [o - t for o, t in zip(obj, T[i])]
        T.append(obj)
        _simplex(T, basis, width)
        if T[-1][-1] != 0:
            return LpOutcome(Status.INFEASIBLE)
        T.pop()
        arts = set(art_of.values())
        # drive artificials out of the basis
        for r in range(m):
            if basis[r] in arts:
                c_in = next((j for j in range(ny + m) if T[r][j] != 0), None)
                if c_in is not None:
                    _pivot(T, basis, r, c_in)
        keep = [r for r in range(m) if basis[r] not in arts]
        T = [T[r][: ny + m] + [T[r][-1]] for r in keep]
        basis = [basis[r] for r in keep]
        width = ny + m
    obj = [-cj for cj in c] + [Fraction(0)] * (width - ny) + [Fraction(0)]
    for r, bv in enumerate(basis):
        f = obj[bv]
        if f != 0:
            obj = [o - f * t for o, t in zip(obj, T[r])]
    T.append(obj)
    if not _simplex(T, basis, width):
        return LpOutcome(Status.UNBOUNDED)
    y = [Fraction(0)] * width
    for r, bv in enumerate(basis):
        y[bv] = T[r][-1]
    x = recover(y[:ny])
    value = sum((cj * xj for cj, xj in zip(lp.objective, x)), Fraction(0))
    return LpOutcome(Status.OPTIMAL, value, x)


def maximize(c, A, b, bounds=None) -> LpOutcome:
    return solve(LinearProgram(c, A, b, Sense.MAXIMIZE, bounds))


def minimize(c, A, b, bounds=None) -> LpOutcome:
    return solve(LinearProgram(c, A, b, Sense.MINIMIZE, bounds))


def equality_rows(E: Sequence, f: Sequence):
    """Encode ``E x = f`` as a pair of inequality blocks."""
    rows, rhs = [], []
    for e, v in zip(E, f):
        e = vec(e)
        rows.append(e)
        rhs.append(Fraction(v))
        rows.append(tuple(-x for x in e))
        rhs.append(-Fraction(v))
    return rows, rhs


def interior_margin(A, b, equalities=None) -> Fraction:
    """Largest ``t`` such that ``A x <= b - t`` has a solution on the equality slice.

    ``equalities`` is an optional pair ``(E, f)`` meaning ``E x = f``.  The
    result is positive iff the slice meets the interior of ``{A x <= b}``.
    """
    A = [vec(r) for r in A]
    b = vec(b)
    n = len(A[0])
    rows = [r + (Fraction(1),) for r in A]
    rhs = list(b)
    if equalities is not None:
        E, f = equalities
        er, ef = equality_rows(E, f)
        rows += [r + (Fraction(0),) for r in er]
        rhs += ef
    obj = (Fraction(0),) * n + (Fraction(1),)
    out = solve(LinearProgram(obj, rows, rhs, Sense.MAXIMIZE))
    if out.status == Status.INFEASIBLE:
        raise Infeasible("equality slice misses the polyhedron")
    if out.status == Status.UNBOUNDED:
        raise ValueError("polyhedron is unbounded")
    if out.optimum < 0:
        raise Infeasible("equality slice misses the polyhedron")
    return out.optimum
