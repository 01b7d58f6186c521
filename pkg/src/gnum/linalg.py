"""Exact rational vectors and matrices, and integer lattice algebra.

Vectors are tuples of :class:`fractions.Fraction`; matrices are row-major
tuples of such tuples.  Everything here is a pure function of its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FullSpan, NonInteger, RankDeficient

Rational = Fraction
Vec = tuple  # tuple[Fraction, ...]
Mat = tuple  # tuple[Vec, ...], row-major

MAX_DIM = 4


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact input")
    return Fraction(x)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def from_columns(cols) -> Mat:
    cols = [vec(c) for c in cols]
    return tuple(tuple(c[i] for c in cols) for i in range(len(cols[0])))


def columns(M: Mat) -> list[Vec]:
    return [tuple(row[j] for row in M) for j in range(len(M[0]))]


def transpose(M: Mat) -> Mat:
    return tuple(zip(*M)) if M else ()


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(t, u) -> Vec:
    return tuple(t * a for a in u)


def matmul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(dot(r, c) for c in Bt) for r in A)


def matvec(A: Mat, v) -> Vec:
    return tuple(dot(r, v) for r in A)


def is_integral(xs) -> bool:
    return all(Fraction(x).denominator == 1 for x in xs)


def is_integral_matrix(M: Mat) -> bool:
    return all(is_integral(r) for r in M)


def _row_reduce(M):
    """Gauss-Jordan elimination; returns (reduced rows, pivot columns)."""
    R = [list(r) for r in M]
    pivots = []
    row = 0
    ncols = len(R[0]) if R else 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(R)) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        p = R[row][col]
        R[row] = [x / p for x in R[row]]
        for i in range(len(R)):
            if i != row and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def rank(vectors) -> int:
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return 0
    return len(_row_reduce(vectors)[1])


def det(M: Mat) -> Fraction:
    n = len(M)
    A = [list(map(Fraction, r)) for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        p = A[c][c]
        d *= p
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def inverse(M: Mat) -> Mat:
    n = len(M)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    R, pivots = _row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise RankDeficient("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def solve(M: Mat, b) -> Vec:
    """Solve the square system M x = b exactly."""
    n = len(M)
    aug = [list(map(Fraction, r)) + [Fraction(bi)] for r, bi in zip(M, b)]
    R, pivots = _row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise RankDeficient("matrix is singular")
    return tuple(R[i][n] for i in range(n))


def gram_det_sq(vectors) -> Fraction:
    """det(G^T G) for the matrix G with the given vectors as columns."""
    vs = [vec(v) for v in vectors]
    G = tuple(tuple(dot(u, v) for v in vs) for u in vs)
    d = det(G)
    if d == 0:
        raise RankDeficient("vectors are linearly dependent")
    return d


# ---------------------------------------------------------------------------
# Integer column echelon / Hermite normal form


def _int_matrix(M) -> list[list[int]]:
    out = []
    for row in M:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise NonInteger(f"entry {x} is not integral")
            r.append(x.numerator)
        out.append(r)
    return out


def _column_echelon(A: list[list[int]]):
    """Unimodular column reduction of an integer matrix.

    Returns ``(H, U, pivot_rows)`` with ``H = A U``.  ``H`` is in column
    Hermite form: the pivot of column ``j`` sits in row ``pivot_rows[j]``,
    pivot rows increase, pivots are positive, entries to the right of a
    pivot vanish and entries to its left lie in ``[0, pivot)``.
    """
    r = len(A)
    c = len(A[0]) if r else 0
    H = [row[:] for row in A]
    U = [[int(i == j) for j in range(c)] for i in range(c)]

    def col_axpy(dst, src, q):  # col_dst -= q * col_src
        if q == 0:
            return
        for row in H:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def col_swap(i, j):
        for row in H:
            row[i], row[j] = row[j], row[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def col_neg(i):
        for row in H:
            row[i] = -row[i]
        for row in U:
            row[i] = -row[i]

    pivot_rows = []
    p = 0
    for i in range(r):
        if p == c:
            break
        while True:
            nz = [j for j in range(p, c) if H[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (abs(H[i][j]), j))
            if jmin != p:
                col_swap(p, jmin)
            done = True
            for j in range(p + 1, c):
                if H[i][j] != 0:
                    col_axpy(j, p, H[i][j] // H[i][p])
                    if H[i][j] != 0:
                        done = False
            if done:
                break
        if H[i][p] == 0:
            continue
        if H[i][p] < 0:
            col_neg(p)
        for j in range(p):
            col_axpy(j, p, H[i][j] // H[i][p])
        pivot_rows.append(i)
        p += 1
    return H, U, pivot_rows


def _as_mat(rows) -> Mat:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def hnf(M: Mat) -> tuple[Mat, Mat]:
    """Column-style Hermite normal form of an integer matrix of full column rank.

    Returns ``(H, U)`` with ``H = M U`` and ``U`` unimodular.
    """
    A = _int_matrix(M)
    H, U, piv = _column_echelon(A)
    if len(piv) < len(A[0]):
        raise RankDeficient("columns are linearly dependent")
    return _as_mat(H), _as_mat(U)


def hnf_basis(gens) -> list[Vec]:
    """Canonical basis (HNF columns) of the lattice generated by integer vectors."""
    gens = [vec(g) for g in gens]
    A = _int_matrix(from_columns(gens))
    H, _, piv = _column_echelon(A)
    return [tuple(Fraction(H[i][j]) for i in range(len(H))) for j in range(len(piv))]


@dataclass(frozen=True)
class LatticeBasis:
    vectors: tuple
    gram_det_sq: Fraction

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def ambient_dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0


def _split_extension(b_list):
    """Extend a basis of Z^n ∩ span(b_list) to a basis of Z^n.

    Returns ``(W, C)``: integer column lists with ``W`` a basis of the
    saturated sublattice and ``W + C`` a basis of Z^n.
    """
    bs = [vec(b) for b in b_list]
    if not bs:
        raise RankDeficient("empty vector list")
    n = len(bs[0])
    Bt = _int_matrix(bs)  # k x n, rows are the b_i
    _, U, piv = _column_echelon(Bt)
    k = len(bs)
    if len(piv) < k:
        raise RankDeficient("vectors are linearly dependent")
    # b^T U = [H' | 0]  =>  b = U^{-T} [H'^T; 0]
    V = transpose(inverse(_as_mat(U)))
    cols = columns(V)
    return cols[:k], cols[k:], n


def saturate(b_list) -> LatticeBasis:
    """Basis of Z^n ∩ span(b_list), in canonical HNF form."""
    W, _, _ = _split_extension(b_list)
    basis = hnf_basis(W)
    return LatticeBasis(tuple(basis), gram_det_sq(basis))


def orthogonal_projector(W) -> Mat:
    """Matrix of the orthogonal projection onto span(W)^⊥."""
    W = [vec(w) for w in W]
    n = len(W[0])
    G = tuple(tuple(dot(u, v) for v in W) for u in W)
    Gi = inverse(G)
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for a in range(len(W)):
        for b in range(len(W)):
            g = Gi[a][b]
            if g == 0:
                continue
            for i in range(n):
                for j in range(n):
                    P[i][j] -= W[a][i] * g * W[b][j]
    return tuple(tuple(r) for r in P)


def projected_lattice_basis(b_list) -> LatticeBasis:
    """Canonical basis of the orthogonal projection of Z^n onto span(b_list)^⊥."""
    W, C, n = _split_extension(b_list)
    if not C:
        raise FullSpan("b_list spans R^n; the projected lattice is {0}")
    P = orthogonal_projector(W)
    d = det(tuple(tuple(dot(u, v) for v in W) for u in W))
    # d * P is integral, so HNF of the scaled images is a canonical integer basis
    scaled = [scale(d, matvec(P, c)) for c in C]
    basis = [scale(1 / d, h) for h in hnf_basis(scaled)]
    return LatticeBasis(tuple(basis), gram_det_sq(basis))
