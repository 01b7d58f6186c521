"""Lattice functionals: point counts, projected counts, successive minima, covering radius."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Union

import numpy as np

from . import lp
from .body import Body, central_symmetral, volume
from .errors import DimensionCap, RankDeficient, SizeCap, ToleranceUnreachable
from .linalg import LatticeBasis, inverse, projected_lattice_basis, rank, vec


@dataclass(frozen=True)
class ScanConfig:
    max_points: int = 5_000_000
    max_shell: int = 400


DEFAULT_SCAN = ScanConfig()


@dataclass(frozen=True)
class CountResult:
    count: int
    open: bool
    lattice: Union[str, LatticeBasis] = "standard"


def _fibers(K: Body, open_: bool, cfg: ScanConfig):
    """Yield (prefix, lo, hi) integer ranges along the last axis."""
    rows = K.rows
    lo_box, hi_box = K.bounding_box
    ranges = [range(_ceil(lo), _floor(hi) + 1) for lo, hi in zip(lo_box[:-1], hi_box[:-1])]
    total = 1
    for r in ranges:
        total *= max(len(r), 0)
    if total > cfg.max_points:
        raise SizeCap(f"scan of {total} fibers exceeds cap {cfg.max_points}")
    pos = [(a[:-1], a[-1], b) for a, b in rows if a[-1] > 0]
    neg = [(a[:-1], a[-1], b) for a, b in rows if a[-1] < 0]
    flat = [(a[:-1], b) for a, b in rows if a[-1] == 0]
    for prefix in itertools.product(*ranges):
        ok = True
        for a, b in flat:
            s = b - sum(x * y for x, y in zip(a, prefix))
            if s < 0 or (open_ and s == 0):
                ok = False
                break
        if not ok:
            continue
        hi = lo = None
        for a, al, b in pos:
            s = b - sum(x * y for x, y in zip(a, prefix))
            t = (-((-s) // al)) - 1 if open_ else s // al
            if hi is None or t < hi:
                hi = t
        for a, al, b in neg:
            s = b - sum(x * y for x, y in zip(a, prefix))
            t = s // al + 1 if open_ else -((-s) // al)
            if lo is None or t > lo:
                lo = t
        if lo is not None and hi is not None and hi >= lo:
            yield prefix, lo, hi


def _floor(q) -> int:
    q = Fraction(q)
    return q.numerator // q.denominator


def _ceil(q) -> int:
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


def count_points(K: Body, open: bool = False, cfg: ScanConfig = DEFAULT_SCAN) -> CountResult:
    """G(K), or G(int K) when ``open``; exact scan of the integer bounding box."""
    total = sum(hi - lo + 1 for _, lo, hi in _fibers(K, open, cfg))
    return CountResult(total, open)


def lattice_points(K: Body, open: bool = False, cfg: ScanConfig = DEFAULT_SCAN):
    for prefix, lo, hi in _fibers(K, open, cfg):
        for t in range(lo, hi + 1):
            yield prefix + (t,)


def lattice_dimension(K: Body, cfg: ScanConfig = DEFAULT_SCAN) -> int:
    """Dimension of the affine hull of K ∩ Z^n (-1 when empty)."""
    pts = list(lattice_points(K, False, cfg))
    if not pts:
        return -1
    p0 = pts[0]
    return rank([tuple(x - y for x, y in zip(p, p0)) for p in pts[1:]]) if len(pts) > 1 else 0


# ---------------------------------------------------------------------------
# projected lattices


def projection_coordinates(basis: LatticeBasis, x) -> tuple:
    """Coefficients c with basis . c = x | span(basis); exact."""
    B = basis.vectors
    G = tuple(tuple(sum(u * v for u, v in zip(p, q)) for q in B) for p in B)
    Gi = inverse(G)
    rhs = [sum(u * Fraction(v) for u, v in zip(p, x)) for p in B]
    return tuple(sum(Gi[i][j] * rhs[j] for j in range(len(B))) for i in range(len(B)))


def count_projected(K: Body, b_list, open: bool = False, method: str = "hull",
                    cfg: ScanConfig = DEFAULT_SCAN) -> CountResult:
    """Points of the projected lattice Z^n | span(b_list)^⊥ in K | span(b_list)^⊥.

    ``open`` counts points of the projection of int K instead.  ``method``
    selects between counting in the hull of the projected vertices
    (``"hull"``) and a per-candidate LP feasibility test (``"lp"``).
    """
    n = K.dim
    bs = [vec(b) for b in b_list]
    if n > 3:
        raise DimensionCap("projected counts need n <= 3")
    if not bs:
        return count_points(K, open, cfg)
    if rank(bs) < len(bs):
        raise RankDeficient("b_list is linearly dependent")
    if len(bs) == n:
        return CountResult(1, open, "zero")
    basis = projected_lattice_basis(bs)
    coords = {projection_coordinates(basis, v) for v in K.vertices}
    Q = Body.from_vertices(coords)
    if method == "hull":
        return CountResult(count_points(Q, open, cfg).count, open, basis)
    if method != "lp":
        raise ValueError(f"unknown method {method!r}")
    A = [tuple(map(Fraction, a)) for a, _ in K.rows]
    b = [Fraction(c) for _, c in K.rows]
    lo, hi = Q.bounding_box
    count = 0
    k = len(bs)
    for c in itertools.product(*(range(_floor(l), _ceil(h) + 1) for l, h in zip(lo, hi))):
        y = [sum(ci * v[i] for ci, v in zip(c, basis.vectors)) for i in range(n)]
        # x = y + sum_j s_j b_j must satisfy A x <= b
        As = [tuple(sum(a[i] * bj[i] for i in range(n)) for bj in bs) for a in A]
        rhs = [bi - sum(a[i] * y[i] for i in range(n)) for a, bi in zip(A, b)]
        if open:
            try:
                hit = lp.interior_margin(As, rhs) > 0
            except lp.Infeasible:
                hit = False
        else:
            out = lp.maximize([0] * k, As, rhs)
            hit = out.status == lp.Status.OPTIMAL
        count += hit
    return CountResult(count, open, basis)


# ---------------------------------------------------------------------------
# successive minima


@dataclass(frozen=True)
class MinimaResult:
    minima: tuple
    witnesses: tuple


def _canonical_shell(r: int, n: int):
    """Integer z with |z|_inf = r whose first nonzero entry is positive."""
    for prefix in itertools.product(range(-r, r + 1), repeat=n - 1):
        m = max((abs(x) for x in prefix), default=0)
        lasts = range(-r, r + 1) if m == r else (-r, r)
        for t in lasts:
            z = prefix + (t,)
            first = next((x for x in z if x != 0), 0)
            if first > 0:
                yield z


def symmetric_gauge_fn(S: Body):
    """Fast exact gauge of an origin-symmetric body via its facet rows."""
    rows = [(a, b) for a, b in S.rows]

    def g(z):
        bn, bd = 0, 1
        for a, b in rows:
            v = sum(x * y for x, y in zip(a, z))
            if v * bd > bn * b:
                bn, bd = v, b
        return Fraction(bn, bd)

    return g


def _greedy(cands, n):
    chosen, vals = [], []
    for gval, _, z in cands:
        if rank(chosen + [z]) > len(chosen):
            chosen.append(z)
            vals.append(gval)
            if len(chosen) == n:
                break
    return vals, chosen


def successive_minima(K: Body, cfg: ScanConfig = DEFAULT_SCAN) -> MinimaResult:
    """λ_1..λ_n of K (through cs(K)) with lexicographically least witnesses."""
    n = K.dim
    if n > 3:
        raise DimensionCap("successive minima need n <= 3")
    S = central_symmetral(K)
    g = symmetric_gauge_fn(S)
    M = max(max(abs(x) for x in v) for v in S.vertices)
    cands = []
    r = 0
    while True:
        r += 1
        if r > cfg.max_shell:
            raise SizeCap(f"successive minima search exceeded shell {cfg.max_shell}")
        # ties: shorter Euclidean length first, then lexicographic
        cands.extend((g(z), sum(x * x for x in z), z) for z in _canonical_shell(r, n))
        cands.sort()
        vals, chosen = _greedy(cands, n)
        # every unexplored z has gauge >= (r + 1) / M
        if len(chosen) == n and vals[-1] < Fraction(r + 1) / M:
            return MinimaResult(tuple(vals), tuple(tuple(Fraction(x) for x in z) for z in chosen))


# ---------------------------------------------------------------------------
# covering radius


@dataclass(frozen=True)
class CoveringConfig:
    tol: Fraction = Fraction(1, 1024)
    max_depth: int = 18  # per axis
    max_cells: int = 3_000_000
    chunk: int = 4096


DEFAULT_COVERING = CoveringConfig()


@dataclass(frozen=True)
class CoveringRadiusResult:
    """Certified bracket ``lower <= mu(K) <= upper``.

    ``uncovered_witness`` is a point p with ``p not in z + mu K'`` for all
    integers z and every ``mu < lower``.  ``cover_certificate`` lists leaves
    ``(depths, index, z)`` of an axis-wise dyadic subdivision of [0, 1]^n:
    the box with sides ``[index_i / 2^depths_i, (index_i + 1) / 2^depths_i]``
    lies in ``z + upper K'`` where ``K' = K - shift``.
    """

    lower: Fraction
    upper: Fraction
    uncovered_witness: tuple
    cover_certificate: tuple = field(repr=False)
    shift: tuple = field(repr=False, default=())


class _Gauge:
    """Integer form of the gauge of K - c: gamma(x) = max_j N_j . x / D."""

    def __init__(self, K: Body, c):
        gs = []
        for a, b in K.rows:
            beta = Fraction(b) - sum(Fraction(ai) * ci for ai, ci in zip(a, c))
            gs.append(tuple(Fraction(ai) / beta for ai in a))
        D = 1
        for gv in gs:
            for x in gv:
                D = lcm(D, x.denominator)
        self.D = D
        self.N = [tuple(int(x * D) for x in gv) for gv in gs]
        self.G = np.array([[float(x) for x in gv] for gv in gs])
        self.Gabs = np.abs(self.G)
        self.L = max(sum(abs(x) for x in gv) for gv in gs)


def _compress(cand, keep):
    counts = keep.sum(axis=1)
    k = max(int(counts.max()), 1)
    order = np.argsort(~keep, axis=1, kind="stable")[:, :k]
    new = np.take_along_axis(cand, order, axis=1)
    valid = np.take_along_axis(keep, order, axis=1)
    return np.where(valid, new, -1)


class _Search:
    """Float branch and bound over axis-wise dyadic boxes.

    Each box is split along the axis whose halves have the smallest upper
    bound, so plateaus of the hole function stay coarse along flat directions.
    """

    def __init__(self, gam: _Gauge, Z: np.ndarray, n: int, cfg: CoveringConfig):
        self.gam, self.Z, self.n, self.cfg = gam, Z, n, cfg
        self.grid = np.array(list(itertools.product((0, 1, 2), repeat=n)), dtype=np.int64)
        pos = {tuple(g): k for k, g in enumerate(self.grid.tolist())}
        self.center = pos[(1,) * n]
        self.halves = []  # per (axis, side): grid indices of the half-box corners
        for a in range(n):
            for s in (0, 1):
                ids = [pos[g] for g in map(tuple, self.grid.tolist())
                       if g[a] in (s, s + 1) and all(g[b] in (0, 2) for b in range(n) if b != a)]
                self.halves.append(np.array(ids))

    def _evaluate(self, idx, dep, cand):
        G = self.gam.G
        valid = cand >= 0
        ZG = self.Z[np.where(valid, cand, 0)] @ G.T  # N x k x m
        w = 2.0 ** -dep
        lo = idx * w
        V = np.empty((len(self.grid),) + cand.shape)
        for t, g in enumerate(self.grid):
            P = lo + g * (w / 2)
            V[t] = ((P @ G.T)[:, None, :] - ZG).max(axis=2)
        V[:, ~valid] = np.inf
        return V, w

    def run(self, tol: float):
        n, cfg = self.n, self.cfg
        idx = np.zeros((1, n), dtype=np.int64)
        dep = np.zeros((1, n), dtype=np.int64)
        cand = np.arange(len(self.Z), dtype=np.int64)[None, :]
        LB = -np.inf
        best = []
        leaves = []
        processed = 0
        while len(idx):
            processed += len(idx)
            if processed > cfg.max_cells:
                raise ToleranceUnreachable(f"covering radius search exceeded {cfg.max_cells} cells")
            out = [self._step(idx[i:i + cfg.chunk], dep[i:i + cfg.chunk], cand[i:i + cfg.chunk])
                   for i in range(0, len(idx), cfg.chunk)]
            for phi_best, pts, *_ in out:
                LB = max(LB, phi_best)
                best.extend(pts)
            best.sort(key=lambda t: -t[0])
            best = best[:8]
            nxt = []
            for _, _, cidx, cdep, ccand, ub, zb in out:
                done = ub <= LB + tol
                for t in np.nonzero(done)[0]:
                    leaves.append((tuple(cdep[t].tolist()), tuple(cidx[t].tolist()), tuple(zb[t].tolist())))
                keep = ~done
                if keep.any():
                    nxt.append((cidx[keep], cdep[keep], ccand[keep]))
            if not nxt:
                break
            idx = np.concatenate([a for a, _, _ in nxt])
            dep = np.concatenate([b for _, b, _ in nxt])
            k = max(c.shape[1] for _, _, c in nxt)
            cand = np.concatenate([np.pad(c, ((0, 0), (0, k - c.shape[1])), constant_values=-1) for _, _, c in nxt])
        return leaves, best

    def _step(self, idx, dep, cand):
        n, cfg = self.n, self.cfg
        V, w = self._evaluate(idx, dep, cand)
        N = len(idx)
        phi = V.min(axis=2)  # grid x N
        flat = int(phi.argmax())
        t_best, c_best = divmod(flat, N)
        pts = [(float(phi[t_best, c_best]), tuple(dep[c_best].tolist()), tuple(idx[c_best].tolist()),
                tuple(self.grid[t_best].tolist()))]
        scores = np.full((n, N), np.inf)
        ubs = np.empty((n, 2, N))
        zs = np.empty((n, 2, N), dtype=np.int64)
        for a in range(n):
            for s in (0, 1):
                cm = V[self.halves[2 * a + s]].max(axis=0)  # N x k
                j = cm.argmin(axis=1)
                ubs[a, s] = cm[np.arange(N), j]
                zs[a, s] = cand[np.arange(N), j]
            ok = dep[:, a] < cfg.max_depth
            # the sum rewards splits that clear one half even if the other keeps its bound
            scores[a] = np.where(ok, ubs[a, 0] + ubs[a, 1], np.inf)
        # ties go to the coarsest axis
        order = np.lexsort((np.arange(n)[:, None].repeat(N, 1), dep.T, scores), axis=0)
        axis = order[0]
        if np.isinf(scores[axis, np.arange(N)]).any():
            raise ToleranceUnreachable(f"covering radius not certified within depth {cfg.max_depth}")
        # candidate filter from the parent centre: gamma(p - z) >= gamma(c - z) - R on the box
        R = (self.gam.Gabs @ (w / 2).T).max(axis=0)  # N
        vc = V[self.center]
        cidx, cdep, ccand, cub, cz = [], [], [], [], []
        rows = np.arange(N)
        for s in (0, 1):
            ci = idx.copy()
            cd = dep.copy()
            ci[rows, axis] = 2 * idx[rows, axis] + s
            cd[rows, axis] += 1
            ub = ubs[axis, s, rows]
            keep = (vc - R[:, None] <= ub[:, None] + 1e-9) & (cand >= 0)
            cidx.append(ci)
            cdep.append(cd)
            ccand.append(_compress(cand, keep))
            cub.append(ub)
            cz.append(self.Z[zs[axis, s, rows]])
        k = max(c.shape[1] for c in ccand)
        ccand = [np.pad(c, ((0, 0), (0, k - c.shape[1])), constant_values=-1) for c in ccand]
        return (float(phi.max()), pts, np.concatenate(cidx), np.concatenate(cdep), np.concatenate(ccand),
                np.concatenate(cub), np.concatenate(cz))


def _candidate_box(K: Body, c, gam: _Gauge) -> np.ndarray:
    # rounding p to the nearest integer shows mu <= L / 2, so only these z matter
    mu0 = gam.L / 2
    lo_box, hi_box = K.bounding_box
    zr = []
    for i in range(K.dim):
        zlo = _floor(-mu0 * (hi_box[i] - c[i]))
        zhi = _ceil(1 - mu0 * (lo_box[i] - c[i]))
        zr.append(range(zlo, zhi + 1))
    return np.array(list(itertools.product(*zr)), dtype=np.int64)


def covering_radius(K: Body, tol=None, cfg: CoveringConfig = DEFAULT_COVERING) -> CoveringRadiusResult:
    """Certified interval for the least mu with mu K + Z^n = R^n."""
    tol = Fraction(cfg.tol if tol is None else tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = K.dim
    if n > 3:
        raise DimensionCap("covering radius needs n <= 3")
    verts = K.vertices
    c = tuple(sum(v[i] for v in verts) / len(verts) for i in range(n))
    gam = _Gauge(K, c)
    Z = _candidate_box(K, c, gam)
    search = _Search(gam, Z, n, cfg)
    target = float(tol) * (1 - 1e-6)
    for _ in range(4):
        leaves, best = search.run(target)
        upper = _leaves_upper(gam, leaves, n)
        lower, witness = max(_point_value(gam, pt, Z) for pt in best)
        if upper - lower <= tol:
            return CoveringRadiusResult(lower, upper, witness, tuple(leaves), c)
        target /= 4
    raise ToleranceUnreachable("exact re-verification could not reach the tolerance")


def _scaled_corners(dep, index, z, n):
    D = max(dep)
    s = 1 << D
    out = []
    for o in itertools.product((0, 1), repeat=n):
        out.append(tuple((i + oi) * (1 << (D - d)) - s * zi for i, oi, d, zi in zip(index, o, dep, z)))
    return out, D


def _leaves_upper(gam: _Gauge, leaves, n) -> Fraction:
    """Exact max over leaves and corners of gamma(corner - z)."""
    N = np.array(gam.N, dtype=object)
    best = None
    fast = max(abs(x) for row in gam.N for x in row) < (1 << 20)
    Nf = np.array(gam.N, dtype=np.int64) if fast else None
    by_depth = {}
    for dep, index, z in leaves:
        X, D = _scaled_corners(dep, index, z, n)
        by_depth.setdefault(D, []).append(X)
    for D, groups in by_depth.items():
        X = np.array(groups, dtype=object if not fast or D > 30 else np.int64)  # L x 2^n x n
        M = Nf if X.dtype == np.int64 else N
        v = (X @ M.T).max()
        q = Fraction(int(v), gam.D << D)
        if best is None or q > best:
            best = q
    return best


def _point_value(gam: _Gauge, pt, Z):
    """Exact min_z gamma(p - z) over the candidate box at a grid point of a box."""
    _, dep, index, g = pt
    D = max(dep) + 1
    s = 1 << D
    P = tuple((2 * i + gi) * (1 << (D - d - 1)) for i, gi, d in zip(index, g, dep))
    best = None
    rows = gam.N
    for z in Z.tolist():
        X = [p - s * zi for p, zi in zip(P, z)]
        v = max(sum(a * x for a, x in zip(row, X)) for row in rows)
        if best is None or v < best:
            best = v
    return Fraction(best, gam.D * s), tuple(Fraction(p, s) for p in P)


def verify_cover_certificate(K: Body, res: CoveringRadiusResult) -> bool:
    """Re-check every leaf of the certificate with plain Fractions."""
    from .body import contains

    n = K.dim
    Kmu = K.translate(tuple(-x for x in res.shift)).scale(res.upper)
    for dep, index, z in res.cover_certificate:
        for o in itertools.product((0, 1), repeat=n):
            p = tuple(Fraction(i + oi, 1 << d) - zi for i, oi, d, zi in zip(index, o, dep, z))
            if not contains(Kmu, p):
                return False
    return True


def covered_volume(res: CoveringRadiusResult) -> Fraction:
    """Total volume of the certificate boxes (1 when they tile the unit cube)."""
    return sum((Fraction(1, 1 << sum(dep)) for dep, _, _ in res.cover_certificate), Fraction(0))


def witness_is_uncovered(K: Body, res: CoveringRadiusResult, mu) -> bool:
    """Exact check that the witness avoids mu (K - shift) + Z^n (meaningful for mu < lower).

    The witness lives in the frame of the shifted body used by the search.
    """
    mu = Fraction(mu)
    from .body import contains

    Kmu = K.translate(tuple(-x for x in res.shift)).scale(mu)
    lo, hi = Kmu.bounding_box
    p = res.uncovered_witness
    ranges = [range(_floor(pi - h), _ceil(pi - l) + 1) for pi, l, h in zip(p, lo, hi)]
    for z in itertools.product(*ranges):
        if contains(Kmu, tuple(pi - zi for pi, zi in zip(p, z))):
            return False
    return True


def find_rich_translate(K: Body, grid_resolution: int) -> Optional[tuple]:
    """First t on the grid {0, 1/g, ..., (g-1)/g}^n with vol(K) <= G(K + t)."""
    g = int(grid_resolution)
    if g < 1:
        raise ValueError("grid_resolution must be positive")
    vol = volume(K)
    for t in itertools.product(range(g), repeat=K.dim):
        tv = tuple(Fraction(x, g) for x in t)
        if count_points(K.translate(tv)).count >= vol:
            return tv
    return None
