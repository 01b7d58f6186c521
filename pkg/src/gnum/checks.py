"""Named inequality checks, suites over generated instances and conjecture search.

Every check is read in the orientation ``lhs <= rhs`` and reports
``margin = rhs - lhs``.  Property suites report ``lhs = 0`` and ``rhs`` equal
to the smallest sub-margin, where a boolean sub-property scores 0 when it
holds and -1 when it fails.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import ceil, factorial, floor
from typing import Callable, Optional

import mpmath

from .body import (Body, central_symmetral, chord_length, contains, dumps_body, gauge, shadow, support,
                   triangulation_volume, volume)
from .errors import GeometryError, ToleranceUnreachable
from .generators import GeneratorSpec, SplitMix64, generate
from .invariants import (count_points, count_projected, covering_radius, lattice_dimension,
                         successive_minima)
from .linalg import format_rational, gram_det_sq, inverse, projected_lattice_basis, rank, transpose
from .shaking import (Polygon, antiblocking_reduce, diagonal_level, is_antiblocking, pick_data,
                      reduce_below_diagonal, shake_axis, shake_line)

PASS, FAIL, INAPPLICABLE, INCONCLUSIVE = "pass", "fail", "inapplicable", "interval-inconclusive"

CONJECTURES = frozenset({"conj_floor", "conj2_upper", "conj2_lower", "conj2_sym"})


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    instance_id: str
    applicable: bool
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    margin: Optional[Fraction]
    verdict: str
    critical: bool = False
    details: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        fmt = lambda q: "" if q is None else format_rational(q)  # noqa: E731
        return {
            "check_id": self.check_id,
            "instance_id": self.instance_id,
            "applicable": str(self.applicable).lower(),
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "margin": fmt(self.margin),
            "verdict": self.verdict,
        }

    def to_json(self) -> dict:
        d = self.row()
        d["applicable"] = self.applicable
        d["critical"] = self.critical
        d["details"] = self.details
        return d


@dataclass(frozen=True)
class CheckParams:
    """Knobs shared by the registry.

    ``b_mode`` is ``"unit"`` (b_i = e_i) or ``"random"`` (entries in
    ``[-b_range, b_range]``); ``t`` overrides the random translate of
    claim3_translate.  Covering radius checks start at ``coarse_tol`` and
    refine down to ``tol`` and then ``tol / 16`` before giving up.
    """

    b_mode: str = "unit"
    b_range: int = 3
    b: Optional[tuple] = None
    t: Optional[tuple] = None
    eps: tuple = (Fraction(1, 2), Fraction(1))
    tol: Fraction = Fraction(1, 1024)
    coarse_tol: Fraction = Fraction(1, 64)
    lemma32_samples: int = 3
    seed: int = 0


DEFAULT_PARAMS = CheckParams()


# ---------------------------------------------------------------------------
# cached invariants per body


class Profile:
    def __init__(self, K: Body, instance_id: str = "", index: int = 0):
        self.K = K
        self.n = K.dim
        self.instance_id = instance_id
        self.index = index
        self._mu = {}

    @cached_property
    def vol(self) -> Fraction:
        return volume(self.K)

    @cached_property
    def G(self) -> int:
        return count_points(self.K).count

    @cached_property
    def G_int(self) -> int:
        return count_points(self.K, open=True).count

    @cached_property
    def minima(self):
        return successive_minima(self.K)

    @property
    def lam(self) -> tuple:
        return self.minima.minima

    @cached_property
    def symmetric(self) -> bool:
        return self.K.is_symmetric()

    @cached_property
    def lattice_dim(self) -> int:
        return lattice_dimension(self.K)

    @cached_property
    def cs(self) -> Body:
        return central_symmetral(self.K)

    @cached_property
    def polygon(self) -> Polygon:
        return Polygon.from_body(self.K)

    @cached_property
    def integral_vertices(self) -> bool:
        return all(Fraction(x).denominator == 1 for v in self.K.vertices for x in v)

    def mu(self, tol):
        tol = Fraction(tol)
        if tol not in self._mu:
            self._mu[tol] = covering_radius(self.K, tol)
        return self._mu[tol]

    @cached_property
    def antiblocking(self):
        return antiblocking_reduce(self.polygon)


def _profile_of(pr_or_body, instance_id="") -> Profile:
    return pr_or_body if isinstance(pr_or_body, Profile) else Profile(pr_or_body, instance_id)


# ---------------------------------------------------------------------------
# evaluation records


@dataclass
class _Eval:
    applicable: bool
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    details: dict = field(default_factory=dict)
    # for covering-radius checks: the same sides evaluated at the liberal end
    liberal: Optional[tuple] = None


def _na(reason: str) -> _Eval:
    return _Eval(False, details={"reason": reason})


def _prod(xs) -> Fraction:
    p = Fraction(1)
    for x in xs:
        p *= x
    return p


def _bool_margin(ok: bool) -> Fraction:
    return Fraction(0) if ok else Fraction(-1)


def _suite(parts: dict) -> _Eval:
    worst = min(parts.values())
    return _Eval(True, Fraction(0), worst, {k: format_rational(v) for k, v in parts.items()})


# ---------------------------------------------------------------------------
# Minkowski, Betke-Henk-Wills and their conjectures


def _mink2nd_lower(pr, p):
    return _Eval(True, _prod(2 / l for l in pr.lam) / factorial(pr.n), pr.vol)


def _mink2nd_upper(pr, p):
    return _Eval(True, pr.vol, _prod(2 / l for l in pr.lam))


def _bhw_lower(pr, p):
    if not pr.symmetric:
        return _na("body is not origin-symmetric")
    if pr.lam[-1] > 2:
        return _na("lambda_n > 2")
    return _Eval(True, _prod(1 / l - 1 for l in pr.lam) / factorial(pr.n), Fraction(pr.G))


def _bhw_upper(pr, p):
    if not pr.symmetric:
        return _na("body is not origin-symmetric")
    return _Eval(True, Fraction(pr.G), _prod(2 * i / l + 1 for i, l in enumerate(pr.lam, 1)))


def _conj_floor(pr, p):
    return _Eval(True, Fraction(pr.G), _prod(floor(2 / l + 1) for l in pr.lam))


def malikiosis_constant(n: int, digits: int = 40) -> Fraction:
    """Rational lower bound of (4/e) sqrt(3)^(n-1), correct to ``digits`` decimals."""
    with mpmath.workdps(digits + 20):
        c = 4 / mpmath.e * mpmath.sqrt(3) ** (n - 1)
        scaled = int(mpmath.floor(c * mpmath.mpf(10) ** digits))
    return Fraction(scaled, 10 ** digits) - Fraction(1, 10 ** digits)


def _malikiosis(pr, p):
    c = malikiosis_constant(pr.n)
    return _Eval(True, Fraction(pr.G), c * _prod(2 / l + 1 for l in pr.lam), {"constant": format_rational(c)})


def _conj2_upper(pr, p):
    return _Eval(True, Fraction(pr.G), pr.vol * _prod(1 + i * l / 2 for i, l in enumerate(pr.lam, 1)))


def _conj2_lower(pr, p):
    if pr.lam[-1] > Fraction(2, pr.n):
        return _na("lambda_n > 2/n")
    return _Eval(True, pr.vol * _prod(1 - i * l / 2 for i, l in enumerate(pr.lam, 1)), Fraction(pr.G_int))


def _conj2_sym(pr, p):
    if not pr.symmetric:
        return _na("body is not origin-symmetric")
    if pr.lam[-1] > 2:
        return _na("lambda_n > 2")
    return _Eval(True, pr.vol * _prod(1 - l / 2 for l in pr.lam), Fraction(pr.G_int))


def _thm11_upper(pr, p):
    return _Eval(True, Fraction(pr.G), pr.vol * _prod(1 + pr.n * l / 2 for l in pr.lam))


def _thm11_lower(pr, p):
    if pr.lam[-1] > Fraction(2, pr.n):
        return _na("lambda_n > 2/n")
    return _Eval(True, pr.vol * _prod(1 - pr.n * l / 2 for l in pr.lam), Fraction(pr.G_int))


def _cor12(pr, p):
    return _Eval(True, Fraction(pr.G), _prod(2 / l + pr.n for l in pr.lam))


# ---------------------------------------------------------------------------
# Davenport-type bounds


def _davenport(pr, p):
    n = pr.n
    total = pr.vol
    for k in range(1, n + 1):
        for I in itertools.combinations(range(n), k):
            total += Fraction(1) if k == n else volume(shadow(pr.K, I).body)
    return _Eval(True, Fraction(pr.G), total)


def instance_b(pr: Profile, p: CheckParams) -> tuple:
    """The vectors b_1..b_n used by the projected-lattice checks."""
    n = pr.n
    if p.b is not None:
        return tuple(tuple(Fraction(x) for x in b) for b in p.b)
    if p.b_mode == "unit":
        return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    rng = SplitMix64(p.seed ^ pr.index ^ 0xB0B)
    while True:
        bs = tuple(tuple(Fraction(rng.randint(-p.b_range, p.b_range)) for _ in range(n)) for _ in range(n))
        if rank(bs) == n:
            return bs


def _subsets(idx):
    idx = tuple(idx)
    for k in range(len(idx) + 1):
        yield from itertools.combinations(idx, k)


def _box_sides(K: Body):
    """Side lengths when K is a box [0, k_1] x ... x [0, k_n], else None."""
    lo, hi = K.bounding_box
    if any(x != 0 for x in lo) or not K.has_vrep:
        return None
    return hi if set(K.vertices) == set(Body.box(lo, hi).vertices) else None


def _rev_davenport(pr, p):
    bs = instance_b(pr, p)
    terms = {}
    for I in _subsets(range(pr.n)):
        terms[I] = count_projected(pr.K, [bs[i] for i in I], open=True).count
    details = {"b": [[format_rational(x) for x in b] for b in bs]}
    sides = _box_sides(pr.K)
    unit = all(b == tuple(Fraction(int(i == j)) for j in range(pr.n)) for i, b in enumerate(bs))
    if sides is not None and unit:
        # replay of the tightness identity: prod k_i = sum_I prod_{i in I} (k_i - 1)
        replay = sum(_prod(sides[i] - 1 for i in I) for I in _subsets(range(pr.n)))
        details["tightness_replay"] = replay == pr.vol == sum(terms.values())
    return _Eval(True, pr.vol, Fraction(sum(terms.values())), details)


def instance_t(pr: Profile, p: CheckParams) -> tuple:
    if p.t is not None:
        return tuple(Fraction(x) for x in p.t)
    rng = SplitMix64(p.seed ^ pr.index ^ 0x7)
    out = []
    for _ in range(pr.n):
        q = rng.randint(1, 4)
        out.append(Fraction(rng.randint(0, q - 1), q) if rng.randint(0, 3) else Fraction(0))
    return tuple(out)


def _claim3_translate(pr, p):
    bs = instance_b(pr, p)
    t = instance_t(pr, p)
    alpha = tuple(sum(r[j] * t[j] for j in range(pr.n)) for r in inverse(transpose(bs)))
    supp = [i for i, a in enumerate(alpha) if a != 0]
    rhs = sum(count_projected(pr.K, [bs[i] for i in I]).count for I in _subsets(supp))
    lhs = count_points(pr.K.translate(t)).count
    return _Eval(True, Fraction(lhs), Fraction(rhs), {"t": [format_rational(x) for x in t], "support": supp})


def _density(pr, p):
    bs = instance_b(pr, p)
    worst = None
    for k in range(1, pr.n):
        for I in itertools.combinations(range(pr.n), k):
            sub = [bs[i] for i in I]
            v = projected_lattice_basis(sub).gram_det_sq * gram_det_sq(sub)
            worst = v if worst is None or v < worst else worst
    if worst is None:
        return _na("no proper nonempty index set in dimension 1")
    return _Eval(True, Fraction(1), worst)


def _blichfeldt(pr, p):
    if pr.lattice_dim != pr.n:
        return _na("lattice points are not full-dimensional")
    return _Eval(True, Fraction(pr.G), factorial(pr.n + 1) * pr.vol)


def _vdcorput_global(pr, p):
    if not pr.symmetric:
        return _na("body is not origin-symmetric")
    if pr.lattice_dim != pr.n:
        return _na("lattice points are not full-dimensional")
    return _Eval(True, pr.vol / 2 ** pr.n, Fraction(pr.G_int))


# ---------------------------------------------------------------------------
# planar theorems


def _thm14_upper(pr, p):
    if pr.n != 2:
        return _na("planar statement")
    l1, l2 = pr.lam
    return _Eval(True, Fraction(pr.G), pr.vol * (1 + l1 / 2) * (1 + l2))


def _thm14_lower(pr, p):
    if pr.n != 2:
        return _na("planar statement")
    l1, l2 = pr.lam
    return _Eval(True, pr.vol * (1 - l1 / 2 - l2), Fraction(pr.G_int))


def _thm14_eps(pr, p):
    if pr.n != 2:
        return _na("planar statement")
    l1, l2 = pr.lam
    parts = {}
    for eps in p.eps:
        eps = Fraction(eps)
        if l1 <= 2 * eps / (1 + eps):
            parts[f"eps={format_rational(eps)}"] = pr.G_int - pr.vol * (1 - l1 / 2) * (1 - (1 + eps) * l2)
    if not parts:
        return _na("lambda_1 > 2 eps / (1 + eps) for every eps")
    return _suite(parts)


def _lattice_symmetric_polygon(pr):
    if pr.n != 2:
        return "planar statement"
    if not pr.symmetric:
        return "polygon is not origin-symmetric"
    if not pr.integral_vertices:
        return "polygon is not a lattice polygon"
    return None


def _prop15_polygons(pr, p):
    why = _lattice_symmetric_polygon(pr)
    if why:
        return _na(why)
    l1, l2 = pr.lam
    pd = pick_data(pr.polygon)
    hsw = pr.vol * (l1 / 2 + l2 / 2) - Fraction(pd.boundary, 2)
    return _Eval(True, pr.vol * (1 - l1 / 2) * (1 - l2 / 2), Fraction(pr.G_int),
                 {"hsw_margin": format_rational(hsw), "boundary": pd.boundary})


def _prop15_hsw(pr, p):
    why = _lattice_symmetric_polygon(pr)
    if why:
        return _na(why)
    l1, l2 = pr.lam
    return _Eval(True, Fraction(pick_data(pr.polygon).boundary, 2), pr.vol * (l1 / 2 + l2 / 2))


def _pick_crosscheck(pr, p):
    if pr.n != 2 or not pr.integral_vertices:
        return _na("needs a lattice polygon")
    pd = pick_data(pr.polygon)
    return _suite({
        "interior": _bool_margin(pd.interior == pr.G_int),
        "total": _bool_margin(pd.interior + pd.boundary == pr.G),
        "area": _bool_margin(pd.area == pr.vol),
    })


# ---------------------------------------------------------------------------
# covering radius


def _prop16_upper(pr, p, res):
    n = pr.n
    return _Eval(True, Fraction(pr.G), pr.vol * (1 + res.lower) ** n,
                 liberal=(Fraction(pr.G), pr.vol * (1 + res.upper) ** n))


def _prop16_lower(pr, p, res):
    n = pr.n
    if res.lower > 1:
        return _na("mu > 1")
    if res.upper > 1:
        return _na("mu <= 1 undecided at this tolerance")
    return _Eval(True, pr.vol * (1 - res.upper) ** n, Fraction(pr.G_int),
                 liberal=(pr.vol * (1 - res.lower) ** n, Fraction(pr.G_int)))


def _lambdamu(pr, p, res):
    s = sum(pr.lam) / 2
    return _Eval(True, res.upper, s + p.tol, liberal=(res.lower, s + p.tol))


# ---------------------------------------------------------------------------
# shaking suites (planar)


def _planar(pr):
    return None if pr.n == 2 else "planar statement"


def _cs_gauge(P: Polygon):
    S = central_symmetral(P.to_body())
    return lambda x: gauge(S, x)


def _contained(P: Polygon, Q: Polygon) -> bool:
    QB = Q.to_body()
    return all(contains(QB, v) for v in P.vertices)


def lemma32_parts(P: Polygon, samples: int = 3) -> dict:
    parts = {}
    g = _cs_gauge(P)
    K = P.to_body()
    GP, GPi = count_points(K).count, count_points(K, True).count
    cs_verts = central_symmetral(K).vertices
    xs = [x for x in itertools.product(range(-samples, samples + 1), repeat=2) if any(x)]
    xs += list(cs_verts)
    for i in (1, 2):
        a = i - 1
        S = shake_axis(P, i)
        gs = _cs_gauge(S)
        SB = S.to_body()
        other = 1 - a
        lo = min(v[other] for v in P.vertices)
        hi = max(v[other] for v in P.vertices)
        ends = []
        for t in (lo, hi):
            e = [Fraction(0), Fraction(0)]
            e[other] = t
            ends.append(tuple(e))
        parts[f"i_axis{i}"] = _bool_margin(all(contains(SB, e) for e in ends))
        parts[f"ii_axis{i}"] = _bool_margin(volume(SB) == volume(K))
        u = (Fraction(int(a == 0)), Fraction(int(a == 1)))
        parts[f"iii_axis{i}"] = _bool_margin(gs(u) == g(u))
        worst = None
        for x in xs:
            xp = tuple(Fraction(0) if j == a else Fraction(x[j]) for j in range(2))
            d = g(x) - gs(xp)
            worst = d if worst is None or d < worst else worst
        parts[f"iv_axis{i}"] = worst
        parts[f"v_axis{i}"] = Fraction(count_points(SB).count - GP)
        parts[f"vi_axis{i}"] = Fraction(GPi - count_points(SB, True).count)
    return parts


def _lemma32_suite(pr, p):
    why = _planar(pr)
    if why:
        return _na(why)
    return _suite(lemma32_parts(pr.polygon, p.lemma32_samples))


def lemma33_parts(A: Polygon) -> dict:
    B = A.to_body()
    mins = successive_minima(B)
    g = _cs_gauge(A)
    ge = [g((1, 0)), g((0, 1))]
    order = sorted(range(2), key=lambda i: (ge[i], i))
    parts = {"gauges_are_minima": _bool_margin(tuple(ge[i] for i in order) == mins.minima)}
    for i in range(2):
        e = [Fraction(0), Fraction(0)]
        e[i] = 2 / ge[i]
        parts[f"point_e{i + 1}"] = _bool_margin(contains(B, tuple(e)))
    return parts


def _lemma33(pr, p):
    why = _planar(pr)
    if why:
        return _na(why)
    A = pr.polygon if is_antiblocking(pr.polygon) else pr.antiblocking[0]
    return _suite(lemma33_parts(A))


def thm31_parts(K: Polygon, A: Polygon, U) -> dict:
    KB, AB = K.to_body(), A.to_body()
    lk = successive_minima(KB).minima
    la = successive_minima(AB).minima
    parts = {
        "i_volume": _bool_margin(volume(AB) == volume(KB)),
        "ii_points": Fraction(count_points(AB).count - count_points(KB).count),
        "iii_interior": Fraction(count_points(KB, True).count - count_points(AB, True).count),
        "antiblocking": _bool_margin(is_antiblocking(A)),
        "unimodular": _bool_margin(abs(U[0][0] * U[1][1] - U[0][1] * U[1][0]) == 1),
    }
    for i, (a, b) in enumerate(zip(la, lk), 1):
        parts[f"iv_lambda{i}"] = b - a
    return parts


def _thm31_postconditions(pr, p):
    why = _planar(pr)
    if why:
        return _na(why)
    A, U, _ = pr.antiblocking
    return _suite(thm31_parts(pr.polygon, A, U))


def _fiber_match(step) -> bool:
    """The hull of the slid fibers adds no area and keeps every fiber length.

    The output is stored as a hull, so the rearranged set is convex exactly
    when both hold.
    """
    along = 0 if step.direction == (-1, 0) else 1
    other = 1 - along
    IB, OB = step.input.to_body(), step.output.to_body()
    if volume(IB) != volume(OB):
        return False
    for s in {v[other] for v in step.input.vertices} | {v[other] for v in step.output.vertices}:
        base = [Fraction(0), Fraction(0)]
        base[other] = s
        if chord_length(IB, base, along) != chord_length(OB, base, along):
            return False
    return True


def lemma51_parts(K: Polygon, A: Polygon, transcript) -> dict:
    KB, AB = K.to_body(), A.to_body()
    lk = successive_minima(KB).minima
    la = successive_minima(AB).minima
    line_steps = [s for s in transcript.steps if s.op == "shake_line"]
    return {
        "i_convex": _bool_margin(all(_fiber_match(s) for s in line_steps) and transcript.is_consistent()),
        "ii_antiblocking": _bool_margin(is_antiblocking(A)),
        "iii_volume": _bool_margin(volume(AB) == volume(KB)),
        "iv_points": Fraction(count_points(AB).count - count_points(KB).count),
        "v_interior": Fraction(count_points(KB, True).count - count_points(AB, True).count),
        "vi_lambda1": lk[0] - la[0],
        "vii_lambda2": _bool_margin(la[1] == lk[1]),
        "viii_diagonal": 2 / la[0] - support(AB, (1, 1)),
    }


def _lemma51_suite(pr, p):
    why = _planar(pr)
    if why:
        return _na(why)
    P = pr.polygon if is_antiblocking(pr.polygon) else pr.antiblocking[0]
    A, tr = reduce_below_diagonal(P)
    K = tr.steps[0].output if tr.steps and tr.steps[0].op == "swap" else P
    return _suite(lemma51_parts(K, A, tr))


def lemma53_parts(L: Polygon) -> dict:
    c = tuple(sum(v[i] for v in L.vertices) / len(L.vertices) for i in range(2))
    K = Polygon.from_points([tuple((x + ci) / 2 for x, ci in zip(v, c)) for v in L.vertices])
    m = diagonal_level(L)
    parts = {}
    for name, u in (("minus_e1", (-1, 0)), ("minus_e2", (0, -1))):
        parts[name] = _bool_margin(_contained(shake_line(K, u, m), shake_line(L, u, m)))
    return parts


def _lemma53(pr, p):
    why = _planar(pr)
    if why:
        return _na(why)
    return _suite(lemma53_parts(pr.polygon))


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    fn: Callable
    uses_mu: bool = False
    conjecture: bool = False
    inconclusive_on_fail: bool = False


REGISTRY = {c.check_id: c for c in [
    CheckDef("mink2nd_lower", _mink2nd_lower),
    CheckDef("mink2nd_upper", _mink2nd_upper),
    CheckDef("bhw_lower", _bhw_lower),
    CheckDef("bhw_upper", _bhw_upper),
    CheckDef("conj_floor", _conj_floor, conjecture=True),
    CheckDef("malikiosis", _malikiosis, inconclusive_on_fail=True),
    CheckDef("conj2_upper", _conj2_upper, conjecture=True),
    CheckDef("conj2_lower", _conj2_lower, conjecture=True),
    CheckDef("conj2_sym", _conj2_sym, conjecture=True),
    CheckDef("thm11_upper", _thm11_upper),
    CheckDef("thm11_lower", _thm11_lower),
    CheckDef("cor12", _cor12),
    CheckDef("davenport", _davenport),
    CheckDef("rev_davenport", _rev_davenport),
    CheckDef("claim3_translate", _claim3_translate),
    CheckDef("density", _density),
    CheckDef("blichfeldt", _blichfeldt),
    CheckDef("vdcorput_global", _vdcorput_global),
    CheckDef("thm14_upper", _thm14_upper),
    CheckDef("thm14_lower", _thm14_lower),
    CheckDef("thm14_eps", _thm14_eps),
    CheckDef("prop15_polygons", _prop15_polygons),
    CheckDef("prop15_hsw", _prop15_hsw),
    CheckDef("pick_crosscheck", _pick_crosscheck),
    CheckDef("prop16_upper", _prop16_upper, uses_mu=True),
    CheckDef("prop16_lower", _prop16_lower, uses_mu=True),
    CheckDef("lambdamu", _lambdamu, uses_mu=True),
    CheckDef("thm31_postconditions", _thm31_postconditions),
    CheckDef("lemma32_suite", _lemma32_suite),
    CheckDef("lemma33", _lemma33),
    CheckDef("lemma51_suite", _lemma51_suite),
    CheckDef("lemma53", _lemma53),
]}

CHECK_IDS = tuple(REGISTRY)

# groups usable on the command line and in suites
GROUPS = {
    "mink2nd": ("mink2nd_lower", "mink2nd_upper"),
    "bhw": ("bhw_lower", "bhw_upper"),
    "conj2": ("conj2_upper", "conj2_lower", "conj2_sym"),
    "thm11": ("thm11_upper", "thm11_lower"),
    "thm14": ("thm14_upper", "thm14_lower", "thm14_eps"),
    "prop15": ("prop15_polygons", "prop15_hsw"),
    "prop16": ("prop16_upper", "prop16_lower"),
    "shaking": ("lemma32_suite", "lemma33", "lemma51_suite", "lemma53", "thm31_postconditions"),
}


def resolve_checks(spec) -> tuple:
    """Expand ``all``, group names and comma lists into registry ids."""
    items = spec.split(",") if isinstance(spec, str) else list(spec)
    out = []
    for it in items:
        it = it.strip()
        if not it:
            continue
        if it == "all":
            out.extend(CHECK_IDS)
        elif it in GROUPS:
            out.extend(GROUPS[it])
        elif it in REGISTRY:
            out.append(it)
        else:
            raise KeyError(f"unknown check {it!r}")
    seen = set()
    return tuple(c for c in out if not (c in seen or seen.add(c)))


# ---------------------------------------------------------------------------
# running


def _report(cid, iid, ev: _Eval, verdict=None, critical=False) -> CheckReport:
    if not ev.applicable:
        return CheckReport(cid, iid, False, None, None, None, INAPPLICABLE, False, ev.details)
    margin = ev.rhs - ev.lhs
    if verdict is None:
        verdict = PASS if margin >= 0 else FAIL
    return CheckReport(cid, iid, True, ev.lhs, ev.rhs, margin, verdict, critical, ev.details)


def _mu_tolerances(p: CheckParams):
    seen = []
    for t in (p.coarse_tol, p.tol, p.tol / 16):
        t = Fraction(t)
        if t <= Fraction(p.coarse_tol) and t not in seen:
            seen.append(t)
    return seen


def _run_mu_check(cd: CheckDef, pr: Profile, p: CheckParams) -> CheckReport:
    ev = None
    res = None
    for tol in _mu_tolerances(p):
        try:
            res = pr.mu(tol)
        except ToleranceUnreachable as exc:
            if ev is None:
                raise
            ev.details["refinement"] = str(exc)
            break
        ev = cd.fn(pr, p, res)
        if not ev.applicable and "undecided" not in ev.details.get("reason", ""):
            break
        if ev.applicable and ev.rhs >= ev.lhs:
            break
    ev.details["mu_lo"] = format_rational(res.lower)
    ev.details["mu_hi"] = format_rational(res.upper)
    if ev.applicable and ev.rhs < ev.lhs and ev.liberal is not None:
        lhs, rhs = ev.liberal
        if rhs >= lhs:
            return _report(cd.check_id, pr.instance_id, ev, INCONCLUSIVE)
    return _report(cd.check_id, pr.instance_id, ev)


def run_check(check_id: str, K, params: CheckParams = DEFAULT_PARAMS, instance_id: str = "") -> CheckReport:
    """Evaluate one registry row on a body (or a cached :class:`Profile`)."""
    cd = REGISTRY[check_id]
    pr = _profile_of(K, instance_id)
    if cd.uses_mu:
        rep = _run_mu_check(cd, pr, params)
    else:
        rep = _report(cd.check_id, pr.instance_id, cd.fn(pr, params))
    if rep.verdict == FAIL and cd.inconclusive_on_fail:
        rep = replace(rep, verdict=INCONCLUSIVE)
    if rep.verdict == FAIL and cd.conjecture:
        rep = _quarantine(cd, pr, params, rep)
    return rep


# ---------------------------------------------------------------------------
# quarantine: brute-force re-verification of conjecture failures


def brute_force_profile(K: Body, shell: int = 0) -> Profile:
    """A Profile whose invariants come from slow independent oracles."""
    pr = Profile(K, "oracle")
    lo, hi = K.bounding_box
    box = [range(ceil(l), floor(h) + 1) for l, h in zip(lo, hi)]
    pts = list(itertools.product(*box))
    pr.__dict__["G"] = sum(contains(K, x) for x in pts)
    pr.__dict__["G_int"] = sum(contains(K, x, strict=True) for x in pts)
    pr.__dict__["vol"] = triangulation_volume(K)
    S = central_symmetral(K)
    fast = successive_minima(K)
    # any z with gauge <= lambda_n lies in lambda_n S, whose sup-norm is bounded by S's box
    reach = max(abs(x) for v in S.vertices for x in v)
    R = shell or ceil(fast.minima[-1] * reach)
    cands = sorted((gauge(S, z, method="lp"), z) for z in itertools.product(range(-R, R + 1), repeat=K.dim) if any(z))
    chosen, vals = [], []
    for g, z in cands:
        if rank(chosen + [z]) > len(chosen):
            chosen.append(z)
            vals.append(g)
    pr.__dict__["minima"] = type(fast)(tuple(vals), tuple(chosen))
    return pr


def _quarantine(cd: CheckDef, pr: Profile, p: CheckParams, rep: CheckReport) -> CheckReport:
    details = dict(rep.details)
    details["quarantine_body"] = dumps_body(pr.K)
    try:
        oracle = brute_force_profile(pr.K)
        ev = cd.fn(oracle, p)
    except GeometryError as exc:
        details["quarantine_error"] = str(exc)
        return replace(rep, details=details)
    confirmed = ev.applicable and ev.rhs < ev.lhs
    details["quarantine_confirmed"] = confirmed
    return replace(rep, critical=confirmed, details=details)


# ---------------------------------------------------------------------------
# suites and search


@dataclass(frozen=True)
class SuiteResult:
    reports: tuple
    retries: dict = field(default_factory=dict)

    def summary(self) -> dict:
        out = {}
        for r in self.reports:
            out.setdefault(r.check_id, {PASS: 0, FAIL: 0, INAPPLICABLE: 0, INCONCLUSIVE: 0})[r.verdict] += 1
        return out

    @property
    def any_critical(self) -> bool:
        return any(r.critical for r in self.reports)


def run_suite(check_ids, specs, count: int, params: CheckParams = DEFAULT_PARAMS) -> SuiteResult:
    """Cartesian evaluation of checks over ``count`` instances of every spec."""
    if isinstance(specs, GeneratorSpec):
        specs = [specs]
    ids = resolve_checks(check_ids)
    reports, retries = [], {}
    for spec in specs:
        p = replace(params, seed=spec.seed)
        for k in range(count):
            inst = generate(spec, k)
            if inst.retries:
                retries[inst.instance_id] = inst.retries
            pr = Profile(inst.body, inst.instance_id, k)
            for cid in ids:
                reports.append(run_check(cid, pr, p))
    reports.sort(key=lambda r: (r.check_id, r.instance_id))
    return SuiteResult(tuple(reports), retries)


@dataclass(frozen=True)
class SearchResult:
    fails: tuple
    near_misses: tuple
    evaluated: int


def search_counterexamples(check_id: str, generator_id: str, budget: int, seed: int,
                           threshold: Fraction = Fraction(0), params: CheckParams = DEFAULT_PARAMS,
                           spec: Optional[GeneratorSpec] = None) -> SearchResult:
    """Stream instances through one check; keep failures and margins <= threshold."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    spec = spec or GeneratorSpec(generator_id, seed=seed)
    p = replace(params, seed=spec.seed)
    fails, near = [], []
    ids = resolve_checks(check_id)
    for k in range(budget):
        inst = generate(spec, k)
        pr = Profile(inst.body, inst.instance_id, k)
        for cid in ids:
            rep = run_check(cid, pr, p)
            if rep.verdict == FAIL:
                fails.append(rep)
            elif rep.applicable and rep.margin is not None and 0 <= rep.margin <= threshold:
                near.append(rep)
    return SearchResult(tuple(fails), tuple(near), budget)


def reports_to_csv(reports) -> str:
    import csv
    import io

    buf = io.StringIO()
    cols = ["check_id", "instance_id", "applicable", "lhs", "rhs", "margin", "verdict"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([r.to_json() for r in reports], indent=1, sort_keys=True)
