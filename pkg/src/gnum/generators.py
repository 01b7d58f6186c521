"""Seeded instance families.

Randomness comes from splitmix64 so that streams are reproducible across
implementations; instance ``k`` of a run with seed ``s`` uses the substream
seeded with ``s ^ k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .body import Body
from .errors import Degenerate, DegenerateInstance, GeometryError

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] by rejection (no modulo bias)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]


@dataclass(frozen=True)
class GeneratorSpec:
    generator_id: str
    seed: int = 0
    dim: int = 2
    vertex_count: int = 8
    bound: int = 10
    scale: Fraction = Fraction(1)
    sides: Optional[tuple] = None
    m: Optional[int] = None


@dataclass(frozen=True)
class Instance:
    instance_id: str
    family: str
    body: Body
    retries: tuple = field(default=())


MAX_RETRIES = 50


def _disc_point(rng: SplitMix64, R: int):
    while True:
        x, y = rng.randint(-R, R), rng.randint(-R, R)
        if x * x + y * y <= R * R:
            return (x, y)


def _lattice_polygon(rng, spec):
    pts = [_disc_point(rng, spec.bound) for _ in range(max(spec.vertex_count, 3))]
    return Body.from_vertices(pts)


def _symmetric_polygon(rng, spec):
    k = max(spec.vertex_count // 2, 2)
    pts = [_disc_point(rng, spec.bound) for _ in range(k)]
    return Body.from_vertices(pts + [(-x, -y) for x, y in pts])


def _rational_polygon(rng, spec):
    pts = []
    for _ in range(max(spec.vertex_count, 3)):
        q = rng.randint(1, 3)
        x, y = _disc_point(rng, spec.bound * q)
        pts.append((Fraction(x, q), Fraction(y, q)))
    return Body.from_vertices(pts)


def _box(rng, spec):
    if spec.sides is not None:
        sides = tuple(spec.sides)
    else:
        sides = tuple(rng.randint(1, max(1, min(spec.bound, 6))) for _ in range(spec.dim))
    return Body.box([0] * len(sides), sides)


def _symmetric_box(rng, spec):
    half = tuple(rng.randint(1, max(1, min(spec.bound, 4))) for _ in range(spec.dim))
    return Body.box([-h for h in half], half)


def _simplex(rng, spec):
    m = spec.m if spec.m is not None else rng.randint(1, max(1, min(spec.bound, 6)))
    return Body.simplex(spec.dim, m)


def _hpolytope(rng, spec):
    n = spec.dim
    R = max(2, min(spec.bound, 4))
    A, b = [], []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        A.append(tuple(e))
        b.append(rng.randint(1, R))
        A.append(tuple(-x for x in e))
        b.append(rng.randint(1, R))
    for _ in range(max(spec.vertex_count - 2 * n, 2)):
        a = tuple(rng.randint(-3, 3) for _ in range(n))
        if not any(a):
            continue
        # keep the origin strictly inside so the body is full-dimensional
        l1 = sum(abs(x) for x in a)
        A.append(a)
        b.append(Fraction(rng.randint(l1, 2 * l1 * R), 2))
    return Body.from_hrep(A, b)


FAMILIES = {
    "lattice_polygon": _lattice_polygon,
    "symmetric_polygon": _symmetric_polygon,
    "rational_polygon": _rational_polygon,
    "box": _box,
    "symmetric_box": _symmetric_box,
    "simplex": _simplex,
    "hpolytope": _hpolytope,
}

# composite generators cycle through families by instance index
COMPOSITE = {
    "body3d": (("box", 3), ("simplex", 3), ("hpolytope", 3)),
    "mixed": (
        ("box", 2), ("simplex", 2), ("lattice_polygon", 2), ("symmetric_polygon", 2),
        ("box", 3), ("simplex", 3), ("hpolytope", 3), ("symmetric_box", 2),
    ),
}

GENERATOR_IDS = tuple(sorted(FAMILIES)) + tuple(sorted(COMPOSITE))


def generate(spec: GeneratorSpec, index: int = 0) -> Instance:
    gid = spec.generator_id
    family = gid
    if gid in COMPOSITE:
        family, dim = COMPOSITE[gid][index % len(COMPOSITE[gid])]
        spec = replace(spec, dim=dim)
    if family not in FAMILIES:
        raise ValueError(f"unknown generator {gid!r}; choose from {', '.join(GENERATOR_IDS)}")
    if family.endswith("polygon"):
        spec = replace(spec, dim=2)
    rng = SplitMix64(spec.seed ^ index)
    retries = []
    for attempt in range(MAX_RETRIES):
        try:
            body = FAMILIES[family](rng, spec)
            if spec.scale != 1:
                body = body.scale(spec.scale)
            return Instance(f"{gid}-{spec.seed}-{index}", family, body, tuple(retries))
        except (Degenerate, GeometryError) as exc:
            # the stream simply continues: the next draws form the next substream
            retries.append(f"attempt {attempt}: {exc}")
    raise DegenerateInstance(f"{gid} instance {index}: {MAX_RETRIES} degenerate draws")


def generate_many(spec: GeneratorSpec, count: int):
    return [generate(spec, k) for k in range(count)]
