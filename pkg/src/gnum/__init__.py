"""Exact geometry of numbers in small dimensions: lattice counts, successive minima,
covering radii, planar Blaschke shakings and a verifier for lattice-point inequalities."""

from .body import Body, contains, gauge, shadow, support, volume
from .invariants import count_points, count_projected, covering_radius, successive_minima
from .shaking import Polygon, antiblocking_reduce, reduce_below_diagonal, shake_axis, shake_line

__version__ = "0.1.0"

__all__ = [
    "Body", "contains", "gauge", "shadow", "support", "volume",
    "count_points", "count_projected", "covering_radius", "successive_minima",
    "Polygon", "antiblocking_reduce", "reduce_below_diagonal", "shake_axis", "shake_line",
]
