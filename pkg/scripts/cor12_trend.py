"""Margin and ratio of the minima-based counting bound on dilates rK.

    python3 scripts/cor12_trend.py [rmax]
"""
import sys

from gnum.body import Body
from gnum.checks import run_check

BODIES = {
    "cube3": Body.box([0, 0, 0], [1, 1, 1]),
    "simplex3": Body.simplex(3, 1),
    "cross2": Body.from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1)]),
    "hexagon": Body.from_vertices([(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)]),
}


def main(argv):
    rmax = int(argv[1]) if len(argv) > 1 else 8
    for name, K in BODIES.items():
        print(name)
        r = 1
        while r <= rmax:
            rep = run_check("cor12", K.scale(r))
            print(f"  r={r:3d}  G={int(rep.lhs):8d}  bound={float(rep.rhs):12.1f}  "
                  f"margin={float(rep.margin):12.1f}  G/bound={float(rep.lhs / rep.rhs):.4f}")
            r *= 2
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
