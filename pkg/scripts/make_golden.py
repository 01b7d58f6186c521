"""Regenerate the golden SVG files used by tests/test_render.py.

Run only after an intentional change to the renderer, then review the diff.
"""
import pathlib
import sys

from gnum.render import render_transcript
from gnum.shaking import Polygon, ShakeTranscript, reduce_below_diagonal, shake_sequence

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"

# the two-step pipeline of a skewed quadrilateral, shaken along e1 then e2
FIGURE_POLYGON = [(1, 1), (4, 2), (3, 4), (1, 3)]
DIAGONAL_POLYGON = [(0, 0), (3, 0), (3, 1), (1, 2), (0, 2)]


def transcripts():
    _, two = shake_sequence(Polygon.from_points(FIGURE_POLYGON), ["e1", "e2"])
    _, diag = reduce_below_diagonal(Polygon.from_points(DIAGONAL_POLYGON))
    return {"empty": ShakeTranscript(()), "two_step": two, "diagonal": diag}


def main(argv):
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, tr in transcripts().items():
        (GOLDEN / f"{name}.json").write_text(tr.dumps() + "\n")
        (GOLDEN / f"{name}.svg").write_text(render_transcript(tr))
        print("wrote", name)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
