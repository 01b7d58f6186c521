"""Deterministic SVG rendering of shaking transcripts, one panel per step."""
from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import quoteattr

from .errors import MalformedTranscript
from .linalg import format_rational
from .shaking import ShakeTranscript

PANEL = 320
PLOT = 260
MARGIN = 30

STYLE = (
    ".axis{stroke:#444;stroke-width:1}"
    ".dot{fill:#999}"
    ".input{fill:#9ecae1;fill-opacity:0.35;stroke:#3182bd;stroke-dasharray:4 3}"
    ".output{fill:#fdae6b;fill-opacity:0.55;stroke:#e6550d;stroke-width:1.5}"
    ".fiber{stroke:#31a354;stroke-width:1;marker-end:url(#arrow)}"
    ".diagonal{stroke:#756bb1;stroke-width:1.2;stroke-dasharray:6 3}"
    "text{font-family:monospace;font-size:11px}"
)


def _num(x) -> str:
    return "%.12g" % float(x)


def _exact(points) -> str:
    return " ".join(",".join(format_rational(c) for c in p) for p in points)


def _chord_ends(vertices, s, along):
    """Endpoints (along-coordinate) of the polygon's fiber at other-coordinate ``s``."""
    other = 1 - along
    vals = []
    k = len(vertices)
    for j in range(k):
        p, q = vertices[j], vertices[(j + 1) % k]
        if p[other] == q[other]:
            if p[other] == s:
                vals += [p[along], q[along]]
            continue
        lo, hi = sorted((p[other], q[other]))
        if lo <= s <= hi:
            t = (s - p[other]) / (q[other] - p[other])
            vals.append(p[along] + t * (q[along] - p[along]))
    return (min(vals), max(vals)) if vals else None


class _Frame:
    """Maps exact plane coordinates into one panel's pixel box."""

    def __init__(self, points, x0: int):
        xs = [Fraction(p[0]) for p in points] + [Fraction(0)]
        ys = [Fraction(p[1]) for p in points] + [Fraction(0)]
        self.lo = (math.floor(min(xs)) - 1, math.floor(min(ys)) - 1)
        self.hi = (math.ceil(max(xs)) + 1, math.ceil(max(ys)) + 1)
        span = max(self.hi[0] - self.lo[0], self.hi[1] - self.lo[1])
        self.unit = Fraction(PLOT, span)
        self.x0 = x0

    def __call__(self, p):
        x = self.x0 + MARGIN + (Fraction(p[0]) - self.lo[0]) * self.unit
        y = MARGIN + PLOT - (Fraction(p[1]) - self.lo[1]) * self.unit
        return _num(x), _num(y)

    def line(self, p, q, cls, extra="") -> str:
        (x1, y1), (x2, y2) = self(p), self(q)
        return f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{extra}/>'


def _polygon(frame, vertices, cls) -> str:
    pts = " ".join("%s,%s" % frame(v) for v in vertices)
    return f'<polygon class="{cls}" points="{pts}" data-exact={quoteattr(_exact(vertices))}/>'


def _background(frame) -> list:
    out = []
    for x in range(frame.lo[0], frame.hi[0] + 1):
        for y in range(frame.lo[1], frame.hi[1] + 1):
            cx, cy = frame((x, y))
            out.append(f'<circle class="dot" cx="{cx}" cy="{cy}" r="1.6"/>')
    out.append(frame.line((frame.lo[0], 0), (frame.hi[0], 0), "axis"))
    out.append(frame.line((0, frame.lo[1]), (0, frame.hi[1]), "axis"))
    return out


def _fibers(frame, step) -> list:
    if step.op not in ("shake_axis", "shake_line"):
        return []
    along = step.axis - 1 if step.op == "shake_axis" else (0 if step.direction[0] != 0 else 1)
    other = 1 - along
    out = []
    for s in sorted({v[other] for v in step.input.vertices}):
        a = _chord_ends(step.input.vertices, s, along)
        b = _chord_ends(step.output.vertices, s, along)
        if a is None or b is None:
            continue
        ma, mb = (a[0] + a[1]) / 2, (b[0] + b[1]) / 2
        if ma == mb:
            continue
        p = [s, s]
        q = [s, s]
        p[along], q[along] = ma, mb
        out.append(frame.line(p, q, "fiber", f' data-at="{format_rational(s)}"'))
    return out


def _diagonal(frame, level) -> str:
    # clip x1 + x2 = level to the frame box
    lo, hi = frame.lo, frame.hi
    pts = []
    for x in (lo[0], hi[0]):
        y = level - x
        if lo[1] <= y <= hi[1]:
            pts.append((x, y))
    for y in (lo[1], hi[1]):
        x = level - y
        if lo[0] <= x <= hi[0]:
            pts.append((x, y))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return ""
    return frame.line(pts[0], pts[-1], "diagonal", f' data-level="{level}"')


def _label(step) -> str:
    if step.op == "shake_axis":
        return f"sh e{step.axis}"
    if step.op == "shake_line":
        u = "-e1" if step.direction[0] != 0 else "-e2"
        return f"sh {u}, D: x1+x2={step.level}"
    if step.op == "unimodular":
        return "U = " + str([[format_rational(x) for x in r] for r in step.matrix]).replace("'", "")
    return "swap x1, x2"


def render_transcript(tr) -> str:
    """SVG document for a transcript (or its JSON text/dict)."""
    if isinstance(tr, str):
        tr = ShakeTranscript.loads(tr)
    elif isinstance(tr, dict):
        tr = ShakeTranscript.from_json(tr)
    if not isinstance(tr, ShakeTranscript):
        raise MalformedTranscript("expected a transcript")
    levels = [s.level for s in tr.steps if s.level is not None]
    level = levels[0] if levels and tr.kind == "diagonal" else None
    panels = max(len(tr.steps), 1)
    width, height = PANEL * panels, PLOT + 2 * MARGIN + 10
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-kind="{tr.kind}">',
        "<defs><style>" + STYLE + "</style>"
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#31a354"/></marker></defs>',
    ]
    if not tr.steps:
        frame = _Frame([(0, 0), (3, 3)], 0)
        out.append('<g class="panel" data-step="0">')
        out.extend(_background(frame))
        out.append("</g>")
    for k, step in enumerate(tr.steps):
        frame = _Frame(list(step.input.vertices) + list(step.output.vertices)
                       + ([(level, 0), (0, level)] if level is not None else []), k * PANEL)
        attrs = f'data-step="{k}" data-op="{step.op}"'
        if step.level is not None:
            attrs += f' data-level="{step.level}"'
        out.append(f'<g class="panel" {attrs}>')
        out.extend(_background(frame))
        if level is not None:
            out.append(_diagonal(frame, level))
        out.append(_polygon(frame, step.input.vertices, "input"))
        out.append(_polygon(frame, step.output.vertices, "output"))
        out.extend(_fibers(frame, step))
        out.append(f'<text x="{k * PANEL + MARGIN}" y="{MARGIN - 10}">{k + 1}: {_label(step)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(x for x in out if x) + "\n"
