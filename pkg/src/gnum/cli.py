"""Command-line entry point.

Exit codes: 0 success, 1 usage or I/O error (or a failed proven check),
2 a CRITICAL conjecture failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .body import loads_body, volume
from .checks import (DEFAULT_PARAMS, FAIL, CheckParams, reports_to_csv, reports_to_json,
                     resolve_checks, run_suite, search_counterexamples)
from .errors import GeometryError
from .generators import GENERATOR_IDS, GeneratorSpec
from .invariants import count_points, covering_radius, lattice_dimension, successive_minima
from .linalg import format_rational, parse_rational
from .render import render_transcript
from .shaking import ShakeTranscript, antiblocking_reduce, reduce_below_diagonal, shake_sequence

EXIT_OK, EXIT_USAGE, EXIT_CRITICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rat(x) -> str:
    return format_rational(Fraction(x))


def cmd_invariants(args) -> int:
    K = loads_body(_read(args.file))
    mins = successive_minima(K)
    bundle = {
        "dim": K.dim,
        "vol": _rat(volume(K)),
        "G": count_points(K).count,
        "G_int": count_points(K, open=True).count,
        "lattice_dim": lattice_dimension(K),
        "symmetric": K.is_symmetric(),
        "minima": [_rat(x) for x in mins.minima],
        "witnesses": [[_rat(x) for x in w] for w in mins.witnesses],
    }
    mu = covering_radius(K, args.tol)
    bundle["mu_lo"], bundle["mu_hi"] = _rat(mu.lower), _rat(mu.upper)
    _emit(json.dumps(bundle, indent=1, sort_keys=True) + "\n", None)
    return EXIT_OK


def _transcript_out(tr: ShakeTranscript, args, extra=None) -> int:
    doc = tr.to_json()
    if extra:
        doc.update(extra)
    _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", args.out)
    if args.svg:
        _emit(render_transcript(tr), args.svg)
    return EXIT_OK


def cmd_shake(args) -> int:
    K = loads_body(_read(args.file))
    _, tr = shake_sequence(K, args.ops.split(","))
    return _transcript_out(tr, args)


def cmd_reduce(args) -> int:
    K = loads_body(_read(args.file))
    if args.mode == "antiblocking":
        _, U, tr = antiblocking_reduce(K)
        return _transcript_out(tr, args, {"matrix": [[_rat(x) for x in r] for r in U]})
    _, tr = reduce_below_diagonal(K)
    return _transcript_out(tr, args)


def _spec(args) -> GeneratorSpec:
    kw = {"generator_id": args.gen, "seed": args.seed}
    if args.dim is not None:
        kw["dim"] = args.dim
    return GeneratorSpec(**kw)


def cmd_verify(args) -> int:
    ids = resolve_checks(args.checks)
    params = CheckParams(b_mode=args.b_mode)
    res = run_suite(ids, [_spec(args)], args.count, params)
    text = reports_to_json(res.reports) + "\n" if args.format == "json" else reports_to_csv(res.reports)
    _emit(text, args.out)
    summary = res.summary()
    for cid in sorted(summary):
        print(cid, " ".join(f"{k}={v}" for k, v in summary[cid].items()), file=sys.stderr)
    if res.any_critical:
        print("CRITICAL: confirmed conjecture failure", file=sys.stderr)
        return EXIT_CRITICAL
    if any(r.verdict == FAIL for r in res.reports):
        print("failed checks present", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_search(args) -> int:
    threshold = parse_rational(args.threshold)
    spec = _spec(args)
    res = search_counterexamples(args.check, args.gen, args.budget, args.seed, threshold,
                                 DEFAULT_PARAMS, spec)
    doc = {
        "check": args.check,
        "generator": args.gen,
        "budget": args.budget,
        "seed": args.seed,
        "fails": [r.to_json() for r in res.fails],
        "near_misses": [r.to_json() for r in res.near_misses],
    }
    _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", args.out)
    if any(r.critical for r in res.fails):
        print("CRITICAL: confirmed conjecture failure", file=sys.stderr)
        return EXIT_CRITICAL
    return EXIT_USAGE if res.fails else EXIT_OK


def cmd_render(args) -> int:
    tr = ShakeTranscript.loads(_read(args.file))
    _emit(render_transcript(tr), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gnum", description="Exact lattice-point and shaking toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="volume, lattice counts, minima and covering radius of a body")
    s.add_argument("file")
    s.add_argument("--tol", type=parse_rational, default=Fraction(1, 1024))
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("shake", help="axis shakings of a polygon")
    s.add_argument("file")
    s.add_argument("--ops", required=True, help="comma list of e1/e2")
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(fn=cmd_shake)

    s = sub.add_parser("reduce", help="anti-blocking or diagonal reduction of a polygon")
    s.add_argument("file")
    s.add_argument("--mode", required=True, choices=["antiblocking", "diagonal"])
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("verify", help="run named checks over generated instances")
    s.add_argument("--checks", required=True)
    s.add_argument("--gen", required=True, choices=GENERATOR_IDS)
    s.add_argument("--count", required=True, type=int)
    s.add_argument("--seed", required=True, type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--b-mode", choices=["unit", "random"], default="unit")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("search", help="stream instances through a check looking for failures")
    s.add_argument("--check", required=True)
    s.add_argument("--gen", required=True, choices=GENERATOR_IDS)
    s.add_argument("--budget", required=True, type=int)
    s.add_argument("--seed", required=True, type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--threshold", default="0")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("render", help="SVG of a transcript")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "count", 0) < 0:
            raise UsageError("--count must be nonnegative")
        if getattr(args, "budget", 1) < 1:
            raise UsageError("--budget must be at least 1")
        return args.fn(args)
    except UsageError as exc:
        print(f"gnum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"gnum: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GeometryError, ValueError) as exc:
        print(f"gnum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
