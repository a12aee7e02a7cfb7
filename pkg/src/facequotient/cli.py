"""Command line front end: ``fq analyze|gen|contract|gamma|fuzz``."""

from __future__ import annotations

import argparse
import json
import sys

from .complex import SchemeError, check_valid, dumps, load
from .fuzz import run_campaign, summarize, write_campaign
from .gallery import SOLIDS, gen_lens, gen_platonic_space, gen_random, gen_trivial_sphere
from .quotient import build_quotient, gamma_graph, to_dot
from .report import InvariantViolation, analyze, contract_report, render_text

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(report, fmt):
    if fmt == "text":
        return render_text(report)
    return json.dumps(report, indent=1, ensure_ascii=False) + "\n"


def cmd_analyze(args):
    _emit(_render(analyze(load(args.path)), args.format), args.out)


def cmd_contract(args):
    edges = None
    if args.edges is not None:
        try:
            edges = [int(x) for x in args.edges.split(",") if x.strip()]
        except ValueError:
            raise SchemeError(f"--edges expects comma-separated edge ids, got {args.edges!r}")
    _emit(_render(contract_report(load(args.path), edges), args.format), args.out)


def cmd_gamma(args):
    _emit(to_dot(gamma_graph(build_quotient(check_valid(load(args.path))))), args.out)


def cmd_gen(args):
    kind, params = args.kind, args.params
    try:
        if kind == "lens":
            q, p = (int(x) for x in params)
            scheme = gen_lens(q, p)
        elif kind == "sphere":
            (n,) = (int(x) for x in params)
            scheme = gen_trivial_sphere(n)
        elif kind in ("quaternion", "poincare"):
            scheme = gen_platonic_space(kind)
        else:
            scheme = gen_random(args.base, args.seed if args.seed is not None else 0)
    except ValueError as exc:
        if isinstance(exc, SchemeError):
            raise
        raise SchemeError(f"bad parameters for {kind}: {params}") from exc
    _emit(dumps(scheme), args.out)


def cmd_fuzz(args, parser):
    if args.count < 1:
        parser.error("--count must be at least 1")
    seed0 = args.seed if args.seed is not None else 0
    rows = run_campaign(args.base, args.count, seed0)
    summary = summarize(args.base, args.count, seed0, rows)
    if args.out:
        write_campaign(args.out, args.base, summary, rows)
    sys.stdout.write(json.dumps(summary, indent=1) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="fq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--out", help="write here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("analyze", help="full analysis report of a scheme file")
    p.add_argument("path")
    common(p)

    p = sub.add_parser("gen", help="emit a gallery scheme as JSON")
    p.add_argument("kind", choices=("lens", "sphere", "quaternion", "poincare", "random"))
    p.add_argument("params", nargs="*", help="lens: Q P; sphere: N")
    p.add_argument("--base", choices=sorted(SOLIDS), default="octahedron")
    p.add_argument("--seed", type=int)
    common(p, fmt=False)

    p = sub.add_parser("contract", help="contract the non-flat tree or listed edges")
    p.add_argument("path")
    p.add_argument("--strategy", choices=("gamma-tree",), default="gamma-tree")
    p.add_argument("--edges", help="comma-separated quotient edge ids, contracted in order")
    common(p)

    p = sub.add_parser("gamma", help="export the non-flat graph as DOT")
    p.add_argument("path")
    common(p, fmt=False)

    p = sub.add_parser("fuzz", help="random gluing campaign")
    p.add_argument("--base", choices=sorted(SOLIDS), default="octahedron")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int)
    common(p, fmt=False)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fuzz":
            cmd_fuzz(args, parser)
        else:
            {"analyze": cmd_analyze, "gen": cmd_gen, "contract": cmd_contract,
             "gamma": cmd_gamma}[args.command](args)
    except SchemeError as exc:
        print(f"fq: invalid scheme: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"fq: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvariantViolation as exc:
        print(f"fq: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
