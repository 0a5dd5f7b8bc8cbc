"""Command line front end.

Every subcommand prints a single JSON document (or DOT text, or a
pass/fail table) on stdout and nothing else, so output is safe to pipe.
Exit codes: 0 success, 1 disagreement or failed suite, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import bruhat, normality, sweeps
from .bruhat import AmbientG2
from .rootdata import (
    Coweight,
    fundamental_coweight,
    pairing_2rho,
    parse_datum,
    pi1_invariants,
    serialize_datum,
)
from .levi import levi_data
from .slicering import normality_witness_rank1, pgl2_subring


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_coweight(datum, text: str) -> Coweight:
    """Resolve a coweight argument: coordinates or a named alias."""
    if text == "qm":
        return bruhat.quasi_minuscule(datum.system)
    if text.startswith("minuscule:"):
        mu = fundamental_coweight(datum.system.rank, int(text.split(":", 1)[1]))
        if mu not in bruhat.minuscule_set(datum):
            raise ValueError(f"{mu.coords} is not minuscule for {datum.label}")
        return mu
    return Coweight(tuple(int(c) for c in text.split(",")))


def _edge_json(edge) -> dict:
    return {
        "lo": [int(c) for c in edge.lower.coords],
        "hi": [int(c) for c in edge.upper.coords],
        "support": sorted(edge.support),
        "kind": edge.kind,
    }


def _cmd_classify(args) -> int:
    datum = parse_datum(args.datum)
    mu = _parse_coweight(datum, args.mu)
    if args.engine == "both":
        left = normality.oracle(datum, mu, args.char)
        right = normality.certify(datum, mu, args.char)
        agree = left.status == right.status
        _emit(
            {
                "agree": agree,
                "oracle": normality.verdict_json(datum, mu, args.char, left),
                "certify": normality.verdict_json(datum, mu, args.char, right),
            }
        )
        return 0 if agree else 1
    engine = normality.oracle if args.engine == "oracle" else normality.certify
    verdict = engine(datum, mu, args.char)
    _emit(normality.verdict_json(datum, mu, args.char, verdict))
    return 0


def _cmd_hasse(args) -> int:
    datum = parse_datum(args.datum)
    diagram = bruhat.hasse(datum, args.height)
    if args.dot:
        sys.stdout.write(bruhat.export_dot(diagram))
    else:
        _emit(bruhat.hasse_json(diagram))
    return 0


def _cmd_covers(args) -> int:
    datum = parse_datum(args.datum)
    la = _parse_coweight(datum, getattr(args, "lambda"))
    try:
        edges = sorted(
            bruhat.covers_stembridge(datum, la), key=lambda e: e.upper.coords
        )
    except AmbientG2:
        bound = int(pairing_2rho(datum.system, la)) + 10
        edges = [e for e in bruhat.hasse(datum, bound).edges if e.lower == la]
    _emit(
        {
            "datum": serialize_datum(datum),
            "lambda": [int(c) for c in la.coords],
            "edges": [_edge_json(e) for e in edges],
        }
    )
    return 0


def _cmd_pi1(args) -> int:
    datum = parse_datum(args.datum)
    rank = datum.system.rank
    if args.support is None:
        nodes = list(range(1, rank + 1))
        invariants = [int(v) for v in pi1_invariants(datum)]
    else:
        nodes = sorted({int(s) for s in args.support.split(",")})
        for i in nodes:
            if not 1 <= i <= rank:
                raise ValueError(f"support node {i} is outside 1..{rank}")
        invariants = [int(v) for v in levi_data(datum, nodes).pi1_invariants]
    order = 1
    for v in invariants:
        order *= v
    _emit(
        {
            "datum": serialize_datum(datum),
            "support": nodes,
            "invariants": invariants,
            "order": order,
        }
    )
    return 0


def _cmd_slice_ring(args) -> int:
    bound = args.degree if args.degree is not None else args.m + 2
    ring = pgl2_subring(args.m, args.char, bound)
    verdict = normality_witness_rank1(args.m, args.char)
    basis = sorted(ring.basis, key=lambda t: (t.degree(), t.terms))
    _emit(
        {
            "m": args.m,
            "char": args.char,
            "degree_bound": bound,
            "basis": [t.pretty() for t in basis],
            "status": verdict.status,
            "witness": verdict.witness.pretty() if verdict.witness else None,
        }
    )
    return 0


def _cmd_verify(args) -> int:
    results = sweeps.run_suite(args.suite)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        if r.passed:
            print(f"{r.name:<{width}}  pass")
        else:
            failures += 1
            tail = f"  {r.detail}" if r.detail else ""
            print(f"{r.name:<{width}}  FAIL{tail}")
    print(f"{len(results)} checks, {failures} failures")
    if args.report is not None:
        directory = Path(args.report)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / f"{args.suite}.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["check", "result", "detail"])
            for r in results:
                writer.writerow([r.name, "pass" if r.passed else "FAIL", r.detail])
        if args.suite in ("figures", "all"):
            from . import diagrams

            for spec in sweeps.FIGURES:
                diagrams.render_figure(spec, directory)
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubnorm",
        description="normality of affine Schubert varieties, by root datum",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser("classify", help="decide one (datum, coweight, char)")
    classify.add_argument("--datum", required=True)
    classify.add_argument("--mu", required=True)
    classify.add_argument("--char", type=int, required=True)
    classify.add_argument(
        "--engine", choices=("oracle", "certify", "both"), default="oracle"
    )
    classify.set_defaults(func=_cmd_classify)

    hasse = sub.add_parser("hasse", help="dominance order up to a height bound")
    hasse.add_argument("--datum", required=True)
    hasse.add_argument("--height", type=int, required=True)
    hasse.add_argument("--dot", action="store_true")
    hasse.set_defaults(func=_cmd_hasse)

    covers = sub.add_parser("covers", help="covers of one dominant coweight")
    covers.add_argument("--datum", required=True)
    covers.add_argument("--lambda", required=True)
    covers.set_defaults(func=_cmd_covers)

    pi1 = sub.add_parser("pi1", help="fundamental group, whole or Levi")
    pi1.add_argument("--datum", required=True)
    pi1.add_argument("--support", default=None)
    pi1.set_defaults(func=_cmd_pi1)

    slice_ring = sub.add_parser("slice-ring", help="rank-1 slice subring")
    slice_ring.add_argument("--m", type=int, required=True)
    slice_ring.add_argument("--char", type=int, required=True)
    slice_ring.add_argument("--degree", type=int, default=None)
    slice_ring.set_defaults(func=_cmd_slice_ring)

    verify = sub.add_parser("verify", help="run a frozen-expectation suite")
    verify.add_argument("--suite", choices=sweeps.SUITES, required=True)
    verify.add_argument("--report", default=None, metavar="DIR")
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
