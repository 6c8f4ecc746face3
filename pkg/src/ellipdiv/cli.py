"""Command-line front end.

Exit codes: 0 ok, 1 a guaranteed identity failed (or an internal invariant
broke), 2 bad input, 3 factorization trouble.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import divpoly, recurrence, reduction, sequences
from .curve import parse_curve, parse_point
from .errors import FactorizationFailure, InputError, InvariantViolation

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_FACTOR = 0, 1, 2, 3

# flags whose values may legitimately start with "-"
_VALUE_FLAGS = ("--curve", "--point", "--initial")


class _Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self._writer = None

    def row(self, data: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(data) + "\n")
            return
        if self._writer is None:
            self._writer = csv.DictWriter(self.stream, fieldnames=list(data), lineterminator="\n")
            self._writer.writeheader()
        self._writer.writerow({k: "" if v is None else v for k, v in data.items()})

    def summary(self, data: dict) -> None:
        # summaries always go out as one JSON object so CSV rows stay rectangular
        if self.fmt == "json":
            self.stream.write(json.dumps({"summary": data}) + "\n")
        else:
            sys.stderr.write(json.dumps({"summary": data}) + "\n")


def _context(args):
    if args.curve is None or args.point is None:
        raise InputError("--curve and --point are required")
    return sequences.make_context(parse_curve(args.curve), parse_point(args.point))


def cmd_sequence(args, out: _Output) -> int:
    ctx = _context(args)
    for rec in sequences.sequence_table(ctx, args.max_n):
        out.row(rec.to_dict())
    return EXIT_OK


def cmd_profile(args, out: _Output) -> int:
    ctx = _context(args)
    _, profile = reduction.M_of(ctx)
    data = profile.to_dict()
    if args.p is not None:
        data["query"] = {"p": str(args.p), "r": reduction.r_of(ctx, args.p)}
    out.stream.write(json.dumps(data) + "\n")
    return EXIT_OK


def _verify_main(args, out):
    ctx = _context(args)
    results = recurrence.verify_main_theorem(ctx, args.bound)
    for t in results:
        out.row(t.to_dict())
    summary = recurrence.summarize(results)
    summary["M"] = reduction.M_of(ctx)[0]
    out.summary(summary)
    return EXIT_VIOLATION if summary["qualifying_violations"] else EXIT_OK


def _verify_ward(args, out):
    # every triple m >= n >= r >= 1 with m + n <= bound
    ctx = _context(args)
    hs = [sequences.h(ctx, i) for i in range(args.bound + 1)]
    bad = total = 0
    for m, n, r in recurrence.triples(args.bound):
        if m + n > args.bound:
            continue
        d = recurrence.check_ward_triple(hs, m, n, r)
        total += 1
        bad += d != 0
        out.row({"m": m, "n": n, "r": r, "defect": str(d)})
    out.summary({"triples": total, "violations": bad})
    return EXIT_VIOLATION if bad else EXIT_OK


def _verify_gcd_law(args, out):
    ctx = _context(args)
    M, _ = reduction.M_of(ctx)
    bad = 0
    if args.p is not None:
        modulus = reduction.r_of(ctx, args.p)
        for m in range(1, args.bound + 1):
            for n in range(0, args.bound + 1):
                d = recurrence.check_g_valuation_law(ctx, args.p, m, n)
                guaranteed = m % modulus == 0
                bad += guaranteed and d != 0
                out.row({"m": m, "n": n, "p": str(args.p), "guaranteed": guaranteed,
                         "defect": str(d)})
    else:
        modulus = M
        for m in range(1, args.bound + 1):
            for n in range(0, args.bound + 1):
                L = recurrence.check_g_multiplicative_law(ctx, m, n).L
                guaranteed = m % modulus == 0
                bad += guaranteed and L != 1
                out.row({"m": m, "n": n, "guaranteed": guaranteed, "L": str(L)})
    out.summary({"modulus": modulus, "violations": bad})
    return EXIT_VIOLATION if bad else EXIT_OK


def _verify_cheon(args, out):
    if args.p is None:
        raise InputError("verify cheon needs --p")
    ctx = _context(args)
    bad = 0
    for n in range(1, args.bound + 1):
        formula = recurrence.cheon_g(ctx, args.p, n)
        direct = sequences.g_valuation(ctx, n, args.p)
        bad += formula != direct
        out.row({"n": n, "p": str(args.p), "cheon": formula, "g_valuation": direct})
    out.summary({"r": reduction.r_of(ctx, args.p), "violations": bad})
    return EXIT_VIOLATION if bad else EXIT_OK


def _verify_identity(args, out):
    # curve only; the point is not needed
    if args.curve is None:
        raise InputError("--curve is required")
    C = parse_curve(args.curve)
    bad = 0
    for n in range(1, args.bound + 1):
        for m in range(1, args.bound + 1):
            need = 2 * (n * n + m * m - 1) + 1
            ok = divpoly.check_product_identity(C, n, m, range(-(need // 2), need - need // 2))
            bad += not ok
            out.row({"n": n, "m": m, "samples": need, "holds": ok})
    out.summary({"violations": bad})
    return EXIT_VIOLATION if bad else EXIT_OK


def _verify_torsion(args, out):
    ctx = _context(args)
    res = recurrence.verify_torsion_case(ctx, args.bound)
    for t in res.results:
        out.row(t.to_dict())
    summary = recurrence.summarize(res.results)
    summary.update(order=res.order, M=res.M, status="skipped" if res.skipped else "checked")
    out.summary(summary)
    return EXIT_VIOLATION if summary["qualifying_violations"] else EXIT_OK


_VERIFIERS = {
    "main": (_verify_main, 12),
    "ward": (_verify_ward, 30),
    "gcd-law": (_verify_gcd_law, 15),
    "cheon": (_verify_cheon, 20),
    "identity": (_verify_identity, 3),
    "torsion": (_verify_torsion, 10),
}


def cmd_verify(args, out: _Output) -> int:
    fn, default_bound = _VERIFIERS[args.which]
    if args.bound is None:
        args.bound = default_bound
    return fn(args, out)


def cmd_generate(args, out: _Output) -> int:
    try:
        seeds = [int(s) for s in args.initial.split(",")]
    except ValueError:
        raise InputError(f"--initial must be four integers: {args.initial!r}") from None
    if len(seeds) != 4:
        raise InputError("--initial takes exactly h1,h2,h3,h4")
    count = args.count if args.count is not None else 4
    for n, val in enumerate(recurrence.edsa_generate(*seeds, count)):
        out.row({"n": n, "h": str(val)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curve", help="a1,a2,a3,a4,a6")
    common.add_argument("--point", help="x,y with entries like 3 or -9/8")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="ellipdiv",
                                     description="Elliptic divisibility sequences over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sequence", parents=[common], help="n, B_n, beta_n, h_n, g_n for n = 0..N")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("profile", parents=[common], help="r(p, P) at bad primes and M(P)")
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", parents=[common], help="check an identity over a range")
    p.add_argument("which", choices=sorted(_VERIFIERS))
    p.add_argument("--bound", type=int)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="extend an EDSA from h1..h4")
    p.add_argument("--initial", required=True, help="h1,h2,h3,h4")
    p.add_argument("--count", type=int, help="last index to print (default 4)")
    p.set_defaults(func=cmd_generate)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None, stream=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    stream = sys.stdout if stream is None else stream
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Output(args.format, stream)
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return EXIT_VIOLATION
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except FactorizationFailure as exc:
        sys.stderr.write(f"factorization failed: {exc}\n")
        return EXIT_FACTOR


if __name__ == "__main__":
    sys.exit(main())
