"""Command line interface.

Subcommands:
  verify   run an identity corpus (bundled by default) and report pass/fail
  eval     evaluate one nested-sum value, e.g.  zetatails eval "z(2,1)"
  stuffle  print the quasi-shuffle expansion of a product of two values
  tails    evaluate one weighted tail/partial-sum series family
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import resources

from mpmath import mp, nstr

from .corpus import parse_corpus, verify_corpus, write_report
from .index_core import canonical_text, index_from_text
from .mzv import ensure_named_constants, mzv_numeric
from .algebra import stuffle, star_expand
from .precision import PrecisionContext
from .tails import BUILDERS, builder_value


def bundled_corpus_text() -> str:
    return resources.files("zetatails.data").joinpath("identities.mzv").read_text()


def _context(args) -> PrecisionContext:
    return PrecisionContext(
        working_digits=args.prec, target_tol=args.tol, max_n=args.max_n
    )


def _add_context_args(sp):
    sp.add_argument("--prec", type=int, default=40, help="working decimal digits")
    sp.add_argument("--tol", default="1e-10", help="target tolerance")
    sp.add_argument("--max-n", type=int, default=1 << 24, dest="max_n",
                    help="hard cap on summation cutoffs")


def _cmd_verify(args) -> int:
    ctx = _context(args)
    if args.corpus:
        with open(args.corpus) as fh:
            text = fh.read()
    else:
        text = bundled_corpus_text()
    records = parse_corpus(text)
    if args.only:
        wanted = set(args.only.split(","))
        records = [r for r in records if r.identity_id in wanted]
    report = verify_corpus(records, ctx, jobs=args.jobs)
    for r in sorted(report.results, key=lambda r: r["id"]):
        status = "pass" if r["pass"] else "FAIL"
        detail = r.get("error") or f"gap {r.get('gap')}"
        print(f"{r['id']:>10}  {status}  {detail}")
    summary = report.as_dict()["summary"]
    print(f"{summary['passed']}/{summary['total']} passed")
    if args.report:
        write_report(report, args.report)
    return 0 if report.all_pass() else 1


def _cmd_eval(args) -> int:
    ctx = _context(args)
    ensure_named_constants(ctx)
    idx = index_from_text(args.value)
    res = mzv_numeric(idx, ctx)
    digits = min(ctx.working_digits, args.digits)
    print(f"{canonical_text(idx)} = {nstr(res.value.value, digits)}"
          f"  (bound {nstr(res.value.err, 3)})")
    return 0


def _cmd_stuffle(args) -> int:
    u = index_from_text(args.left)
    v = index_from_text(args.right)
    if u.star or v.star:
        print("star inputs are expanded into strict values first", file=sys.stderr)
        return 2
    print(stuffle(u, v).text())
    return 0


def _parse_builder_args(tokens):
    out = []
    for t in tokens:
        if t in ("+", "-"):
            out.append(t)
        elif "/" in t:
            a, b = t.split("/", 1)
            out.append(Fraction(int(a), int(b)))
        else:
            out.append(int(t))
    return tuple(out)


def _cmd_tails(args) -> int:
    ctx = _context(args)
    if args.family not in BUILDERS:
        print(f"unknown family {args.family!r}; choose from "
              f"{', '.join(sorted(BUILDERS))}", file=sys.stderr)
        return 2
    res = builder_value(args.family, _parse_builder_args(args.args), ctx)
    digits = min(ctx.working_digits, args.digits)
    print(f"{nstr(res.value, digits)}  (bound {nstr(res.err, 3)})")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="zetatails",
        description="High precision nested-sum values, tail series and "
                    "identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="verify an identity corpus")
    sp.add_argument("corpus", nargs="?", help="corpus file (bundled if omitted)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--report", help="write a JSON report to this path")
    sp.add_argument("--only", help="comma separated ids to run")
    _add_context_args(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("eval", help="evaluate one nested-sum value")
    sp.add_argument("value", help='e.g. "z(2,1)" or "zs(-2,1)"')
    sp.add_argument("--digits", type=int, default=30)
    _add_context_args(sp)
    sp.set_defaults(fn=_cmd_eval)

    sp = sub.add_parser("stuffle", help="expand a product of two strict values")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(fn=_cmd_stuffle)

    sp = sub.add_parser("tails", help="evaluate one weighted series family")
    sp.add_argument("family", help=", ".join(sorted(BUILDERS)))
    sp.add_argument("args", nargs="+", help="integer/rational/sign arguments")
    sp.add_argument("--digits", type=int, default=30)
    _add_context_args(sp)
    sp.set_defaults(fn=_cmd_tails)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
