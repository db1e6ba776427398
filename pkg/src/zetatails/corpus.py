"""Identity corpus: a small text format for series evaluations, a parser
with positioned error messages, a verification runner and a JSON report.

Each record is one line of the form

    id q1 : series F2(2,2;1) = 2*z(2)*z(2,1) + z(3) - z(2)*z(2)

The left side is a rational-linear combination of series builder calls; the
right side is a rational-linear combination of products of closed-form atoms
(z(...), zs(...), ln2, pi, Li(p,x), const(label)).  Blank lines and lines
starting with '#' are skipped.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, nstr

from .algebra import ConstantAtom, LinComb
from .index_core import SignedIndex
from .mzv import ensure_named_constants, lincomb_numeric
from .precision import PrecisionContext, Real
from .tails import BUILDERS, builder_value


class CorpusSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class IdentityRecord:
    identity_id: str
    lhs: tuple  # ((coeff, name, arg_groups), ...)
    rhs: LinComb
    source: str  # the raw record text, kept for round trips

    def text(self) -> str:
        return self.source


@dataclass
class VerificationReport:
    context: dict
    results: list = field(default_factory=list)

    def all_pass(self) -> bool:
        return all(r["pass"] for r in self.results)

    def as_dict(self) -> dict:
        results = sorted(self.results, key=lambda r: r["id"])
        return {
            "schema": 1,
            "context": self.context,
            "results": results,
            "summary": {
                "total": len(results),
                "passed": sum(1 for r in results if r["pass"]),
                "failed": sum(1 for r in results if not r["pass"]),
                "skipped": 0,
            },
        }


# ---------------------------------------------------------------------------
# tokenizer / parser


class _Parser:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, msg: str) -> CorpusSyntaxError:
        return CorpusSyntaxError(msg, self.line_no, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] in "_-."
        ):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            return Fraction(num, self.integer())
        return Fraction(num)


def _parse_builder_arg(p: _Parser):
    """One argument inside a builder call: integer, rational, or +/- sign."""
    c = p.peek()
    if c in "+-" and not (
        p.pos + 1 < len(p.text) and p.text[p.pos + 1].isdigit()
    ):
        p.pos += 1
        return c
    return p.rational()


def _parse_builder_call(p: _Parser):
    name = p.word()
    if name not in BUILDERS:
        raise p.error(f"unknown series builder {name!r}")
    p.expect("(")
    args = []
    while True:
        args.append(_parse_builder_arg(p))
        c = p.peek()
        if c in ",;":
            p.pos += 1
            continue
        break
    p.expect(")")
    norm = []
    for a in args:
        if isinstance(a, Fraction) and a.denominator == 1:
            norm.append(int(a))
        else:
            norm.append(a)
    return name, tuple(norm)


def _parse_lhs(p: _Parser):
    """Rational-linear combination of builder calls."""
    out = []
    first = True
    while True:
        c = p.peek()
        if c == "=" or not c:
            break
        sign = Fraction(1)
        if c in "+-":
            if c == "-":
                sign = -sign
            p.pos += 1
        elif not first:
            raise p.error("expected '+', '-' or '='")
        coeff = sign
        if p.peek().isdigit():
            coeff = sign * p.rational()
            p.expect("*")
        name, args = _parse_builder_call(p)
        out.append((coeff, name, args))
        first = False
    if not out:
        raise p.error("empty left-hand side")
    return tuple(out)


def _parse_atom(p: _Parser):
    name = p.word()
    if name in ("z", "zs"):
        p.expect("(")
        entries = [p.integer()]
        while p.peek() == ",":
            p.pos += 1
            entries.append(p.integer())
        p.expect(")")
        try:
            return SignedIndex(tuple(entries), star=(name == "zs"))
        except ValueError as e:
            raise p.error(str(e)) from None
    if name == "ln2":
        return ConstantAtom("ln2")
    if name == "pi":
        return ConstantAtom("pi")
    if name == "Li":
        p.expect("(")
        s = p.integer()
        p.expect(",")
        x = p.rational()
        p.expect(")")
        try:
            return ConstantAtom("polylog", s=s, x=x)
        except ValueError as e:
            raise p.error(str(e)) from None
    if name == "const":
        p.expect("(")
        label = p.word()
        p.expect(")")
        return ConstantAtom("named", label=label)
    raise p.error(f"unknown atom {name!r}")


def _parse_rhs(p: _Parser) -> LinComb:
    total = LinComb.zero()
    first = True
    while not p.at_end():
        c = p.peek()
        sign = Fraction(1)
        if c in "+-":
            if c == "-":
                sign = -sign
            p.pos += 1
        elif not first:
            raise p.error("expected '+' or '-' between terms")
        coeff = sign
        if p.peek().isdigit():
            coeff = sign * p.rational()
            if p.peek() == "*":
                p.pos += 1
            else:
                total = total + LinComb.of(coeff)
                first = False
                continue
        factors = [_parse_atom(p)]
        while p.peek() == "*":
            p.pos += 1
            factors.append(_parse_atom(p))
        total = total + LinComb.of(coeff, *factors)
        first = False
    if first:
        raise p.error("empty right-hand side")
    return total


def parse_record(line: str, line_no: int) -> IdentityRecord:
    p = _Parser(line, line_no)
    p.expect("id")
    identity_id = p.word()
    p.expect(":")
    p.expect("series")
    lhs = _parse_lhs(p)
    p.expect("=")
    rhs = _parse_rhs(p)
    return IdentityRecord(identity_id, lhs, rhs, line.strip())


def parse_corpus(text: str) -> list[IdentityRecord]:
    records = []
    seen = set()
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rec = parse_record(raw.rstrip(), i)
        if rec.identity_id in seen:
            raise CorpusSyntaxError(f"duplicate id {rec.identity_id!r}", i, 1)
        seen.add(rec.identity_id)
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# verification


def _fmt(x: mpf, digits: int) -> str:
    return nstr(mpf(x), digits, strip_zeros=False)


def verify_record(rec: IdentityRecord, ctx: PrecisionContext) -> dict:
    ensure_named_constants(ctx)
    t0 = time.perf_counter()
    try:
        with mp.workdps(ctx.working_dps):
            lhs = Real(mpf(0))
            for coeff, name, args in rec.lhs:
                lhs = lhs + builder_value(name, args, ctx) * Fraction(coeff)
            rhs = lincomb_numeric(rec.rhs, ctx)
            gap = abs(lhs.value - rhs.value)
            budget = lhs.err + rhs.err + ctx.target_tol
            ok = bool(gap <= budget)
            out = {
                "id": rec.identity_id,
                "source": rec.source,
                "pass": ok,
                "lhs": _fmt(lhs.value, ctx.working_digits),
                "rhs": _fmt(rhs.value, ctx.working_digits),
                "gap": _fmt(gap, 3),
                "err_budget": _fmt(budget, 3),
                "terms_used": len(rec.lhs) + len(rec.rhs.terms),
            }
    except Exception as e:  # malformed parameters, divergent family, ...
        out = {"id": rec.identity_id, "source": rec.source, "pass": False,
               "error": f"{type(e).__name__}: {e}"}
    out["ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return out


def _verify_one(payload):
    source, line_no, working_digits, tol_str = payload
    ctx = PrecisionContext(working_digits=working_digits, target_tol=mpf(tol_str))
    return verify_record(parse_record(source, line_no), ctx)


def verify_corpus(records, ctx: PrecisionContext, jobs: int = 1) -> VerificationReport:
    report = VerificationReport(
        context={
            "digits": ctx.working_digits,
            "tol": _fmt(ctx.target_tol, 3),
            "max_n": ctx.max_n,
        }
    )
    if jobs > 1 and len(records) > 1:
        tol = nstr(ctx.target_tol, 5)
        payloads = [
            (rec.source, i + 1, ctx.working_digits, tol)
            for i, rec in enumerate(records)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.results = list(pool.map(_verify_one, payloads))
    else:
        report.results = [verify_record(rec, ctx) for rec in records]
    return report


def write_report(report: VerificationReport, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
