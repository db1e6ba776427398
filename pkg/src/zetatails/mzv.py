"""Numeric evaluation of (alternating) multiple zeta and zeta star values.

The evaluator splits the strict summation simplex at a cutoff N by how many
of the outer variables exceed N:

    zeta(s1,...,sm) = Sum_{i=0}^{m} U_i(N) * zeta_N(s_{i+1},...,s_m)

where U_i(n) = Sum_{k_1 > ... > k_i > n} prod_j sgn(s_j)^{k_j} k_j^(-|s_j|)
is the pure tail of the first i slots.  Each U_i is held as a truncated
asymptotic expansion (U_i = tail of term_i * U_{i-1}, built with the
Euler-Maclaurin/Boole tail operator), and the suffix partial sums zeta_N are
streamed in floating point.  The result carries the expansion truncation
error; N and the expansion order grow until the bound meets tolerance.

Star values are evaluated through the expansion of the weak simplex into
strict pieces; formal linear combinations evaluate term by term with exact
rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import precision as pr
from .asymp import ParitySeries
from .algebra import ConstantAtom, LinComb, star_expand
from .index_core import SignedIndex
from .precision import PrecisionContext, Real


class InadmissibleIndexError(ValueError):
    """The requested nested sum diverges (leading entry +1)."""


class ToleranceNotMetError(RuntimeError):
    def __init__(self, achieved):
        super().__init__(f"could not meet tolerance; achieved bound {achieved}")
        self.achieved = achieved


@dataclass(frozen=True)
class EvalResult:
    value: Real
    terms_used: int
    tail_estimate: mpf


def _suffix_partials(entries: tuple[int, ...], N: int) -> list[mpf]:
    """[zeta_N(s_{i+1},...,s_m) for i = 0..m], floating point, strict order."""
    m = len(entries)
    t = [mp.zero] * m + [mp.one]
    for n in range(1, N + 1):
        for j in range(m):  # strict: inner suffix still at n-1
            s = entries[j]
            term = mpf(n) ** (-abs(s))
            if s < 0 and n % 2:
                term = -term
            t[j] += term * t[j + 1]
    return t


def _strict_eval(entries: tuple[int, ...], ctx: PrecisionContext) -> EvalResult:
    if entries and entries[0] == 1:
        raise InadmissibleIndexError(f"leading entry +1 in {entries}")
    key = ("mzv", entries)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    m = len(entries)
    with mp.workdps(ctx.working_dps):
        N, amax = 90, max(16, ctx.working_dps // 2)
        best = None
        for _ in range(5):
            tails = [ParitySeries.one(amax)]
            u = tails[0]
            for s in entries:
                u = u.weight(abs(s))
                if s < 0:
                    u = u.parity_flip()
                u = u.tail()
                tails.append(u)
            partials = _suffix_partials(entries, N)
            val = mp.zero
            err = mp.zero
            for i in range(m + 1):
                v, e = tails[i].eval_at(N)
                val += v * partials[i]
                err += e * abs(partials[i])
            best = EvalResult(Real(val, err), N, err)
            if err <= ctx.target_tol:
                break
            N, amax = N * 2, amax + 6
        else:
            raise ToleranceNotMetError(best.tail_estimate)
    ctx._cache[key] = best
    return best


def mzv_numeric(idx: SignedIndex, ctx: PrecisionContext) -> EvalResult:
    if not idx.is_admissible():
        raise InadmissibleIndexError(f"leading entry +1 in {idx.entries}")
    if not idx.star or idx.depth <= 1:
        return _strict_eval(idx.entries, ctx)
    key = ("mzv*", idx.entries)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    total = Real(mpf(0))
    terms = 0
    with mp.workdps(ctx.working_dps):
        for t in star_expand(idx).terms:
            part = _strict_eval(t.factors[0].entries, ctx)
            total = total + part.value
            terms = max(terms, part.terms_used)
        res = EvalResult(total, terms, total.err)
    ctx._cache[key] = res
    return res


def atom_numeric(atom: ConstantAtom, ctx: PrecisionContext) -> Real:
    if atom.kind == "zeta":
        return pr.zeta_value(atom.s, ctx)
    if atom.kind == "ln2":
        return pr.ln2(ctx)
    if atom.kind == "pi":
        return pr.pi_value(ctx)
    if atom.kind == "polylog":
        return pr.polylog(atom.s, atom.x, ctx)
    if atom.kind == "named":
        return pr.named_value(ctx, atom.label)
    raise ValueError(f"unknown atom kind {atom.kind!r}")


def lincomb_numeric(expr: LinComb, ctx: PrecisionContext) -> Real:
    with mp.workdps(ctx.working_dps):
        total = Real(mpf(0))
        for term in expr.terms:
            acc = Real(mpf(term.coeff.numerator) / term.coeff.denominator)
            for f in term.factors:
                if isinstance(f, SignedIndex):
                    acc = acc * mzv_numeric(f, ctx).value
                else:
                    acc = acc * atom_numeric(f, ctx)
            total = total + acc
        return total


def ensure_named_constants(ctx: PrecisionContext) -> None:
    """Register the irreducible star constants used by closed forms."""
    for label, entries in (("zs62", (6, 2)), ("zs82", (8, 2))):
        if not pr.has_named(ctx, label):
            res = mzv_numeric(SignedIndex(entries, star=True), ctx)
            pr.register_named(ctx, label, res.value)
