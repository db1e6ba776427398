"""Precision management and the basic constant vocabulary.

A :class:`PrecisionContext` fixes the number of working decimal digits, the
target tolerance and iteration budgets, and carries a per-context cache of
evaluated constants.  All numeric kernels take an explicit context; global
mpmath precision is only touched inside ``mp.workdps`` blocks, so contexts at
different precisions can coexist in one process.

Real values travel together with a conservative absolute error bound so that
verification can report an honest error budget next to each identity gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, zeta, log, pi, euler, polylog as _mp_polylog

GUARD_DIGITS = 15


@dataclass(frozen=True)
class PrecisionContext:
    working_digits: int = 40
    target_tol: mpf = None
    max_n: int = 1 << 24
    _named: dict = field(default_factory=dict, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.working_digits < 20:
            raise ValueError("working_digits must be at least 20")
        if self.target_tol is None:
            object.__setattr__(self, "target_tol", mpf("1e-10"))
        else:
            object.__setattr__(self, "target_tol", mpf(self.target_tol))
        floor = mpf(10) ** (-(self.working_digits - 10))
        if self.target_tol < floor:
            raise ValueError("target_tol too tight for working_digits (10 guard digits reserved)")

    @property
    def working_dps(self) -> int:
        return self.working_digits + GUARD_DIGITS


@dataclass(frozen=True)
class Real:
    """A value with an attached absolute error bound."""

    value: mpf
    err: mpf = mpf(0)

    def __add__(self, other):
        o = as_real(other)
        return Real(self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __neg__(self):
        return Real(-self.value, self.err)

    def __sub__(self, other):
        o = as_real(other)
        return Real(self.value - o.value, self.err + o.err)

    def __rsub__(self, other):
        return as_real(other) - self

    def __mul__(self, other):
        o = as_real(other)
        return Real(
            self.value * o.value,
            abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err,
        )

    __rmul__ = __mul__


def as_real(x) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, Fraction):
        return Real(mpf(x.numerator) / x.denominator)
    return Real(mpf(x))


def _cached(ctx: PrecisionContext, key, compute):
    hit = ctx._cache.get(key)
    if hit is None:
        with mp.workdps(ctx.working_dps):
            hit = compute()
        ctx._cache[key] = hit
    return hit


def zeta_value(s: int, ctx: PrecisionContext) -> Real:
    """zeta(s) for integer s >= 2."""
    if s < 2:
        raise ValueError("zeta_value requires s >= 2")
    return _cached(ctx, ("z", s), lambda: Real(zeta(s)))


def alt_zeta_value(s: int, ctx: PrecisionContext) -> Real:
    """Sum_{k>=1} (-1)^(k-1) k^(-s) (the eta function), s >= 1."""
    if s < 1:
        raise ValueError("alt_zeta_value requires s >= 1")
    if s == 1:
        return ln2(ctx)
    return _cached(ctx, ("eta", s), lambda: Real((1 - mpf(2) ** (1 - s)) * zeta(s)))


def ln2(ctx: PrecisionContext) -> Real:
    return _cached(ctx, ("ln2",), lambda: Real(log(2)))


def pi_value(ctx: PrecisionContext) -> Real:
    return _cached(ctx, ("pi",), lambda: Real(+pi))


def euler_gamma(ctx: PrecisionContext) -> Real:
    return _cached(ctx, ("gamma",), lambda: Real(+euler))


def polylog(p: int, x: Fraction, ctx: PrecisionContext) -> Real:
    """Li_p(x) for integer p >= 1 and rational |x| <= 1, (p, x) != (1, 1)."""
    x = Fraction(x)
    if p < 1 or abs(x) > 1:
        raise ValueError("polylog requires p >= 1 and |x| <= 1")
    if x == 1:
        if p < 2:
            raise ValueError("Li_1(1) diverges")
        return zeta_value(p, ctx)
    return _cached(
        ctx, ("Li", p, x), lambda: Real(_mp_polylog(p, mpf(x.numerator) / x.denominator))
    )


def zeta_tail(s: int, n: int, ctx: PrecisionContext) -> Real:
    """zeta(s) - zeta_n(s) = Sum_{j>n} j^(-s), computed without cancellation."""
    if s < 2:
        raise ValueError("zeta_tail requires s >= 2")
    if n == 0:
        return zeta_value(s, ctx)

    def compute():
        from .asymp import ParitySeries, power_tail

        amax, m = _tail_plan(s, n, ctx.working_dps)
        # evaluate the asymptotic expansion far out, then walk back exactly
        ps = ParitySeries(even=power_tail(s, 0, amax), amax=amax)
        val, err = ps.eval_at(m)
        for j in range(m, n, -1):
            val += mpf(j) ** (-s)
        return Real(val, err)

    return _cached(ctx, ("ztail", s, n), compute)


def alt_zeta_tail(s: int, n: int, ctx: PrecisionContext) -> Real:
    """eta(s) - eta_n(s) = Sum_{j>n} (-1)^(j-1) j^(-s), s >= 1."""
    if s < 1:
        raise ValueError("alt_zeta_tail requires s >= 1")
    if n == 0:
        return alt_zeta_value(s, ctx)

    def compute():
        from .asymp import ParitySeries, alt_power_tail

        amax, m = _tail_plan(s, n, ctx.working_dps)
        # Sum_{j>m} (-1)^j j^(-s), then flip to the (-1)^(j-1) convention
        ps = ParitySeries(odd=alt_power_tail(s, 0, amax), amax=amax)
        val, err = ps.eval_at(m)
        val = -val
        for j in range(m, n, -1):
            val += (-1) ** (j - 1) * mpf(j) ** (-s)
        return Real(val, err)

    return _cached(ctx, ("atail", s, n), compute)


def _tail_plan(s: int, n: int, dps: int) -> tuple[int, int]:
    """Pick an expansion order and evaluation point for a tail at cutoff n.

    The expansions are asymptotic, so accuracy near 10^-dps needs the
    evaluation point m pushed out to roughly (amax / 2 pi e) 10^(dps / amax);
    the gap n..m is bridged by exact term-by-term summation.
    """
    import math

    amax = max(s + 6, dps // 2, 14)
    m = int(amax / (2 * math.pi * math.e) * 10 ** ((dps + 8) / amax)) + 1
    return amax, max(n, m, 30)


def register_named(ctx: PrecisionContext, name: str, value: Real) -> None:
    ctx._named[name] = value


def named_value(ctx: PrecisionContext, name: str) -> Real:
    try:
        return ctx._named[name]
    except KeyError:
        raise KeyError(f"named constant {name!r} is not registered") from None


def has_named(ctx: PrecisionContext, name: str) -> bool:
    return name in ctx._named
