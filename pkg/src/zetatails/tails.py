"""Tail-sum series: exact summation-by-parts identities, numeric evaluation
of quadratic/cubic/weighted tail series, and the catalog of closed forms.

The numeric core is a single engine, :func:`series_sum`.  A summand is a sum
of products of *factors* (zeta tails, partial sums, star-tail sums, running
partial sums of another summand), weighted by n^(-r) and an optional sign
(-1)^(n-1) or x^n.  Every factor exposes

  * ``stream(N, amax)``: values f(1..N) computed in a numerically stable
    direction (tails run downward from a far seed, partials run upward), and
  * ``series(amax)``: a truncated asymptotic expansion of f(n),

so the series value is an explicit sum to N plus the tail operator applied to
the product expansion, evaluated at N.  No step ever subtracts two nearly
equal partial sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, bernfrac, euler, log

from . import precision as pr
from .asymp import DivergentSeriesError, ParitySeries, alt_power_tail, power_tail
from .algebra import ConstantAtom, LinComb
from .index_core import SignedIndex
from .mzv import lincomb_numeric, mzv_numeric
from .precision import PrecisionContext, Real


# ---------------------------------------------------------------------------
# exact identities (summation by parts)


def abel_residual(a, b, x, A, B) -> Fraction:
    """Difference of the two sides of the finite summation-by-parts identity

        (1-x) sum_k (A-A_k)(B-B_k) x^k
          = ABx - (A-A_n)(B-B_n)x^(n+1)
            - (sum a_k x^k)(B-B_n) - (sum b_k x^k)(A-A_n)
            - sum_k (sum_{i<=k} a_i x^i) b_k - sum_k (sum_{i<=k} b_i x^i) a_k
            + sum_k a_k b_k x^k

    over exact rationals.  The identity is algebraic in A and B, so any
    values may be passed; the residual is always zero.
    """
    a = [Fraction(v) for v in a]
    b = [Fraction(v) for v in b]
    if len(a) != len(b):
        raise ValueError("sequences must have equal length")
    x, A, B = Fraction(x), Fraction(A), Fraction(B)
    n = len(a)
    Ak = Bk = Fraction(0)
    ax = bx = Fraction(0)  # sum a_i x^i, sum b_i x^i
    lhs = Fraction(0)
    cross = Fraction(0)
    abx = Fraction(0)
    xk = Fraction(1)
    for k in range(n):
        xk *= x
        Ak += a[k]
        Bk += b[k]
        ax += a[k] * xk
        bx += b[k] * xk
        lhs += (A - Ak) * (B - Bk) * xk
        cross += ax * b[k] + bx * a[k]
        abx += a[k] * b[k] * xk
    rhs = (
        A * B * x
        - (A - Ak) * (B - Bk) * xk * x
        - ax * (B - Bk)
        - bx * (A - Ak)
        - cross
        + abx
    )
    return (1 - x) * lhs - rhs


def finite_symmetry_residual(a, b) -> Fraction:
    """sum A_k b_k + sum B_k a_k - sum a_k b_k - A_n B_n, always zero."""
    a = [Fraction(v) for v in a]
    b = [Fraction(v) for v in b]
    if len(a) != len(b):
        raise ValueError("sequences must have equal length")
    Ak = Bk = total = Fraction(0)
    for ak, bk in zip(a, b):
        Ak += ak
        Bk += bk
        total += Ak * bk + Bk * ak - ak * bk
    return total - Ak * Bk


# ---------------------------------------------------------------------------
# factors


def _signed_full_value(s: int) -> mpf:
    """Sum_{k>=1} sgn(s)^k k^(-|s|) at the ambient precision."""
    from mpmath import zeta

    if s >= 2:
        return zeta(s)
    if s < 0:
        p = -s
        if p == 1:
            return -log(2)
        return -(1 - mpf(2) ** (1 - p)) * zeta(p)
    raise DivergentSeriesError("harmonic leading term has no full value")


def _term(s: int, n: int) -> mpf:
    t = mpf(n) ** (-abs(s))
    return -t if (s < 0 and n % 2) else t


class PowerTail:
    """f(n) = Sum_{k>n} sgn(s)^k k^(-|s|)."""

    def __init__(self, s: int):
        if s == 0 or s == 1:
            raise DivergentSeriesError("tail requires s >= 2 or s negative")
        self.s = s

    def series(self, amax: int) -> ParitySeries:
        if self.s > 0:
            return ParitySeries(even=power_tail(self.s, 0, amax), amax=amax)
        return ParitySeries(odd=alt_power_tail(-self.s, 0, amax), amax=amax)

    def stream(self, N: int, amax: int):
        val, err = self.series(amax).eval_at(N)
        out = [mp.zero] * (N + 1)
        out[N] = val
        for n in range(N, 1, -1):
            out[n - 1] = out[n] + _term(self.s, n)
        return out, err


class Partial:
    """f(n) = zeta_n(s) = Sum_{k<=n} sgn(s)^k k^(-|s|); H_n when s = 1."""

    def __init__(self, s: int):
        if s == 0:
            raise ValueError("s must be nonzero")
        self.s = s

    def series(self, amax: int) -> ParitySeries:
        if self.s == 1:
            even = {(0, 1): mp.one, (0, 0): +euler, (1, 0): mpf(1) / 2}
            j = 1
            while 2 * j <= amax:
                p, q = bernfrac(2 * j)
                even[(2 * j, 0)] = -mpf(int(p)) / (int(q) * 2 * j)
                j += 1
            return ParitySeries(even=even, amax=amax)
        full = ParitySeries(even={(0, 0): _signed_full_value(self.s)}, amax=amax)
        return full - PowerTail(self.s).series(amax)

    def stream(self, N: int, amax: int):
        out = [mp.zero] * (N + 1)
        for n in range(1, N + 1):
            out[n] = out[n - 1] + _term(self.s, n)
        return out, mp.zero


class StarTail:
    """f(n) = Sum_{k>n} k^(-a) zeta_k(b), the tail of the weak double sum."""

    def __init__(self, a: int, b: int):
        if a < 2:
            raise DivergentSeriesError("star tail requires outer exponent >= 2")
        self.a, self.b = a, b

    def series(self, amax: int) -> ParitySeries:
        return Partial(self.b).series(amax).weight(self.a).tail()

    def stream(self, N: int, amax: int):
        val, err = self.series(amax).eval_at(N)
        inner, _ = Partial(self.b).stream(N, amax)
        out = [mp.zero] * (N + 1)
        out[N] = val
        for n in range(N, 1, -1):
            out[n - 1] = out[n] + mpf(n) ** (-self.a) * inner[n]
        return out, err


class Const:
    def __init__(self, value: mpf):
        self.value = mpf(value)

    def series(self, amax: int) -> ParitySeries:
        return ParitySeries.constant(self.value, amax)

    def stream(self, N: int, amax: int):
        return [self.value] * (N + 1), mp.zero


class PartialOf:
    """f(n) = Sum_{k<=n} h(k) for a summand h given in engine form.

    The expansion splits off the 1/k component of h (coefficient c), which
    integrates to c H_n; the remainder is summable, so

        f(n) = c H_n + C - Sum_{k>n} (h(k) - c/k),

    with C = Sum_{k>=1} (h(k) - c/k) evaluated once by the usual explicit
    sum plus tail expansion.
    """

    def __init__(self, groups, r: int = 0, parity: bool = False):
        self.groups = [(Fraction(c), tuple(fs)) for c, fs in groups]
        self.r = r
        self.parity = parity
        self._cache = {}

    def _h_series(self, amax: int) -> ParitySeries:
        total = ParitySeries(amax=amax)
        for c, fs in self.groups:
            p = ParitySeries.one(amax)
            for f in fs:
                p = p.mul(f.series(amax))
            total = total + p.scale(mpf(c.numerator) / c.denominator)
        total = total.weight(self.r)
        if self.parity:
            total = total.parity_flip()
        return total

    def _h_stream(self, N: int, amax: int):
        vals = [mp.zero] * (N + 1)
        err = mp.zero
        for c, fs in self.groups:
            streams = []
            for f in fs:
                sv, se = f.stream(N, amax)
                streams.append((sv, se))
                err += se  # crude, factors here are O(1)
            cc = mpf(c.numerator) / c.denominator
            for n in range(1, N + 1):
                t = cc
                for sv, _ in streams:
                    t *= sv[n]
                vals[n] += t
        for n in range(1, N + 1):
            w = mpf(n) ** (-self.r)
            if self.parity and n % 2:
                w = -w
            vals[n] *= w
        return vals, err

    def _parts(self, amax: int):
        key = (amax, mp.prec)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        h = self._h_series(amax)
        c = h.even.pop((1, 0), mp.zero)
        guard = h._scale_ref() * mpf(10) ** (-(mp.dps - 8))
        for (a, b), v in list(h.even.items()):
            if a == 1 and b > 0 and abs(v) > guard:
                raise DivergentSeriesError("running sum grows like ln^k n, unsupported")
        rest_tail = h.tail()
        K = 200
        hv, herr = self._h_stream(K, amax)
        C = sum(hv[n] - c / n for n in range(1, K + 1))
        tv, terr = rest_tail.eval_at(K)
        C += tv
        parts = (c, C, rest_tail, herr + terr)
        self._cache[key] = parts
        return parts

    def series(self, amax: int) -> ParitySeries:
        c, C, rest_tail, _ = self._parts(amax)
        out = Partial(1).series(amax).scale(c)
        out = out + ParitySeries.constant(C, amax)
        return out - rest_tail

    def stream(self, N: int, amax: int):
        hv, herr = self._h_stream(N, amax)
        _, _, _, cerr = self._parts(amax)
        out = [mp.zero] * (N + 1)
        for n in range(1, N + 1):
            out[n] = out[n - 1] + hv[n]
        return out, herr + cerr


# ---------------------------------------------------------------------------
# the engine


def _default_amax() -> int:
    return max(18, mp.dps // 2)


def series_sum(groups, r: int = 0, x: Fraction = Fraction(1), alt: bool = False,
               N: int = 120, tol=None) -> Real:
    """Sum_{n>=1} [sum_g c_g prod f(n)] n^(-r) x^n ((-1)^(n-1) if alt).

    Must run inside an mp.workdps block; ``tol`` triggers adaptive retries
    with larger cutoff and expansion order.
    """
    x = Fraction(x)
    if abs(x) >= 1 and x != 1 and x != -1:
        raise ValueError("|x| must be < 1, or x = +-1")
    if abs(x) < 1:
        return _geometric_sum(groups, r, x, alt, _default_amax())
    amax = _default_amax()
    attempts = 3 if tol is not None else 1
    best = None
    for i in range(attempts):
        best = _series_sum_once(groups, r, x == -1, alt, N, amax)
        if tol is None or best.err <= tol:
            return best
        N, amax = N * 2, amax + 8
    return best


def _series_sum_once(groups, r, flip_x, alt, N, amax) -> Real:
    total_series = ParitySeries(amax=amax)
    for c, fs in groups:
        p = ParitySeries.one(amax)
        for f in fs:
            p = p.mul(f.series(amax))
        total_series = total_series + p.scale(mpf(c.numerator) / c.denominator)
    total_series = total_series.weight(r)
    neg = False
    if flip_x:
        total_series = total_series.parity_flip()
    if alt:  # (-1)^(n-1) = -(-1)^n
        total_series = total_series.parity_flip()
        neg = not neg
    if neg:
        total_series = total_series.scale(-1)
    tail_val, tail_err = total_series.tail().eval_at(N)

    explicit = mp.zero
    err = tail_err
    for c, fs in groups:
        streams = [f.stream(N, amax) for f in fs]
        cc = mpf(c.numerator) / c.denominator
        for n in range(1, N + 1):
            v = cc
            hi = abs(cc)
            for sv, se in streams:
                v *= sv[n]
                hi *= abs(sv[n]) + se
            w = mpf(n) ** (-r)
            if (flip_x != alt) and n % 2:
                w = -w
            if alt:
                w = -w  # combined with the flip above: (-1)^(n-1)
            explicit += w * v
            err += abs(w) * (hi - abs(v))
    return Real(explicit + tail_val, err)


def _geometric_sum(groups, r, x, alt, amax) -> Real:
    xv = mpf(x.numerator) / x.denominator
    N = int((mp.dps + 8) / -mp.log10(abs(xv))) + 4
    explicit = mp.zero
    err = mp.zero
    last = mp.zero
    for c, fs in groups:
        streams = [f.stream(N, amax) for f in fs]
        cc = mpf(c.numerator) / c.denominator
        xn = mp.one
        for n in range(1, N + 1):
            xn *= xv
            v = cc
            hi = abs(cc)
            for sv, se in streams:
                v *= sv[n]
                hi *= abs(sv[n]) + se
            w = xn * mpf(n) ** (-r)
            if alt and n % 2 == 0:
                w = -w
            explicit += w * v
            err += abs(w) * (hi - abs(v))
            if n == N:
                last = abs(w) * hi
    return Real(explicit, err + 2 * last / (1 - abs(xv)))


# ---------------------------------------------------------------------------
# sequence specs and the public numeric operations


@dataclass(frozen=True)
class SequenceSpec:
    """a_k = k^(-s) (power), sgn^k k^(-|s|) (alt_power via negative s is also
    accepted), x^k k^(-s) (geometric_power) or an explicit finite list."""

    kind: str
    s: int = 0
    x: Fraction = Fraction(0)
    values: tuple = ()

    def signed_exponent(self) -> int:
        if self.kind == "power":
            if self.s < 2:
                raise ValueError("power spec needs s >= 2 for a convergent tail")
            return self.s
        if self.kind == "alt_power":
            return -abs(self.s)
        raise ValueError(f"no signed exponent for kind {self.kind!r}")


def power_spec(s: int) -> SequenceSpec:
    return SequenceSpec("power", s=s)


def alt_power_spec(s: int) -> SequenceSpec:
    return SequenceSpec("alt_power", s=s)


def geometric_spec(s: int, x) -> SequenceSpec:
    return SequenceSpec("geometric_power", s=s, x=Fraction(x))


def finite_spec(values) -> SequenceSpec:
    return SequenceSpec("finite_list", values=tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class TailSeriesSpec:
    """A weighted tail/partial-sum series family by builder name and args."""

    family: str
    args: tuple

    def value(self, ctx: PrecisionContext) -> Real:
        return builder_value(self.family, self.args, ctx)


def _finite_F(A: SequenceSpec, B: SequenceSpec, x: Fraction) -> Fraction:
    n = max(len(A.values), len(B.values))
    a = list(A.values) + [Fraction(0)] * (n - len(A.values))
    b = list(B.values) + [Fraction(0)] * (n - len(B.values))
    At, Bt = sum(a), sum(b)
    Ak = Bk = total = Fraction(0)
    xk = Fraction(1)
    for k in range(n):
        xk *= x
        Ak += a[k]
        Bk += b[k]
        total += (At - Ak) * (Bt - Bk) * xk
    return total


class GeomTail:
    """f(n) = Sum_{k>n} x^k k^(-s), |x| < 1; stream only (no expansion)."""

    def __init__(self, s: int, x: Fraction):
        self.s, self.x = s, Fraction(x)

    def stream(self, N: int, amax: int):
        xv = mpf(self.x.numerator) / self.x.denominator
        M = N + int((mp.dps + 8) / -mp.log10(abs(xv))) + 4
        out = [mp.zero] * (N + 1)
        acc = mp.zero
        for k in range(M, N, -1):
            acc += xv**k * mpf(k) ** (-self.s)
        out[N] = acc
        for n in range(N, 1, -1):
            out[n - 1] = out[n] + xv**n * mpf(n) ** (-self.s)
        err = abs(xv) ** (M + 1) / (1 - abs(xv))
        return out, err


def tail_quadratic_numeric(A: SequenceSpec, B: SequenceSpec, x, ctx: PrecisionContext) -> Real:
    """F(A, B; x) = Sum (A - A_n)(B - B_n) x^n."""
    x = Fraction(x)
    if A.kind == "finite_list" and B.kind == "finite_list":
        return pr.as_real(_finite_F(A, B, x))
    with mp.workdps(ctx.working_dps):
        factors = []
        geometric = False
        for spec in (A, B):
            if spec.kind == "geometric_power":
                factors.append(GeomTail(spec.s, spec.x))
                geometric = True
            else:
                factors.append(PowerTail(spec.signed_exponent()))
        if geometric and abs(x) == 1:
            # decay is geometric, sum explicitly past the geometric factor
            rate = max(abs(s.x) for s in (A, B) if s.kind == "geometric_power")
            ratev = mpf(rate.numerator) / rate.denominator
            N = int((mp.dps + 8) / -mp.log10(ratev)) + 4
            amax = _default_amax()
            streams = [f.stream(N, amax) for f in factors]
            total = mp.zero
            err = mp.zero
            for n in range(1, N + 1):
                v = mp.one if x == 1 else mpf(-1) ** n
                hi = mp.one
                for sv, se in streams:
                    v *= sv[n]
                    hi *= abs(sv[n]) + se
                total += v
                err += hi - abs(v)
            tail_bound = abs(streams[0][0][N] * streams[1][0][N]) * ratev / (1 - ratev)
            return Real(total, err + tail_bound)
        return series_sum([(Fraction(1), factors)], r=0, x=x, tol=ctx.target_tol)


def tail_cubic_numeric(m: int, p: int, r: int, ctx: PrecisionContext) -> Real:
    """Sum of products of three zeta tails."""
    if min(m, p, r) < 2:
        raise ValueError("cubic tails need exponents >= 2")
    with mp.workdps(ctx.working_dps):
        fs = [PowerTail(m), PowerTail(p), PowerTail(r)]
        return series_sum([(Fraction(1), fs)], tol=ctx.target_tol)


# ---------------------------------------------------------------------------
# builder vocabulary (the corpus LHS families)


def _zv(s: int) -> mpf:
    return _signed_full_value(s)


def _builder_F2(ctx, m, p, x=Fraction(1)):
    return series_sum([(Fraction(1), [PowerTail(m), PowerTail(p)])], x=Fraction(x),
                      tol=ctx.target_tol)


def _builder_F2alt(ctx, m, p):
    return series_sum([(Fraction(1), [PowerTail(m), PowerTail(p)])], alt=True,
                      tol=ctx.target_tol)


def _builder_F3(ctx, m, p, r):
    return series_sum([(Fraction(1), [PowerTail(m), PowerTail(p), PowerTail(r)])],
                      tol=ctx.target_tol)


def _builder_W(ctx, m, p, r):
    return series_sum([(Fraction(1), [PowerTail(m), PowerTail(p)])], r=r,
                      tol=ctx.target_tol)


def _builder_Q(ctx, m, p, r):
    return series_sum([(Fraction(1), [Partial(m), Partial(p)])], r=r,
                      tol=ctx.target_tol)


def _builder_Q3(ctx, m, p, q, r):
    return series_sum([(Fraction(1), [Partial(m), Partial(p), Partial(q)])], r=r,
                      tol=ctx.target_tol)


def _builder_M(ctx, m, p, k):
    groups = [
        (Fraction(1), [Const(_zv(m)), Partial(p)]),
        (Fraction(-1), [Const(_zv(p)), Partial(m)]),
    ]
    return series_sum(groups, r=k, tol=ctx.target_tol)


def _builder_M3(ctx, m, p, q, k):
    groups = [
        (Fraction(1), [Const(_zv(m)), Partial(p), Partial(q)]),
        (Fraction(-1), [Const(_zv(p)), Partial(m), Partial(q)]),
    ]
    return series_sum(groups, r=k, tol=ctx.target_tol)


def _builder_G(ctx, m, p, k):
    groups = [
        (Fraction(1), [Const(_zv(m) * _zv(p))]),
        (Fraction(-1), [Partial(m), Partial(p)]),
    ]
    return series_sum(groups, r=k, tol=ctx.target_tol)


def _builder_G3(ctx, m, p, q, k):
    groups = [
        (Fraction(1), [Const(_zv(p) * _zv(q)), Partial(m)]),
        (Fraction(-1), [Const(_zv(m)), Partial(p), Partial(q)]),
    ]
    return series_sum(groups, r=k, tol=ctx.target_tol)


def _builder_TP(ctx, m, p, k):
    return series_sum([(Fraction(1), [Partial(m), PowerTail(p)])], r=k,
                      tol=ctx.target_tol)


def _builder_L(ctx, m):
    return series_sum([(Fraction(1), [PowerTail(m)])], r=1, tol=ctx.target_tol)


def _builder_LS(ctx, s, m, sign="+"):
    return series_sum([(Fraction(1), [Partial(s)])], r=m, alt=(sign == "-"),
                      tol=ctx.target_tol)


def _star_tail_factor(a: int, b: int) -> StarTail:
    return StarTail(a, b)


def _builder_FS2(ctx, p, q):
    fs = [_star_tail_factor(p + 1, p), _star_tail_factor(q + 1, q)]
    return series_sum([(Fraction(1), fs)], tol=ctx.target_tol)


def _builder_FS3(ctx, p):
    fs = [_star_tail_factor(p + 1, p), _star_tail_factor(p + 2, p)]
    return series_sum([(Fraction(1), fs)], tol=ctx.target_tol)


def _one_sided_reflection(ctx, p, m, x: Fraction, y: Fraction) -> Real:
    """Sum_n y^n n^(-m) Sum_{k<=n} x^k k^(-p)."""
    x, y = Fraction(x), Fraction(y)
    if abs(y) < 1:
        inner = Partial(p) if x == 1 else (Partial(-p) if x == -1 else _GeomPartial(p, x))
        return series_sum([(Fraction(1), [inner])], r=m, x=y)
    if abs(x) == 1:
        inner = Partial(p if x == 1 else -p)
        res = series_sum([(Fraction(1), [inner])], r=m, x=y, tol=ctx.target_tol)
        return res
    # y = +-1, |x| < 1: split the inner sum into its limit and a geometric tail
    li = pr.polylog(p, x, ctx)
    if y == 1:
        if m < 2:
            raise DivergentSeriesError("outer harmonic weight with nonzero inner limit")
        outer = pr.zeta_value(m, ctx)
    else:
        outer = Real(_signed_full_value(-m))
    g = GeomTail(p, x)
    N = int((mp.dps + 8) / -mp.log10(abs(mpf(x.numerator) / x.denominator))) + 4
    gv, ge = g.stream(N, _default_amax())
    corr = mp.zero
    for n in range(1, N + 1):
        w = mpf(n) ** (-m)
        if y == -1 and n % 2:
            w = -w
        corr += w * gv[n]
    tail_bound = 2 * abs(gv[N]) * mpf(N) ** (-m)
    return li * outer - Real(corr, ge * N + tail_bound)


class _GeomPartial:
    """f(n) = Sum_{k<=n} x^k k^(-p), |x| < 1; stream only."""

    def __init__(self, p: int, x: Fraction):
        self.p, self.x = p, Fraction(x)

    def stream(self, N: int, amax: int):
        xv = mpf(self.x.numerator) / self.x.denominator
        out = [mp.zero] * (N + 1)
        for n in range(1, N + 1):
            out[n] = out[n - 1] + xv**n * mpf(n) ** (-self.p)
        return out, mp.zero


def _builder_R(ctx, p, m, x, y):
    return _one_sided_reflection(ctx, p, m, x, y) + _one_sided_reflection(ctx, m, p, y, x)


BUILDERS = {
    "F2": (_builder_F2, (2, 3)),
    "F2alt": (_builder_F2alt, (2, 2)),
    "F3": (_builder_F3, (3, 3)),
    "W": (_builder_W, (3, 3)),
    "Q": (_builder_Q, (3, 3)),
    "Q3": (_builder_Q3, (4, 4)),
    "M": (_builder_M, (3, 3)),
    "M3": (_builder_M3, (4, 4)),
    "G": (_builder_G, (3, 3)),
    "G3": (_builder_G3, (4, 4)),
    "TP": (_builder_TP, (3, 3)),
    "L": (_builder_L, (1, 1)),
    "LS": (_builder_LS, (3, 3)),
    "FS2": (_builder_FS2, (2, 2)),
    "FS3": (_builder_FS3, (1, 1)),
    "R": (_builder_R, (4, 4)),
}


def builder_value(name: str, args, ctx: PrecisionContext) -> Real:
    """Evaluate one LHS family by name; args as parsed from the corpus."""
    try:
        fn, (lo, hi) = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown series builder {name!r}") from None
    if not (lo <= len(args) <= hi):
        raise ValueError(f"builder {name} takes {lo}..{hi} arguments, got {len(args)}")
    with mp.workdps(ctx.working_dps):
        return fn(ctx, *args)


# ---------------------------------------------------------------------------
# closed-form catalog


def _z(*entries) -> LinComb:
    return LinComb.of(1, SignedIndex(tuple(entries)))


def _zs(*entries) -> LinComb:
    return LinComb.of(1, SignedIndex(tuple(entries), star=True))


def _prod(*lcs) -> LinComb:
    out = lcs[0]
    for lc in lcs[1:]:
        out = out * lc
    return out


def _Li(s, x) -> LinComb:
    x = Fraction(x)
    if x == 1:
        return _z(s)
    if x == -1:
        return _z(-s)  # both equal -eta(s) in this sign convention
    return LinComb.of(1, ConstantAtom("polylog", s=s, x=x))


@dataclass(frozen=True)
class CatalogEntry:
    identity_id: str
    params: tuple[str, ...]
    constraint: str  # human-readable validity range
    check: callable
    lhs: callable  # (ctx, **params) -> Real
    rhs: callable  # (ctx, **params) -> LinComb | Real
    symbolic: bool = True  # rhs is a pure symbol combination


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _cubic_star_rhs(m, p, r) -> LinComb:
    out = _prod(_z(r), _zs(p, m - 1) + _zs(m, p - 1) - _z(m + p - 1) - _prod(_z(m), _z(p)))
    out = out + _zs(m + p - 1, r) - _zs(m + p, r - 1)
    out = out - _zs(p, m - 1, r) + _zs(p, m, r - 1)
    out = out - _zs(m, p - 1, r) + _zs(m, p, r - 1)
    return out


def _cubic_strict_rhs(m, p, r) -> LinComb:
    out = LinComb.zero()
    for a, b, c in ((p, m, r), (p, r, m), (m, p, r), (m, r, p), (r, p, m), (r, m, p)):
        out = out + _z(a, b, c - 1)
    out = out + _z(m + p, r - 1) + _z(p + r, m - 1) + _z(m + r, p - 1)
    out = out + _z(p, m + r - 1) + _z(m, p + r - 1) + _z(r, p + m - 1)
    out = out + _z(m + p + r - 1) - _prod(_z(p), _z(m), _z(r))
    return out


def _cubic_by_parts_value(m: int, p: int, r: int, ctx: PrecisionContext) -> Real:
    """Triple tail sum via the summation-by-parts evaluation, for a = k^-m,
    b = k^-p and the third factor a zeta(r) tail (r >= 2)."""
    _require(min(m, p, r) >= 2, "all exponents must be >= 2")
    tol = ctx.target_tol
    zr = pr.zeta_value(r, ctx)
    with mp.workdps(ctx.working_dps):
        t1 = series_sum([(Fraction(1), [Partial(m - 1)])], r=p, tol=tol)
        t2 = series_sum([(Fraction(1), [Partial(p - 1)])], r=m, tol=tol)
        nab = pr.zeta_value(m + p - 1, ctx)
        ab = pr.zeta_value(m, ctx) * pr.zeta_value(p, ctx)
        bracket = t1 + t2 - nab - ab

        def weighted_partial(e):
            # Sum_{k<=n} k^-e (k zeta_k(r) - zeta_k(r-1))
            return PartialOf(
                [(Fraction(1), [Partial(r)])], r=e - 1
            ), PartialOf([(Fraction(1), [Partial(r - 1)])], r=e)

        pa1, pa2 = weighted_partial(m)
        t3 = series_sum([(Fraction(1), [pa1]), (Fraction(-1), [pa2])], r=p, tol=tol)
        pb1, pb2 = weighted_partial(p)
        t4 = series_sum([(Fraction(1), [pb1]), (Fraction(-1), [pb2])], r=m, tol=tol)
        t5 = series_sum([(Fraction(1), [Partial(r)])], r=m + p - 1, tol=tol)
        t6 = series_sum([(Fraction(1), [Partial(r - 1)])], r=m + p, tol=tol)
        return zr * bracket - t3 - t4 + t5 - t6


def _catalog() -> dict[str, CatalogEntry]:
    E = {}

    def add(identity_id, params, constraint, check, lhs, rhs, symbolic=True):
        E[identity_id] = CatalogEntry(identity_id, tuple(params), constraint, check,
                                      lhs, rhs, symbolic)

    add("F-quad", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_F2(ctx, m, p),
        lambda ctx, m, p: _z(p, m - 1) + _z(m, p - 1) + _z(m + p - 1) - _prod(_z(m), _z(p)))

    add("F-quad-alt", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_F2(ctx, -m, -p),
        lambda ctx, m, p: _z(-m, -(p - 1)) + _z(-p, -(m - 1)) + _z(m + p - 1)
        - _prod(_z(-m), _z(-p)))

    add("F-quad-mixed", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_F2(ctx, m, -p),
        lambda ctx, m, p: _z(m, -(p - 1)) + _z(-p, m - 1) + _z(-(m + p - 1))
        - _prod(_z(m), _z(-p)))

    add("F-cubic-star", ("m", "p", "r"), "m, p, r >= 2",
        lambda m, p, r: _require(min(m, p, r) >= 2, "m, p, r >= 2"),
        lambda ctx, m, p, r: _builder_F3(ctx, m, p, r),
        lambda ctx, m, p, r: _cubic_star_rhs(m, p, r))

    add("F-cubic", ("m", "p", "r"), "m, p, r >= 2",
        lambda m, p, r: _require(min(m, p, r) >= 2, "m, p, r >= 2"),
        lambda ctx, m, p, r: _builder_F3(ctx, m, p, r),
        lambda ctx, m, p, r: _cubic_strict_rhs(m, p, r))

    add("W-quad", ("m", "p", "r"), "m, p >= 2; r >= 1",
        lambda m, p, r: _require(min(m, p) >= 2 and r >= 1, "m, p >= 2 and r >= 1"),
        lambda ctx, m, p, r: _builder_W(ctx, m, p, r),
        lambda ctx, m, p, r: _z(m, p, r) + _z(p, m, r) + _z(m + p, r))

    add("Q-sym", ("m", "p", "r"), "m, p >= 1; r >= 2",
        lambda m, p, r: _require(min(m, p) >= 1 and r >= 2, "m, p >= 1 and r >= 2"),
        lambda ctx, m, p, r: _builder_Q(ctx, m, p, r),
        lambda ctx, m, p, r: _zs(r, m, p) + _zs(r, p, m) - _zs(r, m + p))

    add("Q-quad", ("p", "r", "m"), "p, m >= 2; r >= 1",
        lambda p, r, m: _require(min(p, m) >= 2 and r >= 1, "p, m >= 2 and r >= 1"),
        lambda ctx, p, r, m: _builder_Q(ctx, p, r, m),
        lambda ctx, p, r, m: _zs(p + m, r) + _prod(_z(p), _zs(m, r)) - _zs(p, m, r))

    add("Q-cyclic", ("m", "p", "r"), "m, p, r >= 2",
        lambda m, p, r: _require(min(m, p, r) >= 2, "m, p, r >= 2"),
        lambda ctx, m, p, r: _builder_Q(ctx, m, p, r) + _builder_Q(ctx, p, r, m)
        + _builder_Q(ctx, m, r, p),
        lambda ctx, m, p, r: _zs(p + m, r) + _zs(p + r, m) + _zs(m + r, p)
        + _prod(_z(p), _z(m), _z(r)) - _z(p + m + r))

    add("F2-signed", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_F2alt(ctx, m, p),
        lambda ctx, m, p: (_prod(_z(m), _z(p)) + _z(m, -p) + _z(p, -m)
                           + _z(-(m + p))).scale(Fraction(1, 2)))

    add("star-tail-pair", ("p", "q"), "p, q >= 1",
        lambda p, q: _require(min(p, q) >= 1, "p, q >= 1"),
        lambda ctx, p, q: _builder_FS2(ctx, p, q),
        lambda ctx, p, q: (
            (_builder_Q3(ctx, p, p, q, q + 1) + _builder_Q(ctx, 2 * p, q, q + 1)
             + _builder_Q3(ctx, q, q, p, p + 1) + _builder_Q(ctx, 2 * q, p, p + 1))
            * Fraction(1, 2)
            - _builder_Q(ctx, p, q, p + q + 1)
            - mzv_numeric(SignedIndex((p + 1, p), star=True), ctx).value
            * mzv_numeric(SignedIndex((q + 1, q), star=True), ctx).value),
        symbolic=False)

    add("star-tail-square", ("p",), "p >= 1",
        lambda p: _require(p >= 1, "p >= 1"),
        lambda ctx, p: _builder_FS3(ctx, p),
        lambda ctx, p: (
            (_builder_Q3(ctx, p, p, p, p + 2) + _builder_Q(ctx, p, 2 * p, p + 2)
             - _builder_Q(ctx, p, p, 2 * p + 2)) * Fraction(1, 2)
            + mzv_numeric(SignedIndex((p + 1, p), star=True), ctx).value
            * mzv_numeric(SignedIndex((p + 1, p), star=True), ctx).value
            * Fraction(1, 2)
            - mzv_numeric(SignedIndex((p + 1, p), star=True), ctx).value
            * mzv_numeric(SignedIndex((p + 2, p), star=True), ctx).value),
        symbolic=False)

    add("M-harmonic", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_M(ctx, m, p, 1),
        lambda ctx, m, p: _prod(_z(p), _z(m, 1)) - _prod(_z(m), _z(p, 1)))

    add("M-power", ("m", "p", "k"), "m, p >= 2; k >= 1",
        lambda m, p, k: _require(min(m, p) >= 2 and k >= 1, "m, p >= 2 and k >= 1"),
        lambda ctx, m, p, k: _builder_M(ctx, m, p, k),
        lambda ctx, m, p, k: _prod(_z(p), _z(m, k)) - _prod(_z(m), _z(p, k)))

    add("linear-tail", ("m",), "m >= 2",
        lambda m: _require(m >= 2, "m >= 2"),
        lambda ctx, m: _builder_L(ctx, m),
        lambda ctx, m: _z(m, 1))

    add("G-split", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_G(ctx, m, p, 1),
        lambda ctx, m, p: pr.zeta_value(p, ctx) * _builder_L(ctx, m)
        + _builder_TP(ctx, m, p, 1),
        symbolic=False)

    add("G-via-Q", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_G(ctx, m, p, 1),
        lambda ctx, m, p: _builder_Q(ctx, 1, m, p) + _builder_Q(ctx, 1, p, m)
        + lincomb_numeric(_zs(p, m + 1) - _prod(_z(p), _z(m + 1)) - _zs(p + m, 1)
                          - _zs(p + 1, m), ctx),
        symbolic=False)

    add("TP-closed", ("m", "p"), "m >= 1; p >= 2",
        lambda m, p: _require(m >= 1 and p >= 2, "m >= 1 and p >= 2"),
        lambda ctx, m, p: _builder_TP(ctx, m, p, 1),
        lambda ctx, m, p: _z(p, 1, m) + _z(p, m + 1))

    add("Q-harmonic-pair", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_Q(ctx, 1, m, p) + _builder_Q(ctx, 1, p, m),
        lambda ctx, m, p: _prod(_z(p), _z(m, 1)) + _prod(_z(p), _z(m + 1))
        + _z(p + m, 1) + _z(p + 1, m) + _z(p + m + 1) + _z(p, 1, m))

    add("G-harmonic", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: _builder_G(ctx, m, p, 1),
        lambda ctx, m, p: _prod(_z(p), _z(m, 1)) + _z(p, 1, m) + _z(p, m + 1))

    add("G3-harmonic", ("m", "p", "q"), "m, p, q >= 2",
        lambda m, p, q: _require(min(m, p, q) >= 2, "m, p, q >= 2"),
        lambda ctx, m, p, q: _builder_G3(ctx, m, p, q, 1),
        lambda ctx, m, p, q: _prod(_z(m), _prod(_z(p), _z(q, 1)) + _z(p, 1, q)
                                   + _z(p, q + 1)) - _prod(_z(p), _z(q), _z(m, 1)))

    add("M3-harmonic", ("m", "p", "q"), "m, p >= 2; q >= 1",
        lambda m, p, q: _require(min(m, p) >= 2 and q >= 1, "m, p >= 2 and q >= 1"),
        lambda ctx, m, p, q: _builder_M3(ctx, m, p, q, 1),
        lambda ctx, m, p, q: _prod(_z(p), _z(m, 1, q) + _z(m, q + 1))
        - _prod(_z(m), _z(p, 1, q) + _z(p, q + 1)))

    add("G-power", ("m", "p", "k"), "m, p, k >= 2",
        lambda m, p, k: _require(min(m, p, k) >= 2, "m, p, k >= 2"),
        lambda ctx, m, p, k: _builder_G(ctx, m, p, k),
        lambda ctx, m, p, k: _prod(_z(p), _z(m, k)) + _z(p, k, m) + _z(p, m + k))

    add("G3-power", ("m", "p", "q", "k"), "m, p, q, k >= 2",
        lambda m, p, q, k: _require(min(m, p, q, k) >= 2, "m, p, q, k >= 2"),
        lambda ctx, m, p, q, k: _builder_G3(ctx, m, p, q, k),
        lambda ctx, m, p, q, k: _prod(_z(m), _prod(_z(p), _z(q, k)) + _z(p, k, q)
                                      + _z(p, q + k)) - _prod(_z(p), _z(q), _z(m, k)))

    add("M3-power", ("m", "p", "q", "k"), "m, p, q, k >= 2",
        lambda m, p, q, k: _require(min(m, p, q, k) >= 2, "m, p, q, k >= 2"),
        lambda ctx, m, p, q, k: _builder_M3(ctx, m, p, q, k),
        lambda ctx, m, p, q, k: _prod(_z(p), _z(m, k, q) + _z(m, q + k))
        - _prod(_z(m), _z(p, k, q) + _z(p, q + k)))

    add("Q-power", ("m", "p", "k"), "m, p, k >= 2",
        lambda m, p, k: _require(min(m, p, k) >= 2, "m, p, k >= 2"),
        lambda ctx, m, p, k: _builder_Q(ctx, m, p, k),
        lambda ctx, m, p, k: _prod(_z(p), _z(m), _z(k)) - _prod(_z(p), _z(m, k))
        - _z(p, k, m) - _z(p, k + m))

    add("alt-tails-sym", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: -_builder_F2(ctx, m, -p),
        lambda ctx, m, p: _zs(-p, m - 1).scale(-1) - _zs(m, -(p - 1))
        + _prod(_z(m), _z(-p)) + _z(-(m + p - 1)))

    add("alt-tails-merged", ("m", "p"), "m, p >= 2",
        lambda m, p: _require(min(m, p) >= 2, "m, p >= 2"),
        lambda ctx, m, p: -_builder_F2(ctx, m, -p),
        lambda ctx, m, p: _prod(_z(m), _z(-p)) + _z(-(m + p - 1))
        - _zs(-p, m - 1) - _zs(m, -(p - 1)))

    add("alt-M-barbar", ("m", "p", "k"), "m, p >= 1; k >= 1",
        lambda m, p, k: _require(min(m, p, k) >= 1, "m, p, k >= 1"),
        lambda ctx, m, p, k: _builder_M(ctx, -m, -p, k),
        lambda ctx, m, p, k: _prod(_z(-p), _z(-m, k)) - _prod(_z(-m), _z(-p, k)))

    add("alt-M-mixed", ("m", "p", "k"), "m >= 1; p >= 2; k >= 1",
        lambda m, p, k: _require(m >= 1 and p >= 2 and k >= 1, "m >= 1, p >= 2, k >= 1"),
        lambda ctx, m, p, k: _builder_M(ctx, -m, p, k),
        lambda ctx, m, p, k: _prod(_z(p), _z(-m, k)) - _prod(_z(-m), _z(p, k)))

    add("alt-G-bar", ("p", "k"), "p >= 1; k >= 2",
        lambda p, k: _require(p >= 1 and k >= 2, "p >= 1 and k >= 2"),
        lambda ctx, p, k: _builder_G(ctx, -p, -p, k),
        lambda ctx, p, k: _prod(_z(-p), _z(-p, k)) + _z(-p, k, -p) + _z(-p, -(k + p)))

    add("alt-G-barbar", ("m", "p", "k"), "m, p >= 1; k >= 2",
        lambda m, p, k: _require(min(m, p) >= 1 and k >= 2, "m, p >= 1 and k >= 2"),
        lambda ctx, m, p, k: _builder_G(ctx, -m, -p, k),
        lambda ctx, m, p, k: _prod(_z(-p), _z(-m, k)) + _z(-p, k, -m) + _z(-p, -(m + k)))

    add("alt-G-mixed", ("m", "p", "k"), "m >= 2; p >= 1; k >= 2",
        lambda m, p, k: _require(m >= 2 and p >= 1 and k >= 2, "m >= 2, p >= 1, k >= 2"),
        lambda ctx, m, p, k: _builder_G(ctx, m, -p, k),
        lambda ctx, m, p, k: _prod(_z(-p), _z(m, k)) + _z(-p, k, m) + _z(-p, m + k))

    add("reflection", ("p", "m", "x", "y"), "|x|, |y| <= 1, no divergent corner",
        lambda p, m, x, y: _require(p >= 1 and m >= 1, "p, m >= 1"),
        lambda ctx, p, m, x, y: _builder_R(ctx, p, m, x, y),
        lambda ctx, p, m, x, y: _prod(_Li(p, x), _Li(m, y))
        + _Li(p + m, Fraction(x) * Fraction(y)))

    add("cubic-by-parts", ("m", "p", "r"), "m, p, r >= 2",
        lambda m, p, r: _require(min(m, p, r) >= 2, "m, p, r >= 2"),
        lambda ctx, m, p, r: _builder_F3(ctx, m, p, r),
        lambda ctx, m, p, r: _cubic_by_parts_value(m, p, r, ctx),
        symbolic=False)

    return E


CATALOG = _catalog()


def closed_form(identity_id: str, params: dict) -> LinComb:
    """RHS of a catalog identity as a formal linear combination.

    Only entries whose right-hand side is a pure symbol combination support
    this; series-valued right-hand sides must go through verify_formula.
    """
    entry = CATALOG[identity_id]
    entry.check(**params)
    if not entry.symbolic:
        raise ValueError(f"{identity_id} has a series-valued right-hand side")
    return entry.rhs(None, **params)


def verify_formula(identity_id: str, params: dict, ctx: PrecisionContext) -> dict:
    entry = CATALOG[identity_id]
    entry.check(**params)
    with mp.workdps(ctx.working_dps):
        lhs = entry.lhs(ctx, **params)
        rhs = entry.rhs(ctx, **params)
        if isinstance(rhs, LinComb):
            rhs = lincomb_numeric(rhs, ctx)
        gap = abs(lhs.value - rhs.value)
        budget = lhs.err + rhs.err + ctx.target_tol
    return {"identity_id": identity_id, "params": dict(params),
            "lhs": lhs, "rhs": rhs, "gap": gap, "pass": bool(gap <= budget)}


def weighted_series_numeric(name: str, args, ctx: PrecisionContext) -> Real:
    """Evaluate one weighted LHS family by builder name (CLI entry point)."""
    return builder_value(name, args, ctx)
