from fractions import Fraction

import pytest
from mpmath import mp, mpf

from zetatails import precision as pr
from zetatails.precision import PrecisionContext, Real


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(working_digits=10)
    with pytest.raises(ValueError):
        PrecisionContext(working_digits=25, target_tol="1e-30")
    c = PrecisionContext(working_digits=30, target_tol="1e-12")
    assert c.working_dps == 45


def test_real_error_propagation():
    a = Real(mpf(2), mpf("1e-10"))
    b = Real(mpf(3), mpf("1e-12"))
    s = a + b
    assert s.value == 5 and s.err == mpf("1e-10") + mpf("1e-12")
    p = a * b
    assert abs(p.value - 6) == 0
    assert p.err >= 3 * mpf("1e-10") + 2 * mpf("1e-12")
    d = a - b
    assert d.value == -1 * (b - a).value


def test_constants(ctx):
    with mp.workdps(ctx.working_dps):
        assert abs(pr.zeta_value(2, ctx).value - mp.pi**2 / 6) < mpf("1e-50")
        assert abs(pr.alt_zeta_value(1, ctx).value - mp.log(2)) < mpf("1e-50")
        assert abs(pr.polylog(2, Fraction(1, 2), ctx).value
                   - (mp.pi**2 / 12 - mp.log(2) ** 2 / 2)) < mpf("1e-50")
    with pytest.raises(ValueError):
        pr.zeta_value(1, ctx)
    with pytest.raises(ValueError):
        pr.polylog(1, Fraction(1), ctx)


def test_tail_complements_partial(ctx):
    """zeta_tail(s, n) + exact partial sum reproduces zeta(s)."""
    from zetatails.harmonic_sums import zeta_partial

    with mp.workdps(ctx.working_dps):
        for s in (2, 3, 5):
            for n in (1, 7, 50):
                t = pr.zeta_tail(s, n, ctx)
                part = zeta_partial(s, n)
                got = t.value + mpf(part.numerator) / part.denominator
                assert abs(got - pr.zeta_value(s, ctx).value) < mpf("1e-48")


def test_alt_tail_complements_partial(ctx):
    from zetatails.harmonic_sums import zeta_partial

    with mp.workdps(ctx.working_dps):
        for s in (1, 2, 4):
            for n in (1, 9, 33):
                t = pr.alt_zeta_tail(s, n, ctx)
                part = -zeta_partial(-s, n)  # (-1)^(j-1) convention
                got = t.value + mpf(part.numerator) / part.denominator
                assert abs(got - pr.alt_zeta_value(s, ctx).value) < mpf("1e-48")


def test_tail_factorial_weighted_integral_form(ctx):
    """(r-1)! * tail equals the term-by-term sum of (r-1)!/j^r past n."""
    import math

    with mp.workdps(ctx.working_dps):
        r, n = 3, 10
        t = pr.zeta_tail(r, n, ctx).value * math.factorial(r - 1)
        direct = math.factorial(r - 1) * sum(mpf(j) ** (-r) for j in range(n + 1, 4000))
        # the truncated reference still misses sum_{j>=4000} 2/j^3 < 1/3999^2
        assert abs(t - direct) < mpf(1) / 3999**2


def test_two_contexts_coexist():
    lo = PrecisionContext(working_digits=25, target_tol="1e-8")
    hi = PrecisionContext(working_digits=60, target_tol="1e-40")
    a = pr.zeta_tail(2, 5, lo)
    b = pr.zeta_tail(2, 5, hi)
    with mp.workdps(80):
        assert abs(a.value - b.value) < mpf("1e-30")
        assert b.err < mpf("1e-60")
