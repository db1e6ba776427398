from fractions import Fraction

import pytest
from mpmath import mp

from zetatails.algebra import LinComb, normalize, star_expand, stuffle
from zetatails.index_core import make_index
from zetatails.mzv import lincomb_numeric, mzv_numeric


def test_stuffle_depth_one():
    out = stuffle(make_index([2]), make_index([3]))
    assert out.text() == "z(2,3) + z(3,2) + z(5)"


def test_stuffle_signs_merge():
    out = stuffle(make_index([-2]), make_index([-3]))
    # merged slot: signs multiply, absolute values add
    texts = {t.text() for t in out.terms}
    assert "z(5)" in texts
    assert "z(-2,-3)" in texts and "z(-3,-2)" in texts


def test_stuffle_rejects_star():
    with pytest.raises(ValueError):
        stuffle(make_index([2], star=True), make_index([3]))


def test_star_expand_count():
    for m in (1, 2, 3, 4):
        out = star_expand(make_index([2] * m))
        # merging adjacent blocks gives 2^(m-1) strict terms, with collisions
        # merged into rational coefficients
        assert sum(t.coeff for t in out.terms) == 2 ** (m - 1)


def test_star_expand_known():
    out = star_expand(make_index([2, 1], star=True))
    assert out.text() == "z(2,1) + z(3)"


def test_normalize_merges_and_drops():
    a = LinComb.of(1, make_index([2]))
    b = LinComb.of(-1, make_index([2]))
    assert (a + b).terms == ()
    c = LinComb.of(Fraction(1, 2), make_index([3])) + LinComb.of(
        Fraction(1, 2), make_index([3])
    )
    assert c.text() == "z(3)"


def test_product_commutes():
    a = LinComb.of(2, make_index([2]))
    b = LinComb.of(Fraction(1, 3), make_index([3, 1]))
    assert (a * b).terms == (b * a).terms


def test_stuffle_homomorphism_numeric(ctx):
    pairs = [
        ([2], [3]),
        ([2, 1], [2]),
        ([-2], [3]),
        ([3], [-1]),
        ([2, 1], [2, 1]),
    ]
    with mp.workdps(ctx.working_dps):
        for u, v in pairs:
            ui, vi = make_index(u), make_index(v)
            lhs = lincomb_numeric(stuffle(ui, vi), ctx)
            a = mzv_numeric(ui, ctx).value
            b = mzv_numeric(vi, ctx).value
            prod = a * b
            assert abs(lhs.value - prod.value) <= lhs.err + prod.err + mp.mpf("1e-30")
