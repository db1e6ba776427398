from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zetatails.index_core import (
    IndexStats,
    SignedIndex,
    canonical_text,
    index_from_text,
    is_admissible,
    make_index,
    stats,
)

entries_st = st.lists(
    st.integers(min_value=-6, max_value=6).filter(lambda s: s != 0),
    max_size=5,
)


def test_basic_properties():
    idx = make_index([-2, 3, 1])
    assert idx.depth == 3
    assert idx.weight == 6
    assert idx.alternating_slots == 1
    assert stats(idx) == IndexStats(weight=6, depth=3)


def test_admissibility():
    assert is_admissible(make_index([2, 1]))
    assert is_admissible(make_index([-1, 2]))  # signed head converges
    assert not is_admissible(make_index([1, 2]))
    assert is_admissible(make_index([]))


def test_zero_entry_rejected():
    with pytest.raises(ValueError):
        make_index([2, 0])


def test_head_rest():
    head, rest = make_index([3, -2, 1], star=True).head_rest()
    assert head == 3
    assert rest == SignedIndex((-2, 1), star=True)
    with pytest.raises(ValueError):
        make_index([]).head_rest()


def test_canonical_text_forms():
    assert canonical_text(make_index([2, -3])) == "z(2,-3)"
    assert canonical_text(make_index([4, 1], star=True)) == "zs(4,1)"
    assert index_from_text(" zs(4,1) ") == make_index([4, 1], star=True)
    with pytest.raises(ValueError):
        index_from_text("zeta(2)")


@given(entries=entries_st, star=st.booleans())
def test_text_round_trip(entries, star):
    idx = make_index(entries, star)
    assert index_from_text(canonical_text(idx)) == idx


def test_as_star_and_iter():
    idx = make_index([2, 1])
    assert idx.as_star().star
    assert list(idx) == [2, 1]
    assert len(idx) == 2
