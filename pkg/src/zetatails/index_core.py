"""Signed composition indices for nested Euler sums.

An index is a tuple of nonzero integers (s1, ..., sm) plus a star flag.  The
absolute value of an entry is the exponent of the corresponding summation
variable; a negative entry marks an alternating slot, contributing sign
(-1)^k for that variable.  So (-2, 3) non-star stands for

    Sum_{k1 > k2 >= 1} (-1)^k1 k1^(-2) k2^(-3)

and the star flag switches the ordering to weak (k1 >= k2 >= ... >= 1).
The empty index is allowed and denotes the empty product convention (value 1).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SignedIndex:
    entries: tuple[int, ...]
    star: bool = False

    def __post_init__(self):
        for s in self.entries:
            if not isinstance(s, int) or s == 0:
                raise ValueError(f"index entries must be nonzero integers, got {s!r}")

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return sum(abs(s) for s in self.entries)

    @property
    def alternating_slots(self) -> int:
        return sum(1 for s in self.entries if s < 0)

    def is_admissible(self) -> bool:
        # divergence happens exactly when the leading slot is 1/k with no sign
        return not self.entries or self.entries[0] != 1

    def head_rest(self) -> tuple[int, "SignedIndex"]:
        if not self.entries:
            raise ValueError("empty index has no head")
        return self.entries[0], SignedIndex(self.entries[1:], self.star)

    def as_star(self, star: bool = True) -> "SignedIndex":
        return SignedIndex(self.entries, star)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class IndexStats:
    weight: int
    depth: int


def stats(idx: SignedIndex) -> IndexStats:
    return IndexStats(idx.weight, idx.depth)


def make_index(entries, star: bool = False) -> SignedIndex:
    return SignedIndex(tuple(entries), star)


def is_admissible(idx: SignedIndex) -> bool:
    return idx.is_admissible()


def canonical_text(idx: SignedIndex) -> str:
    name = "zs" if idx.star else "z"
    return f"{name}({','.join(str(s) for s in idx.entries)})"


def index_from_text(text: str) -> SignedIndex:
    """Parse 'z(2,-3)' or 'zs(3,1)' back into an index."""
    t = text.strip()
    if t.startswith("zs(") and t.endswith(")"):
        star, body = True, t[3:-1]
    elif t.startswith("z(") and t.endswith(")"):
        star, body = False, t[2:-1]
    else:
        raise ValueError(f"cannot parse index text {text!r}")
    if not body.strip():
        return SignedIndex((), star)
    try:
        entries = tuple(int(p) for p in body.split(","))
    except ValueError:
        raise ValueError(f"cannot parse index text {text!r}") from None
    return SignedIndex(entries, star)
