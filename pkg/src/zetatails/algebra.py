"""Formal rational-linear combinations of nested-sum symbols and constants.

Terms are products of factors; a factor is either a :class:`SignedIndex` or a
:class:`ConstantAtom` (zeta(s), ln 2, a polylogarithm, pi, or a registered
named numeric).  The quasi-shuffle (stuffle) product and the star expansion
both land in this representation, and everything evaluates numerically via
:mod:`zetatails.mzv`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .index_core import SignedIndex, canonical_text


@dataclass(frozen=True)
class ConstantAtom:
    """kind in {'zeta', 'ln2', 'polylog', 'pi', 'named'}."""

    kind: str
    s: int = 0
    x: Fraction = Fraction(0)
    label: str = ""

    def __post_init__(self):
        if self.kind == "zeta" and self.s < 2:
            raise ValueError("zeta atom requires s >= 2")
        if self.kind == "polylog":
            if self.s < 1 or abs(self.x) > 1 or (self.s, self.x) == (1, Fraction(1)):
                raise ValueError("polylog atom requires s >= 1, |x| <= 1, (s,x) != (1,1)")

    def text(self) -> str:
        if self.kind == "zeta":
            return f"z({self.s})"
        if self.kind == "ln2":
            return "ln2"
        if self.kind == "pi":
            return "pi"
        if self.kind == "polylog":
            return f"Li({self.s},{self.x.numerator}/{self.x.denominator})"
        return f"const({self.label})"


Factor = SignedIndex | ConstantAtom


def factor_text(f: Factor) -> str:
    return canonical_text(f) if isinstance(f, SignedIndex) else f.text()


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    factors: tuple[Factor, ...]  # kept sorted by factor_text

    def key(self) -> tuple[str, ...]:
        return tuple(factor_text(f) for f in self.factors)

    def text(self) -> str:
        c = self.coeff
        parts = [factor_text(f) for f in self.factors]
        if not parts:
            return str(c)
        body = "*".join(parts)
        if c == 1:
            return body
        if c == -1:
            return f"-{body}"
        return f"{c}*{body}"


@dataclass(frozen=True)
class LinComb:
    terms: tuple[Term, ...]

    @classmethod
    def zero(cls) -> "LinComb":
        return cls(())

    @classmethod
    def of(cls, coeff, *factors: Factor) -> "LinComb":
        return normalize(cls((Term(Fraction(coeff), tuple(factors)),)))

    @classmethod
    def symbol(cls, idx: SignedIndex) -> "LinComb":
        return cls.of(1, idx)

    def __add__(self, other: "LinComb") -> "LinComb":
        return normalize(LinComb(self.terms + other.terms))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        if c == 0:
            return LinComb.zero()
        return LinComb(tuple(Term(t.coeff * c, t.factors) for t in self.terms))

    def __mul__(self, other: "LinComb") -> "LinComb":
        out = []
        for t in self.terms:
            for u in other.terms:
                fac = tuple(sorted(t.factors + u.factors, key=factor_text))
                out.append(Term(t.coeff * u.coeff, fac))
        return normalize(LinComb(tuple(out)))

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, t in enumerate(self.terms):
            s = t.text()
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}")
            else:
                parts.append(f"+ {s}")
        return " ".join(parts)


def normalize(lc: LinComb) -> LinComb:
    """Merge equal factor multisets, drop zeros, sort deterministically."""
    merged: dict[tuple[str, ...], Term] = {}
    for t in lc.terms:
        fac = tuple(sorted(t.factors, key=factor_text))
        t = Term(t.coeff, fac)
        k = t.key()
        prev = merged.get(k)
        merged[k] = t if prev is None else Term(prev.coeff + t.coeff, fac)
    terms = tuple(
        sorted((t for t in merged.values() if t.coeff != 0), key=Term.key)
    )
    return LinComb(terms)


def _merge_entry(a: int, b: int) -> int:
    m = abs(a) + abs(b)
    return -m if (a < 0) != (b < 0) else m


def stuffle(u: SignedIndex, v: SignedIndex) -> LinComb:
    """Quasi-shuffle expansion of the product of two strict nested sums.

    Interleavings of the two entry sequences, where any step may instead
    merge the two current heads (absolute values add, signs multiply).
    """
    if u.star or v.star:
        raise ValueError("stuffle operates on non-star indices; expand stars first")

    def rec(a: tuple[int, ...], b: tuple[int, ...]) -> list[tuple[int, ...]]:
        if not a:
            return [b]
        if not b:
            return [a]
        out = [(a[0],) + rest for rest in rec(a[1:], b)]
        out += [(b[0],) + rest for rest in rec(a, b[1:])]
        out += [(_merge_entry(a[0], b[0]),) + rest for rest in rec(a[1:], b[1:])]
        return out

    terms = tuple(
        Term(Fraction(1), (SignedIndex(e),)) for e in rec(u.entries, v.entries)
    )
    return normalize(LinComb(terms))


def star_expand(idx: SignedIndex) -> LinComb:
    """Star value as a sum of strict values over all consecutive-block merges.

    Each of the 2^(m-1) ways of merging adjacent entries contributes one term
    with coefficient +1; merged blocks add in absolute value and multiply in
    sign.  Handles alternating entries; depth <= 1 is returned unchanged.
    """
    entries = idx.entries
    if len(entries) <= 1:
        return LinComb.of(1, SignedIndex(entries))
    out: list[tuple[int, ...]] = []

    def rec(pos: int, acc: tuple[int, ...], current: int):
        if pos == len(entries):
            out.append(acc + (current,))
            return
        rec(pos + 1, acc + (current,), entries[pos])  # start a new block
        rec(pos + 1, acc, _merge_entry(current, entries[pos]))  # merge into block

    rec(1, (), entries[0])
    return normalize(
        LinComb(tuple(Term(Fraction(1), (SignedIndex(e),)) for e in out))
    )


def star_expand_signed(idx: SignedIndex) -> LinComb:
    """Alias kept for symmetry of the API; the merge rule already carries signs."""
    return star_expand(idx)
