"""Exact finite partial sums of (alternating) multiple zeta and star values.

Everything here is computed over exact rationals.  The sign convention for a
negative entry s is sgn(s)^k = (-1)^k, so the depth-1 alternating partial sum
relates to the usual alternating harmonic numbers by

    zeta_partial(-s, n) = -Sum_{j<=n} (-1)^(j-1) j^(-s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .index_core import SignedIndex


def zeta_partial(s: int, n: int) -> Fraction:
    """Sum_{j<=n} sgn(s)^j j^(-|s|); the harmonic number H_n when s = 1."""
    if s == 0:
        raise ValueError("s must be nonzero")
    total = Fraction(0)
    p = abs(s)
    for j in range(1, n + 1):
        term = Fraction(1, j**p)
        total += -term if (s < 0 and j % 2) else term
    return total


def harmonic(n: int) -> Fraction:
    return zeta_partial(1, n)


@dataclass(frozen=True)
class PartialSumTable:
    index: SignedIndex
    upper: int
    values: tuple[Fraction, ...]  # values[n] = zeta_n(index), n = 0..upper

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]


def mhs_stream(idx: SignedIndex, N: int) -> PartialSumTable:
    """All partial sums zeta_n(idx) for n = 0..N in O(N * depth) time.

    Row j holds the partial sum of the suffix (s_j, ..., s_m).  At step n the
    new outer term n^(-|s_j|) multiplies the inner suffix sum at n-1 (strict
    ordering) or at n (weak, star).
    """
    m = idx.depth
    if m == 0:
        return PartialSumTable(idx, N, tuple([Fraction(1)] * (N + 1)))
    t = [Fraction(0)] * m + [Fraction(1)]  # t[m] is the empty suffix
    out = [Fraction(0)]
    # star needs the inner suffix already advanced to n, so update inner rows
    # first; strict needs the value at n-1, so update outer rows first
    order = range(m - 1, -1, -1) if idx.star else range(m)
    for n in range(1, N + 1):
        for j in order:
            s = idx.entries[j]
            term = Fraction(1, n ** abs(s))
            if s < 0 and n % 2:
                term = -term
            t[j] += term * t[j + 1]
        out.append(t[0])
    return PartialSumTable(idx, N, tuple(out))


def mhs(idx: SignedIndex, n: int) -> Fraction:
    """zeta_n(idx): strict or weak nested sum up to n; empty index gives 1."""
    return mhs_stream(idx, n).values[n]


def mhs_bruteforce(idx: SignedIndex, n: int) -> Fraction:
    """Direct enumeration over index tuples; O(n^depth), test oracle only."""
    entries = idx.entries
    if not entries:
        return Fraction(1)

    def rec(pos: int, upper: int) -> Fraction:
        if pos == len(entries):
            return Fraction(1)
        s = entries[pos]
        total = Fraction(0)
        for k in range(1, upper + 1):
            term = Fraction(1, k ** abs(s))
            if s < 0 and k % 2:
                term = -term
            total += term * rec(pos + 1, k if idx.star else k - 1)
        return total

    return rec(0, n)
