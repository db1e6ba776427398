"""Truncated asymptotic expansions of series tails.

The workhorse of the whole package.  A :class:`ParitySeries` represents the
large-``n`` behaviour of a sequence as a finite sum of monomials

    n^(-a) * ln(n)^b          ("even" part)
    (-1)^n * n^(-a) * ln(n)^b ("odd" part)

with floating coefficients at the current mpmath precision, truncated at a
maximum exponent ``amax``.  Tails of partial sums, tails of multiple zeta
values and the remainders of every series in this package are obtained by
composing three operations:

  * multiplication of expansions (products of tails, extra n^(-r) weights),
  * the *tail operator* ``Sum_{k>n} f(k)`` applied monomial by monomial,
    via Euler-Maclaurin (even part) and Boole summation (odd part),
  * evaluation at a moderate integer n where the truncated expansion is
    accurate far beyond the requested tolerance.

Everything here is precision-aware: series must be built and evaluated under
the same mpmath working precision (callers use ``mp.workdps``).
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf, bernfrac, binomial, log


class DivergentSeriesError(ValueError):
    """Raised when the tail operator meets a non-summable monomial."""


Key = tuple[int, int]  # (a, b): monomial n^(-a) * ln(n)^b


def _bern(k: int) -> Fraction:
    p, q = bernfrac(k)
    return Fraction(int(p), int(q))


def _euler_at_zero(j: int) -> Fraction:
    # E_j(0) = 2 (1 - 2^(j+1)) B_{j+1} / (j+1)
    return 2 * (1 - Fraction(2) ** (j + 1)) * _bern(j + 1) / (j + 1)


def _ddx(d: dict[Key, mpf]) -> dict[Key, mpf]:
    """Derivative of sum c * x^(-a) ln(x)^b."""
    out: dict[Key, mpf] = {}
    for (a, b), c in d.items():
        _acc(out, (a + 1, b), -a * c)
        if b:
            _acc(out, (a + 1, b - 1), b * c)
    return out


def _acc(d: dict[Key, mpf], key: Key, c) -> None:
    v = d.get(key)
    d[key] = c if v is None else v + c
    if d[key] == 0:
        del d[key]


def _shift_to_n(d: dict[Key, mpf], amax: int) -> dict[Key, mpf]:
    """Rewrite monomials of u = n+1 as a truncated expansion in n.

    (n+1)^(-a) = sum_i binom(-a,i) n^(-a-i);  ln(n+1) = ln n + v with
    v = sum_{i>=1} (-1)^(i+1) n^(-i) / i.
    """
    out: dict[Key, mpf] = {}
    order = amax + 1
    v = [mp.zero] + [mpf((-1) ** (i + 1)) / i for i in range(1, order + 1)]
    for (a, b), c in d.items():
        # powers v^t, as coefficient lists in n^(-i)
        vt = [mp.one] + [mp.zero] * order  # v^0
        powers = [vt]
        for _ in range(b):
            nxt = [mp.zero] * (order + 1)
            for i, ci in enumerate(powers[-1]):
                if ci == 0:
                    continue
                for j in range(1, order + 1 - i):
                    nxt[i + j] += ci * v[j]
            powers.append(nxt)
        for t in range(b + 1):
            cbt = c * binomial(b, t)
            for i, ci in enumerate(powers[t]):
                if ci == 0:
                    continue
                base = a + i
                if base > amax:
                    continue
                for j in range(0, amax - base + 1):
                    cij = ci * cbt * binomial(-a, j)
                    if cij != 0 and base + j <= amax:
                        _acc(out, (base + j, b - t), cij)
    return out


_basis_cache: dict = {}


def power_tail(p: int, b: int, amax: int) -> dict[Key, mpf]:
    """Expansion of Sum_{k>n} k^(-p) ln(k)^b via Euler-Maclaurin (p >= 2)."""
    key = ("S", p, b, amax, mp.prec)
    hit = _basis_cache.get(key)
    if hit is not None:
        return hit
    if p <= 1:
        raise DivergentSeriesError(f"sum of k^(-{p}) ln^{b} k diverges")
    out: dict[Key, mpf] = {}
    # integral_n^inf x^(-p) ln(x)^b dx
    ff = 1
    for i in range(b + 1):
        _acc(out, (p - 1, b - i), mpf(ff) / mpf((p - 1) ** (i + 1)))
        ff *= b - i
    f: dict[Key, mpf] = {(p, b): mp.one}
    for k, c in f.items():
        _acc(out, k, -c / 2)
    deriv = dict(f)
    j = 1
    while p + 2 * j - 1 <= amax:
        deriv = _ddx(deriv)  # f^(2j-1)
        coeff = _bern(2 * j)
        fact = 1
        for i in range(2, 2 * j + 1):
            fact *= i
        scale = mpf(coeff.numerator) / (mpf(coeff.denominator) * fact)
        for k, c in deriv.items():
            if k[0] <= amax:
                _acc(out, k, -scale * c)
        deriv = _ddx(deriv)  # advance to f^(2j)
        j += 1
    _basis_cache[key] = out
    return out


def alt_power_tail(p: int, b: int, amax: int) -> dict[Key, mpf]:
    """Odd-part expansion of Sum_{k>n} (-1)^k k^(-p) ln(k)^b (Boole summation).

    Returns the coefficient dict of the (-1)^n component; p >= 1.
    """
    key = ("A", p, b, amax, mp.prec)
    hit = _basis_cache.get(key)
    if hit is not None:
        return hit
    if p < 1:
        raise DivergentSeriesError(f"alternating sum of k^({-p}) ln^{b} k does not converge")
    # Sum_{k>=m} (-1)^k f(k) = (-1)^m/2 * sum_j E_j(0)/j! f^(j)(m), m = n+1
    acc: dict[Key, mpf] = {}
    deriv: dict[Key, mpf] = {(p, b): mp.one}
    j = 0
    fact = 1
    while p + j <= amax:
        e = _euler_at_zero(j)
        if e != 0:
            scale = mpf(e.numerator) / (mpf(e.denominator) * fact)
            for k, c in deriv.items():
                if k[0] <= amax:
                    _acc(acc, k, scale * c)
        deriv = _ddx(deriv)
        j += 1
        fact *= j
    shifted = _shift_to_n(acc, amax)
    out = {k: -c / 2 for k, c in shifted.items()}  # (-1)^(n+1) = -(-1)^n
    _basis_cache[key] = out
    return out


class ParitySeries:
    """A truncated asymptotic expansion with even and odd ((-1)^n) parts."""

    __slots__ = ("even", "odd", "amax")

    def __init__(self, even=None, odd=None, amax: int = 12):
        self.even: dict[Key, mpf] = dict(even) if even else {}
        self.odd: dict[Key, mpf] = dict(odd) if odd else {}
        self.amax = amax

    @classmethod
    def one(cls, amax: int) -> "ParitySeries":
        return cls(even={(0, 0): mp.one}, amax=amax)

    @classmethod
    def constant(cls, c, amax: int) -> "ParitySeries":
        return cls(even={(0, 0): mpf(c)} if c else None, amax=amax)

    def __add__(self, other: "ParitySeries") -> "ParitySeries":
        out = ParitySeries(self.even, self.odd, max(self.amax, other.amax))
        for k, c in other.even.items():
            _acc(out.even, k, c)
        for k, c in other.odd.items():
            _acc(out.odd, k, c)
        return out

    def scale(self, c) -> "ParitySeries":
        c = mpf(c)
        return ParitySeries(
            {k: v * c for k, v in self.even.items()},
            {k: v * c for k, v in self.odd.items()},
            self.amax,
        )

    def __neg__(self) -> "ParitySeries":
        return self.scale(-1)

    def __sub__(self, other: "ParitySeries") -> "ParitySeries":
        return self + other.scale(-1)

    def mul(self, other: "ParitySeries") -> "ParitySeries":
        amax = min(self.amax, other.amax)
        out = ParitySeries(amax=amax)

        def _mm(d1, d2, target):
            for (a1, b1), c1 in d1.items():
                for (a2, b2), c2 in d2.items():
                    if a1 + a2 <= amax:
                        _acc(target, (a1 + a2, b1 + b2), c1 * c2)

        _mm(self.even, other.even, out.even)
        _mm(self.odd, other.odd, out.even)  # (-1)^n * (-1)^n = 1
        _mm(self.even, other.odd, out.odd)
        _mm(self.odd, other.even, out.odd)
        return out

    def weight(self, r: int) -> "ParitySeries":
        """Multiply by n^(-r)."""
        if r == 0:
            return self
        return ParitySeries(
            {(a + r, b): c for (a, b), c in self.even.items() if a + r <= self.amax},
            {(a + r, b): c for (a, b), c in self.odd.items() if a + r <= self.amax},
            self.amax,
        )

    def parity_flip(self) -> "ParitySeries":
        """Multiply by (-1)^n."""
        return ParitySeries(self.odd, self.even, self.amax)

    def _scale_ref(self) -> mpf:
        m = mp.one
        for c in self.even.values():
            m = max(m, abs(c))
        for c in self.odd.values():
            m = max(m, abs(c))
        return m

    def tail(self) -> "ParitySeries":
        """Expansion of Sum_{k>n} s(k), monomial by monomial.

        Monomials that would make the sum diverge are rejected unless their
        coefficient is negligible relative to the largest coefficient (exact
        cancellations leave floating dust at the working precision).
        """
        negligible = self._scale_ref() * mpf(10) ** (-(mp.dps - 8))
        out = ParitySeries(amax=self.amax)
        for (a, b), c in self.even.items():
            if a <= 1:
                if abs(c) > negligible:
                    raise DivergentSeriesError(
                        f"series term ~ n^(-{a}) ln^{b} n is not summable"
                    )
                continue
            for k, v in power_tail(a, b, self.amax).items():
                _acc(out.even, k, c * v)
        for (a, b), c in self.odd.items():
            if a < 1:
                if abs(c) > negligible:
                    raise DivergentSeriesError(
                        f"alternating term ~ n^(-{a}) ln^{b} n is not summable"
                    )
                continue
            for k, v in alt_power_tail(a, b, self.amax).items():
                _acc(out.odd, k, c * v)
        return out

    def eval_at(self, n: int) -> tuple[mpf, mpf]:
        """Value at integer n plus a conservative truncation-error estimate."""
        ln = log(n)
        inv = mp.one / n
        val = mp.zero
        err = mp.zero
        sign = -1 if n % 2 else 1
        for part, s in ((self.even, 1), (self.odd, sign)):
            for (a, b), c in part.items():
                t = c * inv ** a * ln ** b
                val += s * t
                if a >= self.amax - 1:
                    err += abs(t)
        err = 4 * err + 4 * self._scale_ref() * inv ** (self.amax + 1)
        return val, err

    def __repr__(self):
        def fmt(d):
            return " + ".join(
                f"{mp.nstr(c, 8)}*n^-{a}" + (f"*ln^{b}" if b else "")
                for (a, b), c in sorted(d.items())
            )

        return f"<ParitySeries even=[{fmt(self.even)}] odd=[{fmt(self.odd)}]>"
