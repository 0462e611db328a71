"""Dense univariate polynomials over the rationals.

A polynomial ``a_0 + a_1 v + ... + a_n v^n`` is stored as the tuple
``(a_0, a_1, ..., a_n)`` of :class:`fractions.Fraction`, lowest degree
first, with a nonzero leading coefficient.  The zero polynomial is ``()``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _integral(coeffs):
    """``(d, [d * c for c in coeffs])`` with ``d`` the lcm of the denominators."""
    d = 1
    for c in coeffs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return d, [c.numerator * (d // c.denominator) for c in coeffs]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            coeffs = coeffs.coeffs
        elif isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        object.__setattr__(self, "coeffs", _trim(_frac(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, degree: int, c=1) -> Poly:
        return cls([0] * degree + [c])

    @classmethod
    def _raw(cls, coeffs) -> Poly:
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def valuation(self) -> int:
        """Order of vanishing at ``v = 0`` (``-1`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and self.valuation == self.degree

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    # arithmetic

    def __neg__(self):
        return Poly._raw(-c for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-Poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly._raw(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # convolve integer numerators over a common denominator
        da, ia = _integral(a)
        db, ib = _integral(b)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        den = da * db
        return Poly._raw(Fraction(c, den) for c in out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_down(self, k: int) -> Poly:
        """Divide by ``v**k``; the caller guarantees exactness."""
        return Poly._raw(self.coeffs[k:])

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Poly(), self
        if other.is_monomial():
            inv_lc = 1 / other.lc
            return Poly._raw(c * inv_lc for c in rem[db:]), Poly._raw(rem[:db])
        inv_lc = 1 / other.lc
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c * inv_lc
                quot[k - db] = q
                for j in range(db + 1):
                    rem[k - db + j] -= q * bc[j]
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def derive(self) -> Poly:
        return Poly._raw(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        """Evaluate by Horner's rule at any value supporting ``*`` and ``+``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sqrt(self):
        """Exact square root over the rationals, or ``None``."""
        if self.is_zero():
            return Poly()
        if self.degree % 2:
            return None
        lead = _rational_sqrt(self.lc)
        if lead is None:
            return None
        # Work on the reversed polynomial so the root is found top-down.
        n = self.degree // 2
        rev = list(reversed(self.coeffs))
        root = [lead]
        for k in range(1, n + 1):
            acc = rev[k] - sum(root[i] * root[k - i] for i in range(1, k))
            root.append(acc / (2 * lead))
        cand = Poly(list(reversed(root)))
        return cand if cand * cand == self else None


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None``."""
    return _rational_sqrt(_frac(x))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    # a monomial c v^k shares only powers of v with anything
    if a.is_monomial():
        return Poly.monomial(min(a.degree, b.valuation))
    if b.is_monomial():
        return Poly.monomial(min(b.degree, a.valuation))
    while b:
        a, b = b, a % b
    return a.monic()


def remove_factors(d: Poly, q: Poly) -> Poly:
    """Strip from ``d`` every irreducible factor that divides ``q``.

    The remainder is constant exactly when ``d`` is a unit of the
    localization of the polynomial ring at ``q``.
    """
    if d.is_zero():
        return d
    if q.is_monomial():
        # only the factor v can be stripped
        return d.shift_down(d.valuation) if q.degree else d
    g = gcd(d, q)
    while g.degree > 0:
        d = d.exact_div(g)
        g = gcd(d, g)
    return d
