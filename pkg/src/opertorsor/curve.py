"""Affine curve charts ``Q[v, 1/q(v)]`` and Taylor coordinate cocycles.

A chart is the localized polynomial ring ``Q[v, 1/q]`` together with a
table of named coordinates.  A rational function belongs to the chart when
every irreducible factor of its (reduced) denominator divides ``q``; it is
a unit when the same holds for its numerator.  "Never vanishes on the
chart" is therefore decided by polynomial gcds, no factorization needed.

A coordinate is a function ``s`` whose derivative ``ds/dv`` is a unit.
For coordinates ``s, t`` the universal cocycle is the jet

    sum_{k >= 1} (1/k!) (d/dt)^k s  z^k,

the Taylor expansion of ``s - s(x)`` in powers of ``t - t(x)``.  Because
``d/dt = (dt/dv)^{-1} d/dv`` these coefficients stay in the chart ring.

Composition convention (fixed by the pointwise Taylor oracle in the test
suite): with ``aut_mul(a, b) = b(a(z))``,

    cocycle(u, t) == aut_mul(cocycle(s, t), cocycle(u, s)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    InvalidCoordinateError,
    NonUnitError,
    PointOutsideChartError,
    RingMismatchError,
)
from .jetgroup import AutJet, aut_mul
from .poly import Poly, gcd, remove_factors
from .rings import QQ


class Chart:
    """The ring ``Q[v, 1/q]`` plus named coordinates.

    Charts compare equal when variable name and localization polynomial
    agree; the coordinate table is bookkeeping and does not affect ring
    identity.
    """

    def __init__(self, var: str = "t", q=None, coordinates=None):
        self.var = var
        q = Poly(1) if q is None else Poly(q)
        if q.is_zero():
            raise ValueError("localization polynomial must be nonzero")
        self.q = q.monic()
        self.zero = RationalFunction(Poly(), Poly(1), self, _reduced=True)
        self.one = RationalFunction(Poly(1), Poly(1), self, _reduced=True)
        self._coords = {}
        for name, value in (coordinates or {}).items():
            self.add_coordinate(name, value)

    # ring protocol

    def __eq__(self, other):
        if not isinstance(other, Chart):
            return NotImplemented
        return self.var == other.var and self.q == other.q

    def __hash__(self):
        return hash(("Chart", self.var, self.q))

    def __repr__(self):
        if self.q.is_constant():
            return f"Q[{self.var}]"
        return f"Q[{self.var}, 1/({poly_str(self.q, self.var)})]"

    def contains(self, x) -> bool:
        if isinstance(x, RationalFunction):
            return x.chart == self
        return isinstance(x, (int, Fraction, Poly))

    def coerce(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.chart != self:
                raise RingMismatchError(f"{x!r} lives on {x.chart!r}, not {self!r}")
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction(Poly(x), Poly(1), self, _reduced=True)
        if isinstance(x, Poly):
            return RationalFunction(x, Poly(1), self, _reduced=True)
        raise RingMismatchError(f"cannot coerce {x!r} into {self!r}")

    def is_unit(self, x) -> bool:
        return self.coerce(x).is_unit()

    def inverse(self, x) -> RationalFunction:
        return self.one / self.coerce(x)

    def derive(self, x) -> RationalFunction:
        return self.coerce(x).derive()

    def poly_is_unit(self, p: Poly) -> bool:
        return not p.is_zero() and remove_factors(p, self.q).is_constant()

    # construction helpers

    @property
    def variable(self) -> RationalFunction:
        return self.coerce(Poly([0, 1]))

    def laurent(self, coeffs: dict) -> RationalFunction:
        """Build ``sum c_k v^k`` from ``{k: c_k}`` (negative ``k`` allowed)."""
        if not coeffs:
            return self.zero
        low = min(min(coeffs), 0)
        num = [Fraction(0)] * (max(max(coeffs), 0) - low + 1)
        for k, c in coeffs.items():
            num[k - low] += Fraction(c)
        return self.fraction(Poly(num), Poly.monomial(-low))

    def fraction(self, num, den) -> RationalFunction:
        return RationalFunction(Poly(num), Poly(den), self)

    # coordinates

    def add_coordinate(self, name: str, value):
        value = self.coerce(value)
        ok, _ = validate_coordinate(self, value)
        if not ok:
            raise InvalidCoordinateError(f"{name} = {value} has non-unit derivative on {self!r}")
        self._coords[name] = value

    @property
    def coordinates(self) -> dict:
        names = {self.var: self.variable}
        names.update(self._coords)
        return names

    def coordinate(self, ref) -> RationalFunction:
        """Resolve a coordinate given by name or as a function."""
        if isinstance(ref, str):
            coords = self.coordinates
            if ref not in coords:
                raise InvalidCoordinateError(f"unknown coordinate {ref!r} on {self!r}")
            return coords[ref]
        return self.coerce(ref)

    def contains_point(self, x) -> bool:
        return self.q(Fraction(x)) != 0


class RationalFunction:
    """Element ``num/den`` of a chart ring, stored reduced with monic ``den``."""

    __slots__ = ("num", "den", "chart")

    def __init__(self, num: Poly, den: Poly, chart: Chart, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly(1)
            elif not den.is_constant():
                g = gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
            if not den.is_constant() and not chart.poly_is_unit(den):
                raise NonUnitError(
                    f"denominator {poly_str(den, chart.var)} is not invertible on {chart!r}"
                )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "chart", chart)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def ring(self) -> Chart:
        return self.chart

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.chart != self.chart:
                raise RingMismatchError(f"{self.chart!r} vs {other.chart!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Poly(other), Poly(1), self.chart, _reduced=True)
        if isinstance(other, Poly):
            return RationalFunction(other, Poly(1), self.chart, _reduced=True)
        return None

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.chart == other.chart and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den == Poly(1) and self.num.is_constant():
            return hash(self.num[0])
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.chart, _reduced=True)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.is_constant():
                return RationalFunction(self.num + o.num, self.den, self.chart, _reduced=True)
            return RationalFunction(self.num + o.num, self.den, self.chart)
        return RationalFunction(
            self.num * o.den + o.num * self.den, self.den * o.den, self.chart
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.chart.zero
            return RationalFunction(self.num * other, self.den, self.chart, _reduced=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num * o.num, self.den, self.chart, _reduced=True)
        return RationalFunction(self.num * o.num, self.den * o.den, self.chart)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.is_unit():
            raise NonUnitError(f"{o} is not a unit of {self.chart!r}")
        return RationalFunction(self.num * o.den, self.den * o.num, self.chart)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.chart.one / self) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, self.chart, _reduced=True)

    def is_unit(self) -> bool:
        return self.chart.poly_is_unit(self.num)

    def derive(self) -> RationalFunction:
        """d/dv for the chart variable ``v``."""
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction(n.derive(), d, self.chart, _reduced=True)
        return RationalFunction(n.derive() * d - n * d.derive(), d * d, self.chart)

    def __call__(self, x) -> Fraction:
        """Evaluate at a rational point of the chart."""
        x = Fraction(x)
        if not self.chart.contains_point(x):
            raise PointOutsideChartError(f"{self.chart.var} = {x} is outside {self.chart!r}")
        return self.num(x) / self.den(x)

    evaluate = __call__

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return rf_str(self)


def poly_str(p: Poly, var: str, shift: int = 0) -> str:
    """ASCII form, lowest degree first: ``1 - 2*t + 1/3*t^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        e = k - shift
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def rf_str(f: RationalFunction) -> str:
    """ASCII form; Laurent polynomials are written with negative exponents."""
    var = f.chart.var
    if f.den.is_constant():
        return poly_str(f.num, var)
    if f.den.is_monomial():
        return poly_str(f.num, var, shift=f.den.degree)
    num = poly_str(f.num, var)
    if len(f.num.coeffs) - f.num.coeffs.count(0) > 1:
        num = f"({num})"
    return f"{num}/({poly_str(f.den, var)})"


class CoordinateCheck(NamedTuple):
    valid: bool
    witness: RationalFunction | None


def validate_coordinate(chart: Chart, s) -> CoordinateCheck:
    """Is ``ds/dv`` a unit?  The witness is its inverse."""
    s = chart.coerce(s)
    ds = s.derive()
    if ds.is_unit():
        return CoordinateCheck(True, chart.one / ds)
    return CoordinateCheck(False, None)


def _require_coordinate(chart: Chart, ref) -> RationalFunction:
    s = chart.coordinate(ref)
    if not s.derive().is_unit():
        raise InvalidCoordinateError(f"{s} is not a coordinate on {chart!r}")
    return s


def derivation(chart: Chart, t):
    """Return the operator ``d/dt`` on chart functions (chain rule through ``v``)."""
    t = _require_coordinate(chart, t)
    inv = chart.one / t.derive()

    def d_dt(f):
        return chart.coerce(f).derive() * inv

    return d_dt


def derivatives(chart: Chart, f, t, k: int) -> list:
    """``[f, df/dt, ..., d^k f/dt^k]``."""
    d = derivation(chart, t)
    out = [chart.coerce(f)]
    for _ in range(k):
        out.append(d(out[-1]))
    return out


def taylor_cocycle_universal(chart: Chart, s, t, order: int) -> AutJet:
    """The jet ``sum (1/k!) d^k s/dt^k z^k`` over the chart ring."""
    s = _require_coordinate(chart, s)
    t = _require_coordinate(chart, t)
    ders = derivatives(chart, s, t, order - 1)
    coeffs = [chart.zero]
    fact = 1
    for k in range(1, order):
        fact *= k
        coeffs.append(ders[k] * Fraction(1, fact))
    return AutJet(coeffs, chart)


def evaluate_jet(jet: AutJet, x) -> AutJet:
    """Evaluate a chart-ring jet coefficientwise at a rational point."""
    chart = jet.ring
    x = Fraction(x)
    if not chart.contains_point(x):
        raise PointOutsideChartError(f"{chart.var} = {x} is outside {chart!r}")
    return AutJet([c(x) for c in jet.coeffs], QQ)


def taylor_cocycle_at_point(chart: Chart, s, t, x, order: int) -> AutJet:
    """The jet at the rational point ``v = x``: a coordinate change over QQ."""
    if not chart.contains_point(x):
        raise PointOutsideChartError(f"{chart.var} = {x} is outside {chart!r}")
    return evaluate_jet(taylor_cocycle_universal(chart, s, t, order), x)


def cocycle_consistency(chart: Chart, u, s, t, order: int) -> bool:
    """Check ``cocycle(u, t) == aut_mul(cocycle(s, t), cocycle(u, s))``."""
    ut = taylor_cocycle_universal(chart, u, t, order)
    us = taylor_cocycle_universal(chart, u, s, order)
    st = taylor_cocycle_universal(chart, s, t, order)
    return aut_mul(st, us) == ut


@dataclass(frozen=True)
class PointQ:
    """A rational point ``v = value`` of a chart."""

    chart: Chart
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if not self.chart.contains_point(self.value):
            raise PointOutsideChartError(
                f"{self.chart.var} = {self.value} is outside {self.chart!r}"
            )
