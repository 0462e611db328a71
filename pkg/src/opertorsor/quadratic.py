"""Quadratic extension ``R[w]/(w^2 - u)`` of a chart ring by the root of a unit.

Used only when the torus step of canonicalization needs a square root
that the chart ring lacks and the caller opted in.  Since ``u`` is a unit,
``w`` is a unit and ``dw/dv = u'/(2u) * w`` keeps derivatives inside the
extension.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import Chart, RationalFunction
from .errors import NonUnitError, RingMismatchError


class QuadraticExtension:
    def __init__(self, base: Chart, u, name: str = "w"):
        u = base.coerce(u)
        if not u.is_unit():
            raise NonUnitError(f"can only adjoin the square root of a unit, got {u}")
        self.base = base
        self.u = u
        self.name = name
        self._log_der = u.derive() / (2 * u)
        self.zero = QuadraticElement(base.zero, base.zero, self)
        self.one = QuadraticElement(base.one, base.zero, self)
        self.root = QuadraticElement(base.zero, base.one, self)

    def __eq__(self, other):
        if not isinstance(other, QuadraticExtension):
            return NotImplemented
        return self.base == other.base and self.u == other.u

    def __hash__(self):
        return hash(("QuadraticExtension", self.base, self.u))

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self.name}^2 - ({self.u}))"

    def contains(self, x) -> bool:
        if isinstance(x, QuadraticElement):
            return x.ring == self
        return self.base.contains(x)

    def coerce(self, x):
        if isinstance(x, QuadraticElement):
            if x.ring != self:
                raise RingMismatchError(f"{x!r} is not in {self!r}")
            return x
        return QuadraticElement(self.base.coerce(x), self.base.zero, self)

    def is_unit(self, x) -> bool:
        return self.coerce(x).is_unit()

    def inverse(self, x):
        return self.one / self.coerce(x)

    def derive(self, x):
        return self.coerce(x).derive()


class QuadraticElement:
    __slots__ = ("a", "b", "ring")

    def __init__(self, a: RationalFunction, b: RationalFunction, ring: QuadraticExtension):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticElement is immutable")

    def _lift(self, other):
        if isinstance(other, QuadraticElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.ring.coerce(other)
        return None

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b.is_zero():
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.ring)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return QuadraticElement(self.a * other, self.b * other, self.ring)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        u = self.ring.u
        return QuadraticElement(
            self.a * o.a + self.b * o.b * u, self.a * o.b + self.b * o.a, self.ring
        )

    __rmul__ = __mul__

    def norm(self) -> RationalFunction:
        return self.a * self.a - self.b * self.b * self.ring.u

    def is_unit(self) -> bool:
        return self.norm().is_unit()

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n.is_unit():
            raise NonUnitError(f"{o} is not a unit of {self.ring!r}")
        conj = QuadraticElement(o.a, -o.b, self.ring)
        p = self * conj
        return QuadraticElement(p.a / n, p.b / n, self.ring)

    def __rtruediv__(self, other):
        return self.ring.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.ring.one / self) ** (-k)
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def derive(self):
        return QuadraticElement(
            self.a.derive(), self.b.derive() + self.b * self.ring._log_der, self.ring
        )

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        w = self.ring.name
        b = f"({self.b})*{w}"
        if self.a.is_zero():
            return b
        return f"{self.a} + {b}"

    def __repr__(self):
        return f"QuadraticElement({self})"
