"""Coefficient ring abstraction.

Series and matrices in this package hold plain Python values that support
``+``, ``-``, ``*`` and ``==`` (``Fraction``, :class:`RationalFunction`,
:class:`QuadraticElement`).  The operations a ring has to supply beyond
operators live on a ring object:

``zero``, ``one``
    neutral elements
``coerce(x)``
    bring an ``int``/``Fraction`` (or a subring element) into the ring
``is_unit(x)``, ``inverse(x)``
    unit test and inversion of units
``derive(x)``
    derivative with respect to the chart variable (zero on constants)
``contains(x)``
    membership test used to detect mixed rings

Rings compare equal when they describe the same ring, which is how
ring mismatches are detected.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonUnitError, RingMismatchError


class RationalField:
    """The field of rationals, elements are :class:`fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise RingMismatchError(f"cannot coerce {x!r} into QQ")

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x) -> Fraction:
        if x == 0:
            raise NonUnitError("0 is not invertible in QQ")
        return 1 / Fraction(x)

    def derive(self, x) -> Fraction:
        return Fraction(0)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def ring_of(x):
    """Best-effort ring lookup for a coefficient value."""
    ring = getattr(x, "ring", None)
    if ring is not None:
        return ring
    if isinstance(x, (int, Fraction)):
        return QQ
    raise RingMismatchError(f"value {x!r} has no known coefficient ring")


def common_ring(*rings):
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise RingMismatchError(f"mixed coefficient rings {first!r} and {r!r}")
    return first
