from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opertorsor.poly import Poly, gcd, rational_sqrt, remove_factors
from opertorsor.rings import QQ, common_ring
from opertorsor.curve import Chart
from opertorsor.errors import RingMismatchError

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(fractions, max_size=5).map(Poly)


def test_trimming_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly([]).is_zero()
    assert Poly.monomial(3, 2) == Poly([0, 0, 0, 2])


def test_horner_and_derivative():
    p = Poly([1, 0, 3])
    assert p(2) == 13
    assert p.derive() == Poly([0, 6])


def test_divmod():
    a = Poly([-1, 0, 1])
    q, r = divmod(a, Poly([-1, 1]))
    assert q == Poly([1, 1]) and r.is_zero()


def test_gcd_is_monic():
    a = Poly([-2, 0, 2])  # 2(t-1)(t+1)
    b = Poly([2, -2])  # -2(t-1)
    assert gcd(a, b) == Poly([-1, 1])


def test_remove_factors_strips_localized_part():
    # d = t^2 (t - 1) with q = t leaves t - 1
    d = Poly([0, 0, -1, 1])
    assert remove_factors(d, Poly([0, 1])) == Poly([-1, 1])


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert Poly([1, 2, 1]).sqrt() in (Poly([1, 1]), Poly([-1, -1]))
    assert Poly([0, 1]).sqrt() is None


def test_common_ring_rejects_mixture():
    with pytest.raises(RingMismatchError):
        common_ring(QQ, Chart("t"), Chart("s"))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).derive() == a.derive() * b + a * b.derive()


@settings(max_examples=60, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree
