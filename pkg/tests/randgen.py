"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from opertorsor.curve import Chart
from opertorsor.jetgroup import AutJet
from opertorsor.poly import Poly
from opertorsor.rings import QQ

LAURENT = Chart("t", Poly([0, 1]))  # Q[t, 1/t]


def rand_q(rng: random.Random, h: int = 6, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-h, h), rng.randint(1, h))
        if x or not nonzero:
            return x


def rand_laurent(rng, chart=LAURENT, lo: int = -3, hi: int = 3, terms: int = 3):
    coeffs = {rng.randint(lo, hi): rand_q(rng) for _ in range(rng.randint(0, terms))}
    return chart.laurent(coeffs)


def rand_unit(rng, chart=LAURENT, span: int = 3):
    """``c t^k`` with ``c`` nonzero: the units of ``Q[t, 1/t]``."""
    return chart.laurent({rng.randint(-span, span): rand_q(rng, nonzero=True)})


def rand_aut(rng, order: int, ring=QQ):
    if ring == QQ:
        coeffs = [Fraction(0), rand_q(rng, nonzero=True)] + [rand_q(rng) for _ in range(order - 2)]
    else:
        coeffs = [ring.zero, rand_unit(rng, ring)] + [rand_laurent(rng, ring) for _ in range(order - 2)]
    return AutJet(coeffs, ring)


def rand_coordinate(rng, chart=LAURENT):
    """``a t^m + b`` with ``m`` a nonzero integer: a coordinate on ``Q[t, 1/t]``."""
    m = rng.choice([-3, -2, -1, 1, 2, 3])
    return chart.laurent({m: rand_q(rng, nonzero=True), 0: rand_q(rng)})


def rand_oper_matrix(rng, lie, chart=LAURENT, unit_span: int = 2):
    """Random oper: units on every ``f_j``, Laurent entries in degrees >= 0."""
    coeffs = []
    for i in range(lie.dim):
        deg = lie.graded_degrees[i]
        if deg < -1:
            coeffs.append(chart.zero)
        elif deg == -1:
            coeffs.append(rand_unit(rng, chart, unit_span))
        else:
            coeffs.append(rand_laurent(rng, chart))
    return lie.from_graded(coeffs)


def rand_upper_unipotent(rng, lie, chart=LAURENT):
    """``exp(N)`` for ``N`` a random element of positive degree."""
    from opertorsor.liealg import GroupElement
    from opertorsor.matrix import mat_neg, nilpotent_exp

    coeffs = [
        rand_laurent(rng, chart, terms=2) if lie.graded_degrees[i] > 0 else chart.zero
        for i in range(lie.dim)
    ]
    n = lie.from_graded(coeffs)
    return GroupElement(nilpotent_exp(n, chart), chart, nilpotent_exp(mat_neg(n), chart))
