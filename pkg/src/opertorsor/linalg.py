"""Exact linear algebra over Q, backed by sympy's ``DomainMatrix``.

Inputs and outputs are nested lists of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows, ncols=None):
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r]
                         for r in rows], (n, m), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _rows(dm):
    return [[_frac(x) for x in row] for row in dm.to_list()]


def rank(rows, ncols=None) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows, ncols: int):
    """Basis (list of vectors) of ``{x : rows @ x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows).nullspace()
    if ns.shape[0] == 0:
        return []
    return _rows(ns)


def inverse(rows):
    return _rows(_dm(rows).inv())


def solve(rows, rhs):
    """Unique solution of a square (or full column rank) system, else ``None``."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    dm = _dm(aug)
    red, pivots = dm.rref()
    if ncols in pivots or len(pivots) < ncols:
        return None
    red = _rows(red)
    return [red[i][ncols] for i in range(ncols)]


def transpose(rows):
    return [list(c) for c in zip(*rows)]


def pivot_rows(rows, ncols: int):
    """Indices of a maximal linearly independent subset of ``rows``."""
    _, pivots = _dm(transpose(rows)).rref() if rows else (None, ())
    return list(pivots)
