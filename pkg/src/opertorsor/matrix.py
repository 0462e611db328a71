"""Small exact matrix helpers over any coefficient ring.

Matrices are tuples of row tuples.  Entries may mix ``Fraction`` constants
with ring elements; the arithmetic operators take care of promotion.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonUnitError


def identity(m: int, ring=None):
    one = Fraction(1) if ring is None else ring.one
    zero = Fraction(0) if ring is None else ring.zero
    return tuple(tuple(one if i == j else zero for j in range(m)) for i in range(m))


def zeros(m: int):
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(m))


def unit_matrix(m: int, i: int, j: int):
    """Elementary matrix ``E_{ij}`` (0-based)."""
    return tuple(
        tuple(Fraction(1) if (r, c) == (i, j) else Fraction(0) for c in range(m))
        for r in range(m)
    )


def diag(values):
    n = len(values)
    return tuple(
        tuple(values[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_map(fn, a):
    return tuple(tuple(fn(x) for x in row) for row in a)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = a[i]
        acc = [Fraction(0)] * m
        for l in range(k):
            x = row[l]
            if x == 0:
                continue
            bl = b[l]
            for j in range(m):
                y = bl[j]
                if y != 0:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def trace(a):
    acc = Fraction(0)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def is_upper_triangular(a) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def charpoly_adjugate(a):
    """Faddeev-LeVerrier: return ``(det(a), adj(a))``.

    Uses only ring operations and division by the integers ``1..m``, so it
    works over every Q-algebra.
    """
    m = len(a)
    eye = identity(m)
    mk = zeros(m)
    c = Fraction(1)
    for k in range(1, m + 1):
        mk = mat_add(mat_mul(a, mk), mat_scale(eye, c)) if k > 1 else eye
        c = trace(mat_mul(a, mk)) * Fraction(-1, k)
    # A * M_m + c_0 I = 0, so adj(A) = (-1)^(m+1) M_m and det(A) = (-1)^m c_0
    sign = -1 if m % 2 else 1
    return c * sign, mat_scale(mk, -sign)


def determinant(a):
    return charpoly_adjugate(a)[0]


def inverse(a, ring):
    det, adj = charpoly_adjugate(a)
    det = ring.coerce(det)
    if not ring.is_unit(det):
        raise NonUnitError(f"determinant {det} is not a unit of {ring!r}")
    inv = ring.inverse(det)
    return mat_scale(adj, inv)


def nilpotent_exp(x, ring=None):
    """``exp(x)`` for nilpotent ``x`` as a finite sum."""
    m = len(x)
    out = identity(m, ring)
    term = identity(m, ring)
    for k in range(1, m + 1):
        term = mat_scale(mat_mul(term, x), Fraction(1, k))
        if is_zero(term):
            break
        out = mat_add(out, term)
    return out
