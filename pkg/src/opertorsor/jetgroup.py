"""Truncated power series and the groups of truncated coordinate changes.

A :class:`TruncSeries` of order ``n`` is a power series known modulo
``z**n``.  An :class:`AutJet` is such a series ``rho_1 z + ... + rho_{n-1}
z^{n-1}`` with ``rho_1`` a unit, i.e. an automorphism of ``R[z]/z^n``
fixing the ideal ``(z)``.

Group law.  The product is *reversed* composition::

    aut_mul(tau1, tau2)(z) == tau2(tau1(z))

so ``aut_mul(a, b)`` is "first ``a``, then ``b``" when read on coordinates.

Semidirect decomposition.  :func:`decompose` returns ``(lam, u)`` with
``tau == aut_mul(scaling(lam), u)``, i.e. the scaling ``z -> lam z`` is
applied first and ``u`` (linear coefficient 1) afterwards:
``tau(z) = u(lam z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import (
    CompositionDomainError,
    NotAutomorphismError,
    OrderError,
    RingMismatchError,
)
from .rings import QQ, common_ring


class TruncSeries:
    """Power series ``c_0 + c_1 z + ... + c_{n-1} z^{n-1}`` modulo ``z^n``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring=QQ):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise OrderError("a truncated series needs order >= 1")
        converted = []
        for c in coeffs:
            if not ring.contains(c):
                raise RingMismatchError(f"coefficient {c!r} is not in {ring!r}")
            converted.append(ring.coerce(c))
        object.__setattr__(self, "coeffs", tuple(converted))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r}, ring={self.ring!r})"

    def truncate(self, m: int) -> TruncSeries:
        if not 1 <= m <= self.order:
            raise OrderError(f"cannot truncate order {self.order} series to {m}")
        return TruncSeries(self.coeffs[:m], self.ring)

    def evaluate_coefficients(self, fn, ring) -> TruncSeries:
        """Apply a ring homomorphism ``fn`` to every coefficient."""
        return TruncSeries([fn(c) for c in self.coeffs], ring)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    def __neg__(self):
        return series_scale(self, -1)


def _common(a: TruncSeries, b: TruncSeries):
    ring = common_ring(a.ring, b.ring)
    return ring, min(a.order, b.order)


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    ring, n = _common(a, b)
    return TruncSeries([a.coeffs[k] + b.coeffs[k] for k in range(n)], ring)


def _mul_coeffs(a, b, n, zero):
    out = [zero] * n
    for i in range(n):
        x = a[i]
        if x == 0:
            continue
        for j in range(n - i):
            y = b[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return out


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    ring, n = _common(a, b)
    return TruncSeries(_mul_coeffs(a.coeffs, b.coeffs, n, ring.zero), ring)


def series_scale(a: TruncSeries, c) -> TruncSeries:
    if not a.ring.contains(c):
        raise RingMismatchError(f"scalar {c!r} is not in {a.ring!r}")
    c = a.ring.coerce(c)
    return TruncSeries([x * c for x in a.coeffs], a.ring)


def series_derive(a: TruncSeries) -> TruncSeries:
    """Formal d/dz; the result has order ``a.order - 1``."""
    if a.order < 2:
        raise OrderError("derivative of an order-1 series has no coefficients")
    return TruncSeries([k * a.coeffs[k] for k in range(1, a.order)], a.ring)


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """``f(g(z))`` modulo ``z^n`` with ``n`` the smaller of the two orders."""
    ring, n = _common(f, g)
    if g.coeffs[0] != 0:
        raise CompositionDomainError("inner series must have zero constant term")
    gc = g.coeffs[:n]
    fc = f.coeffs[:n]
    acc = []
    # Horner; before the step for f_k the accumulator is still multiplied by
    # g^k (valuation >= k) later, so only its first n - k terms matter
    for k in range(len(fc) - 1, -1, -1):
        m = n - k
        acc = _mul_coeffs(acc + [ring.zero] * (m - len(acc)), gc, m, ring.zero)
        acc[0] = acc[0] + fc[k]
    acc += [ring.zero] * (n - len(acc))
    return TruncSeries(acc, ring)


class AutJet(TruncSeries):
    """Element of the truncated coordinate-change group ``Aut+_n O``."""

    __slots__ = ()

    def __init__(self, coeffs, ring=QQ):
        super().__init__(coeffs, ring)
        if self.order < 2:
            raise OrderError("Aut+_n O needs order n >= 2")
        if self.coeffs[0] != 0:
            raise NotAutomorphismError("constant term must vanish")
        if not ring.is_unit(self.coeffs[1]):
            raise NotAutomorphismError(f"linear coefficient {self.coeffs[1]!r} is not a unit")

    @classmethod
    def from_series(cls, s: TruncSeries) -> AutJet:
        return cls(s.coeffs, s.ring)

    @classmethod
    def identity(cls, order: int, ring=QQ) -> AutJet:
        return cls([ring.zero, ring.one] + [ring.zero] * (order - 2), ring)

    @classmethod
    def scaling(cls, lam, order: int, ring=QQ) -> AutJet:
        return cls([ring.zero, ring.coerce(lam)] + [ring.zero] * (order - 2), ring)

    def truncate(self, m: int) -> AutJet:
        return project(self, m)

    def is_identity(self) -> bool:
        return self == AutJet.identity(self.order, self.ring)


def aut_mul(tau1: AutJet, tau2: AutJet) -> AutJet:
    """Group product ``tau1 . tau2 = tau2(tau1(z))``."""
    if tau1.order != tau2.order:
        raise OrderError(f"order mismatch: {tau1.order} vs {tau2.order}")
    return AutJet.from_series(compose(tau2, tau1))


def aut_inverse(tau: AutJet) -> AutJet:
    """Compositional inverse by triangular back-substitution.

    The z^k coefficient of ``tau(sigma(z))`` equals ``tau_1 sigma_k`` plus
    terms in ``sigma_1 .. sigma_{k-1}`` only, so each ``sigma_k`` is fixed
    by one division by the unit ``tau_1``.
    """
    ring, n = tau.ring, tau.order
    inv1 = ring.inverse(tau.coeffs[1])
    sigma = [ring.zero, inv1] + [ring.zero] * (n - 2)
    for k in range(2, n):
        partial = compose(tau, TruncSeries(sigma[: k + 1], ring))
        sigma[k] = -partial.coeffs[k] * inv1
    return AutJet(sigma, ring)


def project(tau: AutJet, m: int) -> AutJet:
    """The truncation homomorphism ``Aut+_n O -> Aut+_m O``."""
    if not 2 <= m <= tau.order:
        raise OrderError(f"projection level {m} outside [2, {tau.order}]")
    return AutJet(tau.coeffs[:m], tau.ring)


@dataclass(frozen=True)
class GmPart:
    """The scaling ``z -> lam z``."""

    lam: Any

    def as_jet(self, order: int, ring=QQ) -> AutJet:
        return AutJet.scaling(self.lam, order, ring)


@dataclass(frozen=True)
class UnipotentPart:
    jet: AutJet

    def __post_init__(self):
        if self.jet.coeffs[1] != self.jet.ring.one:
            raise NotAutomorphismError("unipotent part must have linear coefficient 1")


def decompose(tau: AutJet) -> tuple[GmPart, UnipotentPart]:
    """Split ``tau`` as ``aut_mul(scaling(lam), u)`` with ``u`` unipotent."""
    ring = tau.ring
    lam = tau.coeffs[1]
    inv = ring.inverse(lam)
    coeffs = [ring.zero]
    p = ring.one
    for k in range(1, tau.order):
        p = p * inv
        coeffs.append(tau.coeffs[k] * p)
    return GmPart(lam), UnipotentPart(AutJet(coeffs, ring))


def recompose(g: GmPart, u: UnipotentPart) -> AutJet:
    jet = u.jet
    return aut_mul(g.as_jet(jet.order, jet.ring), jet)


def kernel_witness(tau: AutJet):
    """``c`` if ``tau == z + c z^n`` at order ``n + 1``, else ``None``.

    Such elements form the kernel of ``Aut0_{n+1} O -> Aut0_n O``; the
    witness is additive under :func:`aut_mul`.
    """
    n = tau.order - 1
    if n < 2:
        raise OrderError("kernel witness needs order n + 1 with n >= 2")
    ring = tau.ring
    if tau.coeffs[1] != ring.one:
        return None
    if any(c != 0 for c in tau.coeffs[2:n]):
        return None
    return tau.coeffs[n]


def kernel_element(c, order: int, ring=QQ) -> AutJet:
    """``z + c z^(order-1)``, the inverse of :func:`kernel_witness`."""
    if order < 3:
        raise OrderError("kernel elements need order >= 3")
    coeffs = [ring.zero, ring.one] + [ring.zero] * (order - 2)
    coeffs[order - 1] = coeffs[order - 1] + ring.coerce(c)
    return AutJet(coeffs, ring)
