"""Connections on a trivialized chart, gauge action and canonical opers.

A connection ``d + A dt`` is stored as the matrix ``A`` together with the
coordinate ``t`` it is written against.  Gauge action by ``g``::

    g . A = g A g^-1 - (d_t g) g^-1

where the scalar part of ``(d_t g) g^-1`` is dropped, so a group element
only matters up to a unit scalar (the adjoint group).

Canonicalization brings an oper to ``f0 + sum_j w_j x_j`` with ``x_j`` the
graded basis of ``V_can = ker ad e0``:

1. torus step: a torus element with ``alpha_j(h) = phi_j`` turns the
   degree -1 part ``sum phi_j f_j`` into ``f0``;
2. unipotent steps, ``k = 1, 2, ...``: split the degree ``k - 1`` part as
   ``v + [f0, Y]`` with ``v`` in ``V_can`` and ``Y`` of degree ``k``, then
   gauge by ``exp(Y)``, which leaves degrees below ``k - 1`` alone and
   replaces the degree ``k - 1`` part by ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .curve import Chart, derivatives, taylor_cocycle_universal, validate_coordinate
from .errors import (
    InvalidCoordinateError,
    NotAnOperError,
    NotInAlgebraError,
    RingMismatchError,
)
from .jetgroup import AutJet, aut_mul, project
from .liealg import (
    B2AdElement,
    GroupElement,
    LieRealization,
    _bigger,
    jet3_to_b2ad,
    lincomb,
)
from .matrix import (
    identity,
    mat_add,
    mat_eq,
    mat_map,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_sub,
    nilpotent_exp,
    trace,
)

GaugeElement = GroupElement


def _coordinate(chart: Chart, ref):
    s = chart.coordinate(ref)
    if not validate_coordinate(chart, s).valid:
        raise InvalidCoordinateError(f"{s} is not a coordinate on {chart!r}")
    return s


@dataclass(frozen=True)
class OperConnection:
    """``d + A dt`` on a chart, with ``A`` valued in the Lie algebra."""

    lie: LieRealization
    chart: Chart
    coordinate: Any
    matrix: tuple
    ring: Any = None

    def __post_init__(self):
        ring = self.ring if self.ring is not None else self.chart
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coordinate", _coordinate(self.chart, self.coordinate))
        object.__setattr__(self, "matrix", mat_map(ring.coerce, self.matrix))
        self.lie.coords(self.matrix)

    def coerce(self, ring) -> OperConnection:
        if ring == self.ring:
            return self
        return OperConnection(self.lie, self.chart, self.coordinate, self.matrix, ring)

    def __eq__(self, other):
        if not isinstance(other, OperConnection):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.coordinate == other.coordinate
            and mat_eq(self.matrix, other.matrix)
        )

    __hash__ = None


@dataclass(frozen=True)
class CanonicalOper:
    """Coefficients ``w_1..w_r`` of ``d + (f0 + sum w_j x_j) dt``."""

    lie: LieRealization
    chart: Chart
    coordinate: Any
    coeffs: tuple
    ring: Any = None

    def __post_init__(self):
        ring = self.ring if self.ring is not None else self.chart
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coordinate", _coordinate(self.chart, self.coordinate))
        if len(self.coeffs) != self.lie.rank:
            raise ValueError(f"expected {self.lie.rank} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(ring.coerce(c) for c in self.coeffs))

    @property
    def degrees(self) -> tuple:
        return self.lie.exponents

    def matrix(self):
        return mat_add(
            mat_map(self.ring.coerce, self.lie.f0),
            lincomb(self.coeffs, self.lie.vcan, self.lie.size),
        )

    def connection(self) -> OperConnection:
        return OperConnection(self.lie, self.chart, self.coordinate, self.matrix(), self.ring)

    def __eq__(self, other):
        if not isinstance(other, CanonicalOper):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.coordinate == other.coordinate
            and self.coeffs == other.coeffs
        )

    __hash__ = None


def _d_dt(conn_ring, coordinate):
    dt = conn_ring.coerce(coordinate.derive())
    inv = conn_ring.inverse(dt)

    def d(x):
        return conn_ring.derive(x) * inv

    return d


def _project_scalar(mat):
    m = len(mat)
    c = trace(mat) * Fraction(1, m)
    if c == 0:
        return mat
    return mat_sub(mat, mat_scale(identity(m), c))


def gauge_action(g: GroupElement, conn: OperConnection) -> OperConnection:
    """``g . (d + A dt) = d + (g A g^-1 - (d_t g) g^-1) dt``."""
    ring = _bigger(g.ring, conn.ring) if g.ring != conn.ring else conn.ring
    if ring != g.ring:
        g = g.coerce(ring)
    conn = conn.coerce(ring)
    if g.size != conn.lie.size:
        raise RingMismatchError("gauge element and connection have different sizes")
    d = _d_dt(ring, conn.coordinate)
    dg = mat_map(d, g.matrix)
    a = mat_sub(g.adjoint(conn.matrix), _project_scalar(mat_mul(dg, g.inverse_matrix)))
    return OperConnection(conn.lie, conn.chart, conn.coordinate, a, ring)


@dataclass(frozen=True)
class OperCheck:
    ok: bool
    diagnostics: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.ok


def is_oper(conn: OperConnection) -> OperCheck:
    """Degrees below -1 vanish and every ``f_j`` coefficient is a unit."""
    lie = conn.lie
    gc = lie.graded_coords(conn.matrix)
    problems = []
    for deg in lie.degrees:
        if deg >= -1:
            continue
        for i in lie.slices[deg]:
            if gc[i] != 0:
                problems.append(f"degree {deg} component {i} is nonzero: {gc[i]}")
    for j, i in enumerate(lie.slices[-1]):
        c = gc[i]
        if c == 0:
            problems.append(f"simple root component f_{j + 1} vanishes identically")
        elif not conn.ring.is_unit(c):
            problems.append(
                f"simple root component f_{j + 1} = {c} is not a unit "
                f"(vanishes somewhere on {conn.chart!r})"
            )
    return OperCheck(not problems, tuple(problems))


def canonicalize(conn: OperConnection, allow_quadratic_extension: bool = False):
    """Return ``(CanonicalOper, g)`` with ``gauge_action(g, conn)`` canonical.

    ``g`` is upper triangular in the Borel (torus times unipotent).
    """
    check = is_oper(conn)
    if not check:
        raise NotAnOperError("; ".join(check.diagnostics))
    lie = conn.lie
    gc = lie.graded_coords(conn.matrix)
    phis = [gc[i] for i in lie.slices[-1]]
    h_mat, ring = lie.torus_element(phis, conn.ring, allow_quadratic_extension)
    total = GroupElement(h_mat, ring)
    cur = gauge_action(total, conn.coerce(ring))
    for k in range(1, lie.top + 1):
        gc = lie.graded_coords(cur.matrix)
        _, y = lie.split_degree(gc, k - 1)
        if all(c == 0 for c in y):
            continue
        x = lie.from_graded(y)
        step = GroupElement(nilpotent_exp(x, ring), ring, nilpotent_exp(mat_neg(x), ring))
        cur = gauge_action(step, cur)
        total = step * total
    rest = mat_sub(cur.matrix, lie.f0)
    try:
        coeffs = lie.vcan_coords(rest)
    except NotInAlgebraError as exc:  # pragma: no cover - guarded by the splitting
        raise NotAnOperError(f"canonicalization did not converge: {exc}") from exc
    canon = CanonicalOper(lie, conn.chart, conn.coordinate, coeffs, ring)
    return canon, total


def schwarzian(chart: Chart, t, s):
    """``{t, s} = t'''/t' - 3/2 (t''/t')^2`` with derivatives in ``s``."""
    t = _coordinate(chart, t)
    s = _coordinate(chart, s)
    _, d1, d2, d3 = derivatives(chart, t, s, 3)
    r = d2 / d1
    return d3 / d1 - Fraction(3, 2) * r * r


def coordinate_change_gauge(lie: LieRealization, chart: Chart, t, s, ring=None) -> GroupElement:
    """``exp_e(d_s^2 t / (2 d_s t)) rho_check(d_s t)``."""
    ring = ring or chart
    _, d1, d2 = derivatives(chart, t, s, 2)
    return lie.exp_e(ring.coerce(d2 / (2 * d1)), ring) * lie.rho_check(ring.coerce(d1), ring)


def change_coords(omega: CanonicalOper, s):
    """Closed-form coordinate change; returns ``(CanonicalOper, gauge)``.

    ``w^s_1 = (d_s t)^2 w^t_1 - {t, s}/2`` and
    ``w^s_j = (d_s t)^(d_j + 1) w^t_j`` for ``j > 1``.
    """
    chart, lie, ring = omega.chart, omega.lie, omega.ring
    s = _coordinate(chart, s)
    t = omega.coordinate
    a = ring.coerce(derivatives(chart, t, s, 1)[1])
    coeffs = []
    for j, (w, d) in enumerate(zip(omega.coeffs, lie.exponents)):
        c = a ** (d + 1) * w
        if j == 0:
            c = c - ring.coerce(schwarzian(chart, t, s)) * Fraction(1, 2)
        coeffs.append(c)
    new = CanonicalOper(lie, chart, s, coeffs, ring)
    return new, coordinate_change_gauge(lie, chart, t, s, ring)


def change_coords_oracle(omega: CanonicalOper, s, allow_quadratic_extension: bool = False):
    """Rewrite ``d + A dt`` as ``d + A (d_s t) ds`` and canonicalize again."""
    chart = omega.chart
    s = _coordinate(chart, s)
    a = omega.ring.coerce(derivatives(chart, omega.coordinate, s, 1)[1])
    conn = OperConnection(omega.lie, chart, s, mat_scale(omega.matrix(), a), omega.ring)
    return canonicalize(conn, allow_quadratic_extension)


@dataclass
class CocycleReport:
    """Outcome of comparing the oper-side and jet-side transition cocycles."""

    jet_cocycle: AutJet
    b2ad: B2AdElement
    r_image: GroupElement
    oper_cocycle: GroupElement
    gauge: GroupElement
    formula_matches: bool
    orientation: str | None
    passed: bool
    notes: list = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} orientation={self.orientation} formula_matches={self.formula_matches}"


def _orientation(image: GroupElement, gauge: GroupElement):
    direct = image == gauge
    inverse = image == gauge.inverse()
    if direct and inverse:
        return "both"
    if direct:
        return "gauge"
    if inverse:
        return "inverse-gauge"
    return None


def oper_side_cocycle(lie: LieRealization, chart: Chart, ti, tj) -> GroupElement:
    """``c_ji = e(d^2 t_j / (2 d t_j)) rho_check(d t_j)`` with derivatives in ``t_i``."""
    return coordinate_change_gauge(lie, chart, tj, ti)


def jet_side_cocycle(chart: Chart, ti, tj) -> AutJet:
    """Order-3 truncation of the Taylor cocycle of ``t_j`` in terms of ``t_i``."""
    return project(taylor_cocycle_universal(chart, tj, ti, 3), 3)


def torsor_cocycle_check(chart: Chart, ti, tj, lie: LieRealization, omega=None) -> CocycleReport:
    """Compare the oper transition cocycle with the image of the jet cocycle.

    The jet cocycle ``(d t_j) z + (1/2 d^2 t_j) z^2`` is pushed through
    ``jet3_to_b2ad`` and ``r_map`` and compared, up to scalar, with

    * the closed formula ``e(d^2 t_j / 2 d t_j) rho_check(d t_j)``, and
    * the gauge element found by actually canonicalizing an oper written
      in ``t_j`` after rewriting it in ``t_i``.

    ``orientation`` records whether the image equals that gauge element
    (``"gauge"``) or its inverse (``"inverse-gauge"``).
    """
    ti = _coordinate(chart, ti)
    tj = _coordinate(chart, tj)
    jet = jet_side_cocycle(chart, ti, tj)
    b2 = jet3_to_b2ad(jet)
    image = lie.r_map(b2)
    formula = oper_side_cocycle(lie, chart, ti, tj)
    if omega is None:
        omega = CanonicalOper(lie, chart, tj, [chart.zero] * lie.rank)
    elif omega.coordinate != tj:
        raise InvalidCoordinateError("sample oper must be canonical in t_j")
    _, gauge = change_coords_oracle(omega, ti)
    orientation = _orientation(image, gauge)
    matches = image == formula
    notes = []
    if not matches:
        notes.append("r-image of the jet cocycle differs from the closed-form oper cocycle")
    if orientation is None:
        notes.append("r-image matches neither the canonicalizing gauge nor its inverse")
    return CocycleReport(jet, b2, image, formula, gauge, matches, orientation,
                         matches and orientation is not None, notes)


@dataclass
class TripleReport:
    """Cocycle condition on a triple overlap for both sides.

    ``gauge_law`` lists the relations satisfied by the gauge elements
    ``c_ji`` (``"c_ki = c_kj c_ji"`` and/or ``"c_ki = c_ji c_kj"``);
    ``jet_law`` lists the same for the jet cocycles under ``aut_mul``.
    ``left_torsor_law`` is the standard law ``d_ki = d_kj d_ji`` for the
    inverted elements ``d = c^-1``, checked on both sides.
    """

    gauge_law: list
    jet_law: list
    image_law: list
    left_torsor_law: bool
    passed: bool


def triple_cocycle_check(chart: Chart, ti, tj, tk, lie: LieRealization) -> TripleReport:
    ti, tj, tk = (_coordinate(chart, x) for x in (ti, tj, tk))

    def gauge(a, b):
        omega = CanonicalOper(lie, chart, b, [chart.zero] * lie.rank)
        return change_coords_oracle(omega, a)[1]

    g_ji, g_kj, g_ki = gauge(ti, tj), gauge(tj, tk), gauge(ti, tk)
    j_ji, j_kj, j_ki = jet_side_cocycle(chart, ti, tj), jet_side_cocycle(chart, tj, tk), jet_side_cocycle(chart, ti, tk)
    r = lambda jet: lie.r_map(jet3_to_b2ad(jet))  # noqa: E731
    i_ji, i_kj, i_ki = r(j_ji), r(j_kj), r(j_ki)

    def laws(ki, kj, ji, mul):
        out = []
        if ki == mul(kj, ji):
            out.append("c_ki = c_kj c_ji")
        if ki == mul(ji, kj):
            out.append("c_ki = c_ji c_kj")
        return out

    gmul = lambda a, b: a * b  # noqa: E731
    gauge_law = laws(g_ki, g_kj, g_ji, gmul)
    image_law = laws(i_ki, i_kj, i_ji, gmul)
    jet_law = laws(j_ki, j_kj, j_ji, aut_mul)
    inv = lambda g: g.inverse()  # noqa: E731
    left = (
        inv(g_ki) == inv(g_kj) * inv(g_ji)
        and inv(i_ki) == inv(i_kj) * inv(i_ji)
    )
    passed = bool(gauge_law) and gauge_law == image_law and left
    return TripleReport(gauge_law, jet_law, image_law, left, passed)
