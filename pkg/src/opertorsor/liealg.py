"""Matrix realizations of simple Lie algebras with principal sl2 data.

A :class:`LieRealization` is built from basis matrices and Chevalley
generators ``e_i, f_i, h_i``.  From these it derives, by exact linear
algebra over Q:

* ``h0``, the element with ``[h0, e_i] = 2 e_i`` for every simple root,
* ``f0 = sum f_i`` and the unique ``e0`` with ``[e0, f0] = h0``,
* the principal grading (eigenvalues of ``ad h0 / 2``) and a graded basis
  whose degree -1 part is exactly ``f_1, ..., f_r``,
* ``V_can = ker ad e0`` with a graded basis ``x_1 = e0, x_2, ...`` and its
  degrees ``d_1 = 1 <= d_2 <= ...`` (for sl_n these are ``1, ..., n-1``),
* the weights of the defining representation, used to realize torus
  elements with prescribed simple-root values.

Group elements of the adjoint group are matrices up to a unit scalar.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Any

from . import linalg
from .errors import (
    NonUnitError,
    NotInAlgebraError,
    OrderError,
    RealizationError,
    TorusObstructionError,
)
from .jetgroup import AutJet
from .matrix import (
    commutator,
    diag,
    identity,
    inverse,
    is_upper_triangular,
    mat_add,
    mat_eq,
    mat_mul,
    mat_scale,
    nilpotent_exp,
    unit_matrix,
)
from .poly import rational_sqrt
from .rings import QQ


def lincomb(coeffs, mats, m: int):
    """``sum c_k M_k`` skipping zero coefficients."""
    out = [[Fraction(0)] * m for _ in range(m)]
    for c, mat in zip(coeffs, mats):
        if c == 0:
            continue
        for i in range(m):
            row = mat[i]
            orow = out[i]
            for j in range(m):
                x = row[j]
                if x != 0:
                    orow[j] = orow[j] + c * x
    return tuple(tuple(r) for r in out)


def _apply(mat, vec):
    """Q-matrix times a vector of ring elements."""
    out = []
    for row in mat:
        acc = Fraction(0)
        for a, x in zip(row, vec):
            if a != 0 and x != 0:
                acc = acc + a * x
        out.append(acc)
    return out


class LieRealization:
    """A simple Lie algebra realized by ``m x m`` rational matrices."""

    def __init__(self, basis, e, f, h, name: str | None = None):
        self.name = name or "custom"
        self.basis = tuple(tuple(tuple(Fraction(x) for x in row) for row in b) for b in basis)
        self.e = tuple(tuple(tuple(Fraction(x) for x in row) for row in g) for g in e)
        self.f = tuple(tuple(tuple(Fraction(x) for x in row) for row in g) for g in f)
        self.h = tuple(tuple(tuple(Fraction(x) for x in row) for row in g) for g in h)
        if not self.basis:
            raise RealizationError("empty basis")
        self.size = m = len(self.basis[0])
        self.dim = len(self.basis)
        self.rank = len(self.f)
        failures = []
        if any(len(b) != m or any(len(r) != m for r in b) for b in self.basis + self.e + self.f + self.h):
            raise RealizationError("all matrices must be square of the same size")
        if not (len(self.e) == len(self.f) == len(self.h) and self.rank > 0):
            raise RealizationError("need the same positive number of e, f and h generators")

        self._setup_coordinates(failures)
        self._check_closure(failures)
        self._check(failures)
        self._setup_chevalley(failures)
        self._check(failures)
        self._setup_grading(failures)
        self._check(failures)
        self._setup_vcan(failures)
        self._check(failures)
        self._setup_weights(failures)
        self._check(failures)

    @staticmethod
    def _check(failures):
        if failures:
            raise RealizationError("invalid realization: " + "; ".join(failures))

    # coordinates in the given basis

    def _setup_coordinates(self, failures):
        m = self.size
        cols = [[b[p // m][p % m] for p in range(m * m)] for b in self.basis]
        flat_rows = linalg.transpose(cols)  # m^2 x dim
        pivots = linalg.pivot_rows(flat_rows, self.dim)
        if len(pivots) < self.dim:
            failures.append("basis matrices are linearly dependent")
            return
        self._pivots = pivots
        square = [flat_rows[p] for p in pivots]
        self._coord_map = linalg.inverse(square)

    def _raw_coords(self, x):
        m = self.size
        return _apply(self._coord_map, [x[p // m][p % m] for p in self._pivots])

    def contains(self, x) -> bool:
        return mat_eq(lincomb(self._raw_coords(x), self.basis, self.size), x)

    def coords(self, x):
        """Coordinates of ``x`` in the given basis; raises if ``x`` is outside."""
        c = self._raw_coords(x)
        if not mat_eq(lincomb(c, self.basis, self.size), x):
            raise NotInAlgebraError("matrix is not in the span of the Lie algebra basis")
        return c

    def _check_closure(self, failures):
        if failures:
            return
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not self.contains(commutator(self.basis[i], self.basis[j])):
                    failures.append(f"basis is not closed under the bracket ([b{i}, b{j}])")
                    return

    def ad_matrix(self, x):
        """``ad x`` in the given basis (columns are images of basis vectors)."""
        cols = [self.coords(commutator(x, b)) for b in self.basis]
        return linalg.transpose(cols)

    # Chevalley data and the principal triple

    def _setup_chevalley(self, failures):
        r = self.rank
        for name, gens in (("e", self.e), ("f", self.f), ("h", self.h)):
            for i, g in enumerate(gens):
                if not self.contains(g):
                    failures.append(f"{name}_{i + 1} is not in the algebra")
        if failures:
            return
        cartan = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                br = commutator(self.e[i], self.f[j])
                if i == j and not mat_eq(br, self.h[i]):
                    failures.append(f"[e_{i + 1}, f_{i + 1}] != h_{i + 1}")
                if i != j and any(x != 0 for row in br for x in row):
                    failures.append(f"[e_{i + 1}, f_{j + 1}] != 0")
                he = commutator(self.h[i], self.e[j])
                c = _proportionality(he, self.e[j])
                if c is None:
                    failures.append(f"e_{j + 1} is not an eigenvector of ad h_{i + 1}")
                else:
                    cartan[i][j] = c
        if failures:
            return
        self.cartan = cartan  # cartan[i][j] = alpha_j(h_i)
        coeffs = linalg.solve(linalg.transpose(cartan), [Fraction(2)] * r)
        if coeffs is None:
            failures.append("Cartan matrix is singular")
            return
        m = self.size
        self.h0 = lincomb(coeffs, self.h, m)
        self.f0 = reduce(mat_add, self.f)
        # e0: [e0, f0] = h0 and [h0, e0] = 2 e0, solved in basis coordinates
        ad_f0 = self.ad_matrix(self.f0)
        ad_h0 = self.ad_matrix(self.h0)
        h0c = self.coords(self.h0)
        rows = [[-x for x in row] for row in ad_f0]
        rows += [[x - (2 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(ad_h0)]
        rhs = h0c + [Fraction(0)] * self.dim
        sol = linalg.solve(rows, rhs)
        if sol is None:
            failures.append("no unique e0 with [e0, f0] = h0 and [h0, e0] = 2 e0")
            return
        self.e0 = lincomb(sol, self.basis, m)
        self._ad_h0 = ad_h0
        self._ad_f0 = ad_f0
        self._ad_e0 = self.ad_matrix(self.e0)
        if not mat_eq(commutator(self.e0, self.f0), self.h0):
            failures.append("[e0, f0] != h0")
        if not mat_eq(commutator(self.h0, self.e0), mat_scale(self.e0, 2)):
            failures.append("[h0, e0] != 2 e0")
        if not mat_eq(commutator(self.h0, self.f0), mat_scale(self.f0, -2)):
            failures.append("[h0, f0] != -2 f0")

    # principal grading

    def _setup_grading(self, failures):
        n = self.dim
        spaces = {}
        found = 0
        k = 0
        while found < n and k <= n:
            for deg in ((k,) if k == 0 else (k, -k)):
                rows = [[x - (2 * deg if i == j else 0) for j, x in enumerate(row)]
                        for i, row in enumerate(self._ad_h0)]
                ns = linalg.nullspace(rows, n)
                if ns:
                    spaces[deg] = ns
                    found += len(ns)
            k += 1
        if found != n:
            failures.append("ad h0 is not diagonalizable with even integer eigenvalues")
            return
        f_coords = [self.coords(x) for x in self.f]
        e_coords = [self.coords(x) for x in self.e]
        if len(spaces.get(-1, [])) != self.rank:
            failures.append("dim g_{-1} differs from the number of simple roots")
            return
        for i, fc in enumerate(f_coords):
            if not self.contains(self.f[i]) or _apply(self._ad_h0, fc) != [-2 * x for x in fc]:
                failures.append(f"f_{i + 1} is not in degree -1")
        for i, ec in enumerate(e_coords):
            if _apply(self._ad_h0, ec) != [2 * x for x in ec]:
                failures.append(f"e_{i + 1} is not in degree 1")
        if failures:
            return
        if linalg.rank(f_coords) != self.rank:
            failures.append("f_i are linearly dependent")
            return
        spaces[-1] = f_coords
        if linalg.rank(e_coords) == len(spaces.get(1, [])):
            spaces[1] = e_coords
        self.degrees = sorted(spaces)
        graded = []
        self.slices = {}
        for deg in self.degrees:
            start = len(graded)
            graded.extend(spaces[deg])
            self.slices[deg] = range(start, len(graded))
        self.graded_degrees = [d for d in self.degrees for _ in spaces[d]]
        self.graded_basis = [lincomb(v, self.basis, self.size) for v in graded]
        # change of basis: graded coordinates from basis coordinates
        t_inv = linalg.inverse(linalg.transpose(graded))
        self._graded_map = [
            [sum((t_inv[i][k] * self._coord_map[k][j] for k in range(n)), Fraction(0))
             for j in range(n)]
            for i in range(n)
        ]
        self._t = linalg.transpose(graded)
        self._t_inv = t_inv
        self.top = max(self.degrees)

    def graded_coords(self, x):
        """Coordinates in :attr:`graded_basis`; raises if ``x`` is outside."""
        m = self.size
        c = _apply(self._graded_map, [x[p // m][p % m] for p in self._pivots])
        if not mat_eq(lincomb(c, self.graded_basis, m), x):
            raise NotInAlgebraError("matrix is not in the span of the Lie algebra basis")
        return c

    def from_graded(self, coeffs):
        return lincomb(coeffs, self.graded_basis, self.size)

    def _graded_operator(self, ad_basis):
        """Conjugate a basis-coordinate operator into graded coordinates."""
        n = self.dim
        tmp = [[sum((ad_basis[i][k] * self._t[k][j] for k in range(n)), Fraction(0))
                for j in range(n)] for i in range(n)]
        return [[sum((self._t_inv[i][k] * tmp[k][j] for k in range(n)), Fraction(0))
                 for j in range(n)] for i in range(n)]

    # V_can and the splitting g = ker ad e0 + im ad f0

    def _setup_vcan(self, failures):
        n = self.dim
        self._gad_e0 = self._graded_operator(self._ad_e0)
        self._gad_f0 = self._graded_operator(self._ad_f0)
        vcan = []  # (degree, graded coordinate vector)
        for deg in self.degrees:
            idx = list(self.slices[deg])
            sub = [[self._gad_e0[i][j] for j in idx] for i in range(n)]
            for vec in linalg.nullspace(sub, len(idx)):
                full = [Fraction(0)] * n
                for j, x in zip(idx, vec):
                    full[j] = x
                vcan.append((deg, full))
        deg1 = [v for d, v in vcan if d == 1]
        if len(deg1) != 1:
            failures.append("ker ad e0 must meet degree 1 in the line spanned by e0")
            return
        if any(d <= 0 for d, _ in vcan):
            failures.append("ker ad e0 has components in degree <= 0")
            return
        e0g = self.graded_coords(self.e0)
        vcan = [(1, e0g)] + [(d, v) for d, v in vcan if d != 1]
        vcan.sort(key=lambda dv: dv[0])
        if len(vcan) != self.rank:
            failures.append(f"dim V_can = {len(vcan)} differs from rank {self.rank}")
        self.exponents = tuple(d for d, _ in vcan)
        self.vcan_graded = [v for _, v in vcan]
        self.vcan = [self.from_graded(v) for v in self.vcan_graded]
        # g = ker ad e0 (+) im ad f0
        im_cols = [[self._gad_f0[i][j] for i in range(n)] for j in range(n)]
        if linalg.rank(self.vcan_graded + im_cols) != n:
            failures.append("g != ker(ad e0) + im(ad f0)")
        for deg in self.degrees:
            if deg < 1:
                continue
            cols = [im_cols[j] for j in self.slices[deg]]
            if linalg.rank(cols) != len(cols):
                failures.append(f"ad f0 is not injective on degree {deg}")
        if failures:
            return
        # per degree d >= 0: coordinates on [V_can in degree d | ad f0(g_{d+1})]
        self._split = {}
        for deg in self.degrees:
            if deg < 0:
                continue
            rows_idx = list(self.slices[deg])
            vc = [j for j, d in enumerate(self.exponents) if d == deg]
            up = list(self.slices.get(deg + 1, []))
            cols = [[self.vcan_graded[j][i] for i in rows_idx] for j in vc]
            cols += [[im_cols[j][i] for i in rows_idx] for j in up]
            if len(cols) != len(rows_idx):
                failures.append(f"degree {deg} does not split as V_can + ad f0(g_{deg + 1})")
                return
            self._split[deg] = (rows_idx, vc, up, linalg.inverse(linalg.transpose(cols)))

    def split_degree(self, gcoords, deg: int):
        """Write the degree ``deg`` part as ``v + ad f0 (Y)``.

        Returns ``(v_coeffs, y_graded)`` with ``v_coeffs`` indexed like
        :attr:`vcan` and ``y_graded`` a full graded coordinate vector
        supported in degree ``deg + 1``.
        """
        rows_idx, vc, up, inv = self._split[deg]
        sol = _apply(inv, [gcoords[i] for i in rows_idx])
        v = [Fraction(0)] * self.rank
        for k, j in enumerate(vc):
            v[j] = sol[k]
        y = [Fraction(0)] * self.dim
        for k, j in enumerate(up):
            y[j] = sol[len(vc) + k]
        return v, y

    def vcan_coords(self, x):
        """Coefficients of ``x`` in the basis ``x_1, ..., x_r`` of V_can."""
        g = self.graded_coords(x)
        out = [Fraction(0)] * self.rank
        for deg in self.degrees:
            if any(g[i] != 0 for i in self.slices[deg]):
                if deg < 0:
                    raise NotInAlgebraError("element has negative degree components")
                v, y = self.split_degree(g, deg)
                if any(c != 0 for c in y):
                    raise NotInAlgebraError(f"degree {deg} component is not in V_can")
                for j in range(self.rank):
                    out[j] = out[j] + v[j]
        return out

    def from_vcan(self, coeffs):
        return lincomb(coeffs, self.vcan, self.size)

    # weights of the defining representation

    def _setup_weights(self, failures):
        m, r = self.size, self.rank
        spaces = [([], [])]  # (weight so far, stacked rows)
        for i in range(r):
            hi = self.h[i]
            bound = max(sum(abs(x) for x in row) for row in hi)
            bound = int(bound) + 1
            nxt = []
            for weight, rows in spaces:
                for k in range(-bound, bound + 1):
                    extra = [[hi[a][b] - (k if a == b else 0) for b in range(m)] for a in range(m)]
                    if linalg.nullspace(rows + extra, m):
                        nxt.append((weight + [Fraction(k)], rows + extra))
            spaces = nxt
        columns, weights = [], []
        for weight, rows in spaces:
            for vec in linalg.nullspace(rows, m):
                columns.append(vec)
                weights.append(weight)
        if len(columns) != m or linalg.rank(columns) != m:
            failures.append("Cartan generators are not simultaneously diagonalizable over Q")
            return
        a0 = linalg.solve(linalg.transpose(self.cartan), [Fraction(2)] * r)
        heights = [sum((a * w for a, w in zip(a0, wt)), Fraction(0)) for wt in weights]
        low = weights[heights.index(min(heights))]
        cinv = linalg.inverse(self.cartan)
        self.weight_exponents = []
        for wt in weights:
            delta = [x - y for x, y in zip(wt, low)]
            self.weight_exponents.append(
                [sum((cinv[j][i] * delta[i] for i in range(r)), Fraction(0)) for j in range(r)]
            )
        p = linalg.transpose(columns)
        if mat_eq(p, identity(m)):
            self._weight_basis = None
        else:
            self._weight_basis = (tuple(map(tuple, p)), tuple(map(tuple, linalg.inverse(p))))

    # torus, principal cocharacter, exponential of e0

    def torus_element(self, values, ring=QQ, allow_extension: bool = False):
        """Torus element ``h`` with ``alpha_j(h) = values[j]`` for every simple root.

        Returns ``(matrix, ring)``; the ring differs from the input only when
        a quadratic extension had to be adjoined (``allow_extension``).
        Consequently ``Ad_h`` multiplies ``f_j`` by ``values[j]^-1`` and
        ``e_j`` by ``values[j]``.
        """
        values = [ring.coerce(v) for v in values]
        for j, v in enumerate(values):
            if not ring.is_unit(v):
                raise NonUnitError(f"torus value for simple root {j + 1} is not a unit: {v}")
        roots = {}  # parity pattern -> chosen square root
        ext_ring = ring
        entries = []
        for c, exps in enumerate(self.weight_exponents):
            if any(e.denominator not in (1, 2) for e in exps):
                raise TorusObstructionError(
                    f"weight {c} has simple-root exponents {list(map(str, exps))}; "
                    "only integer or half-integer exponents can be realized"
                )
            floor = [math.floor(e) for e in exps]
            parity = tuple(int(e.denominator == 2) for e in exps)
            val = _power_product(values, floor, ring)
            if any(parity):
                if parity not in roots:
                    u = _power_product(values, list(parity), ring)
                    root = _exact_sqrt(u, ring)
                    if root is None:
                        root, ext_ring = self._adjoin_root(u, ring, ext_ring, roots, allow_extension, c)
                    roots[parity] = root
                val = roots[parity] * val
            entries.append(val)
        if ext_ring is not ring:
            entries = [ext_ring.coerce(x) for x in entries]
        mat = diag(entries)
        if self._weight_basis is not None:
            p, pinv = self._weight_basis
            mat = mat_mul(mat_mul(p, mat), pinv)
        return mat, ext_ring

    @staticmethod
    def _adjoin_root(u, ring, ext_ring, roots, allow_extension, c):
        from .curve import Chart
        from .quadratic import QuadraticExtension

        if not allow_extension:
            raise TorusObstructionError(
                f"weight {c} needs a square root of {u}, which is not a square in {ring!r}; "
                "allow a quadratic extension to proceed"
            )
        if ext_ring is ring:
            if not isinstance(ring, Chart):
                raise TorusObstructionError(f"cannot adjoin sqrt({u}) to {ring!r}")
            ext_ring = QuadraticExtension(ring, u)
            return ext_ring.root, ext_ring
        # a second root is only available when it differs from the first by a square
        ratio = _exact_sqrt(u / ext_ring.u, ring)
        if ratio is None:
            raise TorusObstructionError(
                f"weight {c} needs sqrt({u}) in addition to sqrt({ext_ring.u}); "
                "only one quadratic extension is supported"
            )
        return ext_ring.root * ratio, ext_ring

    def rho_check(self, a, ring=QQ) -> GroupElement:
        """Principal cocharacter: ``Ad`` scales degree ``k`` by ``a^k``."""
        if not ring.is_unit(ring.coerce(a)):
            raise NonUnitError(f"rho_check needs a unit, got {a}")
        mat, out_ring = self.torus_element([a] * self.rank, ring)
        return GroupElement(mat, out_ring)

    def exp_e(self, b, ring=QQ) -> GroupElement:
        """``exp(b e0)``, a unipotent element."""
        b = ring.coerce(b)
        return GroupElement(nilpotent_exp(mat_scale(self.e0, b), ring), ring)

    def r_map(self, g: B2AdElement) -> GroupElement:
        """Image of ``[[a, b], [0, 1]]``: ``exp_e(b) rho_check(a)``."""
        return self.exp_e(g.b, g.ring) * self.rho_check(g.a, g.ring)

    # brackets and grading

    def bracket(self, x, y):
        self.coords(x)
        self.coords(y)
        return commutator(x, y)

    def ad(self, x):
        self.coords(x)
        return lambda y: commutator(x, y)

    def grading_decompose(self, x) -> dict:
        """Split ``x`` into homogeneous components ``{degree: matrix}``."""
        g = self.graded_coords(x)
        out = {}
        for deg in self.degrees:
            idx = self.slices[deg]
            if any(g[i] != 0 for i in idx):
                coeffs = [g[i] if i in idx else 0 for i in range(self.dim)]
                out[deg] = self.from_graded(coeffs)
        return out

    def adjoint(self, g: GroupElement, x):
        return g.adjoint(x)

    def __repr__(self):
        return f"LieRealization({self.name}, dim={self.dim}, size={self.size})"

    # serialization

    @classmethod
    def from_dict(cls, data: dict) -> LieRealization:
        try:
            basis = [[[Fraction(x) for x in row] for row in b] for b in data["basis"]]
            pick = lambda key: [basis[i] for i in data[key]]  # noqa: E731
            return cls(basis, pick("e"), pick("f"), pick("h"), name=data.get("name"))
        except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise RealizationError(f"malformed realization data: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> LieRealization:
        return cls.from_dict(json.loads(Path(path).read_text()))


def _proportionality(a, b):
    """``c`` with ``a == c b`` (``b`` nonzero), else ``None``."""
    pivot = next(((x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb) if y != 0), None)
    if pivot is None:
        return None
    c = pivot[0] / pivot[1]
    if all(x == c * y for ra, rb in zip(a, b) for x, y in zip(ra, rb)):
        return c
    return None


def _power_product(values, exps, ring):
    out = ring.one
    for v, e in zip(values, exps):
        if e > 0:
            out = out * v ** e
        elif e < 0:
            out = out * ring.inverse(v) ** (-e)
    return out


def _exact_sqrt(u, ring):
    from .curve import Chart, RationalFunction

    if ring == QQ:
        return rational_sqrt(u)
    if isinstance(ring, Chart):
        u = ring.coerce(u)
        num, den = u.num.sqrt(), u.den.sqrt()
        if num is None or den is None:
            return None
        return RationalFunction(num, den, ring)
    return None


def build_sl(n: int) -> LieRealization:
    """Standard realization of sl_n: ``e_i = E_{i,i+1}``, ``f_i = E_{i+1,i}``."""
    if n < 2:
        raise RealizationError("sl_n needs n >= 2")
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(unit_matrix(n, i, j))
    hs = [mat_add(unit_matrix(n, i, i), mat_scale(unit_matrix(n, i + 1, i + 1), -1)) for i in range(n - 1)]
    basis.extend(hs)
    es = [unit_matrix(n, i, i + 1) for i in range(n - 1)]
    fs = [unit_matrix(n, i + 1, i) for i in range(n - 1)]
    return LieRealization(basis, es, fs, hs, name=f"sl{n}")


class GroupElement:
    """Invertible matrix over a coefficient ring, modulo unit scalars."""

    __slots__ = ("matrix", "ring", "_inv")

    def __init__(self, matrix, ring=QQ, inverse_matrix=None):
        self.matrix = tuple(tuple(ring.coerce(x) for x in row) for row in matrix)
        self.ring = ring
        if inverse_matrix is None:
            inverse_matrix = inverse(self.matrix, ring)
        self._inv = inverse_matrix

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def inverse_matrix(self):
        return self._inv

    @property
    def in_borel(self) -> bool:
        return is_upper_triangular(self.matrix)

    @classmethod
    def identity(cls, m: int, ring=QQ) -> GroupElement:
        eye = identity(m, ring)
        return cls(eye, ring, eye)

    def __mul__(self, other: GroupElement) -> GroupElement:
        ring = self.ring if self.ring == other.ring else _bigger(self.ring, other.ring)
        return GroupElement(
            mat_mul(self.matrix, other.matrix), ring, mat_mul(other._inv, self._inv)
        )

    def inverse(self) -> GroupElement:
        return GroupElement(self._inv, self.ring, self.matrix)

    def adjoint(self, x):
        return mat_mul(mat_mul(self.matrix, x), self._inv)

    def coerce(self, ring) -> GroupElement:
        if ring == self.ring:
            return self
        return GroupElement(self.matrix, ring, tuple(tuple(ring.coerce(x) for x in r) for r in self._inv))

    def __eq__(self, other):
        """Equality in the adjoint group: ``self == c * other`` for a scalar ``c``."""
        if not isinstance(other, GroupElement):
            return NotImplemented
        a, b = self.matrix, other.matrix
        if len(a) != len(b):
            return False
        m = len(a)
        pivot = next(((i, j) for i in range(m) for j in range(m) if b[i][j] != 0), None)
        if pivot is None:
            return False
        pa, pb = a[pivot[0]][pivot[1]], b[pivot[0]][pivot[1]]
        if pa == 0:
            return False
        return all(a[i][j] * pb == b[i][j] * pa for i in range(m) for j in range(m))

    def __hash__(self):
        return hash(self.size)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.matrix)
        return f"GroupElement([{rows}])"


def _bigger(r1, r2):
    # one ring may extend the other (quadratic extension over its base chart)
    if getattr(r1, "base", None) == r2:
        return r1
    if getattr(r2, "base", None) == r1:
        return r2
    if r1 == QQ:
        return r2
    if r2 == QQ:
        return r1
    from .errors import RingMismatchError

    raise RingMismatchError(f"mixed rings {r1!r} and {r2!r}")


@dataclass(frozen=True)
class B2AdElement:
    """The matrix ``[[a, b], [0, 1]]`` of the adjoint Borel of PGL_2."""

    a: Any
    b: Any
    ring: Any = QQ

    def __post_init__(self):
        object.__setattr__(self, "a", self.ring.coerce(self.a))
        object.__setattr__(self, "b", self.ring.coerce(self.b))
        if not self.ring.is_unit(self.a):
            raise NonUnitError(f"(B2)_ad needs a unit diagonal entry, got {self.a}")

    def __mul__(self, other: B2AdElement) -> B2AdElement:
        return B2AdElement(self.a * other.a, self.a * other.b + self.b, self.ring)

    def inverse(self) -> B2AdElement:
        inv = self.ring.inverse(self.a)
        return B2AdElement(inv, -self.b * inv, self.ring)

    @classmethod
    def identity(cls, ring=QQ) -> B2AdElement:
        return cls(ring.one, ring.zero, ring)

    def matrix(self):
        return ((self.a, self.b), (self.ring.zero, self.ring.one))


def jet3_to_b2ad(tau: AutJet) -> B2AdElement:
    """``a z + b z^2  ->  [[a, b/a], [0, 1]]``.

    This is a homomorphism for the reversed-composition product:
    ``jet3_to_b2ad(aut_mul(s, t)) == jet3_to_b2ad(s) * jet3_to_b2ad(t)``.
    """
    if tau.order != 3:
        raise OrderError(f"expected an order-3 jet, got order {tau.order}")
    ring = tau.ring
    a, b = tau.coeffs[1], tau.coeffs[2]
    return B2AdElement(a, b * ring.inverse(a), ring)


def b2ad_to_jet3(g: B2AdElement) -> AutJet:
    return AutJet([g.ring.zero, g.a, g.a * g.b], g.ring)
