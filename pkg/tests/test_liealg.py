import json
import random
from fractions import Fraction

import pytest

from opertorsor import linalg
from opertorsor.errors import NotInAlgebraError, RealizationError, TorusObstructionError
from opertorsor.jetgroup import AutJet, aut_mul
from opertorsor.liealg import (
    B2AdElement,
    GroupElement,
    LieRealization,
    b2ad_to_jet3,
    build_sl,
    jet3_to_b2ad,
)
from opertorsor.matrix import commutator, diag, identity, mat_eq, mat_mul, mat_scale, unit_matrix
from opertorsor.quadratic import QuadraticExtension
from randgen import LAURENT, rand_aut, rand_q, rand_unit, rand_laurent

T = LAURENT.variable
SL = {n: build_sl(n) for n in range(2, 7)}


def flat(x):
    return [c for row in x for c in row]


def span_rank(mats):
    return linalg.rank([flat(x) for x in mats]) if mats else 0


def degree_part(lie, deg):
    return [lie.graded_basis[i] for i in lie.slices.get(deg, [])]


def sl2_on_c2_plus_c():
    """sl_2 acting on the first two coordinates of Q^3."""
    def pad(a):
        return [[a[0][0], a[0][1], 0], [a[1][0], a[1][1], 0], [0, 0, 0]]

    e, f, h = pad([[0, 1], [0, 0]]), pad([[0, 0], [1, 0]]), pad([[1, 0], [0, -1]])
    return {"basis": [e, f, h], "e": [0], "f": [1], "h": [2], "name": "sl2+triv"}


class TestExamples:
    def test_sl2(self):
        lie = SL[2]
        assert mat_eq(lie.e0, unit_matrix(2, 0, 1))
        assert mat_eq(lie.f0, unit_matrix(2, 1, 0))
        assert mat_eq(lie.h0, diag([1, -1]))
        assert lie.exponents == (1,)
        assert mat_eq(lie.vcan[0], unit_matrix(2, 0, 1))

    def test_sl3(self):
        lie = SL[3]
        assert lie.e0[0][1] == 2 and lie.e0[1][2] == 2
        assert lie.exponents == (1, 2)

    def test_grading_of_f0(self):
        for lie in SL.values():
            parts = lie.grading_decompose(lie.f0)
            assert list(parts) == [-1] and mat_eq(parts[-1], lie.f0)

    def test_not_in_algebra(self):
        with pytest.raises(NotInAlgebraError):
            SL[2].bracket(identity(2), SL[2].f0)


@pytest.mark.parametrize("n", range(2, 7))
class TestStructure:
    def test_principal_triple(self, n):
        lie = SL[n]
        assert mat_eq(commutator(lie.e0, lie.f0), lie.h0)
        assert mat_eq(commutator(lie.h0, lie.e0), mat_scale(lie.e0, 2))
        assert mat_eq(commutator(lie.h0, lie.f0), mat_scale(lie.f0, -2))

    def test_exponents(self, n):
        assert SL[n].exponents == tuple(range(1, n))

    def test_grading_eigenvalues(self, n):
        lie = SL[n]
        for x, d in zip(lie.graded_basis, lie.graded_degrees):
            assert mat_eq(commutator(lie.h0, x), mat_scale(x, 2 * d))
        assert sum(len(lie.slices[d]) for d in lie.degrees) == n * n - 1

    def test_kernel_plus_image(self, n):
        lie = SL[n]
        for x in lie.vcan:
            assert all(c == 0 for c in flat(commutator(lie.e0, x)))
        for d in lie.degrees:
            vc = [x for x, e in zip(lie.vcan, lie.exponents) if e == d]
            im = [commutator(lie.f0, y) for y in degree_part(lie, d + 1)]
            assert span_rank(vc + im) == len(lie.slices[d])
            if d >= 0:
                assert len(vc) + len(im) == len(lie.slices[d])

    def test_ad_f0_injective(self, n):
        lie = SL[n]
        for d in lie.degrees:
            if d >= 1:
                part = degree_part(lie, d)
                assert span_rank([commutator(lie.f0, y) for y in part]) == len(part)

    def test_rho_check_scales_grading(self, n):
        lie = SL[n]
        a = Fraction(3, 2)
        g = lie.rho_check(a)
        for x, d in zip(lie.graded_basis, lie.graded_degrees):
            assert mat_eq(g.adjoint(x), mat_scale(x, a ** d))
        expected = diag([a ** (n - 1 - i) for i in range(n)])
        assert g == GroupElement(expected)

    def test_rho_check_laurent(self, n):
        lie = SL[n]
        g = lie.rho_check(T, LAURENT)
        for x, d in zip(lie.graded_basis, lie.graded_degrees):
            assert mat_eq(g.adjoint(x), mat_scale(x, T ** d))


class TestMaps:
    def test_r_map_sl2_is_the_matrix(self):
        lie = SL[2]
        g = B2AdElement(Fraction(3), Fraction(-2))
        assert lie.r_map(g) == GroupElement(((3, -2), (0, 1)))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_r_map_homomorphism(self, n):
        rng = random.Random(n)
        lie = SL[n]
        for _ in range(10):
            g1 = B2AdElement(rand_unit(rng), rand_laurent(rng), LAURENT)
            g2 = B2AdElement(rand_unit(rng), rand_laurent(rng), LAURENT)
            assert lie.r_map(g1 * g2) == lie.r_map(g1) * lie.r_map(g2)
            assert lie.r_map(g1.inverse()) == lie.r_map(g1).inverse()

    def test_jet3_homomorphism(self):
        rng = random.Random(8)
        for ring in (None, LAURENT):
            for _ in range(20):
                a, b = (rand_aut(rng, 3, ring) if ring else rand_aut(rng, 3) for _ in range(2))
                assert jet3_to_b2ad(aut_mul(a, b)) == jet3_to_b2ad(a) * jet3_to_b2ad(b)
                assert b2ad_to_jet3(jet3_to_b2ad(a)) == a

    def test_b2ad_roundtrip(self):
        g = B2AdElement(Fraction(2), Fraction(5))
        assert jet3_to_b2ad(b2ad_to_jet3(g)) == g
        assert b2ad_to_jet3(g) == AutJet([0, 2, 10])

    def test_exp_e(self):
        lie = SL[3]
        g = lie.exp_e(Fraction(1))
        assert g.in_borel
        assert g.matrix == ((1, 2, 2), (0, 1, 2), (0, 0, 1))

    def test_group_equality_up_to_scalar(self):
        g = GroupElement(((2, 1), (0, 1)))
        assert g == GroupElement(((4, 2), (0, 2)))
        assert g != GroupElement(((2, 1), (0, 2)))


class TestRealizationFiles:
    def test_load(self, tmp_path):
        path = tmp_path / "real.json"
        path.write_text(json.dumps(sl2_on_c2_plus_c()))
        lie = LieRealization.load(path)
        assert lie.exponents == (1,) and lie.size == 3

    def test_weight_half_integers(self):
        lie = LieRealization.from_dict(sl2_on_c2_plus_c())
        with pytest.raises(TorusObstructionError):
            lie.torus_element([T], LAURENT)
        mat, ring = lie.torus_element([T], LAURENT, allow_extension=True)
        assert isinstance(ring, QuadraticExtension)
        # a perfect square needs no extension
        mat, ring = lie.torus_element([4 * T * T], LAURENT)
        assert ring == LAURENT
        f = lie.f[0]
        adj = mat_mul(mat_mul(mat, f), GroupElement(mat, ring).inverse_matrix)
        assert mat_eq(adj, mat_scale(f, (4 * T * T) ** -1))

    def test_bad_realizations(self):
        data = sl2_on_c2_plus_c()
        with pytest.raises(RealizationError):
            LieRealization.from_dict({**data, "e": [7]})
        with pytest.raises(RealizationError):
            LieRealization.from_dict({**data, "basis": data["basis"][:2]})
        with pytest.raises(RealizationError):
            LieRealization.from_dict({"basis": []})
        with pytest.raises(RealizationError):
            build_sl(1)

    def test_conjugated_sl2(self):
        # a non-diagonal Cartan element exercises the weight-basis change
        p = ((1, 1), (0, 1))
        pinv = ((1, -1), (0, 1))
        conj = lambda x: [list(r) for r in mat_mul(mat_mul(p, x), pinv)]  # noqa: E731
        e, f, h = unit_matrix(2, 0, 1), unit_matrix(2, 1, 0), diag([1, -1])
        lie = LieRealization.from_dict({"basis": [conj(e), conj(f), conj(h)], "e": [0], "f": [1], "h": [2]})
        g = lie.rho_check(Fraction(5))
        assert mat_eq(g.adjoint(lie.e0), mat_scale(lie.e0, 5))
