"""Acceptance suite: eight criteria, each with a case count and a time limit.

Run with ``pytest tests/test_acceptance.py`` (a summary line per criterion is
printed at the end of the session) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))
sys.path.insert(0, str(HERE / "golden"))

from opertorsor import linalg  # noqa: E402
from opertorsor.curve import (  # noqa: E402
    Chart,
    cocycle_consistency,
    evaluate_jet,
    taylor_cocycle_universal,
)
from opertorsor.jetgroup import (  # noqa: E402
    AutJet,
    aut_inverse,
    aut_mul,
    decompose,
    kernel_element,
    kernel_witness,
    recompose,
)
from opertorsor.liealg import GroupElement, build_sl  # noqa: E402
from opertorsor.matrix import commutator, diag, mat_eq, mat_scale  # noqa: E402
from opertorsor.oper import (  # noqa: E402
    CanonicalOper,
    OperConnection,
    canonicalize,
    change_coords,
    change_coords_oracle,
    gauge_action,
    schwarzian,
    torsor_cocycle_check,
    triple_cocycle_check,
)
from opertorsor.poly import Poly  # noqa: E402
from randgen import (  # noqa: E402
    LAURENT,
    rand_aut,
    rand_coordinate,
    rand_laurent,
    rand_oper_matrix,
    rand_q,
    rand_upper_unipotent,
)
from run_case import run_case  # noqa: E402
from test_curve import pointwise_cocycle  # noqa: E402

T = LAURENT.variable
RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({detail}; {elapsed:.2f}s < {limit:.0f}s)"
    RESULTS.append(line)
    print(line)
    return status == "PASS"


def timed(fn):
    start = time.perf_counter()
    failures = fn()
    return failures, time.perf_counter() - start


# 1. group axioms


def jet_group_suite():
    rng = random.Random(101)
    failures = []
    counts = {}
    for ring in (None, LAURENT):
        name = "Q" if ring is None else "Q[t,1/t]"
        counts[name] = 0
        for i in range(210):
            n = 2 + i % 7
            a, b, c = (rand_aut(rng, n, ring) if ring else rand_aut(rng, n) for _ in range(3))
            e = AutJet.identity(n, a.ring)
            inv = aut_inverse(a)
            checks = (
                aut_mul(aut_mul(a, b), c) == aut_mul(a, aut_mul(b, c)),
                aut_mul(e, a) == a == aut_mul(a, e),
                aut_mul(a, inv) == e == aut_mul(inv, a),
            )
            if not all(checks):
                failures.append((name, n, a, b, c))
            counts[name] += 1
    return failures, counts


# 2. semidirect product and kernel


def semidirect_suite():
    rng = random.Random(202)
    failures = []
    for i in range(200):
        n = 2 + i % 7
        tau = rand_aut(rng, n, LAURENT) if i % 2 else rand_aut(rng, n)
        lam, u = decompose(tau)
        if recompose(lam, u) != tau or u.jet[1] != tau.ring.one:
            failures.append(("decompose", tau))
    kernel_cases = 0
    for order in range(4, 8):  # kernels of Aut0_{n+1} -> Aut0_n for n = 3..6
        for _ in range(25):
            a, b = rand_q(rng, 20), rand_q(rng, 20)
            prod = aut_mul(kernel_element(a, order), kernel_element(b, order))
            if kernel_witness(prod) != a + b:
                failures.append(("kernel", order, a, b))
            kernel_cases += 1
    return failures, kernel_cases


# 3. Taylor cocycles


def cocycle_suite():
    rng = random.Random(303)
    failures = []
    points = 0
    for i in range(50):
        u, s, t = (rand_coordinate(rng) for _ in range(3))
        n = 3 + i % 4
        st = taylor_cocycle_universal(LAURENT, s, t, n)
        ts = taylor_cocycle_universal(LAURENT, t, s, n)
        us = taylor_cocycle_universal(LAURENT, u, s, n)
        if aut_inverse(st) != ts or aut_mul(st, ts) != AutJet.identity(n, LAURENT):
            failures.append(("inverse", s, t))
        if not cocycle_consistency(LAURENT, u, s, t, n):
            failures.append(("triple", u, s, t))
        seen = set()
        while len(seen) < 20:
            x = rand_q(rng, 9, nonzero=True)
            if x in seen:
                continue
            seen.add(x)
            at = evaluate_jet(st, x)
            if list(at.coeffs) != pointwise_cocycle(s, t, x, n):
                failures.append(("pointwise", s, t, x))
            if evaluate_jet(aut_mul(st, us), x) != aut_mul(at, evaluate_jet(us, x)):
                failures.append(("evaluation", s, t, x))
            points += 1
    return failures, points


# 4. Lie algebra structure


def lie_suite():
    failures = []
    flat = lambda x: [c for row in x for c in row]  # noqa: E731
    for n in range(2, 7):
        lie = build_sl(n)
        if not (mat_eq(commutator(lie.e0, lie.f0), lie.h0)
                and mat_eq(commutator(lie.h0, lie.e0), mat_scale(lie.e0, 2))
                and mat_eq(commutator(lie.h0, lie.f0), mat_scale(lie.f0, -2))):
            failures.append((n, "triple"))
        if lie.exponents != tuple(range(1, n)):
            failures.append((n, "exponents", lie.exponents))
        for x in lie.vcan:
            if any(flat(commutator(lie.e0, x))):
                failures.append((n, "vcan"))
        for d in lie.degrees:
            part = [lie.graded_basis[i] for i in lie.slices[d]]
            up = [lie.graded_basis[i] for i in lie.slices.get(d + 1, [])]
            vc = [x for x, e in zip(lie.vcan, lie.exponents) if e == d]
            im = [flat(commutator(lie.f0, y)) for y in up]
            if linalg.rank([flat(x) for x in vc] + im or [[0]]) != len(part):
                failures.append((n, "ker+im", d))
            if d >= 0 and len(vc) + len(up) != len(part):
                failures.append((n, "direct sum", d))
            if d >= 1 and linalg.rank([flat(commutator(lie.f0, y)) for y in part]) != len(part):
                failures.append((n, "injective", d))
        a = Fraction(-5, 3)
        g = lie.rho_check(a)
        for x, d in zip(lie.graded_basis, lie.graded_degrees):
            if not mat_eq(g.adjoint(x), mat_scale(x, a ** d)):
                failures.append((n, "Ad rho", d))
        if g != GroupElement(diag([a ** (n - 1 - i) for i in range(n)])):
            failures.append((n, "rho matrix"))
    return failures, 5


# 5. canonical forms


def canonicalization_suite():
    rng = random.Random(505)
    failures = []
    count = 0
    for lie in (build_sl(2), build_sl(3)):
        for _ in range(100):
            conn = OperConnection(lie, LAURENT, "t", rand_oper_matrix(rng, lie))
            omega, g = canonicalize(conn)
            if not mat_eq(gauge_action(g, conn).matrix, omega.matrix()):
                failures.append(("roundtrip", lie.name, conn.matrix))
            u = rand_upper_unipotent(rng, lie)
            if canonicalize(gauge_action(u, conn))[0] != omega:
                failures.append(("uniqueness", lie.name, conn.matrix))
            count += 1
    return failures, count


# 6. coordinate changes and the Schwarzian


def schwarzian_suite():
    rng = random.Random(606)
    failures = []
    pairs = 0
    for lie in (build_sl(2), build_sl(3)):
        for i in range(50):
            omega = CanonicalOper(lie, LAURENT, "t", [rand_laurent(rng) for _ in range(lie.rank)])
            if i == 0:
                s = 1 / T
            elif i % 5 == 1:
                s = rand_q(rng, nonzero=True) * T + rand_q(rng)
            else:
                s = rand_coordinate(rng)
            closed, g1 = change_coords(omega, s)
            oracle, g2 = change_coords_oracle(omega, s)
            if closed != oracle or g1 != g2:
                failures.append(("change_coords", lie.name, omega.coeffs, s))
            pairs += 1
    mobius = 0
    while mobius < 20:
        a, b, c, d = (rand_q(rng, nonzero=True) for _ in range(4))
        if a * d == b * c:
            continue
        chart = Chart("t", Poly([0, 1]) * Poly([d, c]))
        t = chart.variable
        if schwarzian(chart, (a * t + b) / (c * t + d), "t") != 0:
            failures.append(("mobius", a, b, c, d))
        mobius += 1
    for _ in range(20):
        u, t, s = (rand_coordinate(rng) for _ in range(3))
        dt = t.derive() / s.derive()
        rhs = dt * dt * schwarzian(LAURENT, u, t) + schwarzian(LAURENT, t, s)
        if schwarzian(LAURENT, u, s) != rhs:
            failures.append(("schwarzian cocycle", u, t, s))
    return failures, pairs


# 7. torsor comparison


def torsor_suite():
    rng = random.Random(707)
    failures = []
    orientations = set()
    cases = 0
    for lie in (build_sl(2), build_sl(3)):
        report = torsor_cocycle_check(LAURENT, T, 1 / T, lie)
        if not report.passed:
            failures.append(("P1", lie.name))
        orientations.add(report.orientation)
        tri = triple_cocycle_check(LAURENT, T, 1 / T, 2 * T, lie)
        if not tri.passed:
            failures.append(("P1 triple", lie.name))
        for _ in range(20):
            ti, tj, tk = (rand_coordinate(rng) for _ in range(3))
            omega = CanonicalOper(lie, LAURENT, tj, [rand_laurent(rng) for _ in range(lie.rank)])
            report = torsor_cocycle_check(LAURENT, ti, tj, lie, omega)
            if not report.passed:
                failures.append(("pair", lie.name, ti, tj))
            # "both" only occurs for involutions, where the two readings coincide
            if report.orientation != "both":
                orientations.add(report.orientation)
            tri = triple_cocycle_check(LAURENT, ti, tj, tk, lie)
            if not tri.passed:
                failures.append(("triple", lie.name, ti, tj, tk))
            cases += 1
    if orientations != {"gauge"}:
        failures.append(("orientation", sorted(map(str, orientations))))
    return failures, cases


# 8. CLI golden corpus


def cli_suite():
    cases = json.loads((HERE / "golden" / "cases.json").read_text())
    failures = []
    for name, args in cases:
        code, out, err = run_case(args)
        got = f"[exit {code}]\n" + (out if code == 0 else err)
        if got != (HERE / "golden" / "expected" / f"{name}.txt").read_text():
            failures.append(name)
    return failures, len(cases)


CRITERIA = [
    (1, "jet-group axioms over Q and Q[t,1/t], orders 2-8", jet_group_suite, 10,
     lambda c: f"{c['Q']} + {c['Q[t,1/t]']} cases"),
    (2, "semidirect decomposition and kernel additivity", semidirect_suite, 5,
     lambda c: f"200 round trips, {c} kernel products"),
    (3, "Taylor cocycle inverse, triple and pointwise identities", cocycle_suite, 30,
     lambda c: f"50 triples, {c} points"),
    (4, "principal triple, grading and V_can for sl2..sl6", lie_suite, 10,
     lambda c: f"{c} algebras"),
    (5, "canonical form round trip and uniqueness, sl2/sl3", canonicalization_suite, 60,
     lambda c: f"{c} opers"),
    (6, "closed-form coordinate change vs oracle, Schwarzian laws", schwarzian_suite, 60,
     lambda c: f"{c} pairs, 20 Moebius, 20 triples"),
    (7, "oper cocycle equals image of jet cocycle", torsor_suite, 30,
     lambda c: f"P1 cover + {c} random pairs/triples"),
    (8, "CLI golden outputs", cli_suite, 10, lambda c: f"{c} cases"),
]


@pytest.mark.parametrize(
    "number,title,suite,limit,describe", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA]
)
def test_criterion(number, title, suite, limit, describe):
    (failures, count), elapsed = timed(suite)
    ok = record(number, title, not failures, elapsed, limit, describe(count))
    assert not failures, failures[:3]
    assert ok, f"took {elapsed:.2f}s, limit {limit}s"


if __name__ == "__main__":
    passed = True
    for number, title, suite, limit, describe in CRITERIA:
        (failures, count), elapsed = timed(suite)
        passed &= record(number, title, not failures, elapsed, limit, describe(count))
    sys.exit(0 if passed else 1)
