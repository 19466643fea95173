"""End-to-end acceptance: one test per headline result, at its stated
tolerance. Run with -v to get a pass/fail line per criterion."""

import cmath
import json
import math
from fractions import Fraction

import pytest

from ttfal import data_file
from ttfal.arith import Mat2, MultiPoly, UniPoly
from ttfal.cusp import cusp_shapes
from ttfal.diagram import parse_diagram
from ttfal.equations import assemble_system
from ttfal.pretzel import (divisibility_scan, falr_omega1_roots, falr_system,
                           reconstruct_gaussian, ttpoly_falp,
                           ttpoly_falp_direct, verify_table1)
from ttfal.solve import eliminate, find_roots, solve_diagram, verify_solution

TOL = 1e-9

DIAGRAMS = ("borromean", "borromean-ht", "hamantash", "fal41",
            "3-pretzel", "3-pretzel-ht")


def load(name):
    with open(data_file(name + ".json"), encoding="utf-8") as fh:
        return parse_diagram(fh.read())


@pytest.fixture(scope="module")
def solved():
    out = {}
    for name in DIAGRAMS:
        d = load(name)
        reference = None
        if name == "hamantash":
            with open(data_file("hamantash-reference.json"),
                      encoding="utf-8") as fh:
                reference = json.load(fh)
        out[name] = (d,) + solve_diagram(d, reference=reference)
    return out


def shapes_at_geometric(solved, name):
    d, rep, report = solved[name]
    return cusp_shapes(d, report.assignments[report.geometric_index])


def close(a, b, tol=TOL):
    return abs(a - b) <= tol


def match_multiset(got, want, tol=TOL):
    """Each wanted value consumed by exactly one computed value."""
    left = list(got)
    for w in want:
        hit = next((z for z in left if close(z, w, tol)), None)
        if hit is None:
            return False
        left.remove(hit)
    return not left


def test_criterion_01_hamantash_polynomial_and_roots(solved):
    d, rep, report = solved["hamantash"]
    assert rep.tt_poly.integer_cleared()[0] == UniPoly([1, -3, 4])
    want = [complex(0.375, math.sqrt(7) / 8),
            complex(0.375, -math.sqrt(7) / 8)]
    assert match_multiset(report.roots, want)


def test_criterion_02_borromean_exact_elimination_and_cusps(solved):
    d, rep, report = solved["borromean"]
    assert rep.target == "u1"
    assert rep.tt_poly.integer_cleared()[0] == UniPoly([1, 0, 4])
    assert match_multiset(report.roots, [0.5j, -0.5j], tol=0)
    for r in shapes_at_geometric(solved, "borromean"):
        if r.cusp_id in ("q1", "q2"):
            assert close(r.shape, 2j)


def test_criterion_03_borromean_half_twist_cusps(solved):
    got = [r.shape for r in shapes_at_geometric(solved, "borromean-ht")]
    assert match_multiset(got, [2j, -1 + 1j, 2j])


def test_criterion_04_fal41_roots(solved):
    d, rep, report = solved["fal41"]
    assert rep.target == "w1"
    r = math.sqrt(2) / 4
    assert match_multiset(report.roots, [complex(0, r), complex(0, -r)])


def test_criterion_05_pretzel_cusps_plain_and_half_twist(solved):
    plain = [r.shape for r in shapes_at_geometric(solved, "3-pretzel")]
    assert len(plain) == 6
    assert all(close(s, 1j) for s in plain)
    twisted = [r.shape for r in shapes_at_geometric(solved, "3-pretzel-ht")]
    assert match_multiset(twisted,
                          [complex(-0.4, 0.8), 1j, 1j, -2 + 2j, 1j])


def test_criterion_06_reference_table_rows_3_to_17():
    report = verify_table1()
    assert [row["n"] for row in report] == list(range(3, 18))
    assert all(row["matches"] for row in report)


def test_criterion_07_recurrence_matches_direct_product():
    for n in range(3, 26):
        by_recurrence = ttpoly_falp(n)
        assert by_recurrence.poly == ttpoly_falp_direct(n).poly
        assert by_recurrence.poly.degree == n - 1
        assert by_recurrence.poly.leading() == 1


def test_criterion_08_divisibility_containments_and_scan():
    scan = divisibility_scan(17)
    assert scan.violations == []
    for n in (6, 8, 9, 10, 12, 14, 15, 16):
        for m in range(3, n):
            if n % m == 0:
                assert scan.divides[(m, n)]
    wide = divisibility_scan(25)
    print("empirical divisibility scan to 25:",
          "no violations" if not wide.violations else wide.violations)


def test_criterion_09_rotated_circle_solutions_in_q_i():
    system, target = falr_system(3)
    z_rep = eliminate(system, "z")
    z_roots = find_roots(z_rep.tt_poly)
    assert all(close(z, 0.5j) or close(z, -0.5j) for z in z_roots)
    x_roots = falr_omega1_roots(3)
    assert len(x_roots) == 1
    assert reconstruct_gaussian(x_roots[0]) is not None
    for n in range(4, 9):
        roots = falr_omega1_roots(n)
        assert roots
        for root in roots:
            exact = reconstruct_gaussian(root)
            assert exact is not None
            assert close(root, complex(exact.re, exact.im))


def test_criterion_10_property_suites(solved):
    # region products scalar at every geometric solution
    for name in DIAGRAMS:
        d, rep, report = solved[name]
        values = report.assignments[report.geometric_index]
        check = verify_solution(d, values, tol=TOL)
        assert check.passed, (name, check)

    # root sets closed under conjugation
    for name in DIAGRAMS:
        _, rep, report = solved[name]
        for root in report.roots:
            assert any(close(root.conjugate(), other)
                       for other in report.roots), name

    # twist-region product is a scalar matrix, symbolically; the two
    # strand orientations pick opposite lifts of the same isometry
    w = MultiPoly.var("w")
    half = MultiPoly.const(Fraction(1, 2))
    quarter = MultiPoly.const(Fraction(1, 4))

    def X(c):
        return Mat2(0, c, 1, 0)

    def T(u):
        return Mat2(1, u, 0, 1)

    parallel = X(w) * T(half) * X(-quarter) * T(half) * X(w) * T(-2 * w)
    antiparallel = X(w) * T(half) * X(quarter) * T(-half) * X(-w) * T(-2 * w)
    for m in (parallel, antiparallel):
        assert m.e12.is_zero and m.e21.is_zero
        assert m.e11 == m.e22
        assert m.e11 * m.e11 == quarter * w * w
    assert antiparallel.e11 == -half * w
    assert parallel.e11 == half * w

    # geometric cusp shapes in the upper half plane
    for name in DIAGRAMS:
        d, rep, report = solved[name]
        values = report.assignments[report.geometric_index]
        for r in cusp_shapes(d, values):
            assert r.shape.imag > 0, (name, r.cusp_id)
