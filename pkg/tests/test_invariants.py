import json

import pytest

from nscurve import families as fam
from nscurve import invariants as inv
from nscurve import tower as tw
from nscurve.plane import HomPoly, ProjPoint

from conftest import scalars, xyz

one, zero, two, t, r = scalars()
x, y, z = xyz()

CUSP = y * y * z - x**3
ORIGIN = ProjPoint(zero, zero, one)


@pytest.fixture(scope="module")
def c0_member():
    return fam.make("C0", r, r + one, one)


@pytest.fixture(scope="module")
def c0_report(c0_member):
    eq = fam.equation(c0_member)
    pt = fam.singular_points(c0_member)[0]
    return inv.full_report(eq, pt)


class TestDegreeOfPoint:
    def test_rational(self):
        assert inv.degree_of_point(ORIGIN) == 1

    def test_generic_level_one(self):
        # 1, r, r^2 are K-independent
        assert inv.degree_of_point(ProjPoint(r, r**2, one)) == 3

    def test_axis_level_one(self):
        assert inv.degree_of_point(ProjPoint(zero, r, one)) == 3

    def test_power_of_p(self):
        for pt in (ProjPoint(r, one, one), ProjPoint(r + one, r, one)):
            d = inv.degree_of_point(pt)
            while d % 3 == 0:
                d //= 3
            assert d == 1


class TestSemigroupAt:
    def test_span_degree_override(self):
        data = inv.semigroup_at(CUSP, ORIGIN, "geometric", span_degree=6)
        assert data.minimal_generators == (2, 3)
        assert data.delta == 1 and data.conductor == 2

    def test_cusp_geometric(self):
        data = inv.semigroup_at(CUSP, ORIGIN, "geometric")
        assert list(data.values)[:5] == [0, 2, 3, 4, 5]
        assert data.delta == 1 and data.conductor == 2
        assert data.multiplicity == 2
        assert data.minimal_generators == (2, 3)
        assert data.certified

    def test_c0_geometric(self, c0_member):
        eq = fam.equation(c0_member)
        pt = fam.singular_points(c0_member)[0]
        data = inv.semigroup_at(eq, pt, "geometric")
        assert data.minimal_generators == (2, 3)
        assert data.delta == 1 and data.conductor == 2

    def test_c0_over_k(self, c0_member):
        eq = fam.equation(c0_member)
        pt = fam.singular_points(c0_member)[0]
        data = inv.semigroup_at(eq, pt, "over_K")
        assert 3 in data.values
        assert 1 not in data.values and 2 not in data.values


class TestDifferentialDegree:
    def test_smooth(self):
        conic = x * x - y * z
        assert inv.differential_degree(conic, ORIGIN, 0) == 1

    def test_cusp_levels(self):
        assert inv.differential_degree(CUSP, ORIGIN, 0) == 2
        assert inv.differential_degree(CUSP, ORIGIN, 1) == 1

    def test_family_levels(self, c0_member):
        eq = fam.equation(c0_member)
        pt = fam.singular_points(c0_member)[0]
        assert inv.differential_degree(eq, pt, 0) == 2
        assert inv.differential_degree(eq, pt, 1) == 1


class TestChecks:
    def test_conductor_formula_arithmetic(self):
        assert inv.conductor_formula_check([2, 1], 2)
        assert inv.conductor_formula_check([1], 0)
        # synthetic: d levels (4, 1) would give c = 2*3*1 = 6
        assert inv.conductor_formula_check([4, 1], 6)
        assert not inv.conductor_formula_check([4, 1], 2)
        assert not inv.conductor_formula_check([2, 2], 2)  # never reaches 1

    def test_divisibility_arithmetic(self):
        assert inv.divisibility_check(3, 2, 2)  # 3 | 3
        assert inv.divisibility_check(1, 7, 5)
        assert not inv.divisibility_check(3, 2, 3)  # 3 does not divide 4

    def test_genus(self):
        assert inv.geometric_genus(4, [1, 1]) == 1
        assert inv.geometric_genus(4, []) == 3
        assert inv.geometric_genus(3, [1]) == 0


class TestRegularity:
    def test_family_certified(self):
        m = fam.make("C2", r, r + one, one)
        eq = fam.equation(m)
        for pt in fam.singular_points(m):
            assert inv.regularity_certificate(eq, pt) == "regular_certified"

    def test_cusp_inconclusive(self):
        assert inv.regularity_certificate(CUSP, ORIGIN) == "inconclusive"

    def test_smooth_rational_certified(self):
        conic = x * x - y * z
        assert inv.regularity_certificate(conic, ORIGIN) == "regular_certified"


class TestFullReport:
    def test_cusp(self):
        rep = inv.full_report(CUSP, ORIGIN)
        assert rep.degree_of_point == 1
        assert rep.delta == 1 and rep.conductor == 2
        assert rep.d_levels == (2, 1)
        assert rep.regularity == "inconclusive"
        assert rep.all_checks_pass

    def test_smooth_point(self):
        rep = inv.full_report(x * x - y * z, ORIGIN)
        assert rep.d_levels == (1,)
        assert rep.delta == 0 and rep.conductor == 0
        assert rep.all_checks_pass

    def test_family(self, c0_report):
        rep = c0_report
        assert rep.degree_of_point == 3
        assert rep.delta == 1 and rep.conductor == 2
        assert rep.d_levels == (2, 1)
        assert rep.regularity == "regular_certified"
        assert rep.all_checks_pass
        assert rep.embedding_dimension == 2

    def test_delta_relation(self, c0_report):
        d = c0_report.d_levels[0]
        assert c0_report.delta == (d - 1) * (3 - 1) // 2

    def test_p_never_divides_d(self, c0_report):
        assert c0_report.d_levels[0] % 3 != 0

    def test_conductor_2delta(self, c0_report):
        assert c0_report.conductor == 2 * c0_report.delta

    def test_level_degrees_divide_d_drop(self, c0_report):
        d0 = c0_report.d_levels[0]
        for deg_i, d_i in zip(c0_report.level_point_degrees, c0_report.d_levels):
            assert (d0 - d_i) % deg_i == 0

    def test_gamma_decomposition(self, c0_report):
        window = c0_report.semigroup.window
        assert list(c0_report.semigroup.values) == inv.numerical_semigroup(
            [c0_report.d_levels[0], 3], window
        )

    def test_json_stable(self, c0_report):
        d1 = json.dumps(c0_report.to_dict(), indent=2)
        d2 = json.dumps(c0_report.to_dict(), indent=2)
        assert d1 == d2
        parsed = json.loads(d1)
        assert parsed["checks"]["conductor_formula"] is True
        assert parsed["semigroup"]["minimal_generators"] == [2, 3]


class TestDeeperGerm:
    def test_three_four_semigroup(self):
        # y^3 z - x^4: unibranch rational point with semigroup <3,4>;
        # exercises the conductor formula with d = 4
        quart = y**3 * z - x**4
        rep = inv.full_report(quart, ORIGIN)
        assert rep.d_levels == (4, 1)
        assert rep.semigroup.minimal_generators == (3, 4)
        assert rep.semigroup.gaps == (1, 2, 5)
        assert rep.delta == 3 and rep.conductor == 6
        assert rep.all_checks_pass  # 6 == (3-1)(4-1)*3^0, delta == 3


class TestSmoothNonRationalPoint:
    def test_conic_at_degree_three_point(self):
        conic = x * x - y * z
        pt = ProjPoint(r, r**2, one)
        rep = inv.full_report(conic, pt)
        assert rep.degree_of_point == 3
        assert rep.d_levels == (1,)
        assert rep.delta == 0 and rep.conductor == 0
        assert rep.regularity == "regular_certified"
        assert rep.all_checks_pass


class TestGeneralCharacteristic:
    def test_p_five_cusp(self):
        # the level identities carry the characteristic: at p = 5 the
        # <2,5> cusp has conductor (5-1)(2-1) and delta (2-1)(5-1)/2
        p = 5
        from nscurve.tower import TowerScalar as T

        x5 = HomPoly.variable("x", p)
        y5 = HomPoly.variable("y", p)
        z5 = HomPoly.variable("z", p)
        quint = y5 * y5 * z5 * z5 * z5 - x5**5
        rep = inv.full_report(quint, ProjPoint(T.zero(p), T.zero(p), T.one(p)))
        assert rep.semigroup.minimal_generators == (2, 5)
        assert rep.conductor == 4 and rep.delta == 2
        assert rep.d_levels == (2, 1)
        assert rep.all_checks_pass


class TestOutsideHypotheses:
    def test_non_regular_cusp_reports_findings(self):
        # v^2 - u^9 at a rational point: Gamma = <2,9>, so the local ring
        # is not generated over the level-1 ring by one element and the
        # level identities fail; they must surface as false checks, with
        # the unconditional ones still holding
        deep = y**2 * z**7 - x**9
        rep = inv.full_report(deep, ORIGIN)
        assert rep.semigroup.minimal_generators == (2, 9)
        assert rep.delta == 4 and rep.conductor == 8
        assert rep.checks["conductor_is_2delta"] is True
        assert rep.checks["p_does_not_divide_d"] is True
        assert rep.checks["divisibility"] is True
        assert rep.checks["conductor_formula"] is False
        assert rep.checks["delta_formula"] is False
        assert not rep.all_checks_pass


class TestSemigroupData:
    def test_from_orders(self):
        data = inv.semigroup_from_orders([0, 2, 3, 4, 5, 6, 7])
        assert data.gaps == (1,)
        assert data.delta == 1 and data.conductor == 2
        assert data.certified
        assert data.minimal_generators == (2, 3)

    def test_uncertified_window(self):
        data = inv.semigroup_from_orders([0, 3, 6, 9])
        assert not data.certified

    def test_trivial(self):
        data = inv.semigroup_from_orders([0, 1, 2, 3])
        assert data.delta == 0 and data.conductor == 0 and data.certified

    def test_numerical_semigroup(self):
        assert inv.numerical_semigroup([2, 3], 8) == [0, 2, 3, 4, 5, 6, 7]
        assert inv.numerical_semigroup([4, 3], 9) == [0, 3, 4, 6, 7, 8]
