"""The three quartic families over K = F_3(t): construction, validation,
classification of (conic, line-cube, line) data, and the projective
equivalence decision with verified witnesses.

Family equations (F is x^2 - yz for C0/C1 and xy for C2, N is x for C0
and z for C1/C2, M is the level-1 parameter line):

    a * F^2 + quotient(M^3) * N

The cube of the level-1 line has K-coefficients (coefficient-wise cubes),
so every member is defined over K even though its two singular points are
not K-rational.
"""

from dataclasses import dataclass

from . import descent as dsc
from . import invariants as inv
from . import plane as pl
from . import tower as tw
from .descent import IdealPresentation, x_quotient
from .errors import InvalidParameters, InvariantLine
from .plane import HomPoly, ProjMap, ProjPoint
from .tower import TowerScalar

TAGS = ("C0", "C1", "C2")

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not_equivalent"
DIFFERENT_FAMILY = "different_family"


def _x(p):
    return HomPoly.variable("x", p)


def _y(p):
    return HomPoly.variable("y", p)


def _z(p):
    return HomPoly.variable("z", p)


@dataclass(frozen=True)
class FamilyMember:
    tag: str
    t1: TowerScalar
    t2: TowerScalar
    a: TowerScalar
    abc: tuple

    @property
    def p(self):
        return self.t1.p

    def to_dict(self):
        A, B, C = self.abc
        return {
            "family": self.tag,
            "t1": str(self.t1),
            "t2": str(self.t2),
            "a": str(self.a),
            "A": str(A),
            "B": str(B),
            "C": str(C),
        }


def make(tag, t1, t2, a):
    """Validated family member with its derived (A, B, C) coefficient triple."""
    if tag not in TAGS:
        raise InvalidParameters(f"unknown family tag {tag!r}")
    p = t1.p
    if p != 3:
        raise InvalidParameters("the quartic families are specific to p = 3")
    if t1.level_of() != 1 or t2.level_of() != 1:
        raise InvalidParameters("t1 and t2 must lie in K^(1/3) \\ K (level 1)")
    if t1 == t2:
        raise InvalidParameters("t1 and t2 must be distinct")
    if a.level_of() != 0:
        raise InvalidParameters("a must lie in K (level 0)")
    if a.is_zero:
        raise InvalidParameters("a = 0 yields a non-integral quartic")
    if tag == "C0":
        excluded = -((t1**2 - t2**2) ** 3)
        if a == excluded:
            raise InvalidParameters(f"a = -(t1^2-t2^2)^3 = {excluded} is excluded for C0")
    a13 = tw.p_th_root(a)
    if tag in ("C0", "C1"):
        abc = ((t1**2 - t2**2) / a13, (t2 - t1) / a13, (t1 * t2**2 - t2 * t1**2) / a13)
    else:
        abc = (t1 / a13, t2 / a13, -(t1 * t2) / a13)
    return FamilyMember(tag, t1, t2, a, abc)


def parameter_line(member):
    """The level-1 line M whose cube enters the member's equation."""
    p = member.p
    t1, t2 = member.t1, member.t2
    if member.tag in ("C0", "C1"):
        cs = (t1**2 - t2**2, t2 - t1, t1 * t2**2 - t2 * t1**2)
    else:
        cs = (t1, t2, -(t1 * t2))
    return HomPoly(
        1, {(1, 0, 0): cs[0], (0, 1, 0): cs[1], (0, 0, 1): cs[2]}, p
    )


def conic_of(tag, p=3):
    x, y, z = _x(p), _y(p), _z(p)
    return x * y if tag == "C2" else x * x - y * z


def norm_line_of(tag, p=3):
    return _x(p) if tag == "C0" else _z(p)


def equation(member):
    """The quartic a*F^2 + quotient(M^3)*N; always has level 0."""
    p = member.p
    f = conic_of(member.tag, p)
    n = norm_line_of(member.tag, p)
    quartic = (f * f).scale(member.a) + x_quotient(parameter_line(member)) * n
    if quartic.level != 0:
        raise AssertionError("family equation failed to land over K")
    return quartic


def normalized_equation(member):
    """The rescaled form F^2 + (Ax + By + Cz)^3 * N (= equation / a)."""
    p = member.p
    A, B, C = member.abc
    line = HomPoly(1, {(1, 0, 0): A, (0, 1, 0): B, (0, 0, 1): C}, p)
    f = conic_of(member.tag, p)
    return f * f + x_quotient(line) * norm_line_of(member.tag, p)


def singular_points(member):
    """The two closed-form non-smooth points, verified by the Jacobian test."""
    p = member.p
    one = TowerScalar.one(p)
    zero = TowerScalar.zero(p)
    t1, t2 = member.t1, member.t2
    if member.tag in ("C0", "C1"):
        pts = (ProjPoint(t1, t1**2, one), ProjPoint(t2, t2**2, one))
    else:
        pts = (ProjPoint(zero, t1, one), ProjPoint(t2, zero, one))
    eq = equation(member)
    for pt in pts:
        if not pl.is_singular_at(eq, pt):
            raise AssertionError(f"closed-form singular point {pt} failed the Jacobian test")
    return pts


# -- classification of general (c, F, M, N) quartic data ---------------------


@dataclass(frozen=True)
class ClassifyResult:
    tag: str
    normal_map: object  # ProjMap or None
    note: str = ""


def classify(c, f_conic, m_line, n_line):
    """Family tag of the quartic c*F^2 + quotient(M^3)*N, with best-effort
    normalization of (F, N) to the family's normal pair.

    Tag: C2 when F is degenerate; otherwise C1 when N is tangent to F
    (checked by intersection multiplicity 2 at the unique contact point)
    and C0 when N is a secant.  The normalizing K-map needs K-rational
    data (a K-point of F, or K-rational contact points); when missing the
    tag alone is returned.
    """
    p = f_conic.p
    if dsc.is_invariant(IdealPresentation((m_line,), 1, p)):
        raise InvariantLine("the cubed line must not be base-change invariant")
    rank = pl.conic_rank(f_conic)
    if rank < 3:
        return _classify_degenerate(f_conic, n_line)
    pts = pl.conic_line_intersections(f_conic, n_line)
    a, b, cc, _, _ = pl.restrict_to_line(f_conic, n_line)
    four = TowerScalar.from_int(4, p)
    disc = b * b - four * a * cc
    if disc.is_zero:
        contact = pts[0]
        mult = pl.intersection_multiplicity(f_conic, n_line, contact)
        if mult != 2:
            raise AssertionError("vanishing discriminant without tangency")
        normal = pl.conic_normalizer(f_conic, contact)
        return ClassifyResult("C1", normal)
    if pts is None:
        return ClassifyResult("C0", None, "contact points are not K-rational")
    return _classify_secant(f_conic, n_line, pts)


def _classify_secant(f_conic, n_line, pts):
    p = f_conic.p
    r1, r2 = pts
    row_x = pl._line_row(n_line)
    row_y = pl._line_row(pl.tangent_line(f_conic, r2))
    row_z = pl._line_row(pl.tangent_line(f_conic, r1))
    m0 = ProjMap.from_rows([row_x, row_y, row_z], p)
    f1 = pl.apply_map(m0, f_conic)
    alpha = f1.coeff((2, 0, 0))
    zeta = f1.coeff((0, 1, 1))
    lam = -zeta / alpha
    one, zero = TowerScalar.one(p), TowerScalar.zero(p)
    scale = ProjMap.diagonal(one, lam.inverse(), one, p)
    return ClassifyResult("C0", scale.compose(m0))


def _classify_degenerate(f_conic, n_line):
    p = f_conic.p
    if pl.conic_rank(f_conic) != 2:
        raise InvalidParameters("double-line conics do not occur in the families")
    kernel = tw.nullspace(_conic_matrix(f_conic))
    apex = ProjPoint(*kernel[0])
    probe = None
    for var in pl.VARS:
        line = HomPoly.variable(var, p)
        if not line.evaluate(apex).is_zero:
            probe = line
            break
    pts = pl.conic_line_intersections(f_conic, probe)
    if pts is None:
        return ClassifyResult("C2", None, "line pair is not split over K")
    l1 = _join_line(apex, pts[0])
    l2 = _join_line(apex, pts[1])
    rows = [pl._line_row(l1), pl._line_row(l2), pl._line_row(n_line)]
    if tw.rank(rows) < 3:
        return ClassifyResult("C2", None, "N passes through the conic's apex")
    return ClassifyResult("C2", ProjMap.from_rows(rows, p))


def _conic_matrix(f):
    p = f.p
    half = TowerScalar.from_int(2, p).inverse()
    m = []
    for i in range(3):
        row = []
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = f.coeff(tuple(e))
            row.append(c if i == j else c * half)
        m.append(row)
    return m


def _join_line(p1, p2):
    """The line through two distinct points (cross product of coordinates)."""
    a = p1.coords
    b = p2.coords
    coeffs = {
        (1, 0, 0): a[1] * b[2] - a[2] * b[1],
        (0, 1, 0): a[2] * b[0] - a[0] * b[2],
        (0, 0, 1): a[0] * b[1] - a[1] * b[0],
    }
    return HomPoly(1, coeffs, p1.p)


# -- equivalence decision -----------------------------------------------------


@dataclass(frozen=True)
class EquivalenceWitness:
    """Verified witness: apply_map(map, eq(m1)) == scalar * eq(m2) exactly."""

    map: ProjMap
    params: dict
    scalar: TowerScalar


def _verify_witness(action, params, m1, m2):
    """Check the exact polynomial identity and package the witness.

    ``action`` is the automorphism acting on equations by substitution;
    the stored witness map is its inverse, which moves V(eq1) onto V(eq2).
    """
    w = action.inverse()
    image = pl.apply_map(w, equation(m1))
    scalar = image.proportionality(equation(m2))
    if scalar is None or scalar.level_of() != 0:
        return None
    return EquivalenceWitness(w, params, scalar)


def _solve_c0(m1, m2):
    (a1, b1, c1), (a2, b2, c2) = m1.abc, m2.abc
    p = m1.p
    one = TowerScalar.one(p)
    zero = TowerScalar.zero(p)
    if a2 == a1:
        mu = b2 / b1
        if mu.level_of() == 0 and not mu.is_zero and c2 == c1 / mu:
            action = ProjMap.diagonal(one, mu, mu.inverse(), p)
            w = _verify_witness(action, {"beta": one, "lambda": mu}, m1, m2)
            if w:
                return w
        mu = b2 / c1
        if mu.level_of() == 0 and not mu.is_zero and c2 == b1 / mu:
            action = ProjMap.from_rows(
                [[one, zero, zero], [zero, zero, mu.inverse()], [zero, mu, zero]], p
            )
            w = _verify_witness(
                action, {"beta": one, "lambda": mu, "swap": True}, m1, m2
            )
            if w:
                return w
    return None


def _solve_c1(m1, m2):
    (a1, b1, c1), (a2, b2, c2) = m1.abc, m2.abc
    p = m1.p
    zero = TowerScalar.zero(p)
    rho = (b2 / b1) ** 3
    root = tw.square_root(rho)
    if root is None:
        return None
    for lam2 in (root, -root):
        if lam2.is_zero:
            continue
        lam2_13 = tw.p_th_root(lam2)
        for beta_int in (1, 2):
            beta = TowerScalar.from_int(beta_int, p)
            lam1 = (a2 * lam2_13 - beta * a1) / b1
            if lam1.level_of() != 0:
                continue
            expect_c = (b1 * lam1**2 - beta * a1 * lam1 + c1) / (lam2 * lam2_13)
            if c2 != expect_c:
                continue
            action = ProjMap.from_rows(
                [
                    [beta, zero, -beta * lam1 / lam2],
                    [lam1, lam2, lam1**2 / lam2],
                    [zero, zero, lam2.inverse()],
                ],
                p,
            )
            w = _verify_witness(
                action, {"beta": beta, "lambda1": lam1, "lambda2": lam2}, m1, m2
            )
            if w:
                return w
    return None


def _solve_c2(m1, m2):
    (a1, b1, c1), (a2, b2, c2) = m1.abc, m2.abc
    p = m1.p
    zero = TowerScalar.zero(p)
    rho = (a2 * b2 / (a1 * b1)) ** 3
    root = tw.square_root(rho)
    if root is None:
        return None
    for lam2 in (root, -root):
        if lam2.is_zero:
            continue
        lam2_13 = tw.p_th_root(lam2)
        if c2 != lam2 * lam2_13 * c1:
            continue
        for swapped in (False, True):
            if not swapped:
                lam1 = a2 / (lam2_13 * a1)
                ok = (
                    lam1.level_of() == 0
                    and not lam1.is_zero
                    and b2 == lam2_13 * b1 / lam1
                )
                action = (
                    ProjMap.diagonal(lam1, lam1.inverse(), lam2, p) if ok else None
                )
            else:
                lam1 = b2 / (lam2_13 * a1)
                ok = (
                    lam1.level_of() == 0
                    and not lam1.is_zero
                    and a2 == lam2_13 * b1 / lam1
                )
                if ok:
                    one = TowerScalar.one(p)
                    action = ProjMap.from_rows(
                        [
                            [zero, lam1, zero],
                            [lam1.inverse(), zero, zero],
                            [zero, zero, lam2],
                        ],
                        p,
                    )
                else:
                    action = None
            if action is not None:
                w = _verify_witness(
                    action,
                    {"lambda1": lam1, "lambda2": lam2, "swap": swapped},
                    m1,
                    m2,
                )
                if w:
                    return w
    return None


def are_equivalent(m1, m2):
    """(status, witness) where status is one of the module constants.

    The solver inverts the coefficient action of the family's automorphism
    shapes; every candidate is confirmed against the exact polynomial
    identity before being returned.
    """
    if m1.tag != m2.tag:
        return DIFFERENT_FAMILY, None
    solver = {"C0": _solve_c0, "C1": _solve_c1, "C2": _solve_c2}[m1.tag]
    w = solver(m1, m2)
    return (EQUIVALENT, w) if w else (NOT_EQUIVALENT, None)


# -- full member verification -------------------------------------------------


@dataclass(frozen=True)
class MemberVerification:
    member: FamilyMember
    reports: tuple
    genus: int
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "member": self.member.to_dict(),
            "genus": self.genus,
            "checks": dict(self.checks),
            "reports": [r.to_dict() for r in self.reports],
        }


def verify_member(member, trunc=None, span_degree=None):
    """Full invariant verification of a family member at both its points."""
    from .branch import DEFAULT_SPAN_DEGREE, DEFAULT_TRUNC

    trunc = trunc or DEFAULT_TRUNC
    span_degree = span_degree or DEFAULT_SPAN_DEGREE
    eq = equation(member)
    pts = singular_points(member)
    reports = tuple(
        inv.full_report(eq, pt, trunc=trunc, span_degree=span_degree) for pt in pts
    )
    genus = inv.geometric_genus(4, [r.delta for r in reports])
    window = max(r.semigroup.window for r in reports)
    expected = inv.numerical_semigroup([2, 3], window)
    checks = {
        "two_singular_points": len(pts) == 2 and pts[0] != pts[1],
        "degree_of_point_3": all(r.degree_of_point == 3 for r in reports),
        "regularity_certified": all(
            r.regularity == "regular_certified" for r in reports
        ),
        "delta_1": all(r.delta == 1 for r in reports),
        "gamma_2_3": all(
            list(r.semigroup.values) == expected[: len(r.semigroup.values)]
            and r.semigroup.minimal_generators == (2, 3)
            for r in reports
        ),
        "d_levels_2_1": all(r.d_levels == (2, 1) for r in reports),
        "conductor_2": all(r.conductor == 2 for r in reports),
        "genus_1": genus == 1,
    }
    for name in (
        "conductor_formula",
        "divisibility",
        "p_does_not_divide_d",
        "conductor_is_2delta",
        "gamma_matches_d_and_p",
        "delta_formula",
    ):
        checks[name] = all(r.checks.get(name, False) for r in reports)
    return MemberVerification(member, reports, genus, checks)
