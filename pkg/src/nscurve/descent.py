"""Frobenius descent of homogeneous ideals under P^2_{K^(1/3)} -> P^2_K.

The base-change derivation D applies d/dr to level-1 coefficients and
kills K together with the coordinate variables.  For p = 3 and the rank
one situation the trace operator is D applied twice; it projects onto the
K-forms, and every level-1 form f splits exactly as

    f = f0 + r*f1 + r^2*f2,   with  f_i = -trace(r^(2-i) * f).

Only one tower step (level 1 over level 0) is supported: the module of
relative differentials is free of rank one there, so the single D
suffices.
"""

from dataclasses import dataclass

from . import plane as pl
from . import tower as tw
from .errors import DistinctTypes, NeedsSeparableExtension, NotInvariant, NoWitness
from .invariants import degree_of_point
from .plane import HomPoly, ProjMap, monomial_order
from .tower import TowerScalar


@dataclass(frozen=True)
class IdealPresentation:
    """Homogeneous ideal given by generators; level 0 lives over K."""

    generators: tuple
    level: int
    p: int = tw.DEFAULT_P

    def __post_init__(self):
        if self.level not in (0, 1):
            raise ValueError("only levels 0 and 1 are supported")
        for g in self.generators:
            if g.is_zero:
                raise ValueError("zero generator")
            if g.level > self.level:
                raise ValueError("generator coefficients exceed the ideal level")


@dataclass(frozen=True)
class OneTypeResult:
    type: int
    witness: HomPoly


def coeff_derivation(f):
    """D applied to a form: d/dr on level-1 coefficients, variables fixed."""
    if f.level > 1:
        raise ValueError("descent handles level <= 1 only")
    out = {}
    for e, c in f.coeffs.items():
        out[e] = tw.derive(c.lift(1))
    return HomPoly(f.degree, out, f.p)


def trace(f):
    """D twice; lands in K-forms and is re-tagged to level 0 (p = 3)."""
    if f.p != 3:
        raise ValueError("the rank-one trace D^2 is specific to p = 3")
    g = coeff_derivation(coeff_derivation(f))
    out = {}
    for e, c in g.coeffs.items():
        c0 = c.normalized()
        if c0.level != 0:
            raise AssertionError("trace image failed to land in K")
        out[e] = c0
    return HomPoly(f.degree, out, f.p)


def decompose(f):
    """The unique splitting f = f0 + r f1 + r^2 f2 with K-forms f_i.

    >>> from .plane import HomPoly
    >>> from .tower import TowerScalar
    >>> x, y = HomPoly.variable("x"), HomPoly.variable("y")
    >>> r = TowerScalar.generator(1)
    >>> [str(part) for part in decompose(x.scale(r) + y)]
    ['y', 'x', '0']
    """
    r = TowerScalar.generator(1, f.p)
    parts = []
    for i in range(3):
        parts.append(-trace(f.scale(r ** (2 - i))))
    return tuple(parts)


def _graded_piece_rref(ideal, degree):
    """Reduced row space of the ideal's graded piece in the given degree."""
    monos = monomial_order(degree)
    index = {e: k for k, e in enumerate(monos)}
    p = ideal.p
    rows = []
    for g in ideal.generators:
        d = degree - g.degree
        if d < 0:
            continue
        for m in monomial_order(d):
            prod = {}
            for e, c in g.coeffs.items():
                prod[(e[0] + m[0], e[1] + m[1], e[2] + m[2])] = c
            row = [TowerScalar.zero(p)] * len(monos)
            for e, c in prod.items():
                row[index[e]] = c
            rows.append(row)
    return tw.row_echelon(rows) if rows else ([], [])


def _poly_vector(f):
    monos = monomial_order(f.degree)
    return [f.coeff(e) for e in monos]


def is_invariant(ideal):
    """Whether D maps the ideal into itself (tested on the generators).

    By the Leibniz rule it is enough that D of each generator lies in the
    graded piece of the ideal in the generator's degree.
    """
    cache = {}
    for g in ideal.generators:
        h = coeff_derivation(g)
        if h.is_zero:
            continue
        if g.degree not in cache:
            cache[g.degree] = _graded_piece_rref(ideal, g.degree)
        rref, pivots = cache[g.degree]
        if not tw.in_row_space(rref, pivots, _poly_vector(h)):
            return False
    return True


def descend(ideal):
    """Generators of the K-ideal whose base change is the given ideal.

    Takes the traces of r^j * g; by the splitting identity these generate
    the same level-1 ideal after extension.
    """
    if ideal.level == 0:
        return ideal
    if not is_invariant(ideal):
        raise NotInvariant("the ideal is not closed under the derivation D")
    r = TowerScalar.generator(1, ideal.p)
    gens = []
    for g in ideal.generators:
        for j in range(3):
            h = trace(g.scale(r**j))
            if not h.is_zero:
                h = h.primitive()
                if h not in gens:
                    gens.append(h)
    return IdealPresentation(tuple(gens), 0, ideal.p)


def extend(ideal):
    """The same generators viewed one level up (base change to K^(1/3))."""
    if ideal.level == 1:
        return ideal
    return IdealPresentation(ideal.generators, 1, ideal.p)


def graded_pieces_equal(a, b, max_degree):
    """Row-space equality of the two ideals' graded pieces up to a degree."""
    for d in range(max_degree + 1):
        ra, pa = _graded_piece_rref(a, d)
        rb, pb = _graded_piece_rref(b, d)
        if pa != pb:
            return False
        for row in ra:
            if not tw.in_row_space(rb, pb, row):
                return False
    return True


def x_quotient(line):
    """K-cubic whose base change is the cube of a level-1 line.

    Coefficient-wise cube attached to cubed monomials (freshman's dream):
    a x + b y + c z maps to a^3 x^3 + b^3 y^3 + c^3 z^3.

    >>> from .plane import HomPoly
    >>> from .tower import TowerScalar
    >>> x, y = HomPoly.variable("x"), HomPoly.variable("y")
    >>> r = TowerScalar.generator(1)
    >>> str(x_quotient(x.scale(r) + y))
    't*x^3 + y^3'
    """
    if line.degree != 1:
        raise ValueError("x_quotient expects a line")
    if line.p != 3:
        raise ValueError("x_quotient is specific to p = 3")
    out = {}
    for e, c in line.coeffs.items():
        c3 = (c**3).normalized()
        if c3.level != 0:
            raise AssertionError("cube failed to land in K")
        out[(3 * e[0], 3 * e[1], 3 * e[2])] = c3
    return HomPoly(3, out, line.p)


def one_type(point):
    """Smallest degree (1 or 2) of an invariant irreducible curve through P.

    Requires deg(P) = 3.  Type 1 returns a K-line witness; type 2 returns
    the first rank-3 conic in the deterministic basis order.
    """
    if degree_of_point(point) != 3:
        raise ValueError("one_type requires a point of degree 3")
    p = point.p
    lines = pl.forms_through([point], 1, p)
    if lines:
        return OneTypeResult(1, lines[0])
    conics = pl.forms_through([point], 2, p)
    for w in conics:
        if pl.conic_rank(w) == 3:
            return OneTypeResult(2, w)
    for i in range(len(conics)):
        for j in range(i + 1, len(conics)):
            w = conics[i] + conics[j]
            if not w.is_zero and pl.conic_rank(w) == 3:
                return OneTypeResult(2, w.monic())
    raise NoWitness(f"no invariant line or irreducible conic through {point}")


def _unit_line(p, *support):
    one = TowerScalar.one(p)
    coeffs = {}
    for i in support:
        e = tuple(1 if k == i else 0 for k in range(3))
        coeffs[e] = one
    return HomPoly(1, coeffs, p)


def pair_normal_form(p1, q1, conic_point=None):
    """K-map sending a degree-3 point pair to its normal position.

    Both points type 1: images {(t:0:1), (0:u:1)} via the two invariant
    lines and a third independent K-line.  Both type 2: a shared rank-3
    K-conic is normalized to x^2 - yz (this needs a K-point on it, found
    in a bounded search or supplied), so the images are
    {(t:t^2:1), (u:u^2:1)}.  Mixed pairs are refused.
    """
    if p1 == q1:
        raise ValueError("the two points must be distinct")
    t_p = one_type(p1)
    t_q = one_type(q1)
    if t_p.type != t_q.type:
        raise DistinctTypes("one point has 1-type 1, the other 1-type 2")
    p = p1.p
    if t_p.type == 1:
        lp, lq = t_p.witness, t_q.witness
        if lp.proportionality(lq) is not None:
            raise NoWitness(
                "the points share their unique invariant line; "
                "no axis normal form exists for the pair"
            )
        pool = [_unit_line(p, i) for i in range(3)]
        pool += [
            _unit_line(p, 0, 1),
            _unit_line(p, 0, 2),
            _unit_line(p, 1, 2),
            _unit_line(p, 0, 1, 2),
        ]
        pool = [pool[2], pool[1], pool[0]] + pool[3:]  # prefer z, then y, x
        third = None
        for cand in pool:
            if not pl._independent_lines([lp, lq, cand]):
                continue
            if cand.evaluate(p1).is_zero or cand.evaluate(q1).is_zero:
                continue
            third = cand
            break
        if third is None:
            raise AssertionError("no independent third line avoids the points")
        m = ProjMap.from_rows(
            [pl._line_row(lq), pl._line_row(lp), pl._line_row(third)], p
        )
        img_p = m.apply_point(p1)
        img_q = m.apply_point(q1)
        if not img_p.coords[1].is_zero or not img_q.coords[0].is_zero:
            raise AssertionError("normal form images are off their axes")
        return m, (img_p, img_q)
    conics = pl.forms_through([p1, q1], 2, p)
    shared = next((w for w in conics if pl.conic_rank(w) == 3), None)
    if shared is None:
        raise NoWitness("no shared irreducible invariant conic through the pair")
    k_pt = conic_point if conic_point is not None else pl.conic_k_point(shared)
    if k_pt is None:
        raise NeedsSeparableExtension(
            "no K-rational point found on the shared conic; supply one"
        )
    m = pl.conic_normalizer(shared, k_pt)
    img_p = m.apply_point(p1)
    img_q = m.apply_point(q1)
    for img in (img_p, img_q):
        if img.coords[2].is_zero or img.coords[1] != img.coords[0] ** 2:
            raise AssertionError("image pair is not on the normal conic")
    return m, (img_p, img_q)
