"""Homogeneous forms in x, y, z over tower scalars, points and maps of P^2.

Monomials of a fixed degree are ordered lexicographically by descending
exponent triple, e.g. x^2, xy, xz, y^2, yz, z^2 for degree two; every
deterministic basis choice downstream leans on this order.
"""

from dataclasses import dataclass
from math import comb

from . import tower as tw
from .errors import NotIsolated, PointNotOnCurve
from .tower import TowerScalar

VARS = ("x", "y", "z")


def monomial_order(degree):
    """Exponent triples of the given degree, lex-descending."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return out


class HomPoly:
    """Homogeneous polynomial; zero coefficients are never stored."""

    __slots__ = ("degree", "coeffs", "p")

    def __init__(self, degree, coeffs=None, p=tw.DEFAULT_P):
        self.degree = degree
        self.p = p
        clean = {}
        for exps, c in (coeffs or {}).items():
            if sum(exps) != degree:
                raise ValueError(f"exponent {exps} does not have degree {degree}")
            if not c.is_zero:
                clean[tuple(exps)] = c
        self.coeffs = clean

    @staticmethod
    def variable(name, p=tw.DEFAULT_P):
        i = VARS.index(name)
        exps = tuple(1 if k == i else 0 for k in range(3))
        return HomPoly(1, {exps: TowerScalar.one(p)}, p)

    @staticmethod
    def zero(degree, p=tw.DEFAULT_P):
        return HomPoly(degree, {}, p)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def level(self):
        return max((c.level_of() for c in self.coeffs.values()), default=0)

    def coeff(self, exps):
        return self.coeffs.get(tuple(exps), TowerScalar.zero(self.p))

    def terms(self):
        """(exponents, coefficient) pairs in the canonical monomial order."""
        return [(e, self.coeffs[e]) for e in monomial_order(self.degree) if e in self.coeffs]

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return HomPoly(self.degree, out, self.p)

    def __neg__(self):
        return HomPoly(self.degree, {e: -c for e, c in self.coeffs.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return HomPoly(self.degree + other.degree, out, self.p)

    def scale(self, c):
        return HomPoly(self.degree, {e: c * v for e, v in self.coeffs.items()}, self.p)

    def __pow__(self, e):
        out = HomPoly(0, {(0, 0, 0): TowerScalar.one(self.p)}, self.p)
        for _ in range(e):
            out = out * self
        return out

    def partial(self, var):
        """Formal partial derivative with respect to x, y or z."""
        i = VARS.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * TowerScalar.from_int(e[i], self.p)
        return HomPoly(max(self.degree - 1, 0), out, self.p)

    def evaluate(self, point):
        coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
        acc = TowerScalar.zero(self.p)
        for e, c in self.coeffs.items():
            acc = acc + c * coords[0] ** e[0] * coords[1] ** e[1] * coords[2] ** e[2]
        return acc

    def substitute(self, forms):
        """Plug three degree-1 forms in for x, y, z."""
        pows = []
        for g in forms:
            cur = [HomPoly(0, {(0, 0, 0): TowerScalar.one(self.p)}, self.p)]
            for _ in range(self.degree):
                cur.append(cur[-1] * g)
            pows.append(cur)
        acc = HomPoly(self.degree, {}, self.p)
        for e, c in self.coeffs.items():
            acc = acc + (pows[0][e[0]] * pows[1][e[1]] * pows[2][e[2]]).scale(c)
        return acc

    def dehomogenize(self, chart):
        """Affine polynomial in the chart where coordinate ``chart`` is 1.

        The two affine variables are the remaining coordinates in position
        order, e.g. chart z=1 gives (u, v) = (x, y).
        """
        keep = [i for i in range(3) if i != chart]
        out = {}
        for e, c in self.coeffs.items():
            out[(e[keep[0]], e[keep[1]])] = c
        return AffinePoly(out, self.p)

    def proportionality(self, other):
        """Scalar c with self == c*other, or None."""
        if self.degree != other.degree:
            return None
        if other.is_zero:
            return None
        if self.is_zero:
            return None
        for e in monomial_order(self.degree):
            if e in other.coeffs:
                c = self.coeff(e) / other.coeffs[e]
                break
        else:
            return None
        if c.is_zero:
            return None
        return c if self == other.scale(c) else None

    def monic(self):
        """Divide by the leading (first in monomial order) coefficient."""
        for e in monomial_order(self.degree):
            if e in self.coeffs:
                return self.scale(self.coeffs[e].inverse())
        return self

    def primitive(self):
        """Scalar-normalize: polynomial coefficients with unit content.

        Clears denominators, divides out the gcd of the numerators and
        makes the leading coefficient monic as a polynomial in the tower
        generator; the canonical generator presentation for ideals.
        """
        from . import fppoly as fp

        if self.is_zero:
            return self
        lvl = max(c.level for c in self.coeffs.values())
        raws = {e: c.lift(lvl) for e, c in self.coeffs.items()}
        p = self.p
        den_lcm = fp.ONE
        for c in raws.values():
            g = fp.poly_gcd(den_lcm, c.den, p)
            quot, _ = fp.poly_divmod(c.den, g, p)
            den_lcm = fp.poly_mul(den_lcm, quot, p)
        nums = {}
        content = fp.ZERO
        for e, c in raws.items():
            quot, _ = fp.poly_divmod(den_lcm, c.den, p)
            nums[e] = fp.poly_mul(c.num, quot, p)
            content = fp.poly_gcd(content, nums[e], p)
        out = {}
        for e, arr in nums.items():
            quot, _ = fp.poly_divmod(arr, content, p)
            out[e] = TowerScalar(quot, fp.ONE, lvl, p, reduce=False).normalized()
        poly = HomPoly(self.degree, out, p)
        lead = next(poly.coeffs[e] for e in monomial_order(self.degree) if e in poly.coeffs)
        lc = int(lead.num[lead.num.shape[0] - 1])
        if lc != 1:
            inv_lc = TowerScalar.from_int(pow(lc, p - 2, p), p)
            poly = poly.scale(inv_lc)
        return poly

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.degree != other.degree or set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[e] == other.coeffs[e] for e in self.coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset((e, c) for e, c in self.coeffs.items())))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(VARS, e) if k > 0
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    parts.append(mono)
                else:
                    if "+" in cs or "/" in cs or "*" in cs or "^" in cs:
                        cs = f"({cs})"
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"HomPoly({self})"


class AffinePoly:
    """Polynomial in two chart variables (u, v) over tower scalars."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs=None, p=tw.DEFAULT_P):
        self.p = p
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if not c.is_zero}

    @staticmethod
    def monomial(i, j, p=tw.DEFAULT_P):
        return AffinePoly({(i, j): TowerScalar.one(p)}, p)

    @property
    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return AffinePoly(out, self.p)

    def __neg__(self):
        return AffinePoly({e: -c for e, c in self.coeffs.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return AffinePoly(out, self.p)

    def scale(self, c):
        return AffinePoly({e: c * v for e, v in self.coeffs.items()}, self.p)

    def evaluate(self, a, b):
        acc = TowerScalar.zero(self.p)
        for (i, j), c in self.coeffs.items():
            acc = acc + c * a**i * b**j
        return acc

    def total_degree(self):
        return max((i + j for i, j in self.coeffs), default=0)

    def multiplicity(self):
        """Order at the origin: minimal total degree of a present term."""
        return min((i + j for i, j in self.coeffs), default=None)

    def lowest_form(self):
        m = self.multiplicity()
        return {e: c for e, c in self.coeffs.items() if e[0] + e[1] == m}

    def partial_u(self):
        out = {}
        for (i, j), c in self.coeffs.items():
            if i:
                out[(i - 1, j)] = c * TowerScalar.from_int(i, self.p)
        return AffinePoly(out, self.p)

    def partial_v(self):
        out = {}
        for (i, j), c in self.coeffs.items():
            if j:
                out[(i, j - 1)] = c * TowerScalar.from_int(j, self.p)
        return AffinePoly(out, self.p)

    def shift(self, a, b):
        """Recenter: returns g with g(u, v) = self(u + a, v + b)."""
        one = TowerScalar.one(self.p)
        deg = self.total_degree()
        pow_a = [one]
        pow_b = [one]
        for _ in range(deg):
            pow_a.append(pow_a[-1] * a)
            pow_b.append(pow_b[-1] * b)
        out = {}
        for (i, j), c in self.coeffs.items():
            for i2 in range(i + 1):
                ci = comb(i, i2) % self.p
                if ci == 0:
                    continue
                for j2 in range(j + 1):
                    cj = comb(j, j2) % self.p
                    if cj == 0:
                        continue
                    val = c * pow_a[i - i2] * pow_b[j - j2]
                    if ci * cj % self.p != 1:
                        val = val * TowerScalar.from_int(ci * cj, self.p)
                    e = (i2, j2)
                    out[e] = out[e] + val if e in out else val
        return AffinePoly(out, self.p)

    def swap(self):
        return AffinePoly({(j, i): c for (i, j), c in self.coeffs.items()}, self.p)

    def shear_v(self, c):
        """Substitute v -> v + c*u."""
        out = AffinePoly({}, self.p)
        for (i, j), coef in self.coeffs.items():
            term = AffinePoly({(i, 0): coef}, self.p)
            lin = AffinePoly({(0, 1): TowerScalar.one(self.p), (1, 0): c}, self.p)
            for _ in range(j):
                term = term * lin
            out = out + term
        return out

    def blowup(self):
        """Strict transform under (u, v) -> (u, u*v): divide f(u, uv) by u^m."""
        m = self.multiplicity()
        out = {}
        for (i, j), c in self.coeffs.items():
            out[(i + j - m, j)] = c
        return AffinePoly(out, self.p)

    def __eq__(self, other):
        if not isinstance(other, AffinePoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[e] == other.coeffs[e] for e in self.coeffs)

    def __repr__(self):
        parts = []
        for (i, j) in sorted(self.coeffs, reverse=True):
            parts.append(f"({self.coeffs[(i,j)]})*u^{i}*v^{j}")
        return " + ".join(parts) or "0"


class ProjPoint:
    """Point of P^2; normalized so the last nonzero coordinate is 1."""

    __slots__ = ("coords", "p")

    def __init__(self, x, y, z):
        coords = (x, y, z)
        self.p = x.p
        last = None
        for i in (2, 1, 0):
            if not coords[i].is_zero:
                last = i
                break
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        c = coords[last]
        self.coords = tuple(v / c for v in coords)

    @property
    def chart(self):
        """Index of the last nonzero (hence =1) coordinate."""
        for i in (2, 1, 0):
            if not self.coords[i].is_zero:
                return i
        raise AssertionError

    def affine_coords(self):
        """The two non-chart coordinates, in position order."""
        ch = self.chart
        return tuple(self.coords[i] for i in range(3) if i != ch)

    @property
    def level(self):
        return max(c.level_of() for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


@dataclass(frozen=True)
class ProjMap:
    """Invertible 3x3 matrix acting on points by v -> M v (then normalize)."""

    matrix: tuple
    p: int = tw.DEFAULT_P

    def __post_init__(self):
        if self.determinant().is_zero:
            raise ValueError("singular projective map")

    @staticmethod
    def from_rows(rows, p=tw.DEFAULT_P):
        return ProjMap(tuple(tuple(r) for r in rows), p)

    @staticmethod
    def identity(p=tw.DEFAULT_P):
        one, zero = TowerScalar.one(p), TowerScalar.zero(p)
        return ProjMap.from_rows(
            [[one, zero, zero], [zero, one, zero], [zero, zero, one]], p
        )

    @staticmethod
    def diagonal(a, b, c, p=tw.DEFAULT_P):
        zero = TowerScalar.zero(p)
        return ProjMap.from_rows([[a, zero, zero], [zero, b, zero], [zero, zero, c]], p)

    @property
    def definition_level(self):
        return max(x.level_of() for row in self.matrix for x in row)

    def determinant(self):
        m = self.matrix
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def inverse(self):
        m = self.matrix
        det = self.determinant()
        cof = [
            [
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for i in range(3)
            ]
            for j in range(3)
        ]
        return ProjMap.from_rows([[c / det for c in row] for row in cof], self.p)

    def compose(self, other):
        """self after other (matrix product self @ other)."""
        a, b = self.matrix, other.matrix
        rows = [
            [sum((a[i][k] * b[k][j] for k in range(3)), TowerScalar.zero(self.p)) for j in range(3)]
            for i in range(3)
        ]
        return ProjMap.from_rows(rows, self.p)

    def apply_point(self, point):
        m = self.matrix
        v = point.coords
        new = [
            m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3)
        ]
        return ProjPoint(*new)

    def row_forms(self, inverse=False):
        mat = self.inverse().matrix if inverse else self.matrix
        forms = []
        for i in range(3):
            coeffs = {}
            for j in range(3):
                e = tuple(1 if k == j else 0 for k in range(3))
                coeffs[e] = mat[i][j]
            forms.append(HomPoly(1, coeffs, self.p))
        return forms


def evaluate(f, point):
    return f.evaluate(point)


def is_singular_at(f, point):
    """Jacobian criterion at a point of the curve.

    Raises PointNotOnCurve when f(P) != 0.
    """
    if not f.evaluate(point).is_zero:
        raise PointNotOnCurve(f"{point} does not lie on the curve")
    return all(f.partial(v).evaluate(point).is_zero for v in VARS)


def apply_map(T, f):
    """Transform of f under T, i.e. f composed with T^-1.

    The result vanishes exactly on T(V(f)): if f(P) = 0 then
    apply_map(T, f)(T(P)) = f(T^-1 T P) = 0.
    """
    return f.substitute(T.row_forms(inverse=True))


def intersection_multiplicity(f, g, point, max_trunc=40):
    """dim of the local ring modulo (f, g) at the point, by stable truncation.

    Both curves are dehomogenized in the chart of the point's last nonzero
    coordinate and recentered; the dimension of O/((f,g) + m^N) is computed
    by exact row reduction for growing N until it repeats.
    """
    p = f.p
    ch = point.chart
    a, b = point.affine_coords()
    floc = f.dehomogenize(ch).shift(a, b)
    gloc = g.dehomogenize(ch).shift(a, b)
    if floc.multiplicity() is None or floc.multiplicity() == 0:
        raise PointNotOnCurve(f"first curve does not pass through {point}")
    if gloc.multiplicity() is None or gloc.multiplicity() == 0:
        raise PointNotOnCurve(f"second curve does not pass through {point}")

    prev = None
    for N in range(2, max_trunc + 1):
        monos = [(i, j) for d in range(N) for i in range(d, -1, -1) for j in (d - i,)]
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for h in (floc, gloc):
            for (mi, mj) in monos:
                prod = {}
                for (i, j), c in h.coeffs.items():
                    if mi + i + mj + j < N:
                        prod[(mi + i, mj + j)] = c
                if prod:
                    row = [TowerScalar.zero(p)] * len(monos)
                    for e, c in prod.items():
                        row[index[e]] = c
                    rows.append(row)
        r = tw.rank(rows) if rows else 0
        dim = len(monos) - r
        if prev is not None and dim == prev:
            return dim
        prev = dim
    raise NotIsolated(
        f"local dimension still growing at truncation {max_trunc}; "
        "the curves likely share a component through the point"
    )


def conic_rank(f):
    """Rank of the symmetric matrix of a degree-2 form (needs p != 2)."""
    if f.degree != 2:
        raise ValueError("conic_rank expects a degree-2 form")
    if f.p == 2:
        raise ValueError("symmetric-matrix rank needs p != 2")
    half = TowerScalar.from_int((f.p + 1) // 2, f.p)  # 1/2 mod p
    m = [[TowerScalar.zero(f.p)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = f.coeff(tuple(e))
            m[i][j] = c if i == j else c * half
    return tw.rank(m)


def line_points(line):
    """Two independent points spanning a K-line (nullspace of its row)."""
    row = [line.coeff((1, 0, 0)), line.coeff((0, 1, 0)), line.coeff((0, 0, 1))]
    basis = tw.nullspace([row])
    return [ProjPoint(*v) for v in basis]


def restrict_to_line(f, line):
    """Binary quadratic (a, b, c) of a conic on a K-line U*P1 + V*P2.

    Returns (a, b, c, P1, P2) with f(U P1 + V P2) = a U^2 + b UV + c V^2.
    """
    if f.degree != 2:
        raise ValueError("restriction expects a conic")
    p1, p2 = line_points(line)
    a = f.evaluate(p1)
    c = f.evaluate(p2)
    mid = f.evaluate(tuple(u + v for u, v in zip(p1.coords, p2.coords)))
    b = mid - a - c
    return a, b, c, p1, p2


def solve_binary_quadratic(a, b, c):
    """K-rational roots (U : V) of a U^2 + b UV + c V^2, or None.

    Uses the discriminant square root in K; p must be odd.  Returns a list
    of (u, v) scalar pairs (one pair for a double root).
    """
    p = a.p
    zero, one = TowerScalar.zero(p), TowerScalar.one(p)
    if a.is_zero and b.is_zero and c.is_zero:
        raise ValueError("zero form")
    if a.is_zero:
        # V * (b U + c V): roots (1:0) and (c : -b)
        if b.is_zero:
            return [(one, zero)]
        return [(one, zero), (c, -b)]
    four = TowerScalar.from_int(4, p)
    disc = b * b - four * a * c
    root = tw.square_root(disc)
    if root is None:
        return None
    inv2a = (TowerScalar.from_int(2, p) * a).inverse()
    u1 = (-b + root) * inv2a
    if disc.is_zero:
        return [(u1, one)]
    u2 = (-b - root) * inv2a
    return [(u1, one), (u2, one)]


def conic_line_intersections(f, line):
    """K-rational intersection points of a conic with a K-line, or None."""
    a, b, c, p1, p2 = restrict_to_line(f, line)
    roots = solve_binary_quadratic(a, b, c)
    if roots is None:
        return None
    pts = []
    for (u, v) in roots:
        coords = tuple(u * w1 + v * w2 for w1, w2 in zip(p1.coords, p2.coords))
        pts.append(ProjPoint(*coords))
    return pts


def conic_k_point(f):
    """A K-rational point on the conic from a fixed bounded search set.

    Tries the coordinate points, then the intersections with the
    coordinate lines; returns None when the search set has no K-point.
    """
    p = f.p
    one, zero = TowerScalar.one(p), TowerScalar.zero(p)
    for coords in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
        pt = ProjPoint(*coords)
        if f.evaluate(pt).is_zero:
            return pt
    for var in VARS:
        pts = conic_line_intersections(f, HomPoly.variable(var, p))
        if pts:
            for pt in pts:
                if pt.level == 0:
                    return pt
    return None


def tangent_line(f, point):
    """Gradient line of a curve at a smooth point of it."""
    coeffs = {}
    for i, v in enumerate(VARS):
        e = tuple(1 if k == i else 0 for k in range(3))
        coeffs[e] = f.partial(v).evaluate(point)
    line = HomPoly(1, coeffs, f.p)
    if line.is_zero:
        raise ValueError("point is singular; no tangent line")
    return line


def conic_normalizer(f, k_point=None):
    """K-map T with apply_map(T, f) proportional to x^2 - yz.

    Needs a K-rational point of the rank-3 conic (searched for when not
    supplied); the point is sent to (0:1:0) with its tangent sent to z.
    """
    p = f.p
    if conic_rank(f) != 3:
        raise ValueError("conic is not smooth")
    r0 = k_point if k_point is not None else conic_k_point(f)
    if r0 is None:
        from .errors import NeedsSeparableExtension

        raise NeedsSeparableExtension(
            "no K-rational point on the conic in the bounded search set"
        )
    if r0.level != 0 or not f.evaluate(r0).is_zero:
        raise ValueError("supplied point is not a K-point of the conic")
    ell0 = tangent_line(f, r0)
    through = forms_through([r0], 1, p)
    row_x = next(g for g in through if _independent_lines([ell0, g]))
    one = TowerScalar.one(p)
    zero = TowerScalar.zero(p)
    candidates = [
        HomPoly.variable(v, p) for v in VARS
    ] + [
        HomPoly(1, {(1, 0, 0): one, (0, 1, 0): one}, p),
        HomPoly(1, {(1, 0, 0): one, (0, 0, 1): one}, p),
        HomPoly(1, {(0, 1, 0): one, (0, 0, 1): one}, p),
        HomPoly(1, {(1, 0, 0): one, (0, 1, 0): one, (0, 0, 1): one}, p),
    ]
    row_y = next(g for g in candidates if not g.evaluate(r0).is_zero)
    m1 = ProjMap.from_rows(
        [_line_row(row_x), _line_row(row_y), _line_row(ell0)], p
    )
    f1 = apply_map(m1, f)
    alpha = f1.coeff((2, 0, 0))
    gamma = f1.coeff((0, 0, 2))
    eps = f1.coeff((1, 0, 1))
    zeta = f1.coeff((0, 1, 1))
    if alpha.is_zero or zeta.is_zero:
        raise AssertionError("conic lost its normal shape under the point map")
    half = TowerScalar.from_int(2, p).inverse()
    quarter = TowerScalar.from_int(4, p).inverse()
    gamma2 = gamma - eps * eps * quarter / alpha
    t2 = ProjMap.from_rows(
        [
            [one, zero, eps * half / alpha],
            [zero, -zeta / alpha, -gamma2 / alpha],
            [zero, zero, one],
        ],
        p,
    )
    return t2.compose(m1)


def _line_row(line):
    return [line.coeff((1, 0, 0)), line.coeff((0, 1, 0)), line.coeff((0, 0, 1))]


def _independent_lines(lines):
    return tw.rank([_line_row(g) for g in lines]) == len(lines)


def forms_through(points, degree, p=tw.DEFAULT_P):
    """Basis of degree-d forms with K-coefficients vanishing at the points.

    Each monomial value at each point is flattened to K-coordinates; the
    homogeneous K-linear system is solved exactly.  Basis elements are
    normalized to leading coefficient 1 in the monomial order.
    """
    monos = monomial_order(degree)
    rows = []
    for pt in points:
        m = pt.level
        vals = []
        for e in monos:
            v = pt.coords[0] ** e[0] * pt.coords[1] ** e[1] * pt.coords[2] ** e[2]
            vals.append(tw.k_coordinates(v.normalized(), m))
        for comp in range(p**m):
            rows.append([vals[k].coords[comp] for k in range(len(monos))])
    if not rows:
        return [HomPoly(degree, {e: TowerScalar.one(p)}, p) for e in monos]
    basis_vecs = tw.nullspace(rows)
    out = []
    for vec in basis_vecs:
        poly = HomPoly(degree, dict(zip(monos, vec)), p)
        out.append(poly.monic())

    def lead_pos(poly):
        for k, e in enumerate(monos):
            if e in poly.coeffs:
                return k
        return len(monos)

    return sorted(out, key=lead_pos)
