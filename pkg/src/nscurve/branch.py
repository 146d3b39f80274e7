"""Branch parametrization of unibranch plane germs and valuation order sets.

A germ is resolved by the Hamburger-Noether procedure: normalize the
tangent direction, blow up, repeat until smooth, then solve the smooth
germ by Newton iteration on truncated power series.  The procedure is
characteristic-free; the only root extractions it ever needs are p-power
roots of the tangent direction, which stay inside the purely inseparable
tower (Newton-Puiseux would require genuine fractional exponents here).

Order sets of function spans along a branch are computed by exact forward
row reduction of composed series, with columns ordered by s-order; the set
of pivot orders is exactly the set of orders attained by nonzero elements
of the span.
"""

from dataclasses import dataclass

from . import fppoly as fp
from . import tower as tw
from .errors import (
    AllDerivativesVanish,
    NotUnibranch,
    PointNotOnCurve,
    TruncationTooSmall,
)
from .tower import TowerScalar

DEFAULT_TRUNC = 32
MAX_TRUNC = 128
DEFAULT_SPAN_DEGREE = 8
_MAX_BLOWUPS = 64


def _raw_at(c, lvl, p):
    """(num, den) arrays of a scalar lifted to the given stored level."""
    if c.level == lvl:
        return c.num, c.den
    q = p ** (lvl - c.level)
    return fp.poly_inflate(c.num, q), fp.poly_inflate(c.den, q)


class PowerSeriesTrunc:
    """Power series known modulo s^trunc; coefficients are tower scalars."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p=tw.DEFAULT_P):
        self.coeffs = list(coeffs)
        self.p = p

    @staticmethod
    def zero(trunc, p=tw.DEFAULT_P):
        return PowerSeriesTrunc([TowerScalar.zero(p)] * trunc, p)

    @staticmethod
    def from_scalar(c, trunc):
        out = PowerSeriesTrunc.zero(trunc, c.p)
        out.coeffs[0] = c
        return out

    @staticmethod
    def s_var(trunc, p=tw.DEFAULT_P):
        out = PowerSeriesTrunc.zero(trunc, p)
        if trunc > 1:
            out.coeffs[1] = TowerScalar.one(p)
        return out

    @property
    def trunc(self):
        return len(self.coeffs)

    def order(self):
        """Order of the first nonzero coefficient; None when zero mod s^N."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        return None

    def truncate(self, n):
        if n >= self.trunc:
            return self
        return PowerSeriesTrunc(self.coeffs[:n], self.p)

    def extend_to(self, n):
        """Pad with zero coefficients up to length n (no new information)."""
        if n <= self.trunc:
            return self
        pad = [TowerScalar.zero(self.p)] * (n - self.trunc)
        return PowerSeriesTrunc(self.coeffs + pad, self.p)

    def __add__(self, other):
        n = min(self.trunc, other.trunc)
        return PowerSeriesTrunc(
            [self.coeffs[k] + other.coeffs[k] for k in range(n)], self.p
        )

    def __sub__(self, other):
        n = min(self.trunc, other.trunc)
        return PowerSeriesTrunc(
            [self.coeffs[k] - other.coeffs[k] for k in range(n)], self.p
        )

    def __neg__(self):
        return PowerSeriesTrunc([-c for c in self.coeffs], self.p)

    def scale(self, c):
        return PowerSeriesTrunc([c * v for v in self.coeffs], self.p)

    def __mul__(self, other):
        # raw fraction pairs at a common level: one wrapper per output
        # coefficient instead of one per inner add/mul
        n = min(self.trunc, other.trunc)
        p = self.p
        lvl = 0
        for c in self.coeffs[:n]:
            lvl = max(lvl, c.level)
        for c in other.coeffs[:n]:
            lvl = max(lvl, c.level)
        a = [_raw_at(c, lvl, p) for c in self.coeffs[:n]]
        b = [_raw_at(c, lvl, p) for c in other.coeffs[:n]]
        out = [(fp.ZERO, fp.ONE)] * n
        for i, (an, ad) in enumerate(a):
            if not an.shape[0]:
                continue
            for j in range(n - i):
                bn, bd = b[j]
                if bn.shape[0]:
                    mn, md = fp.frac_mul(an, ad, bn, bd, p)
                    on, od = out[i + j]
                    if on.shape[0]:
                        out[i + j] = fp.frac_add(on, od, mn, md, p)
                    else:
                        out[i + j] = (mn, md)
        return PowerSeriesTrunc(
            [TowerScalar(nn, dd, lvl, p, reduce=False) for nn, dd in out], p
        )

    def inverse(self):
        """Multiplicative inverse of a unit series."""
        if self.coeffs[0].is_zero:
            raise ZeroDivisionError("series has positive order")
        n = self.trunc
        inv0 = self.coeffs[0].inverse()
        out = [inv0] + [TowerScalar.zero(self.p)] * (n - 1)
        for k in range(1, n):
            acc = TowerScalar.zero(self.p)
            for i in range(1, k + 1):
                if not self.coeffs[i].is_zero and not out[k - i].is_zero:
                    acc = acc + self.coeffs[i] * out[k - i]
            out[k] = -inv0 * acc
        return PowerSeriesTrunc(out, self.p)

    def shift_down(self, k):
        """Divide by s^k; the first k coefficients must vanish."""
        if any(not c.is_zero for c in self.coeffs[:k]):
            raise ValueError("series is not divisible by s^k")
        return PowerSeriesTrunc(self.coeffs[k:], self.p)

    def derivative(self):
        n = self.trunc
        out = [
            self.coeffs[k] * TowerScalar.from_int(k, self.p) for k in range(1, n)
        ]
        return PowerSeriesTrunc(out, self.p)

    def frobenius_reindex(self, e):
        """Coefficient-wise p^e-th power, re-read in sigma = s^(p^e).

        (sum c_k s^k)^(p^e) = sum c_k^(p^e) s^(k p^e), so the sigma-series
        of the power keeps the same index layout with powered coefficients.
        """
        q = self.p**e
        return PowerSeriesTrunc([c**q for c in self.coeffs], self.p)

    def __repr__(self):
        parts = [f"({c})*s^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero]
        return (" + ".join(parts) or "0") + f" + O(s^{self.trunc})"


@dataclass(frozen=True)
class BranchParam:
    """Local parametrization (x(s), y(s)) of a unibranch germ at a chart point.

    x and y are the recentered chart coordinates (they vanish at s = 0);
    ``center`` holds the chart coordinates of the point itself, so the
    ambient chart functions along the branch are center + (x(s), y(s)).
    """

    center: tuple
    x: PowerSeriesTrunc
    y: PowerSeriesTrunc
    trunc: int
    multiplicity: int
    p: int = tw.DEFAULT_P

    def ambient(self):
        """Chart-coordinate series (center added back)."""
        u = PowerSeriesTrunc(list(self.x.coeffs), self.p)
        v = PowerSeriesTrunc(list(self.y.coeffs), self.p)
        u.coeffs[0] = u.coeffs[0] + self.center[0]
        v.coeffs[0] = v.coeffs[0] + self.center[1]
        return u, v

    def frobenius_reindex(self, e):
        q = self.p**e
        return BranchParam(
            (self.center[0] ** q, self.center[1] ** q),
            self.x.frobenius_reindex(e),
            self.y.frobenius_reindex(e),
            self.trunc,
            self.multiplicity,
            self.p,
        )


def compose_affine(g, xs, ys):
    """Series of g(xs, ys) for an AffinePoly g."""
    n = min(xs.trunc, ys.trunc)
    p = xs.p
    di = max((e[0] for e in g.coeffs), default=0)
    dj = max((e[1] for e in g.coeffs), default=0)
    pow_x = [PowerSeriesTrunc.from_scalar(TowerScalar.one(p), n)]
    for _ in range(di):
        pow_x.append(pow_x[-1] * xs)
    pow_y = [PowerSeriesTrunc.from_scalar(TowerScalar.one(p), n)]
    for _ in range(dj):
        pow_y.append(pow_y[-1] * ys)
    acc = PowerSeriesTrunc.zero(n, p)
    for (i, j), c in g.coeffs.items():
        acc = acc + (pow_x[i] * pow_y[j]).scale(c)
    return acc


def compose_with_branch(g, branch):
    """Series of the chart function g along the branch (center included)."""
    u, v = branch.ambient()
    return compose_affine(g, u, v)


def compose_monomial_span(branch, span_degree, trunc=None):
    """Composed series of all chart monomials u^i v^j with i + j <= degree.

    Built incrementally (one series product per monomial) in the same
    order as invariants.monomial_span; composing the span once per branch
    and reusing it is much cheaper than composing per operation.
    """
    u, v = branch.ambient()
    if trunc is not None:
        u = u.truncate(trunc)
        v = v.truncate(trunc)
    n = min(u.trunc, v.trunc)
    grid = {(0, 0): PowerSeriesTrunc.from_scalar(TowerScalar.one(branch.p), n)}
    out = [grid[(0, 0)]]
    for d in range(1, span_degree + 1):
        for i in range(d, -1, -1):
            j = d - i
            grid[(i, j)] = grid[(i - 1, j)] * u if i else grid[(0, j - 1)] * v
            out.append(grid[(i, j)])
    return out


# -- Hamburger-Noether expansion --------------------------------------------


def _solve_smooth(f, trunc):
    """Parametrize a smooth germ at the origin by Newton iteration."""
    p = f.p
    lin_u = f.coeffs.get((1, 0), TowerScalar.zero(p))
    lin_v = f.coeffs.get((0, 1), TowerScalar.zero(p))
    if lin_v.is_zero and lin_u.is_zero:
        raise AssertionError("germ is not smooth")
    if lin_v.is_zero:
        xs, ys = _solve_smooth(f.swap(), trunc)
        return ys, xs
    s = PowerSeriesTrunc.s_var(trunc, p)
    fv = f.partial_v()
    phi = PowerSeriesTrunc.zero(trunc, p)
    prec = 1
    while prec < trunc:
        prec = min(2 * prec, trunc)
        cur = phi.extend_to(prec).truncate(prec)
        s_cut = s.truncate(prec)
        val = compose_affine(f, s_cut, cur)
        dval = compose_affine(fv, s_cut, cur)
        phi = (cur - val * dval.inverse()).truncate(prec)
    res = compose_affine(f, s, phi)
    if res.order() is not None:
        raise AssertionError("Newton iteration failed to certify the solution")
    return s, phi


def _tangent_direction(f):
    """Direction c with lowest form a*(v - c*u)^m, or 'swap', or NotUnibranch."""
    p = f.p
    m = f.multiplicity()
    lf = f.lowest_form()
    e = [lf.get((m - j, j), TowerScalar.zero(p)) for j in range(m + 1)]
    if e[m].is_zero:
        if set(lf) == {(m, 0)}:
            return "swap"
        raise NotUnibranch("tangent cone contains u = 0 and further directions")
    g = [c / e[m] for c in e]
    ee = 0
    mm = m
    while mm % p == 0:
        mm //= p
        ee += 1
    q = p**ee
    for j in range(m + 1):
        if j % q and not g[j].is_zero:
            raise NotUnibranch("tangent cone is not a p-power of one direction")
    h = [g[k * q] for k in range(mm + 1)]
    c0 = -h[mm - 1] / TowerScalar.from_int(mm, p)
    c = c0
    for _ in range(ee):
        c = tw.p_th_root(c)
    # verify (w - c)^m == sum g[j] w^j via (w^q - c^q)^mm
    cq = c0  # c^q
    from math import comb

    for k in range(mm + 1):
        expect = TowerScalar.from_int(comb(mm, k), p) * (-cq) ** (mm - k)
        if expect != h[k]:
            raise NotUnibranch("tangent cone has more than one direction")
    return c


def _expand(f, trunc, budget):
    """Series (xs, ys) with f(xs, ys) = 0 mod s^trunc for a unibranch germ."""
    if budget == 0:
        raise NotUnibranch(
            "expansion did not terminate; the germ is not reduced or splits"
        )
    m = f.multiplicity()
    if m is None:
        raise NotUnibranch("local equation vanishes identically")
    if m == 0:
        raise AssertionError("germ does not pass through the origin")
    if m == 1:
        return _solve_smooth(f, trunc)
    c = _tangent_direction(f)
    if c == "swap":
        xs, ys = _expand(f.swap(), trunc, budget - 1)
        return ys, xs
    f2 = f.shear_v(c) if not c.is_zero else f
    f3 = f2.blowup()
    if f3.multiplicity() in (None, 0):
        raise NotUnibranch("strict transform misses the expansion center")
    xs, ys1 = _expand(f3, trunc, budget - 1)
    ys = xs * ys1
    if not c.is_zero:
        ys = ys + xs.scale(c)
    return xs, ys


def hn_parametrize(f, center, trunc=DEFAULT_TRUNC):
    """Parametrize the unibranch germ of the affine curve f at a chart point.

    Parameters
    ----------
    f : AffinePoly
        Affine equation in the chart coordinates.
    center : pair of TowerScalar
        Chart coordinates of the point; f must vanish there and the germ
        must be reduced.
    trunc : int
        Certified truncation order of the returned series.
    """
    a, b = center
    floc = f.shift(a, b)
    m0 = floc.multiplicity()
    if m0 is None:
        raise NotUnibranch("equation vanishes identically")
    if m0 == 0:
        raise PointNotOnCurve("the point is not on the curve")
    xs, ys = _expand(floc, trunc, _MAX_BLOWUPS)
    res = compose_affine(floc, xs, ys)
    if res.order() is not None:
        raise AssertionError("parametrization failed to certify to the truncation")
    ox, oy = xs.order(), ys.order()
    if ox is None and oy is None:
        raise NotUnibranch("degenerate parametrization")
    mult = min(o for o in (ox, oy) if o is not None)
    branch = BranchParam((a, b), xs, ys, trunc, mult, f.p)
    _check_primitive(branch)
    return branch


def _check_primitive(branch):
    """gcd of the attained span orders must be 1 (s is a uniformizer).

    Individual monomials are not enough: both chart coordinates can meet
    the curve with the same multiplicity, leaving odd orders to be
    realized only by combinations.  Pivot orders of the degree-3 monomial
    span over the tower catch those.
    """
    from math import gcd

    window = min(8, branch.trunc)
    while True:
        span = [
            s
            for s in compose_monomial_span(branch, 3, trunc=window)
            if s.order() is not None
        ]
        g = 0
        for o in value_set(span, branch, field="tower"):
            g = gcd(g, o)
        if g == 1:
            return
        if window >= branch.trunc:
            raise NotUnibranch(
                "parametrization is imprimitive up to the certified order "
                f"{branch.trunc} (s is not a uniformizer)"
            )
        window = min(2 * window, branch.trunc)


# -- order sets of spans -----------------------------------------------------


def _as_series(functions, branch):
    out = []
    for g in functions:
        if isinstance(g, PowerSeriesTrunc):
            out.append(g)
        else:
            out.append(compose_with_branch(g, branch))
    return out


def _flatten(series_list, field):
    """Raw coefficient rows for reduction; returns (rows, block, p).

    field='tower': one fraction entry per s-order, over the common level.
    field='K': k-coordinate components, block = p^M entries per s-order.
    """
    p = series_list[0].p
    n = min(s.trunc for s in series_list)
    if field == "tower":
        lvl = max(c.level for s in series_list for c in s.coeffs[:n])
        rows = []
        for s in series_list:
            row = []
            for c in s.coeffs[:n]:
                cl = c.lift(lvl)
                row.append((cl.num, cl.den))
            rows.append(row)
        return rows, 1, p
    if field != "K":
        raise ValueError("field must be 'tower' or 'K'")
    lvl = max(c.level_of() for s in series_list for c in s.coeffs[:n])
    q = p**lvl
    rows = []
    for s in series_list:
        row = []
        for c in s.coeffs[:n]:
            kc = tw.k_coordinates(c.normalized(), lvl)
            row.extend((v.num, v.den) for v in kc.coords)
        rows.append(row)
    return rows, q, p


def _order_basis(rows, p):
    """Forward reduction; returns {leading position: reduced raw row}.

    Rows are processed in input order and columns ascend, so the pivot set
    is the canonical leading-position set of the row space.
    """
    basis = {}
    for row in rows:
        cur = list(row)
        while True:
            pos = -1
            for k, (nu, _) in enumerate(cur):
                if nu.shape[0]:
                    pos = k
                    break
            if pos < 0:
                break
            if pos not in basis:
                basis[pos] = cur
                break
            b = basis[pos]
            fn, fd = fp.frac_div(cur[pos][0], cur[pos][1], b[pos][0], b[pos][1], p)
            nxt = cur[:pos] + [(fp.ZERO, fp.ONE)]
            for k in range(pos + 1, len(cur)):
                bn, bd = b[k]
                if bn.shape[0]:
                    nxt.append(
                        fp.frac_submul(cur[k][0], cur[k][1], fn, fd, bn, bd, p)
                    )
                else:
                    nxt.append(cur[k])
            cur = nxt
    return basis


def value_set(functions, branch, field="tower", trunc=None):
    """Orders attained by nonzero elements of the span of the functions.

    With field='K' the span is over K (series coefficients are flattened
    to K-coordinates before reduction); with field='tower' it is over the
    common tower level of the coefficients.

    Raises TruncationTooSmall when a composed series is identically zero
    at the working truncation (the function may vanish on the branch).
    """
    series = _as_series(functions, branch)
    if trunc is not None:
        series = [s.truncate(trunc) for s in series]
    for g, s in zip(functions, series):
        if s.order() is None:
            raise TruncationTooSmall(
                f"composed series of {g!r} vanishes mod s^{s.trunc}"
            )
    rows, block, p = _flatten(series, field)
    basis = _order_basis(rows, p)
    return sorted({pos // block for pos in basis})


def derivative_min_order(functions, branch, field="K", trunc=None):
    """Minimal attained order of d/ds over the span of the functions."""
    series = _as_series(functions, branch)
    if trunc is not None:
        series = [s.truncate(trunc) for s in series]
    derivs = [s.derivative() for s in series]
    keep = [d for d in derivs if d.order() is not None]
    if not keep:
        raise AllDerivativesVanish(
            f"all composed derivatives vanish mod s^{series[0].trunc - 1}"
        )
    rows, block, p = _flatten(keep, field)
    basis = _order_basis(rows, p)
    return min(pos // block for pos in basis)


def _conductor_from_orders(orders):
    """Conductor of a cofinite order set, certified within the window.

    Returns (conductor, multiplicity).  Certification: the window must
    contain the run [c, c + multiplicity), which forces cofiniteness.
    """
    if not orders or orders[0] != 0:
        raise TruncationTooSmall("order set lacks 0; span misses the constants")
    mult = min((o for o in orders if o > 0), default=None)
    if mult is None:
        raise TruncationTooSmall("order set is {0}; window too small")
    window = orders[-1] + 1
    present = set(orders)
    gaps = [k for k in range(window) if k not in present]
    cond = gaps[-1] + 1 if gaps else 0
    if any(cond + k not in present for k in range(mult)):
        raise TruncationTooSmall("cannot certify the conductor in the window")
    return cond, mult


def frobenius_level_subspace(functions, branch, i):
    """Span and branch data of the level-i curve (normalization included).

    Level i is reached one Frobenius step at a time: the current span is
    reduced over its tower field, completed to the span of the local ring
    of the normalization (dividing by a conductor-ideal element), then
    every series is coefficient-wise p-th powered and re-read in
    sigma = s^p.  Feeding the result to value_set/derivative_min_order
    measures the level-i semigroup and differential degree.
    """
    series = _as_series(functions, branch)
    if i == 0:
        return series, branch
    p = branch.p
    for _ in range(i):
        rows, _, _ = _flatten(series, "tower")
        basis = _order_basis(rows, p)
        if 0 not in basis:
            raise TruncationTooSmall("span misses the constants")
        orders = sorted(basis)
        cond, _ = _conductor_from_orders(orders)
        lvl = max(c.level for s in series for c in s.coeffs[: series[0].trunc])
        n = min(s.trunc for s in series)

        def to_series(raw_row):
            return PowerSeriesTrunc(
                [TowerScalar(nu, de, lvl, p, reduce=False) for nu, de in raw_row], p
            )

        if cond > 0:
            inv_unit = to_series(basis[cond]).shift_down(cond).inverse()
            integral = [
                to_series(basis[o]).shift_down(cond) * inv_unit
                for o in orders
                if o >= cond
            ]
        else:
            integral = [to_series(basis[o]) for o in orders]
        series = [s.frobenius_reindex(1) for s in integral]
    return series, branch.frobenius_reindex(i)
