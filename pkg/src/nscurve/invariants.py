"""Local invariants at a unibranch point: semigroups, delta, conductor,
differential degrees along the Frobenius tower, and the identities that
tie them together.

A false named check in a report is a reportable finding, never a crash.
"""

from dataclasses import dataclass, field

from . import branch as br
from . import tower as tw
from .branch import DEFAULT_SPAN_DEGREE, DEFAULT_TRUNC, MAX_TRUNC
from .errors import AllDerivativesVanish, TruncationTooSmall
from .plane import AffinePoly, ProjPoint
from .tower import TowerScalar

LEVEL_CAP = 4
SINGULAR_EMBEDDING_DIMENSION = 2  # plane curve at a non-smooth point


@dataclass(frozen=True)
class SemigroupData:
    """Window view of a valuation order set with semigroup bookkeeping.

    ``certified`` records whether the window shows the run
    [conductor, conductor + multiplicity), which forces all larger
    integers to be values; gap data is only meaningful when it is True.
    """

    values: tuple
    window: int
    multiplicity: int
    gaps: tuple
    delta: int
    conductor: int
    minimal_generators: tuple
    certified: bool

    def to_dict(self):
        return {
            "values": list(self.values),
            "window": self.window,
            "multiplicity": self.multiplicity,
            "gaps": list(self.gaps),
            "delta": self.delta,
            "conductor": self.conductor,
            "minimal_generators": list(self.minimal_generators),
            "certified": self.certified,
        }


def semigroup_from_orders(orders):
    """Assemble SemigroupData from a sorted list of attained orders."""
    values = tuple(orders)
    if not values or values[0] != 0:
        raise TruncationTooSmall("order set lacks 0")
    window = values[-1] + 1
    present = set(values)
    mult = min((v for v in values if v > 0), default=0)
    gaps = tuple(k for k in range(window) if k not in present)
    conductor = gaps[-1] + 1 if gaps else 0
    certified = mult > 0 and all(conductor + k in present for k in range(mult))
    gens = []
    for v in values:
        if v == 0:
            continue
        if not any(a in present and v - a in present for a in range(mult, v - mult + 1)):
            gens.append(v)
    return SemigroupData(
        values, window, mult, gaps, len(gaps), conductor, tuple(gens), certified
    )


def numerical_semigroup(generators, window):
    """Values of <generators> inside [0, window)."""
    reach = [False] * window
    reach[0] = True
    for v in range(1, window):
        for g in generators:
            if g <= v and reach[v - g]:
                reach[v] = True
                break
    return [v for v in range(window) if reach[v]]


def monomial_span(span_degree, p=tw.DEFAULT_P):
    """Chart monomials u^i v^j with i + j <= span_degree (1 included)."""
    return [
        AffinePoly.monomial(i, j, p)
        for d in range(span_degree + 1)
        for i in range(d, -1, -1)
        for j in (d - i,)
    ]


def _require_certified(data):
    """Window certification plus closure under addition within the window."""
    if not data.certified:
        raise TruncationTooSmall("semigroup window not certified")
    present = set(data.values)
    for a in data.values:
        for b in data.values:
            if 0 < a <= b and a + b < data.window and a + b not in present:
                raise TruncationTooSmall(
                    f"span misses {a}+{b}={a + b}; value set not closed in window"
                )


def degree_of_point(point):
    """[K(a, b) : K] for the affine coordinates of the point.

    Computed as the K-rank of the products a^i b^j over the p-basis of the
    level of the point; always a power of p.
    """
    m = point.level
    if m == 0:
        return 1
    a, b = (c.normalized() for c in point.affine_coords())
    p = point.p
    q = p**m
    rows = []
    pow_a = [TowerScalar.one(p)]
    pow_b = [TowerScalar.one(p)]
    for _ in range(q - 1):
        pow_a.append(pow_a[-1] * a)
        pow_b.append(pow_b[-1] * b)
    for i in range(q):
        for j in range(q):
            kc = tw.k_coordinates((pow_a[i] * pow_b[j]).normalized(), m)
            rows.append(list(kc.coords))
    return len(tw._rref_raw([[(x.num, x.den) for x in r] for r in rows], q, p)[1])


def _branch_at(curve, point, trunc):
    chart = point.chart
    a, b = point.affine_coords()
    return br.hn_parametrize(curve.dehomogenize(chart), (a, b), trunc)


START_WINDOW = 12
_MIN_BRANCH_TRUNC = 16


def _with_retries(curve, point, fn, trunc, span_degree, window=START_WINDOW):
    """Run fn(branch, span series, window) under the certification ladder.

    The linear algebra consumes a working window of the certified branch
    series (cost grows cubically with the window, and everything in scope
    certifies well below the branch truncation).  Any certification
    failure first widens the window, then recomputes the branch at a
    doubled truncation, up to the hard cap.
    """
    window = min(window, trunc)
    btrunc = min(max(_MIN_BRANCH_TRUNC, window + 4), trunc)
    branch = _branch_at(curve, point, btrunc)
    while True:
        # composing only up to the window keeps coefficient degrees small;
        # span elements of order >= window contribute nothing inside it
        series = br.compose_monomial_span(branch, span_degree, trunc=window)
        cut = [s for s in series if s.order() is not None]
        try:
            if not cut:
                raise TruncationTooSmall("entire span vanishes in the window")
            return branch, fn(branch, cut, window)
        except (TruncationTooSmall, AllDerivativesVanish):
            if window < btrunc:
                window = min(2 * window, btrunc)
                continue
            if btrunc >= MAX_TRUNC:
                raise
            btrunc = min(max(2 * btrunc, trunc), MAX_TRUNC)
            window = min(2 * window, btrunc)
            branch = _branch_at(curve, point, btrunc)


def semigroup_at(
    curve,
    point,
    mode="geometric",
    trunc=DEFAULT_TRUNC,
    span_degree=DEFAULT_SPAN_DEGREE,
):
    """Valuation semigroup data at a unibranch point of the curve.

    mode='geometric' spans the monomials over the full tower level of the
    branch; mode='over_K' restricts coefficients to K and computes the
    order set of the K-structure local ring.
    """
    fieldmode = "tower" if mode == "geometric" else "K"

    def run(branch, series, window):
        data = semigroup_from_orders(br.value_set(series, branch, field=fieldmode))
        if mode == "geometric":
            _require_certified(data)
        return data

    _, data = _with_retries(curve, point, run, trunc, span_degree)
    return data


def differential_degree(
    curve,
    point,
    level=0,
    trunc=DEFAULT_TRUNC,
    span_degree=DEFAULT_SPAN_DEGREE,
):
    """1 + minimal derivative order over the K-span at the given level."""

    def run(branch, series, window):
        fns, brch = br.frobenius_level_subspace(series, branch, level)
        return 1 + br.derivative_min_order(fns, brch, field="K")

    _, d = _with_retries(curve, point, run, trunc, span_degree)
    return d


def conductor_formula_check(d_levels, conductor, p=tw.DEFAULT_P):
    """conductor == sum (p-1)(d_i - 1) p^i over levels before the first 1."""
    if 1 not in d_levels:
        return False
    n = d_levels.index(1)
    return conductor == sum((p - 1) * (d_levels[i] - 1) * p**i for i in range(n))


def divisibility_check(degree, conductor, d):
    """degree divides conductor + d - 1."""
    return (conductor + d - 1) % degree == 0


def geometric_genus(curve_degree, deltas):
    """(e-1)(e-2)/2 minus the sum of the singularity degrees."""
    return (curve_degree - 1) * (curve_degree - 2) // 2 - sum(deltas)


def regularity_certificate(
    curve, point, trunc=DEFAULT_TRUNC, span_degree=DEFAULT_SPAN_DEGREE
):
    """'regular_certified' when deg(P) is an order of the K-structure ring.

    The criterion is sufficient only, hence the 'inconclusive' outcome.
    """
    deg = degree_of_point(point)
    data = semigroup_at(curve, point, "over_K", trunc, span_degree)
    return "regular_certified" if deg in data.values else "inconclusive"


@dataclass(frozen=True)
class InvariantsReport:
    point: object
    degree_of_point: int
    semigroup: SemigroupData
    semigroup_K: SemigroupData
    d_levels: tuple
    level_point_degrees: tuple
    delta: int
    conductor: int
    embedding_dimension: int
    regularity: str
    checks: dict = field(default_factory=dict)

    @property
    def all_checks_pass(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "point": {
                "coords": [str(c) for c in self.point.coords],
                "level": self.point.level,
            },
            "degree_of_point": self.degree_of_point,
            "semigroup": self.semigroup.to_dict(),
            "semigroup_K": self.semigroup_K.to_dict(),
            "d_levels": list(self.d_levels),
            "level_point_degrees": list(self.level_point_degrees),
            "delta": self.delta,
            "conductor": self.conductor,
            "embedding_dimension": self.embedding_dimension,
            "regularity": self.regularity,
            "checks": dict(self.checks),
        }


def full_report(
    curve,
    point,
    trunc=DEFAULT_TRUNC,
    span_degree=DEFAULT_SPAN_DEGREE,
    level_cap=LEVEL_CAP,
):
    """Compute every local invariant at the point and run the named checks."""
    p = curve.p
    deg = degree_of_point(point)

    def run(branch_, series, window):
        geo = semigroup_from_orders(br.value_set(series, branch_, field="tower"))
        _require_certified(geo)
        over_k = semigroup_from_orders(br.value_set(series, branch_, field="K"))
        d_levels = []
        for lvl in range(level_cap + 1):
            fns, brch = br.frobenius_level_subspace(series, branch_, lvl)
            d_levels.append(1 + br.derivative_min_order(fns, brch, field="K"))
            if d_levels[-1] == 1:
                break
        return geo, over_k, tuple(d_levels)

    branch, (geo, over_k, d_levels) = _with_retries(curve, point, run, trunc, span_degree)

    a, b = point.affine_coords()
    level_degs = []
    one = TowerScalar.one(p)
    for lvl in range(len(d_levels)):
        q = p**lvl
        level_degs.append(degree_of_point(ProjPoint(a**q, b**q, one)))

    regularity = "regular_certified" if deg in over_k.values else "inconclusive"
    d0 = d_levels[0]
    terminated = d_levels[-1] == 1
    checks = {
        "conductor_formula": conductor_formula_check(list(d_levels), geo.conductor, p),
        "divisibility": divisibility_check(deg, geo.conductor, d0),
        "p_does_not_divide_d": d0 % p != 0,
        "conductor_is_2delta": geo.conductor == 2 * geo.delta,
        "degree_divides_d_drop": all(
            (d0 - d_levels[i]) % level_degs[i] == 0 for i in range(len(d_levels))
        ),
    }
    if terminated and len(d_levels) >= 2 and d_levels[1] == 1:
        window = geo.window
        checks["gamma_matches_d_and_p"] = list(geo.values) == numerical_semigroup(
            [d0, p], window
        )
        checks["delta_formula"] = geo.delta == (d0 - 1) * (p - 1) // 2
    return InvariantsReport(
        point=point,
        degree_of_point=deg,
        semigroup=geo,
        semigroup_K=over_k,
        d_levels=d_levels,
        level_point_degrees=tuple(level_degs),
        delta=geo.delta,
        conductor=geo.conductor,
        embedding_dimension=SINGULAR_EMBEDDING_DIMENSION if d0 > 1 else 1,
        regularity=regularity,
        checks=checks,
    )
