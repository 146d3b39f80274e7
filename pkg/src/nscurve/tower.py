"""Exact arithmetic in F_p, K = F_p(t) and the purely inseparable tower.

The tower level ``m`` works in F_p(r) with the defining relation
``r**(p**m) == t``; level 0 is K itself (``r`` is ``t``).  A
:class:`TowerScalar` is a reduced fraction of F_p[r] polynomials with a
monic denominator.  Arithmetic between different levels lifts both
operands to the deeper level first, substituting ``r_old = r_new**(p**k)``.

Because F_p coefficients are fixed by Frobenius, lifting one level is the
same as raising the coefficient arrays to the p-th power, and extracting a
p-th root is the inverse re-reading of the same arrays one level up; both
are exact and loss-free.
"""

import os
from dataclasses import dataclass

import numpy as np

from . import fppoly as fp
from .errors import LevelOverflow

DEFAULT_P = 3
DEFAULT_MAX_LEVEL = 4

_max_level = DEFAULT_MAX_LEVEL
_env_cap = os.environ.get("NSCURVE_MAX_LEVEL", "").strip()
if _env_cap:
    _max_level = int(_env_cap)


def get_max_level():
    return _max_level


def set_max_level(m):
    global _max_level
    if m < 0:
        raise ValueError("max_level must be nonnegative")
    _max_level = m


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeScalar:
    """Residue mod a small prime p; the characteristic carrier."""

    value: int
    p: int = DEFAULT_P

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other):
        self._check(other)
        return PrimeScalar(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return PrimeScalar(self.value - other.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return PrimeScalar(self.value * other.value, self.p)

    def __neg__(self):
        return PrimeScalar(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return PrimeScalar(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def sqrt(self):
        """Canonical square root (smallest nonnegative) or None."""
        for c in range((self.p + 1) // 2):
            if c * c % self.p == self.value:
                return PrimeScalar(c, self.p)
        return None


class TowerScalar:
    """Element of F_p(t^(1/p^level)) as a reduced monic-denominator fraction."""

    __slots__ = ("p", "level", "num", "den")

    def __init__(self, num, den=fp.ONE, level=0, p=DEFAULT_P, reduce=True):
        num = np.asarray(num, fp.INT)
        den = np.asarray(den, fp.INT)
        if reduce:
            num, den = fp.frac_reduce(num % p, den % p, p)
        self.p = p
        self.level = level
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(c, p=DEFAULT_P):
        return TowerScalar(fp.const(c, p), fp.ONE, 0, p, reduce=False)

    @staticmethod
    def zero(p=DEFAULT_P):
        return TowerScalar(fp.ZERO, fp.ONE, 0, p, reduce=False)

    @staticmethod
    def one(p=DEFAULT_P):
        return TowerScalar(fp.ONE, fp.ONE, 0, p, reduce=False)

    @staticmethod
    def generator(level, p=DEFAULT_P):
        """r at the given level (level 0 gives t itself)."""
        if level > get_max_level():
            raise LevelOverflow(f"level {level} exceeds cap {get_max_level()}")
        return TowerScalar(fp.X, fp.ONE, level, p, reduce=False)

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.shape[0] == 0

    def _lift_arrays(self, m):
        if m < self.level:
            raise ValueError("cannot lift downward")
        q = self.p ** (m - self.level)
        return fp.poly_inflate(self.num, q), fp.poly_inflate(self.den, q)

    def lift(self, m):
        """Same field element re-read at level m >= level_of(self)."""
        if m == self.level:
            return self
        if m < self.level:
            low = self.normalized()
            if m < low.level:
                raise ValueError(f"element lives at level {low.level}, not {m}")
            return low.lift(m)
        if m > get_max_level():
            raise LevelOverflow(f"level {m} exceeds cap {get_max_level()}")
        num, den = self._lift_arrays(m)
        return TowerScalar(num, den, m, self.p, reduce=False)

    def level_of(self):
        """Minimal m with self in F_p(t^(1/p^m)), by the derivative test."""
        num, den, lvl, p = self.num, self.den, self.level, self.p
        while lvl > 0:
            if fp.is_zero(fp.poly_derivative(num, p)) and fp.is_zero(
                fp.poly_derivative(den, p)
            ):
                num = fp.poly_deflate(num, p)
                den = fp.poly_deflate(den, p)
                lvl -= 1
            else:
                break
        return lvl

    def normalized(self):
        """Equal scalar stored at its minimal level."""
        num, den, lvl, p = self.num, self.den, self.level, self.p
        while lvl > 0:
            if fp.is_zero(fp.poly_derivative(num, p)) and fp.is_zero(
                fp.poly_derivative(den, p)
            ):
                num = fp.poly_deflate(num, p)
                den = fp.poly_deflate(den, p)
                lvl -= 1
            else:
                break
        if lvl == self.level:
            return self
        return TowerScalar(num, den, lvl, self.p, reduce=False)

    def _common(self, other):
        if self.p != other.p:
            raise ValueError("mixed characteristics")
        m = max(self.level, other.level)
        return self.lift(m), other.lift(m), m

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b, m = self._common(other)
        n, d = fp.frac_add(a.num, a.den, b.num, b.den, self.p)
        return TowerScalar(n, d, m, self.p, reduce=False)

    def __sub__(self, other):
        a, b, m = self._common(other)
        n, d = fp.frac_sub(a.num, a.den, b.num, b.den, self.p)
        return TowerScalar(n, d, m, self.p, reduce=False)

    def __neg__(self):
        return TowerScalar(
            fp.poly_neg(self.num, self.p), self.den, self.level, self.p, reduce=False
        )

    def __mul__(self, other):
        a, b, m = self._common(other)
        n, d = fp.frac_mul(a.num, a.den, b.num, b.den, self.p)
        return TowerScalar(n, d, m, self.p, reduce=False)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero tower scalar")
        a, b, m = self._common(other)
        n, d = fp.frac_div(a.num, a.den, b.num, b.den, self.p)
        return TowerScalar(n, d, m, self.p, reduce=False)

    def inverse(self):
        return TowerScalar.one(self.p) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = TowerScalar.one(self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TowerScalar):
            return NotImplemented
        if self.p != other.p:
            return False
        a, b, _ = self._common(other)
        return fp.poly_eq(a.num, b.num) and fp.poly_eq(a.den, b.den)

    def __hash__(self):
        n = self.normalized()
        return hash((self.p, n.level, n.num.tobytes(), n.den.tobytes()))

    # -- text --------------------------------------------------------------

    def __str__(self):
        n = self.normalized()
        var = "t" if n.level == 0 else "r"
        top = _poly_text(n.num, var)
        if fp.poly_eq(n.den, fp.ONE):
            return top
        bottom = _poly_text(n.den, var)
        if "+" in top or "*" in top or "^" in top:
            top = f"({top})"
        if "+" in bottom or "*" in bottom or "^" in bottom:
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def __repr__(self):
        return f"TowerScalar({self}, level={self.normalized().level})"


def _poly_text(arr, var):
    if arr.shape[0] == 0:
        return "0"
    parts = []
    for i in range(arr.shape[0] - 1, -1, -1):
        c = int(arr[i])
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" if i == 1 else f"{head}{var}^{i}")
    return " + ".join(parts)


# -- tower operations ------------------------------------------------------


def lift(x, m):
    return x.lift(m)


def level_of(x):
    return x.level_of()


def p_th_root(x):
    """The unique y with y**p == x, one level up (then level-normalized).

    Monomial-wise c*r**i maps to c*r_new**i: F_p coefficients are fixed by
    Frobenius, so re-reading the same arrays at level+1 is the root.

    >>> t = TowerScalar.generator(0)
    >>> str(p_th_root(t)), p_th_root(t).level
    ('r', 1)
    >>> x = (t**2 + TowerScalar.one()) / t
    >>> p_th_root(x) ** 3 == x
    True
    """
    y = TowerScalar(x.num, x.den, x.level + 1, x.p, reduce=False).normalized()
    if y.level > get_max_level():
        raise LevelOverflow(f"p-th root needs level {y.level} > cap {get_max_level()}")
    return y


def derive(x):
    """Formal d/dr at the scalar's stored level (quotient rule, exact)."""
    p = x.p
    un = fp.poly_derivative(x.num, p)
    vd = fp.poly_derivative(x.den, p)
    num = fp.poly_sub(fp.poly_mul(un, x.den, p), fp.poly_mul(x.num, vd, p), p)
    den = fp.poly_mul(x.den, x.den, p)
    return TowerScalar(num, den, x.level, p)


@dataclass(frozen=True)
class KCoordinates:
    """Coordinates of a level-m scalar over the K-basis 1, r, ..., r^(p^m - 1)."""

    level: int
    coords: tuple
    p: int = DEFAULT_P

    def reconstruct(self):
        r = TowerScalar.generator(self.level, self.p)
        acc = TowerScalar.zero(self.p)
        for i, v in enumerate(self.coords):
            acc = acc + v.lift(self.level) * r**i
        return acc


def k_coordinates(x, m=None):
    """Split x into its K-coordinates over the p-basis of level m.

    The denominator is cleared into K by multiplying through with
    den**(p^m - 1); numerator exponents then split as
    r^j = t^(j // p^m) * r^(j % p^m).

    >>> r = TowerScalar.generator(1)
    >>> [str(c) for c in k_coordinates(r.inverse(), 1).coords]
    ['0', '0', '1/t']
    """
    if m is None:
        m = x.level
    x = x.lift(m) if m >= x.level else x.normalized().lift(m)
    p = x.p
    q = p**m
    den_t = x.den.copy()  # den(r)^q = den(t): same array read at level 0
    n2 = fp.poly_mul(x.num, fp.poly_pow(x.den, q - 1, p), p)
    comps = []
    for i in range(q):
        arr = n2[i::q].copy() if n2.shape[0] > i else fp.ZERO
        comps.append(TowerScalar(arr, den_t, 0, p))
    return KCoordinates(m, tuple(comps), p)


def poly_square_root(q, p=DEFAULT_P):
    """g with g**2 == q and canonical leading coefficient, else None.

    Triangular recursion from the top degree; p must be odd.
    """
    if p == 2:
        raise ValueError("square-root recursion needs p != 2")
    q = np.asarray(q, fp.INT) % p
    q = fp.poly_trim(q)
    if fp.is_zero(q):
        return fp.ZERO
    d = fp.deg(q)
    if d % 2:
        return None
    n = d // 2
    lead = PrimeScalar(int(q[d]), p).sqrt()
    if lead is None or lead.value == 0:
        return None
    g = np.zeros(n + 1, fp.INT)
    g[n] = lead.value
    inv2s = pow(2 * lead.value % p, p - 2, p)
    for j in range(n - 1, -1, -1):
        acc = int(q[n + j])
        for i in range(j + 1, n):
            acc -= int(g[i]) * int(g[n + j - i])
        g[j] = acc % p * inv2s % p
    if fp.poly_eq(fp.poly_mul(g, g, p), q):
        return g
    return None


def square_root(x):
    """Square root of a tower scalar, componentwise on the reduced fraction."""
    n = x.normalized()
    rn = poly_square_root(n.num, n.p)
    if rn is None:
        return None
    rd = poly_square_root(n.den, n.p)
    if rd is None:
        return None
    return TowerScalar(rn, rd, n.level, n.p)


# -- exact linear algebra ---------------------------------------------------


def row_echelon(matrix, pivot_order=None):
    """Exact Gauss-Jordan over the tower field.

    Pivoting is deterministic: columns are visited in ``pivot_order``
    (default left to right) and the first not-yet-used row with a nonzero
    entry becomes the pivot row.  Returns the nonzero reduced rows (in
    pivot discovery order) and the pivot column list.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    p = rows[0][0].p
    m = 0
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        for x in r:
            m = max(m, x.level)
    raw = [[(x.lift(m).num, x.lift(m).den) for x in r] for r in rows]
    out_raw, pivots = _rref_raw(raw, ncols, p, pivot_order)
    out = [[TowerScalar(n, d, m, p, reduce=False) for (n, d) in r] for r in out_raw]
    return out, pivots


def _rref_raw(rows, ncols, p, pivot_order=None):
    """Gauss-Jordan on rows of (num, den) array pairs; mutates a copy."""
    order = list(pivot_order) if pivot_order is not None else list(range(ncols))
    nrows = len(rows)
    used = [False] * nrows
    pivots = []
    pivot_row_idx = []
    for col in order:
        sel = -1
        for ri in range(nrows):
            if not used[ri] and rows[ri][col][0].shape[0]:
                sel = ri
                break
        if sel < 0:
            continue
        used[sel] = True
        pivots.append(col)
        pivot_row_idx.append(sel)
        pn, pd = rows[sel][col]
        prow = rows[sel]
        for c in range(ncols):
            n, d = prow[c]
            if n.shape[0]:
                prow[c] = fp.frac_div(n, d, pn, pd, p)
        for ri in range(nrows):
            if ri == sel:
                continue
            fn, fd = rows[ri][col]
            if not fn.shape[0]:
                continue
            row = rows[ri]
            for c in range(ncols):
                bn, bd = prow[c]
                if bn.shape[0]:
                    row[c] = fp.frac_submul(row[c][0], row[c][1], fn, fd, bn, bd, p)
            row[col] = (fp.ZERO, fp.ONE)
    return [rows[ri] for ri in pivot_row_idx], pivots


def rank(matrix, pivot_order=None):
    _, pivots = row_echelon(matrix, pivot_order)
    return len(pivots)


def nullspace(matrix, pivot_order=None):
    """Deterministic right-nullspace basis from the reduced echelon form.

    One basis vector per free column, visited in pivot order; the free
    coordinate is set to 1.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    p = rows[0][0].p
    rref, pivots = row_echelon(rows, pivot_order)
    order = list(pivot_order) if pivot_order is not None else list(range(ncols))
    pivot_set = set(pivots)
    one = TowerScalar.one(p)
    zero = TowerScalar.zero(p)
    basis = []
    for free in order:
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for prow, pc in zip(rref, pivots):
            vec[pc] = -prow[free]
        basis.append(vec)
    return basis


def in_row_space(rref_rows, pivots, vector):
    """Membership of a vector in the row space of a reduced echelon form."""
    vec = list(vector)
    p = vec[0].p if vec else DEFAULT_P
    for prow, pc in zip(rref_rows, pivots):
        c = vec[pc]
        if not c.is_zero:
            vec = [v - c * w for v, w in zip(vec, prow)]
    return all(v.is_zero for v in vec)
