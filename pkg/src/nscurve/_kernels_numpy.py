"""Pure numpy/python backend for the F_p[x] coefficient kernels.

Polynomials are 1-D ``int64`` arrays of coefficients in ``[0, p)``, indexed
by ascending exponent and trimmed of high-order zeros; the zero polynomial
is the empty array.  The numba backend in :mod:`nscurve._kernels_numba`
implements the same function set with identical semantics; results must be
bit-for-bit equal between the two.
"""

import numpy as np

INT = np.int64


def _inv_mod(x, p):
    x %= p
    r = 1
    b = x
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def poly_trim(a):
    n = a.shape[0]
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def poly_add(a, b, p):
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    out = a.copy()
    if b.shape[0]:
        out[: b.shape[0]] = (out[: b.shape[0]] + b) % p
    return poly_trim(out)


def poly_sub(a, b, p):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros(n, INT)
    out[: a.shape[0]] = a
    if b.shape[0]:
        out[: b.shape[0]] = (out[: b.shape[0]] - b) % p
    return poly_trim(out)


def poly_neg(a, p):
    if a.shape[0] == 0:
        return a
    return (-a) % p


def poly_scalar_mul(a, c, p):
    c %= p
    if c == 0 or a.shape[0] == 0:
        return np.empty(0, INT)
    return (a * c) % p


def poly_mul(a, b, p):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.empty(0, INT)
    return poly_trim(np.convolve(a, b) % p)


def poly_monic(a, p):
    n = a.shape[0]
    if n == 0 or a[n - 1] == 1:
        return a
    return (a * _inv_mod(int(a[n - 1]), p)) % p


def poly_divmod(a, b, p):
    nb = b.shape[0]
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = a.copy()
    na = r.shape[0]
    if na < nb:
        return np.empty(0, INT), poly_trim(r)
    inv_lead = _inv_mod(int(b[nb - 1]), p)
    q = np.zeros(na - nb + 1, INT)
    for k in range(na - nb, -1, -1):
        c = r[k + nb - 1] % p
        if c:
            c = c * inv_lead % p
            q[k] = c
            r[k : k + nb] = (r[k : k + nb] - c * b) % p
    return poly_trim(q), poly_trim(r[: nb - 1])


def poly_gcd(a, b, p):
    a = poly_trim(a)
    b = poly_trim(b)
    while b.shape[0] > 0:
        _, r = poly_divmod(a, b, p)
        a, b = b, r
    return poly_monic(a, p)


def frac_reduce(n, d, p):
    d = poly_trim(d)
    if d.shape[0] == 0:
        raise ZeroDivisionError("zero denominator")
    n = poly_trim(n)
    if n.shape[0] == 0:
        return n, np.ones(1, INT)
    g = poly_gcd(n, d, p)
    if g.shape[0] > 1:
        n, _ = poly_divmod(n, g, p)
        d, _ = poly_divmod(d, g, p)
    lead = int(d[d.shape[0] - 1])
    if lead != 1:
        c = _inv_mod(lead, p)
        n = (n * c) % p
        d = (d * c) % p
    return n, d


def frac_mul(n1, d1, n2, d2, p):
    if n1.shape[0] == 0 or n2.shape[0] == 0:
        return np.empty(0, INT), np.ones(1, INT)
    g1 = poly_gcd(n1, d2, p)
    if g1.shape[0] > 1:
        n1, _ = poly_divmod(n1, g1, p)
        d2, _ = poly_divmod(d2, g1, p)
    g2 = poly_gcd(n2, d1, p)
    if g2.shape[0] > 1:
        n2, _ = poly_divmod(n2, g2, p)
        d1, _ = poly_divmod(d1, g2, p)
    return poly_mul(n1, n2, p), poly_mul(d1, d2, p)


def frac_div(n1, d1, n2, d2, p):
    if n2.shape[0] == 0:
        raise ZeroDivisionError("division by zero fraction")
    n, d = frac_mul(n1, d1, d2, n2, p)
    if d.shape[0] and d[d.shape[0] - 1] != 1:
        c = _inv_mod(int(d[d.shape[0] - 1]), p)
        n = (n * c) % p
        d = (d * c) % p
    return n, d


def frac_add(n1, d1, n2, d2, p):
    if n1.shape[0] == 0:
        return n2, d2
    if n2.shape[0] == 0:
        return n1, d1
    g = poly_gcd(d1, d2, p)
    if g.shape[0] > 1:
        d1r, _ = poly_divmod(d1, g, p)
        d2r, _ = poly_divmod(d2, g, p)
    else:
        d1r, d2r = d1, d2
    num = poly_add(poly_mul(n1, d2r, p), poly_mul(n2, d1r, p), p)
    if num.shape[0] == 0:
        return num, np.ones(1, INT)
    den = poly_mul(d1r, d2, p)
    g2 = poly_gcd(num, g, p)
    if g2.shape[0] > 1:
        num, _ = poly_divmod(num, g2, p)
        den, _ = poly_divmod(den, g2, p)
    return num, den


def frac_sub(n1, d1, n2, d2, p):
    return frac_add(n1, d1, poly_neg(n2, p), d2, p)


def frac_submul(an, ad, bn, bd, cn, cd, p):
    """a - b*c on reduced fraction pairs, reduced output."""
    mn, md = frac_mul(bn, bd, cn, cd, p)
    return frac_sub(an, ad, mn, md, p)
