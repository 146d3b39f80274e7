"""F_p[x] arithmetic on trimmed int64 coefficient arrays.

The quadratic-time inner loops (multiplication, division, gcd and the
fraction combinations built on them) dominate everything the package does
downstream: row reduction over the tower fields, power-series composition,
the descent operators.  They are provided by two interchangeable backends:

* :mod:`nscurve._kernels_numba` -- ``@njit`` kernels (default when numba
  imports successfully);
* :mod:`nscurve._kernels_numpy` -- pure numpy/python fallback.

Set ``NSCURVE_BACKEND=numpy`` or ``NSCURVE_BACKEND=numba`` before import to
force a backend.  ``benchmarks/bench_kernels.py`` compares the two.

Cheap O(n) helpers (shift, inflate, derivative, ...) live here directly.
"""

import os

import numpy as np

from . import _kernels_numpy as _numpy_impl

INT = np.int64

_requested = os.environ.get("NSCURVE_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"NSCURVE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

_numba_impl = None
if _requested != "numpy":
    try:
        from . import _kernels_numba as _numba_impl
    except ImportError:
        if _requested == "numba":
            raise
        _numba_impl = None

_impl = _numba_impl if _numba_impl is not None else _numpy_impl
BACKEND = "numba" if _impl is _numba_impl else "numpy"

poly_trim = _impl.poly_trim
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_neg = _impl.poly_neg
poly_scalar_mul = _impl.poly_scalar_mul
poly_mul = _impl.poly_mul
poly_monic = _impl.poly_monic
poly_divmod = _impl.poly_divmod
poly_gcd = _impl.poly_gcd
frac_reduce = _impl.frac_reduce
frac_mul = _impl.frac_mul
frac_div = _impl.frac_div
frac_add = _impl.frac_add
frac_sub = _impl.frac_sub
frac_submul = _impl.frac_submul


def available_backends():
    """Mapping of backend name to implementation module (for benchmarks)."""
    out = {"numpy": _numpy_impl}
    if _numba_impl is not None:
        out["numba"] = _numba_impl
    return out


ZERO = np.empty(0, INT)
ONE = np.ones(1, INT)
X = np.array([0, 1], INT)


def const(c, p):
    c %= p
    if c == 0:
        return ZERO
    return np.array([c], INT)


def from_coeffs(coeffs, p):
    a = np.asarray(list(coeffs), INT) % p
    return poly_trim(a)


def deg(a):
    return a.shape[0] - 1


def is_zero(a):
    return a.shape[0] == 0


def poly_eq(a, b):
    return a.shape[0] == b.shape[0] and bool(np.all(a == b))


def poly_pow(a, e, p):
    if e < 0:
        raise ValueError("negative exponent")
    out = ONE
    base = a
    while e:
        if e & 1:
            out = poly_mul(out, base, p)
        base = poly_mul(base, base, p)
        e >>= 1
    return out


def poly_shift(a, k):
    """Multiply by x^k."""
    if a.shape[0] == 0 or k == 0:
        return a
    out = np.zeros(a.shape[0] + k, INT)
    out[k:] = a
    return out


def poly_inflate(a, q):
    """Substitute x -> x^q.  Over F_p with q a p-power this equals a**q."""
    if a.shape[0] == 0 or q == 1:
        return a
    out = np.zeros((a.shape[0] - 1) * q + 1, INT)
    out[::q] = a
    return out


def poly_is_inflated(a, q):
    """True when every exponent with nonzero coefficient is a multiple of q."""
    for i in range(a.shape[0]):
        if a[i] and i % q:
            return False
    return True


def poly_deflate(a, q):
    """Substitute x^q -> x; requires poly_is_inflated(a, q)."""
    if a.shape[0] == 0 or q == 1:
        return a
    return a[::q].copy()


def poly_derivative(a, p):
    if a.shape[0] <= 1:
        return ZERO
    return poly_trim(a[1:] * np.arange(1, a.shape[0], dtype=INT) % p)
