"""Compare the numba kernels and the pure-numpy fallback.

Times the raw F_3[x] operations on random inputs and a representative
end-to-end workload (a family member verification via each backend in a
subprocess).  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import os
import random
import subprocess
import sys
import time

import numpy as np

from nscurve import fppoly as fp


def _random_pairs(rng, count, max_deg):
    out = []
    for _ in range(count):
        a = np.array([rng.randrange(3) for _ in range(max_deg + 1)], dtype=np.int64)
        b = np.array([rng.randrange(3) for _ in range(max_deg)] + [1], dtype=np.int64)
        out.append((fp.poly_trim(a), b))
    return out


def bench_poly_ops(backends, rng):
    print("== raw polynomial kernels ==")
    for max_deg, count in ((16, 4000), (128, 800), (512, 120)):
        pairs = _random_pairs(rng, count, max_deg)
        for op in ("poly_mul", "poly_divmod", "poly_gcd"):
            row = [f"deg<={max_deg:4d} {op:12s}"]
            for name, impl in backends.items():
                func = getattr(impl, op)
                func(pairs[0][0], pairs[0][1], 3)  # warm the jit cache
                start = time.perf_counter()
                for a, b in pairs:
                    func(a, b, 3)
                elapsed = time.perf_counter() - start
                row.append(f"{name}: {1e6 * elapsed / count:9.1f} us/op")
            print("  " + "   ".join(row))


def bench_frac_ops(backends, rng):
    print("== fraction kernels ==")
    for max_deg, count in ((32, 2000), (256, 200)):
        quads = []
        for _ in range(count):
            (n1, d1), (n2, d2) = _random_pairs(rng, 2, max_deg)
            quads.append((*fp.frac_reduce(n1, d1, 3), *fp.frac_reduce(n2, d2, 3)))
        for op in ("frac_mul", "frac_add"):
            row = [f"deg<={max_deg:4d} {op:12s}"]
            for name, impl in backends.items():
                func = getattr(impl, op)
                func(*quads[0], 3)
                start = time.perf_counter()
                for q in quads:
                    func(*q, 3)
                elapsed = time.perf_counter() - start
                row.append(f"{name}: {1e6 * elapsed / count:9.1f} us/op")
            print("  " + "   ".join(row))


def bench_end_to_end():
    print("== end-to-end: verify one family member per backend ==")
    args = [
        sys.executable, "-m", "nscurve.cli",
        "verify", "--family", "C0", "--samples", "1", "--seed", "7",
    ]
    for backend in ("numba", "numpy"):
        env = dict(os.environ, NSCURVE_BACKEND=backend)
        start = time.perf_counter()
        proc = subprocess.run(args, capture_output=True, env=env)
        elapsed = time.perf_counter() - start
        status = "ok" if proc.returncode == 0 else f"exit {proc.returncode}"
        print(f"  {backend:6s}: {elapsed:6.2f}s  ({status})")


def main():
    rng = random.Random(1)
    backends = fp.available_backends()
    print(f"backends available: {', '.join(backends)}")
    bench_poly_ops(backends, rng)
    bench_frac_ops(backends, rng)
    bench_end_to_end()


if __name__ == "__main__":
    main()
