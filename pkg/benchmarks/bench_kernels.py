"""Compare the numba and numpy kernel backends.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Each kernel is
timed on every element of a large field; the numba timing excludes the first
(compiling) call.  The last section times a full place count with each backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nonspecial import kernels
from nonspecial.doublecover import CoverKind, DoubleCover, RationalFunction, count_places
from nonspecial.gf import UniPoly, field_make


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_field(p: int, m: int, repeat: int) -> None:
    ctx = field_make(p, m).context
    xs = kernels.all_codes(ctx)
    ys = xs[::-1].copy()
    coeffs = np.array([1, 1, 0, 1, 0, 1], dtype=np.int64) % p
    cases = {
        "mul": lambda b: b.mul(xs, ys, ctx),
        "power": lambda b: b.power(xs, ctx.order - 2, ctx),
        "horner": lambda b: b.horner(coeffs, xs, ctx),
        "trace": lambda b: b.prime_trace(xs, ctx),
        "orbit": lambda b: b.orbit_degree(xs, 1, m, ctx),
    }
    nb, npy = kernels.backend("numba"), kernels.backend("numpy")
    print(f"GF({p}^{m}), {ctx.order} elements")
    for name, fn in cases.items():
        assert np.array_equal(fn(nb), fn(npy))  # also warms up the jit
        t_nb = best_of(lambda: fn(nb), repeat)
        t_np = best_of(lambda: fn(npy), repeat)
        print(f"  {name:<7} numba {t_nb * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms   x{t_np / t_nb:6.1f}")


def bench_count(repeat: int) -> None:
    F = field_make(2, 2)
    num = UniPoly(F, (F.gen, F.zero, F.zero, F.one))  # y^2 + y = x^3 + w
    cover = DoubleCover(F, CoverKind.ARTIN_SCHREIER, RationalFunction(num, UniPoly.const(F.one)))
    results = {}
    for name in ("numba", "numpy"):
        kernels._impl = kernels.backend(name)  # swap the dispatch target for this run
        count_places(cover, 4)
        results[name] = best_of(lambda: count_places(cover, 8), repeat)
    print(f"count_places to degree 8 over GF(4): numba {results['numba']:.2f} s, numpy {results['numpy']:.2f} s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    for p, m in ((2, 16), (3, 10)):
        bench_field(p, m, args.repeat)
    bench_count(max(1, args.repeat // 3))


if __name__ == "__main__":
    main()
