"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--x 1000000] [--repeat 3]

Times the order kernel over all primes up to x and the n-sum kernel used by
the density series, checks that both backends give the same answers and
prints a small table of timings.
"""

import argparse
import time

import numpy as np

from ordmod4 import _fallback
from ordmod4.arithmetic import build_spf_table, mobius_table, sieve_primes, totient_table

try:
    from ordmod4 import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def orders_case(x):
    table, primes = build_spf_table(x), sieve_primes(x)
    spf = np.ascontiguousarray(table.spf)

    def make(backend):
        def run():
            out = np.zeros(len(primes), dtype=np.int64)
            backend.orders_block(2, primes, spf, out)
            return out

        return run

    return f"orders_block (a=2, x={x})", make


def n_sum_case(n_bound, n_radicals=200):
    mu = mobius_table(n_bound)
    n_odd = np.array([m for m in range(1, n_bound + 1, 2) if mu[m]], dtype=np.int64)
    weights = mu[n_odd].astype(float) / n_odd
    phi = totient_table(n_bound)
    radicals = np.arange(1, 2 * n_radicals, 2, dtype=np.int64)
    targets = np.where(radicals % 3 == 0, 1, 3).astype(np.int64)

    def make(backend):
        return lambda: backend.split_n_sums(radicals, targets, n_odd, weights, phi)

    return f"split_n_sums ({n_radicals} radicals, n <= {n_bound})", make


def same(a, b):
    if isinstance(a, tuple):
        return all(np.allclose(u, v, rtol=0, atol=1e-12) for u, v in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=int, default=10**6)
    ap.add_argument("--n-bound", type=int, default=10**4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':48s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, make in (orders_case(args.x), n_sum_case(args.n_bound)):
        t_py, r_py = best_of(make(_fallback), 1)
        if compiled is None:
            print(f"{name:48s} {'-':>10s} {t_py:10.3f} {'-':>8s}")
            continue
        t_c, r_c = best_of(make(compiled), args.repeat)
        assert same(r_c, r_py), f"{name}: backends disagree"
        print(f"{name:48s} {t_c:10.3f} {t_py:10.3f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
