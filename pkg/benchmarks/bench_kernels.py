"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one line per kernel with the best wall time for each backend and
the speedup.  Both backends must return identical results; a mismatch
aborts the run.
"""

import argparse
import sys
import time

import numpy as np

from abcscan import kernels
from abcscan.arith import SMALL_PRIMES, sieve_primes


def _cases():
    primes_1e3 = sieve_primes(1000)
    base_1e4 = sieve_primes(10**4)
    odd = list(range(10**12 + 1, 10**12 + 20001, 2))
    semis = [1000003 * 999983, 1000000007 * 998244353, 4294967291 * 4294967279]
    return [
        ("is_prime_u64 x10^4 near 1e12", lambda k: [k.is_prime_u64(n) for n in odd]),
        ("rho_brent 3 semiprimes", lambda k: [k.rho_brent(n, 1, 10**7) for n in semis]),
        ("trial_divide 2000 values", lambda k: [k.trial_divide(n, SMALL_PRIMES) for n in range(10**9, 10**9 + 2000)]),
        ("sieve_flags 1e7", lambda k: k.sieve_flags(10**7)),
        ("segment_flags 1e6 at 1e8", lambda k: k.segment_flags(10**8, 10**8 + 10**6, base_1e4)),
        ("smooth_flags 1e5 at 1e8, y=1000", lambda k: k.smooth_flags(10**8, 10**8 + 10**5, primes_1e3, 1)),
        ("powerful_flags k=2, 1e5 at 1e8", lambda k: k.powerful_flags(10**8, 10**8 + 10**5, 2, base_1e4)),
        ("nearest_square_remainders 1e6", lambda k: k.nearest_square_remainders(1, 10**6)),
    ]


def _same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


def _best(fn, kern, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(kern)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if "cython" not in kernels.available():
        print("compiled backend not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    cy, py = kernels.load("cython"), kernels.load("python")
    print(f"{'kernel':40s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in _cases():
        tc, rc = _best(fn, cy, args.repeat)
        tp, rp = _best(fn, py, args.repeat)
        if not _same(rc, rp):
            print(f"backends disagree on {name}", file=sys.stderr)
            return 2
        print(f"{name:40s} {tc:10.4f} {tp:10.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
