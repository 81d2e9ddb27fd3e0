"""Pure-Python implementations of the hot integer kernels.

This module mirrors the compiled ``_ckernels`` extension function for
function.  The Python versions also accept integers of any size, so
``arith`` falls back to them for values that do not fit in 64 bits.
"""

from math import gcd, isqrt

import numpy as np

BACKEND = "python"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MASK64 = (1 << 64) - 1
_RHO_BATCH = 128


def splitmix64(state):
    """Return (next_state, output) for the splitmix64 generator."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _strong_probable_prime(n, a, d, s):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def miller_rabin(n, bases=_MR_BASES):
    """Strong-pseudoprime test of odd ``n > 37`` to each of ``bases``."""
    d = n - 1
    s = 0
    while not d & 1:
        d >>= 1
        s += 1
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def is_prime_u64(n):
    # The first twelve prime bases are exact below 3.18e23, which covers 2**64.
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    return miller_rabin(n)


def rho_brent(n, seed, max_iter):
    """Find a nontrivial factor of the odd composite ``n``.

    Brent's cycle-finding variant of Pollard rho with batched gcds.  The
    polynomial constant and starting point of each attempt come from a
    splitmix64 stream seeded by ``seed``.  Returns ``(factor, iterations)``
    where ``factor`` is 0 when ``max_iter`` polynomial steps were spent
    without success.
    """
    state = seed & _MASK64
    used = 0
    while used < max_iter:
        state, y = splitmix64(state)
        state, c = splitmix64(state)
        y %= n
        c = c % (n - 1) + 1
        g = r = q = 1
        x = ys = y
        while g == 1 and used < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            used += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(_RHO_BATCH, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += _RHO_BATCH
            used += min(k, r)
            r <<= 1
        if g == n:
            # The batch overshot; replay one step at a time from ys.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return 0, used


def trial_divide(n, primes):
    """Strip every prime in ``primes`` out of ``n``.

    Returns ``(factors, cofactor)`` with ``factors`` a list of
    ``(p, e)`` pairs in increasing order of ``p``.
    """
    factors = []
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n > 1 and primes and n <= primes[-1] ** 2:
        factors.append((n, 1))
        n = 1
    return factors, n


def sieve_flags(limit):
    """Primality flags for 0..limit as a bytearray."""
    if limit < 2:
        return bytearray(limit + 1 if limit >= 0 else 0)
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def segment_flags(lo, hi, base_primes):
    """Primality flags for lo..hi given every prime up to isqrt(hi)."""
    size = hi - lo + 1
    flags = bytearray([1]) * size
    for p in base_primes:
        if p * p > hi:
            break
        start = max(p * p, -(-lo // p) * p)
        if start <= hi:
            flags[start - lo :: p] = bytes(len(range(start - lo, size, p)))
    for v in range(lo, min(hi, 1) + 1):
        flags[v - lo] = 0
    return flags


def smooth_flags(lo, hi, primes, cofactor_bound):
    """Flag n in lo..hi whose cofactor after removing ``primes`` is <= cofactor_bound."""
    size = hi - lo + 1
    rem = list(range(lo, hi + 1))
    for p in primes:
        start = -(-lo // p) * p
        for j in range(start - lo, size, p):
            v = rem[j] // p
            while v % p == 0:
                v //= p
            rem[j] = v
    return bytearray(1 if r <= cofactor_bound else 0 for r in rem)


def powerful_flags(lo, hi, k, primes):
    """Flag k-powerful n in lo..hi; ``primes`` must hold every prime p with p**k <= hi."""
    size = hi - lo + 1
    rem = list(range(lo, hi + 1))
    ok = bytearray([1]) * size
    for p in primes:
        start = -(-lo // p) * p
        for j in range(start - lo, size, p):
            v = rem[j] // p
            e = 1
            while v % p == 0:
                v //= p
                e += 1
            rem[j] = v
            if e < k:
                ok[j] = 0
    return bytearray(1 if ok[j] and rem[j] == 1 else 0 for j in range(size))


def nearest_square_remainders(lo, hi):
    """Signed remainders n - m**2, m the nearest square root, for lo..hi.

    Requires 1 <= lo and hi < 2**52 so float roots are within one of the
    integer root before correction.
    """
    n = np.arange(lo, hi + 1, dtype=np.int64)
    m = np.floor(np.sqrt(n.astype(np.float64))).astype(np.int64)
    while True:
        low = m * m > n
        if not low.any():
            break
        m[low] -= 1
    while True:
        high = (m + 1) * (m + 1) <= n
        if not high.any():
            break
        m[high] += 1
    up = (m + 1) * (m + 1) - n
    down = n - m * m
    m = np.where(up <= down, m + 1, m)
    return n - m * m
