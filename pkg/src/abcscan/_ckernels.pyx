# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled 64-bit versions of the kernels in ``_pykernels``.

Every function has the same signature and results as its pure-Python
counterpart but only accepts arguments below 2**64.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.math cimport sqrt

import numpy as np

cdef extern from "_mulmod.h":
    uint64_t abc_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil
    uint64_t abc_addmod(uint64_t a, uint64_t b, uint64_t m) nogil

BACKEND = "cython"

cdef uint64_t[12] MR_BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
cdef uint64_t MASK64 = 0xFFFFFFFFFFFFFFFF
cdef int RHO_BATCH = 128


cdef inline uint64_t _gcd(uint64_t a, uint64_t b) nogil:
    cdef uint64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline uint64_t _powmod(uint64_t b, uint64_t e, uint64_t m) nogil:
    cdef uint64_t r = 1
    b %= m
    while e:
        if e & 1:
            r = abc_mulmod(r, b, m)
        b = abc_mulmod(b, b, m)
        e >>= 1
    return r


cdef bint _is_prime(uint64_t n) nogil:
    cdef uint64_t d, x, a
    cdef int s, i, j
    cdef bint passed
    if n < 2:
        return False
    for i in range(12):
        if n % MR_BASES[i] == 0:
            return n == MR_BASES[i]
    d = n - 1
    s = 0
    while not (d & 1):
        d >>= 1
        s += 1
    for i in range(12):
        a = MR_BASES[i]
        x = _powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        passed = False
        for j in range(s - 1):
            x = abc_mulmod(x, x, n)
            if x == n - 1:
                passed = True
                break
        if not passed:
            return False
    return True


def is_prime_u64(n):
    return _is_prime(<uint64_t>n)


def splitmix64(state):
    cdef uint64_t s = <uint64_t>state
    cdef uint64_t z
    s = s + <uint64_t>0x9E3779B97F4A7C15
    z = s
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return s, z ^ (z >> 31)


cdef inline uint64_t _absdiff(uint64_t a, uint64_t b) nogil:
    return a - b if a > b else b - a


def rho_brent(n, seed, max_iter):
    cdef uint64_t N = <uint64_t>n
    cdef uint64_t budget = <uint64_t>max_iter
    cdef uint64_t state = <uint64_t>(seed & MASK64)
    cdef uint64_t used = 0
    cdef uint64_t y, c, x, ys, q, g, z, r, k, i, lim
    while used < budget:
        state, y = splitmix64(state)
        state, c = splitmix64(state)
        with nogil:
            y %= N
            c = c % (N - 1) + 1
            g = 1
            r = 1
            q = 1
            x = y
            ys = y
            while g == 1 and used < budget:
                x = y
                for i in range(r):
                    y = abc_addmod(abc_mulmod(y, y, N), c, N)
                used += r
                k = 0
                while k < r and g == 1:
                    ys = y
                    lim = r - k
                    if lim > <uint64_t>RHO_BATCH:
                        lim = RHO_BATCH
                    for i in range(lim):
                        y = abc_addmod(abc_mulmod(y, y, N), c, N)
                        q = abc_mulmod(q, _absdiff(x, y), N)
                    g = _gcd(q, N)
                    k += RHO_BATCH
                used += k if k < r else r
                r <<= 1
            if g == N:
                g = 1
                while g == 1:
                    ys = abc_addmod(abc_mulmod(ys, ys, N), c, N)
                    g = _gcd(_absdiff(x, ys), N)
        if 1 < g < N:
            return int(g), int(used)
    return 0, int(used)


def trial_divide(n, primes):
    cdef uint64_t m = <uint64_t>n
    cdef uint64_t p, last = 0
    cdef int e
    factors = []
    for pp in primes:
        p = pp
        last = p
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((int(p), e))
    if m > 1 and last and m <= last * last:
        factors.append((int(m), 1))
        m = 1
    return factors, int(m)


def sieve_flags(limit):
    if limit < 2:
        return bytearray(limit + 1 if limit >= 0 else 0)
    cdef Py_ssize_t L = limit
    out = bytearray(L + 1)
    cdef unsigned char[:] f = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(2, L + 1):
            f[i] = 1
        i = 2
        while i * i <= L:
            if f[i]:
                j = i * i
                while j <= L:
                    f[j] = 0
                    j += i
            i += 1
    return out


def segment_flags(lo, hi, base_primes):
    cdef uint64_t LO = lo, HI = hi
    cdef Py_ssize_t size = hi - lo + 1
    out = bytearray(b"\x01") * size
    cdef unsigned char[:] f = out
    cdef uint64_t p, start, j
    for pp in base_primes:
        p = pp
        if p * p > HI:
            break
        start = ((LO + p - 1) // p) * p
        if start < p * p:
            start = p * p
        j = start
        while j <= HI:
            f[j - LO] = 0
            j += p
    for v in range(lo, min(hi, 1) + 1):
        f[v - lo] = 0
    return out


def smooth_flags(lo, hi, primes, cofactor_bound):
    cdef uint64_t LO = lo, bound = cofactor_bound
    cdef Py_ssize_t size = hi - lo + 1
    cdef uint64_t[:] rem = np.arange(lo, hi + 1, dtype=np.uint64)
    cdef uint64_t p, v
    cdef Py_ssize_t j
    for pp in primes:
        p = pp
        with nogil:
            j = <Py_ssize_t>(((LO + p - 1) // p) * p - LO)
            while j < size:
                v = rem[j] // p
                while v % p == 0:
                    v //= p
                rem[j] = v
                j += p
    out = bytearray(size)
    cdef unsigned char[:] f = out
    with nogil:
        for j in range(size):
            f[j] = rem[j] <= bound
    return out


def powerful_flags(lo, hi, k, primes):
    cdef uint64_t LO = lo
    cdef int K = k, e
    cdef Py_ssize_t size = hi - lo + 1
    cdef uint64_t[:] rem = np.arange(lo, hi + 1, dtype=np.uint64)
    out = bytearray(b"\x01") * size
    cdef unsigned char[:] ok = out
    cdef uint64_t p, v
    cdef Py_ssize_t j
    for pp in primes:
        p = pp
        with nogil:
            j = <Py_ssize_t>(((LO + p - 1) // p) * p - LO)
            while j < size:
                v = rem[j] // p
                e = 1
                while v % p == 0:
                    v //= p
                    e += 1
                rem[j] = v
                if e < K:
                    ok[j] = 0
                j += p
    with nogil:
        for j in range(size):
            ok[j] = ok[j] and rem[j] == 1
    return out


def nearest_square_remainders(lo, hi):
    cdef Py_ssize_t size = hi - lo + 1
    arr = np.empty(size, dtype=np.int64)
    cdef int64_t[:] b = arr
    cdef int64_t n = lo, m
    cdef Py_ssize_t j
    with nogil:
        for j in range(size):
            m = <int64_t>sqrt(<double>n)
            while m * m > n:
                m -= 1
            while (m + 1) * (m + 1) <= n:
                m += 1
            if (m + 1) * (m + 1) - n <= n - m * m:
                m += 1
            b[j] = n - m * m
            n += 1
    return arr
