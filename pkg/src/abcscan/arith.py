"""Exact integer arithmetic: primality, factorization, radicals, roots, sieves.

Values below 2**64 go through the active kernel backend (compiled when
available); larger values up to ``MAGNITUDE_CAP`` use the pure-Python
kernels, which work on unbounded integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt, prod

from . import _pykernels, kernels
from .errors import BudgetExceeded, MagnitudeOverflow

MAGNITUDE_CAP = 1 << 127
TRIAL_LIMIT = 10_000
DEFAULT_BUDGET = 2_000_000
RHO_SEED = 0x5EED_ABC0

# Strong pseudoprime tests to the first 13 prime bases are exact below this.
_MR13_LIMIT = 3_317_044_064_679_887_385_961_981
_MR13_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_CHUNK = 1 << 20
# Interval counts sieve with base primes up to this bound, else factor each n.
SIEVE_BASE_LIMIT = 20_000_000


def check_magnitude(n, what="value"):
    if n > MAGNITUDE_CAP:
        raise MagnitudeOverflow(f"{what} {n} exceeds the 2**127 magnitude cap")


def _kernel_for(n):
    return kernels.active if n < kernels.U64_LIMIT else _pykernels


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, n):
        return self.lo <= n <= self.hi


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self):
        return prod(self.primes)

    @property
    def largest_prime(self):
        return self.factors[-1][0] if self.factors else 1

    def value(self):
        return prod(p**e for p, e in self.factors)

    def as_dict(self):
        return dict(self.factors)


# --------------------------------------------------------------------------
# primes


def sieve_primes(limit):
    """All primes <= limit, ascending."""
    if limit < 2:
        return []
    flags = kernels.active.sieve_flags(limit)
    return [i for i, f in enumerate(flags) if f]


SMALL_PRIMES = tuple(sieve_primes(TRIAL_LIMIT))


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n):
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4
    k = n + 1
    s = 0
    while not k & 1:
        k >>= 1
        s += 1
    # Binary Lucas chain for U_k, V_k, Q^k.
    u, v, qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test for 1 <= n <= 2**127."""
    check_magnitude(n)
    if n < 2:
        return False
    if n < kernels.U64_LIMIT:
        return kernels.active.is_prime_u64(n)
    for p in SMALL_PRIMES[:64]:
        if n % p == 0:
            return False
    if not _pykernels.miller_rabin(n, _MR13_BASES):
        return False
    if n < _MR13_LIMIT:
        return True
    return _strong_lucas(n)


# --------------------------------------------------------------------------
# roots


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, in exact integer arithmetic."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return isqrt(n)
    # Newton from an overestimate decreases monotonically to the floor root.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n):
    """Return (r, k) with n = r**k and k maximal, or (n, 1)."""
    best = (n, 1)
    if n < 4:
        return best
    for k in range(2, n.bit_length() + 1):
        r = iroot(n, k)
        if r < 2:
            break
        if r**k == n:
            best = (r, k)
    return best


def nearest_root(n: int, k: int) -> int:
    """The integer m minimizing |n - m**k|; ties go to the larger m."""
    if n < 1 or k < 2:
        raise ValueError("nearest_root needs n >= 1 and k >= 2")
    r = iroot(n, k)
    if (r + 1) ** k - n <= n - r**k:
        return r + 1
    return r


# --------------------------------------------------------------------------
# factorization


def _split(x, budget, used):
    kern = _kernel_for(x)
    seed = (RHO_SEED ^ x) & 0xFFFF_FFFF_FFFF_FFFF
    d, spent = kern.rho_brent(x, seed, budget - used)
    return d, used + spent


def factorize(n: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Complete factorization of 1 <= n <= 2**127.

    Raises BudgetExceeded when the rho splitter spends ``budget``
    iterations on a composite cofactor without splitting it.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    check_magnitude(n)
    found, rest = _kernel_for(n).trial_divide(n, SMALL_PRIMES)
    counts = Counter(dict(found))
    used = 0
    stack = [(rest, 1)]
    while stack:
        x, mult = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            counts[x] += mult
            continue
        r, k = perfect_power(x)
        if k > 1:
            stack.append((r, mult * k))
            continue
        d, used = _split(x, budget, used)
        if not d:
            raise BudgetExceeded(n, budget)
        stack.append((d, mult))
        stack.append((x // d, mult))
    return Factorization(n, tuple(sorted(counts.items())))


def radical(n: int, budget: int = DEFAULT_BUDGET) -> int:
    return factorize(n, budget).radical


def is_smooth(n: int, y: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True when every prime factor of n is <= y."""
    if n == 1:
        return True
    return factorize(n, budget).largest_prime <= y


def is_k_powerful(n: int, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    return all(e >= k for _, e in factorize(n, budget).factors)


# --------------------------------------------------------------------------
# enumeration and interval counts


def primes_in(iv: Interval) -> list[int]:
    if iv.lo < 0:
        raise ValueError("primes_in needs lo >= 0")
    lo, hi = max(iv.lo, 2), iv.hi
    if hi < lo:
        return []
    root = isqrt(hi)
    if root > 10**7:
        return [n for n in range(lo, hi + 1) if is_prime(n)]
    base = sieve_primes(root)
    kern = _kernel_for(hi)
    out = []
    for start in range(lo, hi + 1, _CHUNK):
        stop = min(hi, start + _CHUNK - 1)
        flags = kern.segment_flags(start, stop, base)
        out.extend(start + i for i, f in enumerate(flags) if f)
    return out


def prime_powers_up_to(x: int, min_exp: int = 1) -> list[tuple[int, int, int]]:
    """All (p, e, p**e) with e >= min_exp and p**e <= x, sorted by p**e."""
    if min_exp < 1:
        raise ValueError("min_exp must be >= 1")
    out = []
    for p in sieve_primes(iroot(x, min_exp)):
        e = min_exp
        q = p**e
        while q <= x:
            out.append((p, e, q))
            e += 1
            q *= p
    out.sort(key=lambda t: t[2])
    return out


def _require_positive(iv):
    if iv.lo < 1:
        raise ValueError("interval counts need lo >= 1")
    check_magnitude(iv.hi, "interval end")


def count_smooth_in(iv: Interval, y: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of y-smooth integers in the closed interval."""
    _require_positive(iv)
    root = isqrt(iv.hi)
    if min(y, root) > SIEVE_BASE_LIMIT:
        return sum(is_smooth(n, y, budget) for n in range(iv.lo, iv.hi + 1))
    if y >= root:
        base, bound = sieve_primes(root), y
    else:
        base, bound = sieve_primes(y), 1
    kern = _kernel_for(iv.hi)
    total = 0
    for start in range(iv.lo, iv.hi + 1, _CHUNK):
        stop = min(iv.hi, start + _CHUNK - 1)
        total += sum(kern.smooth_flags(start, stop, base, bound))
    return total


def count_k_powerful_in(iv: Interval, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of k-powerful integers in the closed interval."""
    if k < 2:
        raise ValueError("k must be >= 2")
    _require_positive(iv)
    root = iroot(iv.hi, k)
    if root > SIEVE_BASE_LIMIT:
        return sum(is_k_powerful(n, k, budget) for n in range(iv.lo, iv.hi + 1))
    base = sieve_primes(root)
    kern = _kernel_for(iv.hi)
    total = 0
    for start in range(iv.lo, iv.hi + 1, _CHUNK):
        stop = min(iv.hi, start + _CHUNK - 1)
        total += sum(kern.powerful_flags(start, stop, k, base))
    return total
