"""Nearest-power representations n = m**k + b and the scans built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import acos, log, sqrt

from . import kernels
from .arith import DEFAULT_BUDGET, check_magnitude, factorize, nearest_root, prime_powers_up_to, sieve_primes
from .errors import MagnitudeOverflow, PerfectPower

SIGN_MODES = ("both", "positive-only")


@dataclass(frozen=True)
class KRep:
    n: int
    k: int
    m: int
    b: int


def krep(n: int, k: int = 2) -> KRep:
    """Write n = m**k + b with m the nearest integer k-th root of n."""
    if n < 1:
        raise ValueError("krep needs n >= 1")
    if k not in (2, 3, 4):
        raise ValueError("k must be 2, 3 or 4")
    m = nearest_root(n, k)
    return KRep(n, k, m, n - m**k)


def dirichlet_coeffs(x: int):
    """Coefficients b_1..b_x of the nearest-square remainder series (b_1 = 0).

    Returned as an int64 numpy array; index i holds b_{i+1}.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if x >= 1 << 52:
        raise MagnitudeOverflow("dirichlet_coeffs is limited to x < 2**52")
    return kernels.active.nearest_square_remainders(1, x)


def _b(n):
    return krep(n, 2).b


@dataclass(frozen=True)
class HeckeViolation:
    relation: str  # "multiplicative" or "prime-power"
    args: tuple[int, ...]  # (p, q) or (p, n)
    expected: int  # value the relation predicts
    actual: int


def hecke_falsifier(limit: int) -> list[HeckeViolation]:
    """Failures of b_p b_q = b_pq and b_{p^n} = b_p b_{p^{n-1}} - b_{p^{n-2}} up to limit."""
    if limit < 6:
        raise ValueError("limit must be >= 6")
    primes = sieve_primes(limit)
    out = []
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            predicted = _b(p) * _b(q)
            actual = _b(p * q)
            if predicted != actual:
                out.append(HeckeViolation("multiplicative", (p, q), predicted, actual))
    for p in primes:
        n = 2
        while p**n <= limit:
            predicted = _b(p) * _b(p ** (n - 1)) - _b(p ** (n - 2))
            actual = _b(p**n)
            if predicted != actual:
                out.append(HeckeViolation("prime-power", (p, n), predicted, actual))
            n += 1
    return out


@dataclass(frozen=True)
class AngleSample:
    p: int
    exp: int
    q: int
    b: int
    theta: float


def angle_of(q: int, b: int) -> float:
    """arccos(b / (2 sqrt q)), clamped into [0, pi]."""
    c = b / (2 * sqrt(q))
    return acos(min(1.0, max(-1.0, c)))


def angle(p: int, exp: int) -> AngleSample:
    if exp < 3:
        raise ValueError("exp must be >= 3")
    q = p**exp
    check_magnitude(q)
    r = krep(q, 2)
    return AngleSample(p, exp, q, r.b, angle_of(q, r.b))


def angle_samples(x: int) -> list[AngleSample]:
    """Angles of every prime power p**e <= x with e >= 3, ordered by q."""
    return [angle(p, e) for p, e, _ in prime_powers_up_to(x, 3)]


def parse_delta(delta) -> Fraction:
    """Exact rational delta in (0, 1/2) from 'N/D', a Fraction or an int pair."""
    d = Fraction(delta)
    if not 0 < d < Fraction(1, 2):
        raise ValueError(f"delta must lie in (0, 1/2), got {d}")
    return d


def small_remainder(q: int, b: int, delta: Fraction) -> bool:
    """Exact test of 0 < |b| <= 2 q**(1/2 - delta) for delta = N/D.

    Squared and raised to the D-th power: |b|**(2D) <= 4**D * q**(D - 2N).
    """
    if b == 0:
        return False
    num, den = delta.numerator, delta.denominator
    return b ** (2 * den) <= 4**den * q ** (den - 2 * num)


@dataclass(frozen=True)
class RemainderHit:
    p: int
    exp: int
    q: int
    b: int
    mode: str

    def to_record(self, budget=DEFAULT_BUDGET):
        return {
            "p": str(self.p),
            "exp": self.exp,
            "q": str(self.q),
            "b": str(self.b),
            "theta": float(f"{angle_of(self.q, self.b):.6g}"),
            "quality": float(f"{krep_quality(self.p, self.exp, budget):.6g}"),
            "mode": self.mode,
        }


def small_remainder_scan(x: int, delta, mode: str = "both") -> list[RemainderHit]:
    """Prime powers q = p**e <= x, e >= 3, whose nearest-square remainder is small.

    ``mode`` "positive-only" keeps only b > 0.
    """
    if x < 8:
        raise ValueError("x must be >= 8")
    if mode not in SIGN_MODES:
        raise ValueError(f"mode must be one of {SIGN_MODES}")
    delta = parse_delta(delta)
    hits = []
    for p, e, q in prime_powers_up_to(x, 3):
        b = krep(q, 2).b
        if mode == "positive-only" and b <= 0:
            continue
        if small_remainder(q, b, delta):
            hits.append(RemainderHit(p, e, q, b, mode))
    return hits


def krep_quality(p: int, exp: int, budget: int = DEFAULT_BUDGET) -> float:
    """log q / log rad(q * m * |b|) for q = p**exp = m**2 + b."""
    q = p**exp
    check_magnitude(q)
    r = krep(q, 2)
    if r.b == 0:
        raise PerfectPower(f"{p}**{exp} is a perfect square")
    primes = {p}
    primes.update(factorize(r.m, budget).primes)
    primes.update(factorize(abs(r.b), budget).primes)
    rad = 1
    for s in primes:
        rad *= s
    return log(q) / log(rad)


@dataclass(frozen=True)
class HallRecord:
    x: int
    m: int
    d: int
    ratio: float

    def to_record(self):
        return {"x": str(self.x), "m": str(self.m), "d": str(self.d), "ratio": float(f"{self.ratio:.6g}")}


def hall_scan(x_max: int) -> list[HallRecord]:
    """Differences x**3 - m**2, m the nearest square root of x**3, by ascending |d|/sqrt(x)."""
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    check_magnitude(x_max**3, "x_max**3")
    out = []
    for x in range(2, x_max + 1):
        cube = x**3
        m = nearest_root(cube, 2)
        d = cube - m * m
        if d == 0:
            continue
        out.append(HallRecord(x, m, d, abs(d) / sqrt(x)))
    out.sort(key=lambda r: (r.ratio, r.x))
    return out

