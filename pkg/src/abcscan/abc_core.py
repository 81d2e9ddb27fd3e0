"""abc triples and their quality index."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, log

from .arith import DEFAULT_BUDGET, factorize
from .errors import Degenerate, NotCoprime


@dataclass(frozen=True)
class Triple:
    """Coprime a + b = c with a <= b < c."""

    a: int
    b: int
    c: int
    source: str = ""

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise Degenerate(f"triple entries must be positive: {self.a}, {self.b}")
        if self.a + self.b != self.c:
            raise ValueError(f"{self.a} + {self.b} != {self.c}")
        if self.a > self.b:
            raise ValueError("triple must be canonical (a <= b)")
        if gcd(self.a, self.b) != 1:
            raise NotCoprime(f"not coprime: gcd({self.a}, {self.b}) = {gcd(self.a, self.b)}")


def make_triple(x: int, y: int, source: str = "") -> Triple:
    if x <= 0 or y <= 0:
        raise Degenerate(f"summands must be positive, got {x} and {y}")
    g = gcd(x, y)
    if g > 1:
        raise NotCoprime(f"not coprime: gcd({x}, {y}) = {g}")
    return Triple(min(x, y), max(x, y), x + y, source)


@dataclass(frozen=True)
class QualityReport:
    triple: Triple
    rad_abc: int
    gamma: float
    largest_prime: int
    is_high_quality: bool

    def to_record(self):
        t = self.triple
        return {
            "a": str(t.a),
            "b": str(t.b),
            "c": str(t.c),
            "rad": str(self.rad_abc),
            "gamma": float(f"{self.gamma:.6g}"),
            "largest_prime": str(self.largest_prime),
            "source": t.source,
        }

    def to_json(self):
        return json.dumps(self.to_record())


def quality(t: Triple, budget: int = DEFAULT_BUDGET) -> QualityReport:
    """Quality index log c / log rad(abc) of a triple.

    a, b and c are pairwise coprime, so rad(abc) is the product of the
    three radicals and each entry is factored on its own.
    """
    rad = 1
    largest = 1
    for v in (t.a, t.b, t.c):
        f = factorize(v, budget)
        rad *= f.radical
        largest = max(largest, f.largest_prime)
    # rad >= 2 because c >= 2 and gcd(a, b) = 1.
    gamma = log(t.c) / log(rad)
    return QualityReport(t, rad, gamma, largest, t.c > rad)


def claim2_bound(n: int) -> float:
    """Limiting index 12 / (11 + 12/n) from the curve-order heuristic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 12 / (11 + 12 / n)
