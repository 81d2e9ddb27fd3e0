"""Histograms, empirical densities and KS diagnostics for remainder and angle sequences."""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import EmptySample
from .krep import angle_samples, dirichlet_coeffs

DEFAULT_BINS = 64
MODES = ("all-n", "prime-powers")


@dataclass(frozen=True)
class Histogram:
    lo: float
    hi: float
    counts: tuple[int, ...]
    total: int
    overflow_low: int = 0
    overflow_high: int = 0

    @property
    def bin_count(self):
        return len(self.counts)

    def edges(self):
        width = (self.hi - self.lo) / self.bin_count
        return [(self.lo + i * width, self.lo + (i + 1) * width) for i in range(self.bin_count)]

    def merge(self, other: Histogram) -> Histogram:
        if (self.lo, self.hi, self.bin_count) != (other.lo, other.hi, other.bin_count):
            raise ValueError("histograms have different binning")
        return Histogram(
            self.lo,
            self.hi,
            tuple(a + b for a, b in zip(self.counts, other.counts)),
            self.total + other.total,
            self.overflow_low + other.overflow_low,
            self.overflow_high + other.overflow_high,
        )

    def to_csv(self, trailer=None) -> str:
        lines = ["bin_lo,bin_hi,count"]
        for (a, b), c in zip(self.edges(), self.counts):
            lines.append(f"{a:.6g},{b:.6g},{c}")
        if trailer:
            lines.append(f"# {trailer}")
        return "\n".join(lines) + "\n"


def build_histogram(values, lo: float, hi: float, bins: int) -> Histogram:
    """Equal-width bins on [lo, hi); a value equal to hi goes in the last bin."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    if bins < 1:
        raise ValueError("need bins >= 1")
    v = np.asarray(values if isinstance(values, np.ndarray) else list(values), dtype=np.float64)
    low = v < lo
    high = v > hi
    inside = v[~(low | high)]
    idx = np.floor(bins * (inside - lo) / (hi - lo)).astype(np.int64)
    np.minimum(idx, bins - 1, out=idx)
    counts = np.bincount(idx, minlength=bins)
    return Histogram(
        float(lo),
        float(hi),
        tuple(int(c) for c in counts),
        int(v.size),
        int(low.sum()),
        int(high.sum()),
    )


def empirical_density(samples, a: float, b: float) -> float:
    """Fraction of samples with a <= theta <= b."""
    if not samples:
        raise EmptySample("empirical_density needs at least one sample")
    if not 0 <= a <= b <= pi:
        raise ValueError("need 0 <= a <= b <= pi")
    hits = sum(1 for s in samples if a <= s.theta <= b)
    return hits / len(samples)


def ks_uniform(values) -> float:
    """Kolmogorov-Smirnov distance between the sample's empirical CDF and U[0, 1]."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = x.size
    if n == 0:
        raise EmptySample("ks_uniform needs at least one value")
    x = np.clip(x, 0.0, 1.0)
    i = np.arange(1, n + 1, dtype=np.float64)
    d_plus = np.max(i / n - x)
    d_minus = np.max(x - (i - 1) / n)
    return float(max(d_plus, d_minus))


@dataclass(frozen=True)
class UniformityReport:
    mode: str
    x: int
    histogram: Histogram
    ks: float
    sample_count: int

    def trailer(self):
        return f"total={self.histogram.total} ks={self.ks!r} mode={self.mode} x={self.x}"

    def to_csv(self):
        return self.histogram.to_csv(self.trailer())


def normalized_remainders(x):
    """b_n / (2 sqrt n) for 1 <= n <= x."""
    b = dirichlet_coeffs(x).astype(np.float64)
    n = np.arange(1, x + 1, dtype=np.float64)
    return b / (2.0 * np.sqrt(n))


def uniformity_report(x: int, mode: str = "prime-powers", bins: int = DEFAULT_BINS) -> UniformityReport:
    """Histogram and KS-vs-uniform for remainders (all-n) or prime-power angles.

    all-n bins b_n / (2 sqrt n) over [-1, 1]; prime-powers bins theta over
    [0, pi].  KS is computed on the values rescaled to [0, 1].
    """
    if x < 8:
        raise ValueError("x must be >= 8")
    if mode == "all-n":
        u = normalized_remainders(x)
        hist = build_histogram(u, -1.0, 1.0, bins)
        ks = ks_uniform((u + 1.0) / 2.0)
    elif mode == "prime-powers":
        theta = np.array([s.theta for s in angle_samples(x)], dtype=np.float64)
        hist = build_histogram(theta, 0.0, pi, bins)
        ks = ks_uniform(theta / pi)
    else:
        raise ValueError(f"mode must be one of {MODES}")
    return UniformityReport(mode, x, hist, ks, hist.total)


def stratified_histograms(x: int, bins: int = DEFAULT_BINS) -> dict[int, Histogram]:
    """Per-prime angle histograms over [0, pi] for p**e <= x, e >= 3."""
    by_p: dict[int, list[float]] = {}
    for s in angle_samples(x):
        by_p.setdefault(s.p, []).append(s.theta)
    return {p: build_histogram(v, 0.0, pi, bins) for p, v in sorted(by_p.items())}
