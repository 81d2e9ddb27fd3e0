import random
from math import pi

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abcscan.equidist import (
    Histogram,
    build_histogram,
    empirical_density,
    ks_uniform,
    stratified_histograms,
    uniformity_report,
)
from abcscan.errors import EmptySample
from abcscan.krep import AngleSample, angle_samples

from . import oracles


def _sample(theta):
    return AngleSample(2, 3, 8, 0, theta)


class TestHistogram:
    def test_empty(self):
        h = build_histogram([], 0, 1, 4)
        assert h.counts == (0, 0, 0, 0) and h.total == 0

    def test_boundaries(self):
        assert build_histogram([0.0, 1.0], 0, 1, 2).counts == (1, 1)
        h = build_histogram([-0.1, 0.5, 1.1], 0, 1, 2)
        assert (h.overflow_low, h.overflow_high, h.counts) == (1, 1, (0, 1))

    def test_uniform_grid(self):
        h = build_histogram([i * pi / 1000 for i in range(1000)], 0, pi, 10)
        assert h.counts == (100,) * 10

    @settings(max_examples=100)
    @given(st.lists(st.floats(-2, 3, allow_nan=False), max_size=300), st.integers(1, 20))
    def test_conservation(self, values, bins):
        h = build_histogram(values, -1.0, 2.0, bins)
        assert sum(h.counts) + h.overflow_low + h.overflow_high == h.total == len(values)

    @settings(max_examples=50)
    @given(st.lists(st.floats(0, 1, allow_nan=False), max_size=200), st.integers(0, 200))
    def test_merge_equals_whole(self, values, cut):
        whole = build_histogram(values, 0, 1, 7)
        parts = build_histogram(values[:cut], 0, 1, 7).merge(build_histogram(values[cut:], 0, 1, 7))
        assert parts == whole

    def test_csv(self):
        text = build_histogram([0.1, 0.6], 0, 1, 2).to_csv("total=2")
        assert text.splitlines() == ["bin_lo,bin_hi,count", "0,0.5,1", "0.5,1,1", "# total=2"]

    def test_bad_args(self):
        with pytest.raises(ValueError):
            build_histogram([1], 1, 1, 2)
        with pytest.raises(ValueError):
            build_histogram([1], 0, 1, 0)
        with pytest.raises(ValueError):
            Histogram(0, 1, (1,), 1).merge(Histogram(0, 2, (1,), 1))


class TestDensity:
    def test_examples(self):
        s = [_sample(t) for t in (0.3, 1.0, 2.0)]
        assert empirical_density(s, 0, pi) == 1.0
        assert empirical_density(s, 0.5, 0.5) == 0.0
        assert empirical_density([_sample(pi / 2)], 0, pi / 2) == 1.0
        with pytest.raises(EmptySample):
            empirical_density([], 0, 1)

    @settings(max_examples=50)
    @given(st.lists(st.floats(0, pi), min_size=1, max_size=50), st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, thetas, a, b):
        s = [_sample(t) for t in thetas]
        lo, hi = sorted((a * pi, b * pi))
        assert empirical_density(s, lo, hi) <= empirical_density(s, max(0, lo - 0.1), min(pi, hi + 0.1))


class TestKS:
    def test_examples(self):
        assert ks_uniform([0.5]) == 0.5
        n = 37
        assert ks_uniform([i / (n + 1) for i in range(1, n + 1)]) == pytest.approx(1 / (n + 1), abs=1e-15)
        assert ks_uniform([0.0] * 10) == 1.0
        with pytest.raises(EmptySample):
            ks_uniform([])

    @settings(max_examples=100)
    @given(st.lists(st.floats(0, 1), min_size=1, max_size=60))
    def test_against_brute_force(self, values):
        d = ks_uniform(values)
        assert d == pytest.approx(oracles.ks_brute(values), abs=1e-12)
        assert 0 <= d <= 1

    def test_permutation_invariant(self):
        rng = random.Random(1)
        v = [rng.random() for _ in range(500)]
        w = v[:]
        rng.shuffle(w)
        assert ks_uniform(v) == ks_uniform(w)

    def test_scipy_agrees(self):
        stats = pytest.importorskip("scipy.stats")
        v = np.random.default_rng(3).random(2000)
        assert ks_uniform(v) == pytest.approx(stats.kstest(v, "uniform").statistic, abs=1e-12)


class TestReport:
    def test_prime_powers_small(self):
        r = uniformity_report(16, "prime-powers")
        assert r.sample_count == 2
        assert r.histogram.bin_count == 64

    def test_all_n_count(self):
        assert uniformity_report(100, "all-n").sample_count == 100

    def test_all_n_ks_shrinks(self):
        assert uniformity_report(10**6, "all-n").ks < uniformity_report(10**3, "all-n").ks

    def test_deterministic(self):
        assert uniformity_report(10**5, "all-n") == uniformity_report(10**5, "all-n")

    def test_angle_ks_oracle(self):
        r = uniformity_report(10**6, "prime-powers")
        thetas = [oracles.angle(q) for _, _, q in oracles.prime_powers_brute(10**4, 3)]
        thetas += [s.theta for s in angle_samples(10**6) if s.q > 10**4]
        assert r.ks == pytest.approx(oracles.ks_sorted([t / pi for t in thetas]), abs=1e-12)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            uniformity_report(100, "odd-n")

    def test_stratified(self):
        hists = stratified_histograms(10**6)
        assert sum(h.total for h in hists.values()) == uniformity_report(10**6).sample_count
        assert 2 in hists and hists[2].total == 19 - 2
