from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from abcscan import _pykernels, arith, kernels
from abcscan.arith import (
    Interval,
    count_k_powerful_in,
    count_smooth_in,
    factorize,
    iroot,
    is_k_powerful,
    is_prime,
    is_smooth,
    nearest_root,
    prime_powers_up_to,
    primes_in,
    radical,
)
from abcscan.errors import BudgetExceeded, MagnitudeOverflow

from . import oracles


@pytest.fixture(params=kernels.available())
def backend(request, monkeypatch):
    monkeypatch.setattr(kernels, "active", kernels.load(request.param))
    return request.param


class TestIsPrime:
    def test_examples(self):
        assert not is_prime(1)
        assert not is_prime(6436343)  # 23**5
        assert is_prime(109)

    def test_beyond_64_bits(self):
        assert is_prime(2**89 - 1)
        assert is_prime(2**127 - 1)
        assert not is_prime(2**127 - 3)
        assert not is_prime((2**61 - 1) * (2**31 - 1))
        assert not is_prime((2**61 - 1) ** 2)

    def test_strong_pseudoprimes_rejected(self):
        # Strong pseudoprime to the first 13 prime bases, above 2**64.
        assert not is_prime(3317044064679887385961981)
        assert not is_prime(318665857834031151167461)

    def test_cap(self):
        with pytest.raises(MagnitudeOverflow):
            is_prime(2**127 + 1)


class TestFactorize:
    def test_examples(self, backend):
        assert factorize(1).factors == ()
        assert factorize(65625).as_dict() == {3: 1, 5: 5, 7: 1}
        assert factorize(6436341).as_dict() == {3: 10, 109: 1}

    def test_oracle_equivalence_to_1e5(self, backend):
        for n in range(1, 100_001):
            assert factorize(n).as_dict() == oracles.trial_factor(n), n

    def test_large_semiprimes(self, backend):
        cases = [
            (2**61 - 1) * (2**31 - 1) * 1000003,
            1000000007 * 1000000009 * (2**61 - 1),
            (2**31 - 1) ** 3 * 4294967311,
            101**19,
        ]
        for n in cases:
            f = factorize(n)
            assert f.value() == n
            assert all(is_prime(p) for p in f.primes)

    def test_budget_exceeded(self):
        n = 1099511627791 * 1099511627803  # two 40-bit primes
        with pytest.raises(BudgetExceeded):
            factorize(n, budget=50)
        assert factorize(n).as_dict() == {1099511627791: 1, 1099511627803: 1}

    def test_rejects(self):
        with pytest.raises(ValueError):
            factorize(0)
        with pytest.raises(MagnitudeOverflow):
            factorize(2**127 + 2)
        assert factorize(2**127).as_dict() == {2: 127}

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=2**64))
    def test_round_trip(self, n):
        f = factorize(n)
        assert prod(p**e for p, e in f.factors) == n
        assert list(f.primes) == sorted(set(f.primes))
        assert all(is_prime(p) for p in f.primes)


class TestRadicalSmoothPowerful:
    def test_radical_examples(self):
        assert radical(1) == 1
        assert radical(12) == 6
        assert radical(2 * 6436341 * 6436343) == 15042

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=10**15))
    def test_radical_properties(self, n):
        r = radical(n)
        assert n % r == 0
        assert radical(r) == r
        assert all(e == 1 for _, e in factorize(r).factors)

    def test_is_smooth(self):
        assert is_smooth(1, 2)
        assert is_smooth(6436341, 109)
        assert not is_smooth(6436341, 100)

    def test_is_k_powerful(self):
        assert is_k_powerful(576, 2)
        assert is_k_powerful(8, 3)
        assert not is_k_powerful(12, 2)
        assert is_k_powerful(1, 5)


class TestRoots:
    def test_nearest_root_examples(self):
        assert nearest_root(16, 2) == 4
        assert nearest_root(8, 2) == 3
        assert nearest_root(12, 2) == 3

    def test_iroot_exact_at_scale(self):
        for k in (2, 3, 4, 5, 7):
            for base in (2**21 - 1, 2**21, 3**13, 10**6 + 3):
                n = base**k
                assert iroot(n, k) == base
                assert iroot(n - 1, k) == base - 1
                assert iroot(n + 1, k) == base

    def test_nearest_root_matches_scan_oracle(self):
        for k in (2, 3, 4):
            for n in range(1, 5000):
                assert nearest_root(n, k) == oracles.nearest_power_scan(n, k)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=1, max_value=2**127), st.sampled_from([2, 3, 4]))
    def test_nearest_root_property(self, n, k):
        m = nearest_root(n, k)
        d = abs(n - m**k)
        assert d <= abs(n - (m - 1) ** k)
        assert d <= abs(n - (m + 1) ** k)
        # |b| < 2k n^{(k-1)/k}, exactly: |b|^k < (2k)^k n^(k-1)
        assert d**k < (2 * k) ** k * n ** (k - 1)


class TestEnumeration:
    def test_primes_in(self, backend):
        assert primes_in(Interval(0, 1)) == []
        assert primes_in(Interval(2, 10)) == [2, 3, 5, 7]
        assert primes_in(Interval(100, 110)) == [101, 103, 107, 109]
        lo = 10**12
        assert primes_in(Interval(lo, lo + 200)) == [n for n in range(lo, lo + 201) if oracles.trial_is_prime(n)]

    def test_primes_in_huge_values(self):
        lo = 2**100
        got = primes_in(Interval(lo, lo + 300))
        assert got == [n for n in range(lo, lo + 301) if is_prime(n)]
        assert got  # prime gaps near 2**100 are far below 300 here

    def test_prime_powers(self):
        assert prime_powers_up_to(7, 3) == []
        assert prime_powers_up_to(30, 3) == [(2, 3, 8), (2, 4, 16), (3, 3, 27)]
        assert prime_powers_up_to(10, 1) == [(2, 1, 2), (3, 1, 3), (2, 2, 4), (5, 1, 5), (7, 1, 7), (2, 3, 8), (3, 2, 9)]
        assert prime_powers_up_to(5000, 2) == oracles.prime_powers_brute(5000, 2)

    def test_count_smooth_examples(self, backend):
        assert count_smooth_in(Interval(1, 10), 2) == 4
        assert count_smooth_in(Interval(100, 110), 5) == 2
        for p in (2, 3, 101, 7919):
            assert count_smooth_in(Interval(p, p), p - 1) == 0 or p == 2
        assert count_smooth_in(Interval(2, 2), 1) == 0

    def test_count_powerful_examples(self, backend):
        assert count_k_powerful_in(Interval(1, 10), 2) == 4
        assert count_k_powerful_in(Interval(26, 28), 3) == 1
        assert count_k_powerful_in(Interval(2, 3), 2) == 0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 3000), st.integers(1, 3000), st.integers(2, 60))
    def test_smooth_count_monotone(self, x, dx, y):
        base = count_smooth_in(Interval(1, x), y)
        assert count_smooth_in(Interval(1, x + dx), y) >= base
        assert count_smooth_in(Interval(1, x), y + 5) >= base

    def test_counts_above_64_bits_use_python_kernels(self):
        lo = 2**64 - 50
        iv = Interval(lo, lo + 100)
        assert count_smooth_in(iv, 10**6) == sum(is_smooth(n, 10**6) for n in range(lo, lo + 101))
        assert count_k_powerful_in(iv, 2) == sum(is_k_powerful(n, 2) for n in range(lo, lo + 101))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(5, 4)
    assert len(Interval(3, 7)) == 5
    assert 5 in Interval(3, 7)


def test_python_kernel_module_handles_bigints():
    n = (2**89 - 1) * 1000003
    d, _ = _pykernels.rho_brent(n, 1, 10**6)
    assert d in (1000003, 2**89 - 1)
    assert arith.perfect_power(3**40) == (3, 40)
