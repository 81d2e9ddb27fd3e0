"""Frobenius trace recursions, curve orders and the triples they produce.

A "curve" here is only the pair (q, a1): the trace over the base field
fixes every trace over extensions through

    a_0 = 2,  a_n = a1 * a_{n-1} - q * a_{n-2},

and the group order over F_{q^n} is N_n = q^n + 1 - a_n.  No curve
equation is ever built.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from .abc_core import QualityReport, Triple, claim2_bound, make_triple, quality
from .arith import (
    DEFAULT_BUDGET,
    MAGNITUDE_CAP,
    Factorization,
    Interval,
    check_magnitude,
    factorize,
    is_prime,
    perfect_power,
    prime_powers_up_to,
    sieve_primes,
)
from .errors import BudgetExceeded, Degenerate, InvalidTrace, MagnitudeOverflow, NotCoprime

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrobeniusParams:
    p: int
    e: int
    a1: int
    genus: int = 1

    @property
    def q(self):
        return self.p**self.e

    def __post_init__(self):
        if self.e < 1 or not is_prime(self.p):
            raise ValueError(f"{self.p}**{self.e} is not a prime power")
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.a1 * self.a1 > 4 * self.q:
            raise InvalidTrace(f"trace {self.a1} violates a1**2 <= 4q for q = {self.q}")

    @classmethod
    def from_q(cls, q, a1, genus=1):
        p, e = prime_power_decompose(q)
        return cls(p, e, a1, genus)


@dataclass(frozen=True)
class OrderSequence:
    params: FrobeniusParams
    traces: tuple[int, ...]  # a_0 .. a_n
    orders: tuple[int, ...]  # N_1 .. N_n

    def order(self, n):
        return self.orders[n - 1]

    @property
    def n_max(self):
        return len(self.orders)


def prime_power_decompose(q):
    """Return (p, e) with q = p**e, p prime; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    r, k = perfect_power(q)
    # r may itself be a perfect power only if k was not maximal, which
    # perfect_power rules out; r must still be prime.
    if not is_prime(r):
        raise ValueError(f"{q} is not a prime power")
    return r, k


def frobenius_sequence(params: FrobeniusParams, n_max: int) -> OrderSequence:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    q = params.q
    if q**n_max > MAGNITUDE_CAP:
        raise MagnitudeOverflow(f"q**n_max = {q}**{n_max} exceeds the 2**127 cap")
    traces = [2, params.a1]
    for _ in range(2, n_max + 1):
        traces.append(params.a1 * traces[-1] - q * traces[-2])
    orders = tuple(q**m + 1 - traces[m] for m in range(1, n_max + 1))
    return OrderSequence(params, tuple(traces), orders)


def _source(params, n):
    return f"frobenius p={params.p} e={params.e} a1={params.a1} n={n}"


def triple_from_order(params: FrobeniusParams, n: int, seq: OrderSequence) -> Triple:
    """The triple {N_n, |a_n - 1|, q^n} of the order identity N + (t - 1) = q^n."""
    if not 1 <= n <= seq.n_max:
        raise ValueError(f"n = {n} outside the computed sequence")
    return _order_triple(params.q**n, seq.traces[n], _source(params, n))


def _order_triple(qn, t, source):
    order = qn + 1 - t
    if t == 1:
        raise Degenerate("trace 1 gives b = t - 1 = 0")
    # t > 1: N + (t-1) = q^n.  t < 1: q^n + (1-t) = N.
    if t > 1:
        return make_triple(order, t - 1, source)
    return make_triple(qn, 1 - t, source)


def hasse_interval(q: int, g: int = 1) -> Interval:
    """[q + 1 - floor(2g sqrt q), q + 1 + floor(2g sqrt q)], clamped below at 1."""
    if q < 2 or g < 1:
        raise ValueError("hasse_interval needs q >= 2 and g >= 1")
    half = isqrt(4 * g * g * q)
    return Interval(max(1, q + 1 - half), q + 1 + half)


@dataclass
class ScanResult:
    records: list = field(default_factory=list)
    skipped: Counter = field(default_factory=Counter)


def _scan_chunk(args):
    q, g, lo, hi, y, rad_cap, budget = args
    out = ScanResult()
    p, e = prime_power_decompose(q)
    bound = claim2_bound(e)
    for order in range(lo, hi + 1):
        try:
            f = factorize(order, budget)
        except BudgetExceeded:
            out.skipped["budget"] += 1
            continue
        if f.largest_prime > y and f.radical > rad_cap:
            continue
        t = q + 1 - order
        try:
            triple = _order_triple(q, t, f"hasse-scan q={q} g={g}")
            report = quality(triple, budget)
        except Degenerate:
            out.skipped["degenerate"] += 1
            continue
        except NotCoprime:
            out.skipped["not_coprime"] += 1
            continue
        except BudgetExceeded:
            out.skipped["budget"] += 1
            continue
        if f.radical**3 <= q and report.gamma <= bound - 0.01:
            log.debug("q=%d N=%d: gamma %.6f below heuristic bound %.6f", q, order, report.gamma, bound)
        out.records.append((order, f, triple, report))
    return out


def _chunks(lo, hi, parts):
    step = max(1, -(-(hi - lo + 1) // parts))
    return [(s, min(hi, s + step - 1)) for s in range(lo, hi + 1, step)]


def _run(func, tasks, threads):
    if threads <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, tasks))


def scan_hasse_smooth(
    q: int,
    g: int,
    y: int,
    rad_cap: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    stats: Counter | None = None,
) -> list[tuple[int, Factorization, Triple, QualityReport]]:
    """Orders in the Hasse interval that are y-smooth or have radical <= rad_cap.

    Each qualifying order N becomes a triple with trace t = q + 1 - N.
    Results are sorted by descending gamma, ties by N.
    """
    check_magnitude(q)
    prime_power_decompose(q)
    iv = hasse_interval(q, g)
    parts = _chunks(iv.lo, iv.hi, max(1, threads) * 4)
    results = _run(_scan_chunk, [(q, g, lo, hi, y, rad_cap, budget) for lo, hi in parts], threads)
    records = []
    for res in results:
        records.extend(res.records)
        if stats is not None:
            stats.update(res.skipped)
    records.sort(key=lambda r: (-r[3].gamma, r[0]))
    return records


@dataclass(frozen=True)
class CoverReport:
    x: int
    genus: int
    covered: bool
    worst_gap: tuple[int, int, int] | None  # (p_k, p_{k+1}, gap) with maximal gap/sqrt(p_k)
    max_ratio: float
    failures: tuple[tuple[int, int, int], ...]


def cover_check(x: int, g: int = 1) -> CoverReport:
    """Check gap(p_k, p_{k+1}) <= 4g sqrt(p_k) for consecutive primes p_k < p_{k+1} <= x."""
    if x < 3:
        raise ValueError("cover_check needs x >= 3")
    primes = sieve_primes(x)
    failures = []
    worst = None
    worst_num, worst_den = 0, 1  # compare gap**2 / p exactly
    for p, nxt in zip(primes, primes[1:]):
        gap = nxt - p
        if gap * gap > 16 * g * g * p:
            failures.append((p, nxt, gap))
        if gap * gap * worst_den > worst_num * p:
            worst_num, worst_den = gap * gap, p
            worst = (p, nxt, gap)
    ratio = (worst_num / worst_den) ** 0.5 if worst else 0.0
    return CoverReport(x, g, not failures, worst, ratio, tuple(failures))


def _frobenius_task(args):
    p, e, n_max, gamma_min, a1_filter, budget = args
    q = p**e
    reports = []
    skipped = Counter()
    # Largest n with q**n under the cap.
    n_cap, qn = 0, q
    while n_cap < n_max and qn <= MAGNITUDE_CAP:
        n_cap += 1
        qn *= q
    bound = isqrt(4 * q)
    a1_values = range(-bound, bound + 1) if a1_filter is None else [a1_filter]
    for a1 in a1_values:
        params = FrobeniusParams(p, e, a1)
        skipped["overflow"] += n_max - n_cap
        if n_cap == 0:
            continue
        seq = frobenius_sequence(params, n_cap)
        for n in range(1, n_cap + 1):
            try:
                triple = triple_from_order(params, n, seq)
                report = quality(triple, budget)
            except Degenerate:
                skipped["degenerate"] += 1
                continue
            except NotCoprime:
                skipped["not_coprime"] += 1
                continue
            except BudgetExceeded:
                skipped["budget"] += 1
                continue
            if report.gamma >= gamma_min:
                reports.append(report)
    return reports, skipped


def _frobenius_stream(q_max, n_max, gamma_min, a1_filter, budget, threads, stats):
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if q_max < 2:
        return
    tasks = [(p, e, n_max, gamma_min, a1_filter, budget) for p, e, _ in prime_powers_up_to(q_max, 1)]
    if threads <= 1:
        results = map(_frobenius_task, tasks)
        for reports, skipped in results:
            if stats is not None:
                stats.update(skipped)
            yield from reports
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for reports, skipped in pool.map(_frobenius_task, tasks, chunksize=8):
            if stats is not None:
                stats.update(skipped)
            yield from reports


def enumerate_triples(
    q_max: int,
    n_max: int,
    gamma_min: float,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    stats: Counter | None = None,
):
    """Stream quality reports of order triples over every (q, a1, n).

    Order is q ascending, then a1, then n; the same for any ``threads``.
    Skipped candidates are tallied in ``stats`` by reason.
    """
    return _frobenius_stream(q_max, n_max, gamma_min, None, budget, threads, stats)


def supersingular_scan(
    q_max: int,
    n_max: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    stats: Counter | None = None,
):
    """Every trace-zero order triple, no quality threshold."""
    return _frobenius_stream(q_max, n_max, float("-inf"), 0, budget, threads, stats)
