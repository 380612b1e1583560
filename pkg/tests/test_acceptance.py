"""Acceptance criteria, each at its stated tolerance.

Every test records a single PASS/FAIL line, listed at the end of the run.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from ordmod4.arithmetic import decompose
from ordmod4.census import census, compute_orders, empirical_density
from ordmod4.report import TABLE_A_LIST
from ordmod4.series import TruncationParams, constant_C, delta_raw, i_sum, j_closed, j_raw
from ordmod4.theory import evaluate, theoretical_profile
from ordmod4.verify import coefficient_symmetry_violations, i_pair_residual

from oracles import brute_census, exponent_gcd

X = 10**7
T = TruncationParams()

# printed empirical densities at x = 10^7: a -> (l = 1, l = 3)
TABLE_EMPIRICAL = {
    5: (0.166771, 0.166810), 33: (0.166991, 0.166274), 45: (0.167141, 0.166324),
    2: (0.065425, 0.226407), 50: (0.065351, 0.226345), 10: (0.166644, 0.166522),
    42: (0.165129, 0.168277), 210: (0.166878, 0.166490), 6: (0.132179, 0.201471),
    14: (0.162875, 0.170289), 30: (0.166354, 0.166991), 11: (0.166531, 0.166766),
    55: (0.166875, 0.166691), 75: (0.166372, 0.166896),
}

# printed theoretical approximations: (a, l) -> value
TABLE_THEORY = {
    (2, 1): 0.06538, (2, 3): 0.22629, (6, 1): 0.13219, (6, 3): 0.20115,
    (14, 1): 0.16273, (14, 3): 0.17061, (42, 1): 0.16498, (42, 3): 0.16835,
}
# a = 50 shares the exact forms of a = 2 and hence their printed approximations
TABLE_THEORY[50, 1], TABLE_THEORY[50, 3] = TABLE_THEORY[2, 1], TABLE_THEORY[2, 3]


@pytest.fixture(scope="module")
def censuses(tables_1e7):
    table, primes = tables_1e7
    out, times = {}, {}
    for a in TABLE_A_LIST:
        t0 = time.perf_counter()
        out[a] = census(a, X, 1, table=table, primes=primes)
        times[a] = time.perf_counter() - t0
    return out, times


@pytest.fixture(scope="module")
def c_value():
    return constant_C(10**6).value


def test_criterion_1_table_reproduction(censuses, tables_1e7, report_criterion):
    results, times = censuses
    worst = 0.0
    for a, (e1, e3) in TABLE_EMPIRICAL.items():
        c = results[a]
        assert sum(c.counts) + c.excluded_count == c.total_primes == 664579
        worst = max(worst, abs(empirical_density(c, 1) - e1), abs(empirical_density(c, 3) - e3))
    table, primes = tables_1e7
    t0 = time.perf_counter()
    par = census(6, X, 8, table=table, primes=primes)
    t8 = time.perf_counter() - t0
    slowest = max(times.values())
    ok = worst <= 1e-5 and slowest <= 60 and t8 <= 10 and par == results[6]
    report_criterion(1, ok, f"28 densities, max |diff| = {worst:.2e} (tol 1e-5); "
                            f"slowest single-thread census {slowest:.2f} s, 8 workers {t8:.2f} s")
    assert worst <= 1e-5
    assert slowest <= 60 and t8 <= 10
    assert par == results[6]


def test_criterion_2_theoretical_values(c_value, report_criterion):
    worst = 0.0
    for (a, l), printed in TABLE_THEORY.items():
        worst = max(worst, abs(evaluate(theoretical_profile(decompose(a)), c_value)[l] - printed))
    sixth = []
    for a in TABLE_EMPIRICAL:
        v = evaluate(theoretical_profile(decompose(a)), c_value)
        for l in (1, 3):
            if (a, l) not in TABLE_THEORY:
                sixth.append(abs(v[l] - 1 / 6))
    worst = max(worst, max(sixth))
    report_criterion(2, worst <= 5e-5, f"printed theoretical values, max |diff| = {worst:.2e} (tol 5e-5)")
    assert worst <= 5e-5


def test_criterion_3_constant_c(report_criterion):
    t0 = time.perf_counter()
    v = constant_C(10**6)
    elapsed = time.perf_counter() - t0
    ok = 0.64345 <= v.value <= 0.64385 and v.tail_bound <= 2 / 10**6 and elapsed <= 5
    report_criterion(3, ok, f"C(10^6) = {v.value:.7f}, tail bound {v.tail_bound:.1e}, {elapsed:.2f} s")
    assert 0.64345 <= v.value <= 0.64385
    assert v.tail_bound <= 2 / 10**6
    assert elapsed <= 5


def test_criterion_4_i_sums(report_criterion):
    residuals = [i_pair_residual(f, T) for f in range(1, 5)]
    finer = [i_pair_residual(f, T.scaled(10)) for f in range(1, 5)]
    ok = max(residuals) <= 5e-3 and all(b < a for a, b in zip(residuals, finer))
    report_criterion(4, ok, f"I pair residuals max {max(residuals):.2e}, "
                            f"after x10 bounds max {max(finer):.2e}")
    assert max(residuals) <= 5e-3
    assert all(b < a for a, b in zip(residuals, finer))


def test_criterion_5_j_sums(c_value, report_criterion):
    pair, closed = 0.0, 0.0
    for s in (3, 5, 15, 21):
        for f in (1, 2):
            j1, j3 = j_raw(f, s, 1), j_raw(f, s, 3)
            pair = max(pair, abs(j1 + j3))
            closed = max(closed, abs(j1 - j_closed(f, s, 1).evaluate(c_value)),
                         abs(j3 - j_closed(f, s, 3).evaluate(c_value)))
    vanish_ok = True
    for s in range(1, 400, 2):
        if any(s % (p * p) == 0 for p in range(3, 20, 2)):  # squarefree odd s < 400
            continue
        has_split = any(s % p == 0 and all(p % q for q in range(2, p)) and p % 4 == 1
                        for p in range(5, s + 1, 4))
        for f in (1, 2):
            zero = all(j_closed(f, s, c) == (0, 0) for c in (1, 3))
            vanish_ok &= zero == has_split
    ok = pair <= 5e-3 and closed <= 5e-3 and vanish_ok
    report_criterion(5, ok, f"J pair sums max {pair:.2e}, raw vs closed max {closed:.2e}, "
                            f"vanishing rule {'holds' if vanish_ok else 'broken'}")
    assert pair <= 5e-3 and closed <= 5e-3
    assert vanish_ok


def test_criterion_6_series_cross_check(c_value, report_criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for a in (2, 5, 6, 10, 14, 42):
        d = decompose(a)
        raw = delta_raw(d, T)
        exact = evaluate(theoretical_profile(d), c_value)
        worst = max(worst, abs(raw[0] - exact[1]), abs(raw[1] - exact[3]))
    elapsed = time.perf_counter() - t0
    report_criterion(6, worst <= 5e-3 and elapsed <= 120,
                     f"delta series vs closed form max {worst:.2e} (tol 5e-3), {elapsed:.1f} s")
    assert worst <= 5e-3
    assert elapsed <= 120


def test_criterion_7_properties(censuses, report_criterion):
    results, _ = censuses
    partition = all(sum(c.counts) + c.excluded_count == c.total_primes for c in results.values())
    brute = True
    for a in (2, 3, 5, 6, 10):
        counts, excluded, total = brute_census(a, 2000)
        c = census(a, 2000, sample_rate=1.0)  # every order re-verified
        brute &= c.counts == tuple(counts) and c.excluded_count == excluded and c.total_primes == total
    from ordmod4.arithmetic import build_spf_table, sieve_primes

    table, primes = build_spf_table(10**5), sieve_primes(10**5)
    base = compute_orders(42, primes, table, 1)
    stable = all(np.array_equal(base, compute_orders(42, primes, table, w)) for w in (2, 4, 8))
    sums, signs = True, True
    for a in range(2, 10**4 + 1):
        if exponent_gcd(a) > 1:
            continue
        deltas = theoretical_profile(decompose(a)).deltas
        sums &= sum((d.alpha + d.beta for d in deltas), Fraction(0)) == 1
        sums &= sum((d.beta for d in deltas), Fraction(0)) == 0
        signs &= deltas[1].beta <= 0
    symmetric = not coefficient_symmetry_violations()
    ok = partition and brute and stable and sums and signs and symmetric
    report_criterion(7, ok, f"partition {partition}, brute force {brute}, worker stability {stable}, "
                            f"sum = 1 {sums}, beta_1 <= 0 {signs}, c symmetry {symmetric}")
    assert ok


def test_criterion_8_unconditional(censuses, report_criterion):
    results, _ = censuses
    worst = 0.0
    for a, c in results.items():
        if decompose(a).a1 == 2:
            want = (5 / 12, 7 / 24)
        else:
            want = (1 / 3, 1 / 3)
        worst = max(worst, abs(empirical_density(c, 0) - want[0]),
                    abs(empirical_density(c, 2) - want[1]))
    report_criterion(8, worst <= 2e-3, f"l = 0, 2 densities max |diff| = {worst:.2e} (tol 2e-3)")
    assert worst <= 2e-3
