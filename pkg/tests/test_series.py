from fractions import Fraction

import pytest

from ordmod4 import PreconditionError
from ordmod4.arithmetic import decompose, euler_phi
from ordmod4.series import (
    SeriesIndex,
    TruncationParams,
    Variant,
    c_coeff,
    constant_C,
    degree,
    delta_raw,
    delta_raw_reference,
    i_sum,
    j_closed,
    j_raw,
)
from ordmod4.theory import CForm, evaluate, theoretical_profile
from ordmod4.verify import coefficient_symmetry_violations, degree_quotient_violations

from oracles import product_C

T = TruncationParams()
C = constant_C(10**6).value


def test_constant_c_examples():
    assert constant_C(3).value == pytest.approx(0.7, abs=1e-15)
    v = constant_C(10**6)
    assert abs(v.value - 0.64365) <= 2e-4
    assert constant_C(10**4).value > v.value
    assert v.tail_bound < constant_C(10**4).tail_bound
    with pytest.raises(PreconditionError):
        constant_C(2)


@pytest.mark.parametrize("bound", [3, 100, 10**4, 2 * 10**5])
def test_constant_c_against_plain_product(bound):
    assert constant_C(bound).value == pytest.approx(product_C(bound), rel=1e-12)


def test_constant_c_tail_bound_holds():
    # the value at 10^4 must be within its own tail bound of the value at 10^6
    coarse, fine = constant_C(10**4), constant_C(10**6)
    assert coarse.value - fine.value <= coarse.value * coarse.tail_bound


def test_series_index():
    idx = SeriesIndex.make(1, 0, Variant.K_FORM)
    assert (idx.k, idx.k0) == (2, 2)
    idx = SeriesIndex.make(2, 1, Variant.K_PRIME_FORM)
    assert (idx.k, idx.k0) == (28, 14)
    assert SeriesIndex.from_odd(3, 9) == SeriesIndex.make(3, 2, Variant.K_FORM)


def test_degree_examples():
    five = decompose(5)
    idx = SeriesIndex.make(1, 0, Variant.K_FORM)
    assert degree(idx, 1, 1, five) == 8
    # L = 5 is divisible by a1 = 5, so the full 160 is halved
    assert degree(idx, 5, 1, five) == 80
    assert 5 * 2 * 4 * euler_phi(5) // 2 == 80
    with pytest.raises(PreconditionError):
        degree(idx, 4, 1, five)
    with pytest.raises(PreconditionError):
        degree(idx, 1, 3, five)


def test_coefficient_examples():
    two, five, six = decompose(2), decompose(5), decompose(6)
    idx = SeriesIndex.make(1, 1, Variant.K_PRIME_FORM)  # k = 14, k0 = 14
    for dec in (two, five, six):
        assert c_coeff(1, idx, 1, 2, dec) == c_coeff(3, idx, 1, 2, dec) == 0
    for n in (1, 3, 5, 15):
        for d in (1, 7):
            assert (c_coeff(1, idx, n, d, two), c_coeff(3, idx, n, d, two)) == (0, 1)
            assert (c_coeff(1, idx, n, d, five), c_coeff(3, idx, n, d, five)) == (1, 1)
    # 3 | L: the exceptional row of a1' = 3 (mod 4)
    assert (c_coeff(1, idx, 3, 1, six), c_coeff(3, idx, 3, 1, six)) == (1, 0)
    # 3 does not divide L = 7: both survive
    assert (c_coeff(1, idx, 1, 1, six), c_coeff(3, idx, 1, 1, six)) == (1, 1)


def test_symmetry_with_two_exceptions():
    assert coefficient_symmetry_violations() == []


def test_degree_quotient():
    assert degree_quotient_violations() == []


def test_i_sum():
    for f in (1, 3):
        s = i_sum(f, 1) + i_sum(f, 3)
        assert abs(s - 2.0**-f) <= T.tolerance
        for c in (1, 3):
            assert 0 < i_sum(f, c) < 2.0**-f


def test_j_closed_examples():
    assert j_closed(1, 1, 1) == CForm(Fraction(1, 4), Fraction(1, 4))
    assert j_closed(2, 15, 1) == CForm(Fraction(0))
    assert j_closed(1, 3, 1) == CForm(Fraction(0), Fraction(-3, 28))
    assert j_closed(1, 3, 3) == -j_closed(1, 3, 1)
    with pytest.raises(PreconditionError):
        j_closed(1, 9, 1)


def test_j_raw_examples():
    assert abs(j_raw(1, 1, 1) - (1 + C) / 4) <= T.tolerance
    assert abs(j_raw(1, 3, 1) + j_raw(1, 3, 3)) <= T.tolerance
    for c in (1, 3):
        assert abs(j_raw(2, 15, c)) <= T.tolerance


def test_delta_raw_fast_matches_reference():
    small = TruncationParams(prime_bound=1000, k_bound=41, f_max=4, n_bound=40)
    for a in (2, 5, 6, 7, 10, 42):
        fast = delta_raw(decompose(a), small)
        slow = delta_raw_reference(decompose(a), small)
        assert fast == pytest.approx(slow, abs=1e-12)


def test_delta_raw_a5():
    d1, d3 = delta_raw(decompose(5))
    assert abs(d1 - 1 / 6) <= T.tolerance
    assert abs(d3 - 1 / 6) <= T.tolerance
    assert abs(d1 + d3 - 1 / 3) <= T.tolerance


def test_delta_raw_a2():
    d1, _ = delta_raw(decompose(2))
    assert abs(d1 - 0.06538) <= T.tolerance
    assert abs(d1 - evaluate(theoretical_profile(decompose(2)), C)[1]) <= T.tolerance


def test_truncation_params():
    with pytest.raises(PreconditionError):
        TruncationParams(k_bound=1)
    with pytest.raises(PreconditionError):
        TruncationParams(tolerance=0)
    assert T.scaled(10).k_bound == 10**5
