"""Numerical checks tying the truncated series to their closed forms."""

from dataclasses import dataclass
from itertools import product

from .arithmetic import decompose, euler_phi, moebius, trial_factor
from .series import (
    SeriesIndex,
    TruncationParams,
    _halves,
    _odd_lcm,
    c_coeff,
    constant_C,
    degree,
    delta_raw,
    i_sum,
    j_closed,
    j_raw,
)
from .theory import evaluate, theoretical_profile

I_GRID_F = (1, 2, 3, 4)
J_GRID_S = (3, 5, 15, 21)
J_GRID_F = (1, 2)
CROSS_CHECK_A = (2, 5, 6, 10, 14, 42)
SYMMETRY_A = (2, 5, 6, 7, 10, 14, 42)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    passed: bool


def _le(name, value, bound):
    return Check(name, value, bound, value <= bound)


def i_pair_residual(f, t):
    return abs(i_sum(f, 1, t) + i_sum(f, 3, t) - 2.0**-f)


def i_sum_checks(t):
    out = [_le(f"I(f={f}) pair sum", i_pair_residual(f, t), t.tolerance) for f in I_GRID_F]
    finer = t.scaled(10)
    for f in I_GRID_F:
        coarse, fine = i_pair_residual(f, t), i_pair_residual(f, finer)
        out.append(Check(f"I(f={f}) residual shrinks x10", fine, coarse, fine < coarse))
    return out


def j_sum_checks(t, c_value):
    out = []
    for s, f in product(J_GRID_S, J_GRID_F):
        j1, j3 = j_raw(f, s, 1, t), j_raw(f, s, 3, t)
        out.append(_le(f"J(f={f},s={s}) pair sum", abs(j1 + j3), t.tolerance))
        for l_class, raw in ((1, j1), (3, j3)):
            closed = j_closed(f, s, l_class).evaluate(c_value)
            out.append(_le(f"J{l_class}(f={f},s={s}) vs closed form", abs(raw - closed), t.tolerance))
    for s in range(1, 200, 2):
        if moebius(s) == 0:
            continue
        split = any(p % 4 == 1 for p in trial_factor(s).primes)
        zero = all(j_closed(1, s, c).alpha == 0 and j_closed(1, s, c).beta == 0 for c in (1, 3))
        if zero != split:
            out.append(Check(f"J closed form vanishing (s={s})", 1.0, 0.0, False))
            break
    else:
        out.append(Check("J closed form vanishes iff s has p = 1 mod 4", 0.0, 0.0, True))
    return out


def delta_checks(t, c_value, a_values=CROSS_CHECK_A):
    out = []
    for a in a_values:
        d = decompose(a)
        raw1, raw3 = delta_raw(d, t)
        exact = evaluate(theoretical_profile(d), c_value)
        out.append(_le(f"delta_1 series vs closed form (a={a})", abs(raw1 - exact[1]), t.tolerance))
        out.append(_le(f"delta_3 series vs closed form (a={a})", abs(raw3 - exact[3]), t.tolerance))
    return out


def coefficient_symmetry_violations(a_values=SYMMETRY_A, k_max=200, n_max=50):
    """Inputs where c^(1) != c^(3) outside the two expected rows, or vice versa."""
    bad = []
    ns = [n for n in range(1, n_max + 1) if moebius(n) != 0]
    for a in a_values:
        dec = decompose(a)
        for f in range(1, k_max.bit_length()):
            for m in range(1, k_max // 2**f + 1, 2):
                idx = SeriesIndex.from_odd(f, m)
                divisors = [d for d in range(1, idx.k0 + 1) if idx.k0 % d == 0]
                for d, n in product(divisors, ns):
                    c1 = c_coeff(1, idx, n, d, dec)
                    c3 = c_coeff(3, idx, n, d, dec)
                    L = _odd_lcm(n, idx.k, d)
                    exceptional = (dec.a1 % 4 == 2 and d % 2 == 1 and f == 1
                                   and _halves(dec, L))
                    if (c1 != c3) != exceptional:
                        bad.append((a, idx.k, n, d, c1, c3))
    return bad


def degree_quotient_violations(a_values=SYMMETRY_A, k_max=200, n_max=50):
    bad = []
    ns = [n for n in range(1, n_max + 1) if moebius(n) != 0]
    for a in a_values:
        dec = decompose(a)
        for f in range(1, k_max.bit_length()):
            for m in range(1, k_max // 2**f + 1, 2):
                idx = SeriesIndex.from_odd(f, m)
                for d in (d for d in range(1, idx.k0 + 1) if idx.k0 % d == 0):
                    for n in ns:
                        full = n * idx.k * 2 ** (f + 1) * euler_phi(_odd_lcm(n, idx.k, d))
                        deg = degree(idx, n, d, dec)
                        if full % deg or full // deg not in (1, 2):
                            bad.append((a, idx.k, n, d, deg))
    return bad


def verification_suite(t=TruncationParams()):
    c_value = constant_C(t.prime_bound).value
    checks = i_sum_checks(t)
    checks += j_sum_checks(t, c_value)
    checks += delta_checks(t, c_value)
    sym = coefficient_symmetry_violations()
    checks.append(Check("coefficient symmetry outside the two exceptional rows",
                        float(len(sym)), 0.0, not sym))
    deg = degree_quotient_violations()
    checks.append(Check("degree halving quotient in {1, 2}", float(len(deg)), 0.0, not deg))
    return checks
