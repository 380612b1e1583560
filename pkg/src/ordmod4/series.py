"""Truncated evaluation of the density series and their closed forms.

Notation: for f >= 1 and an odd number m, the series index is
``k = 2**f * m``; m = 1 (mod 4) is the plain form, m = 3 (mod 4) the
primed form.  The core ``k0`` is ``2 * rad(m)``.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, prod

import numpy as np

from . import kernels
from .arithmetic import (
    _base_primes,
    build_spf_table,
    euler_phi,
    lcm,
    mobius_table,
    moebius,
    odd_part,
    radical_table,
    totient_table,
    trial_factor,
)
from .errors import PreconditionError
from .theory import CForm, odd_prime_weight


@dataclass(frozen=True)
class TruncationParams:
    prime_bound: int = 10**6
    k_bound: int = 10**4
    f_max: int = 12
    n_bound: int = 10**4
    tolerance: float = 5e-3

    def __post_init__(self):
        for name in ("prime_bound", "k_bound", "f_max", "n_bound"):
            if getattr(self, name) < 2:
                raise PreconditionError(f"{name} must be >= 2")
        if not self.tolerance > 0:
            raise PreconditionError("tolerance must be positive")

    def scaled(self, factor):
        """Same tolerance with k_bound and prime_bound multiplied by ``factor``."""
        return TruncationParams(self.prime_bound * factor, self.k_bound * factor,
                                self.f_max, self.n_bound, self.tolerance)


@dataclass(frozen=True)
class EulerProductValue:
    value: float
    prime_bound: int
    tail_bound: float


def constant_C(prime_bound):
    """Partial Euler product for C over primes p = 3 (mod 4), p <= prime_bound.

    ``tail_bound`` bounds |log C - log(value)|.  Each omitted factor is
    1 - t with t = 2p/((p^2+1)(p-1)) <= 2/(p(p-2)), and for p >= 7 we have
    -log(1-t) <= 1.07 t.  Summing 2/(n(n-2)) over odd n > N telescopes to
    at most 1/(N-1), so 2/N is a valid bound for every N >= 3.
    """
    if prime_bound < 3:
        raise PreconditionError(f"prime_bound must be >= 3, got {prime_bound}")
    p = _base_primes(prime_bound)
    p = p[p % 4 == 3].astype(np.float64)
    log_value = np.sum(np.log1p(-2 * p / ((p * p + 1) * (p - 1))))
    return EulerProductValue(float(np.exp(log_value)), prime_bound, 2 / prime_bound)


# --- series indices, degrees and coefficients --------------------------------


class Variant(str, Enum):
    K_FORM = "K_FORM"
    K_PRIME_FORM = "K_PRIME_FORM"


@dataclass(frozen=True)
class SeriesIndex:
    f: int
    l: int
    variant: Variant
    k: int
    k0: int

    @classmethod
    def make(cls, f, l, variant):
        if f < 1 or l < 0:
            raise PreconditionError("need f >= 1 and l >= 0")
        m = 4 * l + (1 if variant is Variant.K_FORM else 3)
        return cls(f, l, variant, 2**f * m, 2 * trial_factor(m).radical)

    @classmethod
    def from_odd(cls, f, m):
        """Index with odd part m; the variant follows from m mod 4."""
        if m < 1 or m % 2 == 0:
            raise PreconditionError(f"odd part must be odd and positive, got {m}")
        variant = Variant.K_FORM if m % 4 == 1 else Variant.K_PRIME_FORM
        return cls.make(f, m // 4, variant)


def _check_term(idx, n, d):
    if n < 1 or moebius(n) == 0:
        raise PreconditionError(f"n must be squarefree, got {n}")
    if d < 1 or idx.k0 % d:
        raise PreconditionError(f"d = {d} does not divide k0 = {idx.k0}")


def _halves(decomp, L):
    # a1 = 1 (mod 4): a1 | L;  a1 = 2: a1' | L;  a1 = 3: a1 | L
    return L % decomp.target == 0


def _coefficient(l_class, f, decomp, d_odd, divides):
    """The 0/1 coefficient table, with ``divides`` meaning a1 (or a1') | L."""
    if not d_odd:
        return 0
    r = decomp.a1 % 4
    if r == 1 or not divides:
        return 1
    if r == 2:
        if f == 2:
            return 0
        if f >= 3:
            return 1
        # f == 1: only one of the two classes survives
        keep = 3 if decomp.a1_prime % 4 == 1 else 1
        return int(l_class == keep)
    return 0 if f == 1 else 1


def _odd_lcm(n, k, d):
    return lcm(odd_part(n), odd_part(k) * odd_part(d))


def degree(idx, n, d, decomp):
    """Degree of the Kummer-cyclotomic field attached to (k, n, d)."""
    _check_term(idx, n, d)
    L = _odd_lcm(n, idx.k, d)
    full = n * idx.k * 2 ** (idx.f + 1) * euler_phi(L)
    return full // 2 if _halves(decomp, L) else full


def c_coeff(l_class, idx, n, d, decomp):
    if l_class not in (1, 3):
        raise PreconditionError(f"l_class must be 1 or 3, got {l_class}")
    _check_term(idx, n, d)
    L = lcm(odd_part(n), odd_part(idx.k) * d)
    return _coefficient(l_class, idx.f, decomp, d % 2 == 1, _halves(decomp, L))


# --- precomputed tables -------------------------------------------------------


def _multiplicative(n, local):
    """Array g[0..n] of the multiplicative function with g(p^e) = local(p, e)."""
    g = np.ones(n + 1)
    for p in _base_primes(n).tolist():
        pe, e, prev = p, 1, 1.0
        while pe <= n:
            val = local(p, e)
            g[pe::pe] *= val / prev
            prev, pe, e = val, pe * p, e + 1
    return g


@lru_cache(maxsize=8)
def _odd_prime_log_product(prime_bound):
    """log of prod over odd p <= prime_bound of (1 - 1/(p(p-1)))."""
    p = _base_primes(prime_bound)[1:].astype(np.float64)
    return float(np.sum(np.log1p(-1 / (p * (p - 1)))))


@lru_cache(maxsize=8)
def _odd_m_table(k_bound):
    """Odd m <= k_bound with their radicals and totients."""
    m = np.arange(1, k_bound + 1, 2, dtype=np.int64)
    return m, radical_table(k_bound)[m], totient_table(k_bound)[m]


@lru_cache(maxsize=8)
def _squarefree_n(n_bound, odd_only):
    """Squarefree n <= n_bound as (n, odd part, mu(n)/n)."""
    mu = mobius_table(n_bound)
    n = np.flatnonzero(mu).astype(np.int64)
    if odd_only:
        n = n[n % 2 == 1]
    n_odd = np.where(n % 2 == 0, n // 2, n)
    return n, n_odd, mu[n] / n


@lru_cache(maxsize=8)
def _phi(n_bound):
    return totient_table(n_bound)


def _n_sums(radicals, targets, n_bound, odd_only):
    _, n_odd, weights = _squarefree_n(n_bound, odd_only)
    return kernels.split_n_sums(
        np.ascontiguousarray(radicals, dtype=np.int64),
        np.ascontiguousarray(targets, dtype=np.int64),
        np.ascontiguousarray(n_odd, dtype=np.int64),
        np.ascontiguousarray(weights, dtype=np.float64),
        np.ascontiguousarray(_phi(n_bound), dtype=np.int64),
    )


def n_sum_remainder(n_bound):
    """Heuristic size of sum_{n > N} 1/(n phi(n)), which is ~ 1.9436/N."""
    return 1.943596436820759 / n_bound


# --- I and J sums ------------------------------------------------------------


def _check_class(l_class):
    if l_class not in (1, 3):
        raise PreconditionError(f"l_class must be 1 or 3, got {l_class}")


def i_sum(f, l_class, t=TruncationParams()):
    """Truncated I-sum: 2^-f * sum over odd k = l_class (mod 4) of a product weight."""
    _check_class(l_class)
    if f < 1:
        raise PreconditionError("f must be >= 1")
    B = t.prime_bound

    def local(q, e):
        w = (q + 1) / q ** (2 * e + 1)
        return w / (1 - 1 / (q * (q - 1))) if q <= B else w

    g = _multiplicative(t.k_bound, local)
    m = np.arange(l_class, t.k_bound + 1, 4)
    return 2.0**-f * np.exp(_odd_prime_log_product(B)) * float(np.sum(g[m]))


def _check_s(s):
    if s < 1 or s % 2 == 0 or moebius(s) == 0:
        raise PreconditionError(f"s must be odd and squarefree, got {s}")


def j_closed(f, s, l_class):
    """Exact value of the constrained sum J as alpha + beta*C."""
    _check_class(l_class)
    _check_s(s)
    if f < 1:
        raise PreconditionError("f must be >= 1")
    half = Fraction(1, 2 ** (f + 1))
    sign = 1 if l_class == 1 else -1
    if s == 1:
        return CForm(half, sign * half)
    primes = trial_factor(s).primes
    if any(p % 4 == 1 for p in primes):
        return CForm(Fraction(0))
    return CForm(Fraction(0), sign * half * prod(map(odd_prime_weight, primes)))


def j_raw(f, s, l_class, t=TruncationParams()):
    """Direct truncated evaluation of J, keeping the constrained n-sum explicit.

    For each odd k in the class, the d-sum is taken in closed form and the
    n-sum runs over odd squarefree n <= n_bound divisible by s / gcd(s, k).
    """
    _check_class(l_class)
    _check_s(s)
    if f < 1:
        raise PreconditionError("f must be >= 1")
    return 2.0**-f * _j_unscaled(s, l_class, t.k_bound, t.n_bound)


@lru_cache(maxsize=64)
def _j_unscaled(s, l_class, k_bound, n_bound):
    m, rad, _ = _odd_m_table(k_bound)
    pre = _multiplicative(k_bound, lambda q, e: (q + 1) / (q ** (2 * e) * (q - 1)))
    sel = m % 4 == l_class
    m, rad = m[sel], rad[sel]
    radicals, inverse = np.unique(rad, return_inverse=True)
    targets = np.array([s // gcd(s, int(r)) for r in radicals.tolist()], dtype=np.int64)
    _, inside = _n_sums(radicals, targets, n_bound, odd_only=True)
    return float(np.sum(pre[m] * inside[inverse]))


# --- the density series ------------------------------------------------------


def _prime_divisor_sets(k_bound):
    spf = build_spf_table(max(k_bound, 2))
    out = {}
    for r in np.unique(_odd_m_table(k_bound)[1]).tolist():
        ps, x = [], r
        while x > 1:
            p = int(spf.spf[x])
            ps.append(p)
            x //= p
        out[r] = ps
    return out


def _f_weights(f_max):
    """Sum of 2^-(2f+1) over f = 1, f = 2 and 3 <= f <= f_max."""
    w = [2.0 ** -(2 * f + 1) for f in range(1, f_max + 1)]
    return {1: w[0], 2: w[1] if f_max >= 2 else 0.0, 3: sum(w[2:])}


def delta_raw(decomp, t=TruncationParams()):
    """Truncated (delta_1, delta_3) from the double series.

    The terms summed are those with f <= f_max, odd part m <= k_bound, every
    d | k0 and squarefree n <= n_bound.  The n-sum depends on (m, d) only
    through rad(m) and whether a1 (or a1') divides lcm(n_odd, m d), so it is
    accumulated once per radical and split by that divisibility.
    """
    m_arr, rad_arr, phi_arr = _odd_m_table(t.k_bound)
    radicals = np.unique(rad_arr)
    T = decomp.target
    targets = np.array([T // gcd(T, int(r)) for r in radicals.tolist()], dtype=np.int64)
    outside, inside = _n_sums(radicals, targets, t.n_bound, odd_only=False)
    sums = {int(r): (a, b) for r, a, b in zip(radicals.tolist(), outside.tolist(), inside.tolist())}
    fw = _f_weights(t.f_max)
    prime_sets = _prime_divisor_sets(t.k_bound)

    # totals[(variant residue, l_class)]
    totals = {(1, 1): 0.0, (1, 3): 0.0, (3, 1): 0.0, (3, 3): 0.0}
    for m, r, phi_m in zip(m_arr.tolist(), rad_arr.tolist(), phi_arr.tolist()):
        ps = prime_sets[r]
        A, B = sums[r]
        core = 2 * r / (phi_m // (m // r))  # k0 / phi(k0) = 2 r / phi(r)
        for size in range(len(ps) + 1):
            for sub in combinations(ps, size):
                d_odd = prod(sub)
                mu_d = -1 if size % 2 else 1
                for d in (d_odd, 2 * d_odd):
                    mu = mu_d if d == d_odd else -mu_d
                    is_odd = d % 2 == 1
                    # phi(m d) = phi(m) d since every prime of d divides m
                    base = core * mu / (d * m * phi_m * d) if is_odd else 0.0
                    for l_class in (1, 3):
                        acc = 0.0
                        for fc in (1, 2, 3):
                            c_out = _coefficient(l_class, fc, decomp, is_odd, False)
                            c_in = _coefficient(l_class, fc, decomp, is_odd, True)
                            if c_out or c_in:
                                acc += fw[fc] * (c_out * A + 2 * c_in * B)
                        totals[(m % 4, l_class)] += base * acc
    delta1 = totals[(1, 1)] + totals[(3, 3)]
    delta3 = totals[(1, 3)] + totals[(3, 1)]
    return delta1, delta3


def delta_raw_reference(decomp, t):
    """Term-by-term evaluation of the same truncated series.

    Calls :func:`degree` and :func:`c_coeff` for every (f, k, d, n); only
    practical for small bounds.  Used to cross-check :func:`delta_raw`.
    """
    ns = [n for n in range(1, t.n_bound + 1) if moebius(n) != 0]
    out = {1: 0.0, 3: 0.0}
    for f in range(1, t.f_max + 1):
        for m in range(1, t.k_bound + 1, 2):
            idx = SeriesIndex.from_odd(f, m)
            ratio = idx.k0 / euler_phi(idx.k0)
            divisors = [d for d in range(1, idx.k0 + 1) if idx.k0 % d == 0]
            for d in divisors:
                for n in ns:
                    deg = degree(idx, n, d, decomp)
                    for l_class in (1, 3):
                        c = c_coeff(l_class, idx, n, d, decomp)
                        if not c:
                            continue
                        # delta_1 takes c^(1) on k and c^(3) on k'; delta_3 the reverse
                        target = l_class if idx.variant is Variant.K_FORM else 4 - l_class
                        out[target] += ratio * moebius(d) / d * moebius(n) * c / deg
    return out[1], out[3]


__all__ = [
    "EulerProductValue",
    "SeriesIndex",
    "TruncationParams",
    "Variant",
    "c_coeff",
    "constant_C",
    "degree",
    "delta_raw",
    "delta_raw_reference",
    "i_sum",
    "j_closed",
    "j_raw",
    "n_sum_remainder",
]
