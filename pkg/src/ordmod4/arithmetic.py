"""Primes, factorization and elementary arithmetic functions."""

from dataclasses import dataclass, field
from enum import Enum
from math import gcd, isqrt, prod

import numpy as np

from . import kernels
from .errors import DomainError, PreconditionError, ResourceError

#: Largest table/sieve bound accepted by default (32-bit SPF entries, ~400 MB).
MAX_TABLE_BOUND = 10**8
#: Moduli accepted by pow_mod (products are formed at double width).
MAX_MODULUS = 1 << 63

_SEGMENT = 1 << 20


@dataclass(frozen=True)
class FactoredNat:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple = ()

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self):
        return prod(self.primes)

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class SpfTable:
    """Smallest prime factor of every integer in ``2..bound``.

    ``spf`` is a read-only int32 array indexed directly by the integer;
    entries 0 and 1 are placeholders.
    """

    bound: int
    spf: np.ndarray = field(repr=False)

    def __getitem__(self, m):
        return int(self.spf[m])

    def is_prime(self, m):
        return m >= 2 and int(self.spf[m]) == m


def _check_budget(bound, limit, what):
    if bound > limit:
        raise ResourceError(
            f"{what} bound {bound} exceeds the configured limit {limit}; "
            f"use a smaller x or pass limit= explicitly if memory allows "
            f"(~{4 * bound / 2**20:.0f} MiB needed)"
        )


def _base_primes(n):
    """Primes <= n by a plain (non-segmented) sieve; n is small."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def iter_prime_segments(x, segment=_SEGMENT):
    """Yield ascending numpy arrays of primes covering ``[2, x]``."""
    base = _base_primes(isqrt(x))
    lo = 0
    while lo <= x:
        hi = min(lo + segment, x + 1)
        mask = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            mask[: min(2, hi)] = False
        for p in base.tolist():
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            mask[start - lo :: p] = False
        yield np.flatnonzero(mask).astype(np.int64) + lo
        lo = hi


def sieve_primes(x, *, limit=MAX_TABLE_BOUND, segment=_SEGMENT):
    """All primes <= x as an ascending int64 array (segmented sieve)."""
    if x < 2:
        raise PreconditionError(f"sieve_primes needs x >= 2, got {x}")
    _check_budget(x, limit, "prime sieve")
    return np.concatenate(list(iter_prime_segments(x, segment)))


def build_spf_table(bound, *, limit=MAX_TABLE_BOUND):
    if bound < 2:
        raise PreconditionError(f"SPF table needs bound >= 2, got {bound}")
    _check_budget(bound, limit, "SPF table")
    spf = np.zeros(bound + 1, dtype=np.int32)
    for p in range(2, isqrt(bound) + 1):
        if spf[p] == 0:
            tail = spf[p * p :: p]
            tail[tail == 0] = p
    unset = np.flatnonzero(spf == 0)
    spf[unset] = unset
    spf[0], spf[1] = 0, 1
    spf.flags.writeable = False
    return SpfTable(bound, spf)


def factor(m, table):
    """Factor ``1 <= m <= table.bound`` by repeated SPF lookups."""
    if not 1 <= m <= table.bound:
        raise PreconditionError(f"cannot factor {m} with a table of bound {table.bound}")
    out = []
    while m > 1:
        p = int(table.spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return FactoredNat(int(prod(p**e for p, e in out)), tuple(out))


def trial_factor(m):
    """Factor an arbitrary positive integer by trial division."""
    if m < 1:
        raise PreconditionError(f"cannot factor {m}")
    value, out = m, []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return FactoredNat(value, tuple(out))


def _as_factored(m):
    return m if isinstance(m, FactoredNat) else trial_factor(m)


def pow_mod(base, exp, modulus):
    if not 2 <= modulus < MAX_MODULUS:
        raise PreconditionError(f"modulus must lie in [2, 2**63), got {modulus}")
    if base < 0 or exp < 0:
        raise PreconditionError("pow_mod takes non-negative base and exponent")
    if exp >= 1 << 64:
        return pow(base, exp, modulus)
    return int(kernels.pow_mod(base % modulus, exp, modulus))


def odd_part(m):
    if m < 1:
        raise PreconditionError(f"odd_part needs m >= 1, got {m}")
    return m >> ((m & -m).bit_length() - 1)


def lcm(x, y):
    if x < 1 or y < 1:
        raise PreconditionError("lcm takes positive integers")
    return x // gcd(x, y) * y


def euler_phi(m):
    fm = _as_factored(m)
    return prod((p - 1) * p ** (e - 1) for p, e in fm.factors)


def moebius(m):
    fm = _as_factored(m)
    if any(e > 1 for _, e in fm.factors):
        return 0
    return -1 if len(fm.factors) % 2 else 1


def integer_root(a, h):
    """Floor of the real h-th root of a >= 0."""
    if a < 2:
        return a
    x = 1 << -(-a.bit_length() // h)
    while True:
        y = ((h - 1) * x + a // x ** (h - 1)) // h
        if y >= x:
            return x
        x = y


def perfect_power_exponent(a):
    """Largest h >= 2 with a = r**h for an integer r, or 1 if there is none."""
    for h in range(a.bit_length() - 1, 1, -1):
        if integer_root(a, h) ** h == a:
            return h
    return 1


# --- tables over 1..N -------------------------------------------------------


def mobius_table(n):
    """mu(0..n) as int8 (mu(0) = 0)."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    for p in _base_primes(n).tolist():
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    return mu


def totient_table(n):
    """phi(0..n) as int64 (phi(0) = 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    for p in _base_primes(n).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi


def radical_table(n):
    rad = np.ones(n + 1, dtype=np.int64)
    rad[0] = 0
    for p in _base_primes(n).tolist():
        rad[p::p] *= p
    return rad


# --- squarefree decomposition ------------------------------------------------


class CaseTag(str, Enum):
    """Branch of the density theorem selected by the squarefree part of a."""

    I_a1_mod4_eq_1 = "I_a1_mod4_eq_1"
    I_a1_mod4_eq_3 = "I_a1_mod4_eq_3"
    II_i = "II_i"
    II_ii_1 = "II_ii_1"
    II_ii_2 = "II_ii_2"
    III_iii_1 = "III_iii_1"
    III_iii_2 = "III_iii_2"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``a = a1 * a2**2`` with ``a1`` squarefree, plus the case tag.

    ``a1_prime`` is ``a1 / 2`` when ``a1 = 2 (mod 4)`` and None otherwise;
    ``a1_prime_factors`` lists ``(p, p % 4)`` for the primes of ``a1_prime``.
    """

    a: int
    a1: int
    a2: int
    a1_prime: int | None
    case_tag: CaseTag
    a1_prime_factors: tuple = ()

    @property
    def target(self):
        """The odd squarefree number whose divisibility halves degrees."""
        return self.a1 if self.a1_prime is None else self.a1_prime


def decompose(a):
    if a < 2:
        raise PreconditionError(f"decompose needs a >= 2, got {a}")
    h = perfect_power_exponent(a)
    if h > 1:
        raise DomainError(
            f"{a} = {integer_root(a, h)}^{h} is a perfect power, "
            "excluded by the hypothesis of the density theorem"
        )
    fa = trial_factor(a)
    a1 = prod(p for p, e in fa.factors if e % 2)
    a2 = prod(p ** (e // 2) for p, e in fa.factors)
    if a1 % 4 == 1:
        return SquarefreeDecomposition(a, a1, a2, None, CaseTag.I_a1_mod4_eq_1)
    if a1 % 4 == 3:
        return SquarefreeDecomposition(a, a1, a2, None, CaseTag.I_a1_mod4_eq_3)
    a1p = a1 // 2
    pf = tuple((p, p % 4) for p in trial_factor(a1p).primes)
    if a1p == 1:
        tag = CaseTag.II_i
    else:
        split = any(r == 1 for _, r in pf)
        if a1p % 4 == 1:
            tag = CaseTag.II_ii_1 if split else CaseTag.II_ii_2
        else:
            tag = CaseTag.III_iii_1 if split else CaseTag.III_iii_2
    return SquarefreeDecomposition(a, a1, a2, a1p, tag, pf)
