"""Order of a mod p over all primes p <= x, bucketed by residue mod 4."""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from . import kernels
from .arithmetic import (
    MAX_TABLE_BOUND,
    build_spf_table,
    factor,
    pow_mod,
    sieve_primes,
)
from .errors import DomainError, OrderCheckError, PreconditionError

#: Fraction of counted primes whose order is re-verified after a census.
SAMPLE_RATE = 0.01


@dataclass(frozen=True)
class OrderCensus:
    a: int
    x: int
    counts: tuple
    excluded_count: int
    total_primes: int

    def __post_init__(self):
        if len(self.counts) != 4:
            raise ValueError("counts must have one entry per class mod 4")
        if sum(self.counts) + self.excluded_count != self.total_primes:
            raise ValueError(
                f"partition identity fails: {self.counts} + {self.excluded_count}"
                f" != {self.total_primes}"
            )
        if self.excluded_count < 1:
            raise ValueError("the prime 2 is always excluded")


def multiplicative_order(a, p, p_minus_1):
    """Least t >= 1 with a**t = 1 (mod p), given the factorization of p - 1."""
    if p_minus_1.value != p - 1:
        raise PreconditionError(f"{p_minus_1.value} is not {p} - 1")
    r = a % p
    if r == 0:
        raise DomainError(f"{p} divides {a}; the order is undefined")
    if r == 1:
        return 1
    t = p - 1
    for q, _ in p_minus_1.factors:
        while t % q == 0 and pow_mod(r, t // q, p) == 1:
            t //= q
    return t


def classify_mod4(order):
    if order < 1:
        raise PreconditionError(f"order must be >= 1, got {order}")
    return order % 4


def _blocks(n, workers):
    edges = np.linspace(0, n, workers + 1).astype(np.int64)
    return list(zip(edges[:-1].tolist(), edges[1:].tolist()))


def compute_orders(a, primes, table, workers=1):
    """Order of ``a`` mod each prime (0 for 2 and for primes dividing a).

    The prime array is split into contiguous blocks, one per worker; the
    compiled kernel releases the GIL so threads run concurrently.
    """
    out = np.zeros(len(primes), dtype=np.int64)
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    spf = np.ascontiguousarray(table.spf, dtype=np.int32)
    if workers <= 1 or len(primes) < 2 * workers:
        kernels.orders_block(a, primes, spf, out)
        return out

    def run(block):
        lo, hi = block
        kernels.orders_block(a, primes[lo:hi], spf, out[lo:hi])

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run, _blocks(len(primes), workers)))
    return out


def check_order(a, p, t, table):
    """Re-verify that t is the order of a mod p using only pow and factor."""
    if (p - 1) % t:
        return False
    if pow(a, t, p) != 1:
        return False
    return all(pow(a, t // q, p) != 1 for q in factor(t, table).primes)


def census(a, x, workers=1, *, table=None, primes=None, sample_rate=SAMPLE_RATE,
           limit=MAX_TABLE_BOUND):
    """Count primes p <= x by the residue mod 4 of the order of a mod p.

    ``table`` and ``primes`` may be passed to reuse an SPF table and prime
    list across several values of ``a``; both must cover ``x``.
    """
    if a < 2:
        raise PreconditionError(f"census needs a >= 2, got {a}")
    if a >= 1 << 63:
        raise PreconditionError("census needs a < 2**63")
    if x < 3:
        raise PreconditionError(f"census needs x >= 3, got {x}")
    if workers < 1:
        raise PreconditionError(f"workers must be >= 1, got {workers}")
    if table is None or table.bound < x:
        table = build_spf_table(x, limit=limit)
    if primes is None:
        primes = sieve_primes(x, limit=limit)
    else:
        primes = primes[: np.searchsorted(primes, x, side="right")]

    orders = compute_orders(a, primes, table, workers)
    counted = orders > 0
    counts = np.bincount(orders[counted] % 4, minlength=4)
    total = len(primes)
    excluded = total - int(counted.sum())

    _spot_check(a, primes, orders, table, sample_rate)
    return OrderCensus(a, x, tuple(int(c) for c in counts), excluded, total)


def _spot_check(a, primes, orders, table, rate):
    idx = np.flatnonzero(orders > 0)
    k = min(len(idx), int(np.ceil(rate * len(idx))))
    if k == 0:
        return
    rng = random.Random(a * 1_000_003 + int(primes[-1]))
    for i in rng.sample(idx.tolist(), k):
        p, t = int(primes[i]), int(orders[i])
        if not check_order(a, p, t, table):
            raise OrderCheckError(f"order {t} of {a} mod {p} failed re-verification")


def empirical_density(c, l):
    """counts[l] / pi(x) as a float."""
    return c.counts[l] / c.total_primes


def round6(value):
    """Round to 6 decimals, halves away from zero."""
    return float(Decimal(repr(float(value))).quantize(Decimal("1e-6"), ROUND_HALF_UP))


__all__ = [
    "OrderCensus",
    "census",
    "check_order",
    "classify_mod4",
    "compute_orders",
    "empirical_density",
    "multiplicative_order",
    "round6",
]
