"""Pure-Python/numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; selected
automatically when the extension is unavailable.
"""

import numpy as np


def pow_mod(base, exp, modulus):
    return pow(base % modulus, exp, modulus)


def orders_block(a, primes, spf, out):
    """Write the order of ``a`` modulo each prime into ``out``.

    Entries are 0 for p = 2 and for primes dividing ``a``.  ``spf`` is a
    smallest-prime-factor table covering every ``p - 1``.
    """
    for i, p in enumerate(primes.tolist()):
        if p == 2:
            out[i] = 0
            continue
        r = a % p
        if r == 0:
            out[i] = 0
            continue
        if r == 1:
            out[i] = 1
            continue
        t = m = p - 1
        while m > 1:
            q = int(spf[m])
            m //= q
            while m % q == 0:
                m //= q
            while t % q == 0 and pow(r, t // q, p) == 1:
                t //= q
        out[i] = t
    return out


def split_n_sums(radicals, targets, n_odd, weights, phi):
    """For each radical r, sum ``weights[j] * phi[g] / phi[n_odd[j]]``.

    ``g = gcd(n_odd[j], r)``.  Terms whose odd part is divisible by the
    matching ``targets`` entry go to the second array, the rest to the
    first.
    """
    n_odd = np.asarray(n_odd, dtype=np.int64)
    phi = np.asarray(phi)
    base = np.asarray(weights, dtype=np.float64) / phi[n_odd]
    outside = np.zeros(len(radicals))
    inside = np.zeros(len(radicals))
    for i, (r, t) in enumerate(zip(np.asarray(radicals).tolist(),
                                   np.asarray(targets).tolist())):
        terms = base * phi[np.gcd(n_odd, r)]
        hit = n_odd % t == 0
        inside[i] = terms[hit].sum()
        outside[i] = terms[~hit].sum()
    return outside, inside
