# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Mirrors ``ordmod4._fallback`` exactly."""

import numpy as np
from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t ordmod4_mulmod(uint64_t x, uint64_t y, uint64_t m) {
        return (uint64_t)(((unsigned __int128)x * y) % m);
    }
    """
    uint64_t _mulmod "ordmod4_mulmod" (uint64_t x, uint64_t y, uint64_t m) noexcept nogil


cdef inline uint64_t _powmod(uint64_t b, uint64_t e, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1 % m
    b %= m
    while e:
        if e & 1:
            r = _mulmod(r, b, m)
        b = _mulmod(b, b, m)
        e >>= 1
    return r


cdef inline int64_t _gcd(int64_t x, int64_t y) noexcept nogil:
    cdef int64_t t
    while y:
        t = x % y
        x = y
        y = t
    return x


def pow_mod(base, exp, modulus):
    # moduli are < 2**63 and exponents < 2**64 (checked by the caller)
    return _powmod(<uint64_t>(base % modulus), <uint64_t>exp, <uint64_t>modulus)


cdef int64_t _order(uint64_t a, int64_t p, const int32_t[::1] spf) noexcept nogil:
    cdef uint64_t r, up
    cdef int64_t t, m, q
    if p == 2:
        return 0
    up = <uint64_t>p
    r = a % up
    if r == 0:
        return 0
    if r == 1:
        return 1
    t = p - 1
    m = p - 1
    while m > 1:
        q = spf[m]
        m //= q
        while m % q == 0:
            m //= q
        while t % q == 0 and _powmod(r, <uint64_t>(t // q), up) == 1:
            t //= q
    return t


def orders_block(a, const int64_t[::1] primes, const int32_t[::1] spf,
                 int64_t[::1] out):
    """Write the order of ``a`` modulo each prime into ``out`` (GIL released)."""
    cdef uint64_t ua = <uint64_t>a
    cdef Py_ssize_t i, n = primes.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _order(ua, primes[i], spf)
    return np.asarray(out)


def split_n_sums(const int64_t[::1] radicals, const int64_t[::1] targets,
                 const int64_t[::1] n_odd, const double[::1] weights,
                 const int64_t[::1] phi):
    cdef Py_ssize_t i, j, R = radicals.shape[0], J = n_odd.shape[0]
    cdef int64_t r, t, no
    cdef double term, s_out, s_in
    outside = np.zeros(R)
    inside = np.zeros(R)
    cdef double[::1] o = outside
    cdef double[::1] w = inside
    with nogil:
        for i in range(R):
            r = radicals[i]
            t = targets[i]
            s_out = 0.0
            s_in = 0.0
            for j in range(J):
                no = n_odd[j]
                term = weights[j] * phi[_gcd(no, r)] / phi[no]
                if no % t == 0:
                    s_in += term
                else:
                    s_out += term
            o[i] = s_out
            w[i] = s_in
    return outside, inside
