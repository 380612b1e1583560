"""Residual order of a mod p in residue classes mod 4.

Empirical censuses over primes p <= x, the exact theoretical densities
delta_0..delta_3 (as alpha + beta*C), and truncated evaluation of the
underlying density series for cross-validation.
"""

from .arithmetic import (
    CaseTag,
    FactoredNat,
    SpfTable,
    SquarefreeDecomposition,
    build_spf_table,
    decompose,
    euler_phi,
    factor,
    lcm,
    moebius,
    odd_part,
    pow_mod,
    sieve_primes,
)
from .census import (
    OrderCensus,
    census,
    classify_mod4,
    empirical_density,
    multiplicative_order,
)
from .errors import (
    DomainError,
    OrderCheckError,
    Ordmod4Error,
    PreconditionError,
    ResourceError,
)
from .kernels import BACKEND
from .series import (
    EulerProductValue,
    SeriesIndex,
    TruncationParams,
    Variant,
    c_coeff,
    constant_C,
    degree,
    delta_raw,
    i_sum,
    j_closed,
    j_raw,
)
from .theory import CForm, DensityProfile, evaluate, theoretical_profile

__version__ = "0.1.0"
