"""Exact densities delta_l = alpha + beta*C of primes with order = l (mod 4)."""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import NamedTuple

from .arithmetic import CaseTag, SquarefreeDecomposition
from .errors import PreconditionError


class CForm(NamedTuple):
    """A number ``alpha + beta * C`` with rational alpha, beta."""

    alpha: Fraction
    beta: Fraction = Fraction(0)

    def evaluate(self, c_value):
        return float(self.alpha) + float(self.beta) * c_value

    def __add__(self, other):
        return CForm(self.alpha + other.alpha, self.beta + other.beta)

    def __neg__(self):
        return CForm(-self.alpha, -self.beta)

    def scale(self, k):
        return CForm(self.alpha * k, self.beta * k)

    def __str__(self):
        return format_cform(self)


def _frac(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cform(v):
    """Canonical text such as ``1/6 - 3C/56``, ``7/48 + C/8`` or ``-3C/28``."""
    a, b = Fraction(v.alpha), Fraction(v.beta)
    if b == 0:
        return _frac(a)
    num, den = abs(b.numerator), b.denominator
    c_term = ("C" if num == 1 else f"{num}C") + ("" if den == 1 else f"/{den}")
    if a == 0:
        return c_term if b > 0 else f"-{c_term}"
    return f"{_frac(a)} {'+' if b > 0 else '-'} {c_term}"


_CFORM_RE = re.compile(
    r"^\s*(?P<a>-?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])?\s*(?P<num>\d+)?C(?:/(?P<den>\d+))?)?\s*$"
)


def parse_cform(text):
    """Inverse of :func:`format_cform`."""
    m = _CFORM_RE.match(text)
    if not m or not text.strip():
        raise ValueError(f"not a density expression: {text!r}")
    alpha = Fraction(m["a"]) if m["a"] else Fraction(0)
    beta = Fraction(0)
    if "C" in text:
        beta = Fraction(int(m["num"] or 1), int(m["den"] or 1))
        if m["sign"] == "-":
            beta = -beta
    return CForm(alpha, beta)


@dataclass(frozen=True)
class DensityProfile:
    """delta_0..delta_3 for one value of a, each as alpha + beta*C."""

    a: int
    case_tag: CaseTag
    deltas: tuple

    def __post_init__(self):
        alphas = sum(d.alpha for d in self.deltas)
        betas = sum(d.beta for d in self.deltas)
        if alphas != 1 or betas != 0:
            raise ValueError(f"densities for a={self.a} do not sum to 1")
        d0, d1, d2, d3 = self.deltas
        if d0.beta or d2.beta or d1.beta != -d3.beta or d1.beta > 0:
            raise ValueError(f"C-coefficients for a={self.a} break the sign pattern")


def odd_prime_weight(p):
    """-2p / (p^3 - p^2 - p - 1), the per-prime factor of the C term."""
    return Fraction(-2 * p, p**3 - p**2 - p - 1)


SIXTH = Fraction(1, 6)
THIRD = Fraction(1, 3)


def theoretical_profile(d: SquarefreeDecomposition) -> DensityProfile:
    tag = d.case_tag
    d0 = d2 = CForm(THIRD)
    if tag is CaseTag.II_i:
        d0, d2 = CForm(Fraction(5, 12)), CForm(Fraction(7, 24))
        shift = Fraction(-1, 8)
        base = Fraction(7, 48)
    elif tag in (CaseTag.II_ii_2, CaseTag.III_iii_2):
        weight = prod((odd_prime_weight(p) for p, _ in d.a1_prime_factors), start=Fraction(1))
        shift = Fraction(1, 8) * weight
        if tag is CaseTag.II_ii_2:
            shift = -shift
        base = SIXTH
    else:
        shift, base = Fraction(0), SIXTH
    deltas = (d0, CForm(base, shift), d2, CForm(base, -shift))
    return DensityProfile(d.a, tag, deltas)


def evaluate(profile, c_value):
    if not 0 < c_value < 1:
        raise PreconditionError(f"C must lie in (0, 1), got {c_value}")
    return [d.evaluate(c_value) for d in profile.deltas]
