"""Tables, output formats, census cache and run configuration."""

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from decimal import Decimal

from .arithmetic import CaseTag, build_spf_table, decompose, sieve_primes
from .census import OrderCensus, census, empirical_density, round6
from .errors import DomainError, PreconditionError
from .series import TruncationParams
from .theory import format_cform, parse_cform, theoretical_profile

#: Default values of a for the comparison table, in display order.
TABLE_A_LIST = (5, 33, 45, 2, 50, 10, 42, 210, 6, 14, 30, 11, 55, 75)

CSV_FIELDS = ("a", "case", "l", "exact", "theoretical", "empirical", "abs_diff")

#: Row groups of the comparison table, in display order.
CASE_GROUPS = (
    ((CaseTag.I_a1_mod4_eq_1,), "a1 = 1 (mod 4)"),
    ((CaseTag.II_i,), "a1 = 2 (mod 4), a1' = 1"),
    ((CaseTag.II_ii_1, CaseTag.II_ii_2), "a1 = 2 (mod 4), a1' = 1 (mod 4)"),
    ((CaseTag.III_iii_1, CaseTag.III_iii_2), "a1 = 2 (mod 4), a1' = 3 (mod 4)"),
    ((CaseTag.I_a1_mod4_eq_3,), "a1 = 3 (mod 4)"),
)
EXCLUDED = "excluded"


def case_label(tag):
    for tags, label in CASE_GROUPS:
        if tag in tags:
            return label
    raise KeyError(tag)


@dataclass(frozen=True)
class ComparisonRow:
    """One (a, l) line of the theory-vs-experiment table.

    Numbers are held at the printed 6-decimal precision so that every
    rendering round-trips.  Rows for perfect powers carry ``None`` in the
    theoretical fields.
    """

    a: int
    case_label: str
    l: int
    theoretical_exact: str
    theoretical_value: float | None
    empirical_value: float
    abs_diff: float | None

    @classmethod
    def build(cls, a, label, l, exact, c_value, empirical):
        emp = round6(empirical)
        if exact is None:
            return cls(a, label, l, EXCLUDED, None, emp, None)
        theo = round6(exact.evaluate(c_value))
        diff = float(abs(Decimal(repr(theo)) - Decimal(repr(emp))))
        return cls(a, label, l, format_cform(exact), theo, emp, diff)

    def as_record(self):
        return {
            "a": self.a,
            "case": self.case_label,
            "l": self.l,
            "exact": self.theoretical_exact,
            "theoretical": self.theoretical_value,
            "empirical": self.empirical_value,
            "abs_diff": self.abs_diff,
        }

    @classmethod
    def from_record(cls, rec):
        def num(v):
            return None if v in (None, "") else float(v)

        return cls(int(rec["a"]), rec["case"], int(rec["l"]), rec["exact"],
                   num(rec["theoretical"]), float(rec["empirical"]), num(rec["abs_diff"]))

    def exact_value(self, c_value):
        """Re-evaluate the exact expression (None for excluded rows)."""
        if self.theoretical_exact == EXCLUDED:
            return None
        return parse_cform(self.theoretical_exact).evaluate(c_value)


@dataclass
class RunConfig:
    a_list: tuple = TABLE_A_LIST
    x: int = 10**7
    c_prime_bound: int = 10**6
    truncation: TruncationParams = field(default_factory=TruncationParams)
    output_format: str = "md"
    workers: int = 1
    cache_path: str | None = None

    def __post_init__(self):
        if not self.a_list:
            raise PreconditionError("a_list must not be empty")
        if self.x < 3:
            raise PreconditionError(f"x must be >= 3, got {self.x}")
        if self.output_format not in ("md", "csv", "json"):
            raise PreconditionError(f"unknown format {self.output_format!r}")


# --- census cache ------------------------------------------------------------

CACHE_VERSION = "1"


class CensusCache:
    """Census results keyed by (a, x), one whitespace-separated record per line.

    Line layout: ``a x count0 count1 count2 count3 excluded total version``.
    Records with a different version are ignored.
    """

    def __init__(self, path):
        self.path = path
        self.hits = 0
        self.misses = 0
        self._records = {}
        if os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) != 9 or parts[8] != CACHE_VERSION:
                        continue
                    a, x, c0, c1, c2, c3, exc, tot = map(int, parts[:8])
                    self._records[(a, x)] = OrderCensus(a, x, (c0, c1, c2, c3), exc, tot)

    def get(self, a, x):
        return self._records.get((a, x))

    def put(self, c):
        self._records[(c.a, c.x)] = c
        with open(self.path, "a") as fh:
            fh.write(" ".join(map(str, (c.a, c.x, *c.counts, c.excluded_count,
                                        c.total_primes, CACHE_VERSION))) + "\n")


class CensusRunner:
    """Runs censuses for several a at one x, sharing tables and the cache."""

    def __init__(self, x, workers=1, cache=None):
        self.x = x
        self.workers = workers
        self.cache = cache
        self.computed = 0
        self._tables = None

    def __call__(self, a):
        if self.cache is not None:
            hit = self.cache.get(a, self.x)
            if hit is not None:
                self.cache.hits += 1
                return hit
            self.cache.misses += 1
        if self._tables is None:
            self._tables = build_spf_table(self.x), sieve_primes(self.x)
        table, primes = self._tables
        result = census(a, self.x, self.workers, table=table, primes=primes)
        self.computed += 1
        if self.cache is not None:
            self.cache.put(result)
        return result


# --- rendering ---------------------------------------------------------------


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}" if math.isfinite(v) else str(v)
    return str(v)


def render(records, fmt, fields=None):
    """Render a list of dicts as a Markdown table, CSV or JSON."""
    fields = list(fields or (records[0].keys() if records else []))
    if fmt == "json":
        return json.dumps([{k: r[k] for k in fields} for r in records], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in records:
            w.writerow([_cell(r[k]) for k in fields])
        return buf.getvalue()
    lines = ["| " + " | ".join(fields) + " |", "|" + "---|" * len(fields)]
    for r in records:
        lines.append("| " + " | ".join(_cell(r[k]) for k in fields) + " |")
    return "\n".join(lines) + "\n"


def rows_to_csv(rows):
    return render([r.as_record() for r in rows], "csv", CSV_FIELDS)


def rows_from_csv(text):
    return [ComparisonRow.from_record(rec) for rec in csv.DictReader(io.StringIO(text))]


def census_records(c):
    return [
        {
            "a": c.a,
            "x": c.x,
            "l": l,
            "count": c.counts[l],
            "density": round6(empirical_density(c, l)),
            "excluded": c.excluded_count,
            "total": c.total_primes,
        }
        for l in range(4)
    ]


def theory_records(a, c_value):
    d = decompose(a)
    prof = theoretical_profile(d)
    return [
        {
            "a": a,
            "case": str(d.case_tag),
            "l": l,
            "exact": format_cform(delta),
            "value": round6(delta.evaluate(c_value)),
        }
        for l, delta in enumerate(prof.deltas)
    ]


def comparison_rows(a_list, run, c_value):
    """ComparisonRows for l = 1, 3 over a_list, grouped by case of a1."""
    grouped = {label: [] for _, label in CASE_GROUPS}
    excluded = []
    for a in a_list:
        c = run(a)
        try:
            d = decompose(a)
        except DomainError:
            for l in (1, 3):
                excluded.append(ComparisonRow.build(a, EXCLUDED, l, None, c_value,
                                                    empirical_density(c, l)))
            continue
        label = case_label(d.case_tag)
        prof = theoretical_profile(d)
        for l in (1, 3):
            grouped[label].append(ComparisonRow.build(a, label, l, prof.deltas[l], c_value,
                                                      empirical_density(c, l)))
    return [r for _, label in CASE_GROUPS for r in grouped[label]] + excluded


def comparison_records(rows):
    return [r.as_record() for r in rows]


def check_records(checks):
    return [
        {
            "check": c.name,
            "value": f"{c.value:.3e}",
            "bound": f"{c.bound:.3e}",
            "status": "pass" if c.passed else "FAIL",
        }
        for c in checks
    ]


def load_config(path):
    """Read ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out
