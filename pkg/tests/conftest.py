import pytest

from ordmod4 import _fallback, kernels
from ordmod4.arithmetic import build_spf_table, sieve_primes


@pytest.fixture
def pure_python(monkeypatch):
    """Route every kernel call through the pure-Python fallback."""
    for name in ("orders_block", "pow_mod", "split_n_sums"):
        monkeypatch.setattr(kernels, name, getattr(_fallback, name))


@pytest.fixture(scope="session")
def tables_1e7():
    x = 10**7
    return build_spf_table(x), sieve_primes(x)


ACCEPTANCE_LINES = []


@pytest.fixture
def report_criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
