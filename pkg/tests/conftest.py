import itertools

import pytest

from edpsat.core import appendix_sequence


@pytest.fixture(scope="session")
def appendix():
    return appendix_sequence()


def naive_discrepancy(xs):
    """Straight from the definition, every (d, k) summed from scratch."""
    l = len(xs)
    best = 0
    for d in range(1, l + 1):
        for k in range(1, l // d + 1):
            best = max(best, abs(sum(xs[i * d - 1] for i in range(1, k + 1))))
    return best


def all_words(l):
    return itertools.product((1, -1), repeat=l)


def brute_force_sat(num_vars, clauses):
    for bits in itertools.product((False, True), repeat=num_vars):
        if all(any(bits[abs(x) - 1] == (x > 0) for x in c) for c in clauses):
            return True
    return False


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
