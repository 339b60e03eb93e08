"""Pytest configuration for benchmarks."""

# Import third-party modules
import pytest

# Import local modules
from numrec.ans import AbstractSystem
from numrec.automata import Dfa
from numrec.linrec import LinearRecurrence
from numrec.positional import PositionalSystem
from numrec.positional import fibonacci_system


@pytest.fixture(scope="session")
def fib() -> PositionalSystem:
    return fibonacci_system()


@pytest.fixture(scope="session")
def two_fib() -> AbstractSystem:
    """Words of {a, ab}* ∪ {c, cd}*."""
    language = Dfa.from_transitions(
        ("a", "b", "c", "d"),
        5,
        0,
        range(5),
        [(0, "a", 1), (0, "c", 2), (1, "a", 1), (1, "b", 3), (2, "c", 2), (2, "d", 4), (3, "a", 1), (4, "c", 2)],
    )
    return AbstractSystem(language)


@pytest.fixture(scope="session")
def one_tail_language() -> Dfa:
    return Dfa.from_transitions(("0", "1"), 2, 0, {1}, [(0, "1", 1), (1, "0", 1)])


@pytest.fixture(scope="session")
def five_term() -> LinearRecurrence:
    return LinearRecurrence((6, 3, -1, 6, 3), (1, 2, 3, 4, 5))


def pytest_configure(config):
    """Configure pytest for benchmarks."""
    config.addinivalue_line("markers", "benchmark: mark test as a benchmark")
    config.addinivalue_line("markers", "slow: mark test as slow running")


def pytest_collection_modifyitems(config, items):
    """Add the benchmark marker to every test in this directory."""
    for item in items:
        if "benchmarks" in str(item.fspath):
            item.add_marker(pytest.mark.benchmark)
