"""Shared fixtures: the numeration systems and recurrences used across the suite."""

# Import built-in modules
from itertools import product
import json
from pathlib import Path
from typing import Any
from typing import Callable

# Import third-party modules
import pytest

# Import local modules
from numrec.ans import AbstractSystem
from numrec.automata import Dfa
from numrec.automata import all_words
from numrec.linrec import LinearRecurrence
from numrec.periodic import UpSet
from numrec.positional import PositionalSystem
from numrec.positional import fibonacci_system


TWO_FIB_TRANSITIONS = [
    (0, "a", 1),
    (0, "c", 2),
    (1, "a", 1),
    (1, "b", 3),
    (2, "c", 2),
    (2, "d", 4),
    (3, "a", 1),
    (4, "c", 2),
]

# first 25 words of {ε} ∪ {a, ab}* ∪ {c, cd}* with a < b < c < d
TWO_FIB_TABLE = [
    "", "a", "c", "aa", "ab", "cc", "cd", "aaa", "aab", "aba",
    "ccc", "ccd", "cdc", "aaaa", "aaab", "aaba", "abaa", "abab", "cccc", "cccd",
    "ccdc", "cdcc", "cdcd", "aaaaa", "aaaab",
]

FIBONACCI_TRANSITIONS = [(0, "1", 1), (1, "0", 2), (2, "0", 2), (2, "1", 1)]


def up_sets(max_preperiod: int, max_period: int) -> list[UpSet]:
    """Every ultimately periodic set whose least form fits the given preperiod and period."""
    found: set[UpSet] = set()
    for a in range(max_preperiod + 1):
        for p in range(1, max_period + 1):
            for u, v in product(product("01", repeat=a), product("01", repeat=p)):
                found.add(UpSet.normalized("".join(u), "".join(v)))
    return sorted(found, key=lambda x: (x.period, x.preperiod, x.u, x.v))


@pytest.fixture
def fib() -> PositionalSystem:
    return fibonacci_system()


@pytest.fixture
def fib_language() -> Dfa:
    return Dfa.from_transitions(("0", "1"), 3, 0, {0, 1, 2}, FIBONACCI_TRANSITIONS)


@pytest.fixture
def two_fib_language() -> Dfa:
    return Dfa.from_transitions(("a", "b", "c", "d"), 5, 0, range(5), TWO_FIB_TRANSITIONS)


@pytest.fixture
def two_fib(two_fib_language: Dfa) -> AbstractSystem:
    return AbstractSystem(two_fib_language)


@pytest.fixture
def binary_words() -> AbstractSystem:
    """Every word over {0, 1}, leading zeros included."""
    return AbstractSystem(all_words(("0", "1")))


@pytest.fixture
def one_tail_language() -> Dfa:
    """Words ``1 0^n``: the Fibonacci numbers in the Zeckendorf system."""
    return Dfa.from_transitions(("0", "1"), 2, 0, {1}, [(0, "1", 1), (1, "0", 1)])


@pytest.fixture
def u3() -> LinearRecurrence:
    return LinearRecurrence((0, 1, 3), (1, 2, 3))


@pytest.fixture
def five_term() -> LinearRecurrence:
    return LinearRecurrence((6, 3, -1, 6, 3), (1, 2, 3, 4, 5))


@pytest.fixture
def exa_aaa() -> LinearRecurrence:
    return LinearRecurrence((3, 2, 0, 3), (1, 2, 3, 4))


@pytest.fixture
def powers_of_two_sums() -> LinearRecurrence:
    """``2^{i+1} - 1``, the word counts of the full binary language."""
    return LinearRecurrence((3, -2), (1, 3))


@pytest.fixture
def dfa_document() -> Callable[[Dfa], dict[str, Any]]:
    def build(d: Dfa) -> dict[str, Any]:
        return {
            "alphabet": list(d.alphabet),
            "states": d.state_count,
            "initial": d.initial,
            "finals": sorted(d.finals),
            "transitions": [[q, s, t] for (q, s), t in sorted(d.transitions.items())],
        }

    return build


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document under ``tmp_path`` and return its path."""

    def write(name: str, document: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
