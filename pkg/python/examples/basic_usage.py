#!/usr/bin/env python3
"""Basic usage examples for numrec.

Builds the Zeckendorf and {a, ab}* ∪ {c, cd}* systems, then runs the
growth criterion and a few decisions.
"""

# Import built-in modules
from pathlib import Path

# Import local modules
from numrec import configure_logging
from numrec.ans import AbstractSystem
from numrec.ans import decide_ans
from numrec.ans import rep_s
from numrec.automata import format_word
from numrec.hd0l import Morphism
from numrec.hd0l import decide_hd0l
from numrec.linrec import n_growth_criterion
from numrec.periodic import UpSet
from numrec.positional import decide
from numrec.positional import fibonacci_system
from numrec.positional import greedy_rep
from numrec.positional import up_set_dfa
from numrec.schemas import DfaModel
from numrec.schemas import SystemModel
from numrec.schemas import load


HERE = Path(__file__).parent


def positional_demo():
    fib = fibonacci_system()
    print("Zeckendorf representations:")
    for n in range(8):
        print(f"  {n} -> {format_word(greedy_rep(fib, n)) or 'ε'}")

    evens = up_set_dfa(fib, UpSet("", "10"))
    print(f"evens: {decide(fib, evens)}")
    numbers = load(DfaModel, HERE / "fibonacci_numbers.json").to_dfa()
    print(f"Fibonacci numbers: {decide(fib, numbers)}")


def abstract_demo():
    system = load(SystemModel, HERE / "two_fib.json").build()
    assert isinstance(system, AbstractSystem)
    words = [format_word(rep_s(system, n)) or "ε" for n in range(10)]
    print(f"first words: {', '.join(words)}")
    print(f"whole language: {decide_ans(system, system.language)}")


def criterion_demo():
    exa = load(SystemModel, HERE / "exa.json").recurrence
    assert exa is not None
    print(f"growth criterion: {n_growth_criterion(exa.to_recurrence())}")


def morphic_demo():
    verdict = decide_hd0l(None, Morphism.of({"a": "ab", "b": "a"}), "a")
    print(f"Fibonacci word periodic: {verdict.overall}")


if __name__ == "__main__":
    configure_logging("WARNING")
    positional_demo()
    abstract_demo()
    criterion_demo()
    morphic_demo()
