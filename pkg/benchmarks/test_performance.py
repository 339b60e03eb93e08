"""Core performance benchmarks for numrec."""

# Import third-party modules
import pytest

# Import local modules
from numrec.ans import rep_s
from numrec.ans import residue_automaton
from numrec.ans import val_s
from numrec.automata import nth_word
from numrec.automata import word_index
from numrec.config import Config
from numrec.linrec import n_growth_criterion
from numrec.linrec import residue_profile
from numrec.periodic import UltimatelyPeriodic
from numrec.periodic import UpSet
from numrec.positional import congruence_dfa
from numrec.positional import decide
from numrec.positional import greedy_rep
from numrec.positional import up_set_dfa
from numrec.positional import val


class TestRepresentationPerformance:
    """Converting between numbers and words."""

    @pytest.mark.benchmark(group="representations")
    def test_greedy_round_trip(self, benchmark, fib):
        """Benchmark greedy representations of the first thousand numbers."""

        def round_trip():
            return all(val(fib, greedy_rep(fib, n)) == n for n in range(1000))

        assert benchmark(round_trip)

    @pytest.mark.benchmark(group="representations")
    @pytest.mark.parametrize("n", [10**3, 10**6, 10**12])
    def test_abstract_rep(self, benchmark, two_fib, n):
        """Benchmark the n-th word of an abstract system and its value."""
        word = benchmark(rep_s, two_fib, n)
        assert val_s(two_fib, word) == n


class TestAutomataPerformance:
    """Automaton constructions."""

    @pytest.mark.benchmark(group="automata")
    def test_word_index(self, benchmark, two_fib):
        word = nth_word(two_fib.language, 10**9)
        assert benchmark(word_index, two_fib.language, word) == 10**9

    @pytest.mark.benchmark(group="automata")
    @pytest.mark.parametrize("modulus", [3, 7, 12])
    def test_congruence_dfa(self, benchmark, fib, modulus):
        d = benchmark(congruence_dfa, fib, modulus, 0)
        assert d.accepts(greedy_rep(fib, modulus))

    @pytest.mark.benchmark(group="automata")
    @pytest.mark.parametrize("modulus", [3, 5, 8])
    def test_residue_automaton(self, benchmark, two_fib, modulus):
        d = benchmark(residue_automaton, two_fib, modulus, frozenset({0}))
        assert d.accepts(rep_s(two_fib, modulus))


class TestCriterionPerformance:
    """Residue profiles and the growth criterion."""

    @pytest.mark.benchmark(group="criterion")
    @pytest.mark.parametrize("v", [2, 4, 6])
    def test_residue_profile(self, benchmark, five_term, v):
        profile = benchmark(residue_profile, five_term, 3**v)
        assert profile.recurring_count <= 6

    @pytest.mark.benchmark(group="criterion")
    def test_growth_criterion(self, benchmark, five_term):
        verdict = benchmark(n_growth_criterion, five_term)
        assert not verdict.overall


class TestDecisionPerformance:
    """End-to-end decisions with sequential and threaded verification."""

    @pytest.mark.benchmark(group="decide")
    @pytest.mark.parametrize("parallel", [False, True])
    def test_decide_progression(self, benchmark, fib, parallel):
        x = UpSet("", "0001")
        x_dfa = up_set_dfa(fib, x)
        config = Config()
        config.sample_window = 512
        config.parallel = parallel
        verdict = benchmark(decide, fib, x_dfa, config)
        assert verdict == UltimatelyPeriodic(x)

    @pytest.mark.benchmark(group="decide")
    def test_decide_fibonacci_numbers(self, benchmark, fib, one_tail_language):
        verdict = benchmark(decide, fib, one_tail_language)
        assert not isinstance(verdict, UltimatelyPeriodic)
