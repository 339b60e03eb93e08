"""Test positional numeration systems and their decision procedure."""

# Import built-in modules
from itertools import product

# Import third-party modules
import pytest

# Import local modules
from numrec.automata import Dfa
from numrec.automata import all_words
from numrec.automata import format_word
from numrec.automata import live_state_count
from numrec.automata import minimize
from numrec.config import Config
from numrec.errors import ConstructionError
from numrec.errors import NumerationError
from numrec.errors import PreconditionError
from numrec.linrec import LinearRecurrence
from numrec.linrec import residue_profile
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.periodic import UltimatelyPeriodic
from numrec.periodic import UpSet
from numrec.positional import BertrandSpec
from numrec.positional import PositionalSystem
from numrec.positional import bertrand_from_dbeta
from numrec.positional import compute_bounds
from numrec.positional import condlim_extension
from numrec.positional import congruence_dfa
from numrec.positional import decide
from numrec.positional import fibonacci_system
from numrec.positional import first_bits
from numrec.positional import greedy_rep
from numrec.positional import is_greedy
from numrec.positional import triangular_system
from numrec.positional import up_set_dfa
from numrec.positional import val
from numrec.positional import validate

from conftest import up_sets


EVENS = UpSet("", "10")


@pytest.fixture
def config() -> Config:
    config = Config()
    config.sample_window = 512
    return config


def test_greedy_representation(fib):
    assert format_word(greedy_rep(fib, 15)) == "100010"
    assert greedy_rep(fib, 0) == ()
    assert val(fib, "101001") == 19
    assert val(fib, "0100") == 3
    assert [fib.u(i) for i in range(6)] == [1, 2, 3, 5, 8, 13]


def test_round_trip(fib):
    assert all(val(fib, greedy_rep(fib, n)) == n for n in range(10_000))


def test_representation_errors(fib):
    with pytest.raises(NumerationError):
        greedy_rep(fib, -1)
    with pytest.raises(NumerationError):
        val(fib, "102")


@pytest.mark.parametrize("word, greedy", [("1010", True), ("", True), ("11", False), ("0", False), ("1001", True)])
def test_is_greedy(fib, word, greedy):
    assert is_greedy(fib, word) is greedy


def test_condlim_extension(fib):
    assert condlim_extension(fib, "1") == 1
    assert condlim_extension(fib, "01") == 0


def test_system_validation(fib):
    assert validate(fib, 12).passed
    wrong = PositionalSystem(fib.recurrence, 2, all_words(("0", "1")))
    report = validate(wrong, 6)
    assert not report.passed
    assert "11" in report.counterexamples
    assert "0" in report.counterexamples


@pytest.mark.parametrize(
    "recurrence",
    [LinearRecurrence((1, 1), (2, 3)), LinearRecurrence((1,), (1,))],
)
def test_rejects_bad_scales(recurrence):
    with pytest.raises(NumerationError):
        PositionalSystem(recurrence)


def test_triangular_system():
    triangular = triangular_system()
    assert triangular.c == 3
    assert format_word(triangular.rep(9)) == "110"
    assert triangular.rep_language is None
    with pytest.raises(PreconditionError):
        _ = triangular.language


def test_bertrand_system():
    sys = bertrand_from_dbeta(BertrandSpec((), (2, 1)))
    assert sys.recurrence == LinearRecurrence((2, 2), (1, 3))
    assert [sys.u(i) for i in range(6)] == [1, 3, 8, 22, 60, 164]
    assert sys.c == 3
    assert not sys.language.accepts(tuple("22"))
    assert sys.language.accepts(tuple("2121"))
    assert val(sys, "2121") == 59
    assert validate(sys, 8).passed


def test_bertrand_spec_errors():
    with pytest.raises(ConstructionError):
        BertrandSpec((1,), ())
    with pytest.raises(ConstructionError):
        BertrandSpec((1,), (0,))
    with pytest.raises(ConstructionError):
        bertrand_from_dbeta(BertrandSpec((), (2, 1)), depth=4)


@pytest.fixture(scope="module")
def short_words() -> list[tuple[tuple[str, ...], int]]:
    system = fibonacci_system()
    return [(word, val(system, word)) for n in range(11) for word in product("01", repeat=n)]


@pytest.mark.parametrize("a", range(1, 8))
def test_congruence_dfa(fib, short_words, a):
    for b in range(a):
        d = congruence_dfa(fib, a, b)
        assert all(d.accepts(word) == (value % a == b) for word, value in short_words)


def test_congruence_dfa_rejects_bad_residue(fib):
    with pytest.raises(PreconditionError):
        congruence_dfa(fib, 3, 3)


def test_bounds_fibonacci(fib):
    bounds = compute_bounds(fib, 2, sharp=True)
    assert bounds.period_bound == 2
    assert bounds.preperiod_bound == 3
    assert bounds.prime_exponents == ()
    assert bounds.max_preperiod == 0
    assert compute_bounds(fib.recurrence, 2).threshold == 4


def test_bounds_preconditions(fib, powers_of_two_sums):
    with pytest.raises(PreconditionError):
        compute_bounds(powers_of_two_sums, 2)
    with pytest.raises(PreconditionError):
        compute_bounds(fib, 0)


def test_decide_evens(fib, config):
    x_dfa = up_set_dfa(fib, EVENS)
    assert first_bits(fib, x_dfa, 6) == "101010"
    assert decide(fib, x_dfa, config) == UltimatelyPeriodic(EVENS)


def test_decide_fibonacci_numbers(fib, one_tail_language, config):
    assert decide(fib, one_tail_language, config) == NotUltimatelyPeriodic(2, 3)


def test_decide_inapplicable(fib, config):
    letters = Dfa.from_transitions(("a", "b"), 1, 0, {0}, [(0, "a", 0)])
    assert isinstance(decide(fib, letters, config), Inapplicable)

    verdict = decide(fib, all_words(("0", "1")), config)
    assert verdict == Inapplicable("the automaton accepts words that are not greedy representations")

    triangular = triangular_system()
    verdict = decide(triangular, all_words(triangular.alphabet), config)
    assert verdict == Inapplicable("the system has no representation language")

    wrong = PositionalSystem(fib.recurrence, 2, all_words(("0", "1")))
    verdict = decide(wrong, all_words(("0", "1")), config)
    assert isinstance(verdict, Inapplicable)
    assert verdict.reason.startswith("system validation failed")


@pytest.fixture
def base_two() -> PositionalSystem:
    """Powers of two with the words that do not start with 0."""
    language = Dfa.from_transitions(("0", "1"), 2, 0, {0, 1}, [(0, "1", 1), (1, "0", 1), (1, "1", 1)])
    return PositionalSystem(LinearRecurrence((2,), (1,)), 2, language)


def test_decide_base_two_is_inapplicable(base_two, config):
    """N(2^v) stays 1 in base 2, so no bounds exist even for the even numbers."""
    assert validate(base_two, 10).passed
    verdict = decide(base_two, up_set_dfa(base_two, EVENS), config)
    assert verdict == Inapplicable("N(m) does not diverge for this system")


def test_decide_base_two_with_certificate(base_two, config):
    config.certify_unbounded = True
    assert decide(base_two, up_set_dfa(base_two, EVENS), config) == UltimatelyPeriodic(EVENS)
    verdict = decide(base_two, up_set_dfa(base_two, UpSet("", "1")), config)
    assert verdict == UltimatelyPeriodic(UpSet("", "1"))


def test_triangular_condlim():
    """``1 0^r 1 0 0`` becomes greedy once the gap is wide enough."""
    triangular = triangular_system()
    assert condlim_extension(triangular, "1") == 0
    assert condlim_extension(triangular, "100") == 2
    assert is_greedy(triangular, "100100")


def test_bounds_with_unit_last_coefficient():
    """Even-indexed Fibonacci numbers: the criterion holds vacuously since a_k = -1."""
    bounds = compute_bounds(LinearRecurrence((3, -1), (1, 3)), 2)
    assert bounds.period_bound == 2
    assert bounds.preperiod_bound == 8
    assert bounds.prime_exponents == ()


@pytest.mark.slow
@pytest.mark.parametrize("x", up_sets(3, 6), ids=lambda x: f"{x.u or 'e'}-{x.v}")
def test_decide_recovers_up_sets(fib, config, x):
    assert decide(fib, up_set_dfa(fib, x), config) == UltimatelyPeriodic(x)


@pytest.mark.parametrize("x", up_sets(1, 3), ids=lambda x: f"{x.u or 'e'}-{x.v}")
def test_decide_recovers_short_up_sets(fib, config, x):
    assert decide(fib, up_set_dfa(fib, x), config) == UltimatelyPeriodic(x)


@pytest.mark.parametrize("x", [x for x in up_sets(2, 4) if "1" in x.v], ids=lambda x: f"{x.u or 'e'}-{x.v}")
def test_up_set_automaton_lower_bounds(fib, x):
    """A DFA for an infinite set needs N_U(p) states and |rep(a - 1)| - ι_U(p) states."""
    states = live_state_count(minimize(up_set_dfa(fib, x)))
    profile = residue_profile(fib.recurrence, x.period)
    assert states >= profile.recurring_count
    if x.preperiod:
        assert states >= len(greedy_rep(fib, x.preperiod - 1)) - profile.preperiod
