"""Test morphic words and their fiberwise periodicity decision."""

# Import built-in modules
from itertools import islice
from typing import Optional

# Import third-party modules
import pytest

# Import local modules
from numrec.automata import format_word
from numrec.automata import iter_words
from numrec.config import Config
from numrec.errors import ConstructionError
from numrec.errors import UnknownLetterError
from numrec.hd0l import Morphism
from numrec.hd0l import build_presentation
from numrec.hd0l import decide_hd0l
from numrec.hd0l import fiber_dfa
from numrec.hd0l import fixed_point_prefix
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.periodic import UltimatelyPeriodic
from numrec.periodic import UpSet


FIBONACCI_WORD = Morphism.of({"a": "ab", "b": "a"})
THUE_MORSE = Morphism.of({"a": "ab", "b": "ba"})


@pytest.fixture
def config() -> Config:
    config = Config()
    config.sample_window = 512
    config.hd0l_validation_letters = 200
    return config


def test_fixed_point_prefix():
    assert fixed_point_prefix(FIBONACCI_WORD, "a", 13) == "abaababaabaab"
    assert fixed_point_prefix(THUE_MORSE, "a", 8) == "abbabaab"
    with pytest.raises(ConstructionError):
        fixed_point_prefix(Morphism.of({"a": "ba", "b": "a"}), "a", 5)
    with pytest.raises(ConstructionError):
        fixed_point_prefix(Morphism.of({"a": "a"}), "a", 5)


def test_morphism_errors():
    with pytest.raises(ConstructionError):
        Morphism((("a", "ab"), ("a", "b")))
    with pytest.raises(ConstructionError):
        Morphism.of({"a": "ab", "b": ""})
    with pytest.raises(ConstructionError):
        Morphism.of({"a": "ab", "b": "a"}, ["a"])
    with pytest.raises(ConstructionError):
        FIBONACCI_WORD.image("c")


def test_morphism_basics():
    assert FIBONACCI_WORD.domain == ("a", "b")
    assert FIBONACCI_WORD.codomain == ("a", "b")
    assert FIBONACCI_WORD.apply("aba") == "abaab"
    assert not FIBONACCI_WORD.is_coding
    assert Morphism.identity("ab").is_coding


def test_presentation_of_the_fibonacci_word():
    presentation = build_presentation(None, FIBONACCI_WORD, "a", 100)
    words = list(islice(iter_words(presentation.system.language), 5))
    assert [format_word(w) for w in words] == ["", "1", "10", "100", "101"]
    assert "".join(presentation.output_machine.output_of(w) or "?" for w in words) == "abaab"


def test_presentation_errors():
    with pytest.raises(ConstructionError):
        build_presentation(FIBONACCI_WORD, FIBONACCI_WORD, "a")
    with pytest.raises(ConstructionError):
        build_presentation(Morphism.of({"a": "x"}), FIBONACCI_WORD, "a")


def test_fibers():
    presentation = build_presentation(None, FIBONACCI_WORD, "a", 100)
    prefix = fixed_point_prefix(FIBONACCI_WORD, "a", 100)
    b_fiber = fiber_dfa(presentation, "b")
    words = islice(iter_words(presentation.system.language), 100)
    assert all(b_fiber.accepts(w) == (prefix[n] == "b") for n, w in enumerate(words))
    with pytest.raises(UnknownLetterError):
        fiber_dfa(presentation, "c")


@pytest.fixture
def certifying(config) -> Config:
    config.certify_unbounded = True
    return config


def test_fibonacci_word_is_not_periodic(config):
    verdict = decide_hd0l(None, FIBONACCI_WORD, "a", config)
    assert verdict.overall is False
    assert all(isinstance(v, NotUltimatelyPeriodic) for _, v in verdict.letters)
    assert verdict.period is None


@pytest.mark.parametrize("g", [Morphism.of({"a": "ab", "b": "ab"}), Morphism.of({"a": "aa"})])
def test_binary_presentations_are_undecided(config, g):
    """Images of length 2 give the base 2 language, where the growth hypotheses fail."""
    verdict = decide_hd0l(None, g, "a", config)
    assert verdict.overall is None
    assert all(isinstance(v, Inapplicable) for _, v in verdict.letters)
    assert all(v.reason.startswith("hypotheses fail") for _, v in verdict.letters)


def test_alternating_word(certifying):
    verdict = decide_hd0l(None, Morphism.of({"a": "ab", "b": "ab"}), "a", certifying)
    assert verdict.overall is True
    assert verdict.period == 2
    assert dict(verdict.letters)["a"] == UltimatelyPeriodic(UpSet("", "10"))


def test_constant_word(certifying):
    verdict = decide_hd0l(None, Morphism.of({"a": "aa"}), "a", certifying)
    assert verdict.overall is True
    assert verdict.period == 1


def test_thue_morse_under_a_constant_coding(certifying):
    verdict = decide_hd0l(Morphism.of({"a": "0", "b": "0"}), THUE_MORSE, "a", certifying)
    assert verdict.overall is True
    assert verdict.period == 1


def test_thue_morse_is_undecided(certifying):
    verdict = decide_hd0l(None, THUE_MORSE, "a", certifying)
    assert verdict.overall is None
    assert all(isinstance(v, Inapplicable) for _, v in verdict.letters)
    assert verdict.period is None


def least_tail_period(word: str, max_period: int) -> Optional[int]:
    """Least period of the second half of ``word``, if any is at most ``max_period``."""
    start = len(word) // 2
    for p in range(1, max_period + 1):
        if all(word[k] == word[k + p] for k in range(start, len(word) - p)):
            return p
    return None


@pytest.mark.parametrize(
    "f, g",
    [
        (None, FIBONACCI_WORD),
        (Morphism.of({"a": "x", "b": "x"}), FIBONACCI_WORD),
        (None, Morphism.of({"a": "ab", "b": "ab"})),
        (None, Morphism.of({"a": "aa"})),
        (Morphism.of({"a": "0", "b": "0"}), THUE_MORSE),
        (None, THUE_MORSE),
    ],
)
def test_verdict_agrees_with_prefix_scan(certifying, f, g):
    prefix = fixed_point_prefix(g, "a", 2000)
    if f is not None:
        prefix = f.apply(prefix)
    scanned = least_tail_period(prefix, 16)
    verdict = decide_hd0l(f, g, "a", certifying)
    if scanned is None:
        assert verdict.overall is not True
    else:
        assert verdict.overall is not False
    if verdict.overall:
        assert verdict.period == scanned
