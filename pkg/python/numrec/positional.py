"""Positional numeration systems built on a linear recurrence.

Words are written most significant digit first: ``w = w_ℓ ... w_0`` has value
``Σ w_i U_i``. Digits are the strings ``"0" .. str(C - 1)``.

Basic usage:
    >>> from numrec.positional import fibonacci_system, greedy_rep, val
    >>> fib = fibonacci_system()
    >>> "".join(greedy_rep(fib, 15))
    '100010'
    >>> val(fib, "101001")
    19
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections.abc import Iterable
from dataclasses import dataclass
from dataclasses import field
from itertools import islice
import logging
from typing import Optional
from typing import Union

# Import local modules
from numrec.algebra import minimal_recurrence
from numrec.algebra import prime_divisors
from numrec.algebra import split_zero_tail
from numrec.automata import Dfa
from numrec.automata import Word
from numrec.automata import difference
from numrec.automata import empty_dfa
from numrec.automata import format_word
from numrec.automata import intersect
from numrec.automata import is_empty
from numrec.automata import iter_words
from numrec.automata import live_state_count
from numrec.automata import minimize
from numrec.automata import parse_word
from numrec.automata import reverse_determinize
from numrec.config import Config
from numrec.errors import AutomatonError
from numrec.errors import BoundExceededError
from numrec.errors import ConstructionError
from numrec.errors import NumerationError
from numrec.errors import PreconditionError
from numrec.errors import RecurrenceError
from numrec.linrec import LinearRecurrence
from numrec.linrec import max_preperiod_below
from numrec.linrec import n_growth_criterion
from numrec.linrec import reduce_recurrence
from numrec.linrec import residue_profile
from numrec.linrec import smallest_v_exceeding
from numrec.linrec import term
from numrec.linrec import terms
from numrec.periodic import DecisionVerdict
from numrec.periodic import Inapplicable
from numrec.periodic import UpSet
from numrec.periodic import certify
from numrec.periodic import search
from numrec.periodic import up_set_automaton


logger = logging.getLogger(__name__)

# terms inspected when checking monotonicity and estimating the digit bound
_PREFIX = 64


def digit_alphabet(c: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(c))


@dataclass(frozen=True)
class PositionalSystem:
    """Scale ``U`` given by a recurrence, digits ``0 .. C - 1`` and optionally the greedy language.

    Attributes:
        recurrence: Generates ``U`` with ``U_0 = 1`` and strictly increasing terms.
        digit_bound: ``C = sup ⌈U_{i+1} / U_i⌉``, estimated on a prefix when omitted.
        rep_language: Automaton of the greedy representations; required by
            ``validate``, ``up_set_dfa`` and ``decide``.

    """

    recurrence: LinearRecurrence
    digit_bound: Optional[int] = None
    rep_language: Optional[Dfa] = None
    _scale: list[int] = field(default_factory=list, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        prefix = terms(self.recurrence, max(_PREFIX, 2 * self.recurrence.order))
        if prefix[0] != 1:
            raise NumerationError(f"a numeration scale starts with U_0 = 1, got {prefix[0]}")
        if any(b <= a for a, b in zip(prefix, prefix[1:])):
            raise NumerationError(f"the scale {prefix[:8]}... is not strictly increasing")
        self._scale.extend(prefix)
        if self.digit_bound is None:
            object.__setattr__(self, "digit_bound", max(-(-b // a) for a, b in zip(prefix, prefix[1:])))
        if self.digit_bound < 1:
            raise NumerationError("the digit bound must be positive")
        if self.rep_language is not None and self.rep_language.alphabet != self.alphabet:
            raise NumerationError(
                f"representation language alphabet {self.rep_language.alphabet!r} is not {self.alphabet!r}"
            )

    @property
    def alphabet(self) -> tuple[str, ...]:
        return digit_alphabet(self.c)

    @property
    def c(self) -> int:
        assert self.digit_bound is not None
        return self.digit_bound

    @property
    def language(self) -> Dfa:
        if self.rep_language is None:
            raise PreconditionError("this system has no representation language")
        return self.rep_language

    def u(self, i: int) -> int:
        """``U_i``."""
        scale = self._scale
        coeffs = self.recurrence.coeffs
        while len(scale) <= i:
            scale.append(sum(a * scale[-1 - j] for j, a in enumerate(coeffs)))
        return scale[i]

    def terms_below(self, n: int) -> list[int]:
        """``U_0, ..., U_t`` where ``U_t <= n < U_{t+1}``; empty when ``n < 1``."""
        result = []
        i = 0
        while self.u(i) <= n:
            result.append(self.u(i))
            i += 1
        return result

    def rep(self, n: int) -> Word:
        return greedy_rep(self, n)

    def value(self, word: Iterable[str]) -> int:
        return val(self, word)

    def periodic_dfa(self, modulus: int, residues: frozenset[int]) -> Dfa:
        if not residues:
            return empty_dfa(self.alphabet)
        return intersect(self.language, _congruence_residues_dfa(self, modulus, residues))


@dataclass(frozen=True)
class BertrandSpec:
    """``d*_β(1) = t_1 t_2 ...`` as ``preperiod`` digits followed by ``period`` repeated."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(int(t) for t in self.preperiod))
        object.__setattr__(self, "period", tuple(int(t) for t in self.period))
        if not self.period:
            raise ConstructionError("d*_β(1) needs a nonempty period")
        if any(t < 0 for t in self.preperiod + self.period):
            raise ConstructionError("digits of d*_β(1) are nonnegative")
        if not any(self.period):
            raise ConstructionError("d*_β(1) is not eventually zero")

    @property
    def length(self) -> int:
        return len(self.preperiod) + len(self.period)

    def digit(self, i: int) -> int:
        """``t_i`` for ``i >= 1``."""
        stream = self.preperiod + self.period
        if i <= len(stream):
            return stream[i - 1]
        return self.period[(i - 1 - len(self.preperiod)) % len(self.period)]


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failures: tuple[str, ...]
    counterexamples: tuple[str, ...]


@dataclass(frozen=True)
class PositionalBounds:
    """Period bound ``P`` and preperiod bound ``A`` for sets recognized with ``d`` states."""

    period_bound: int
    preperiod_bound: int
    threshold: int
    prime_exponents: tuple[tuple[int, int], ...]
    max_preperiod: int


def _digits(sys: PositionalSystem, word: Union[str, Iterable[str]]) -> list[int]:
    if isinstance(word, str):
        try:
            word = parse_word(sys.alphabet, word)
        except AutomatonError as e:
            raise NumerationError(str(e)) from None
    result = []
    for symbol in word:
        if symbol not in sys.alphabet:
            raise NumerationError(f"digit {symbol!r} is outside 0..{sys.c - 1}")
        result.append(int(symbol))
    return result


def greedy_rep(sys: PositionalSystem, n: int) -> Word:
    """Greedy representation of ``n``, most significant digit first; ``()`` for 0."""
    if n < 0:
        raise NumerationError("only natural numbers have representations")
    scale = sys.terms_below(n)
    word = []
    for weight in reversed(scale):
        digit, n = divmod(n, weight)
        if digit >= sys.c:
            raise NumerationError(f"greedy digit {digit} exceeds the digit bound {sys.c}")
        word.append(str(digit))
    return tuple(word)


def val(sys: PositionalSystem, word: Union[str, Iterable[str]]) -> int:
    """``Σ w_i U_i`` for any digit word, leading zeros allowed."""
    digits = _digits(sys, word)
    n = len(digits)
    return sum(d * sys.u(n - 1 - i) for i, d in enumerate(digits))


def is_greedy(sys: PositionalSystem, word: Union[str, Iterable[str]]) -> bool:
    """Whether ``word`` is the greedy representation of its value."""
    digits = _digits(sys, word)
    if digits and digits[0] == 0:
        return False
    partial = 0
    for j, d in enumerate(reversed(digits)):
        partial += d * sys.u(j)
        if partial >= sys.u(j + 1):
            return False
    return True


def condlim_extension(sys: PositionalSystem, word: Union[str, Iterable[str]], max_zeros: int = 40) -> Optional[int]:
    """Least ``r <= max_zeros`` such that ``1 0^r w`` is greedy."""
    digits = [str(d) for d in _digits(sys, word)]
    for r in range(max_zeros + 1):
        if is_greedy(sys, ["1"] + ["0"] * r + digits):
            return r
    return None


def validate(sys: PositionalSystem, depth: int = 12) -> ValidationReport:
    """Check, up to ``depth``, that the representation language is the set of greedy words.

    At most ten counterexamples of each kind are collected.
    """
    if sys.rep_language is None:
        return ValidationReport(False, ("no representation language",), ())
    language = sys.rep_language
    failures: list[str] = []
    scale = [sys.u(i) for i in range(depth + 1)]
    if any(b <= a for a, b in zip(scale, scale[1:])):
        failures.append(f"U is not increasing below index {depth}")
    rejected = [format_word(w) or "ε" for w in map(sys.rep, range(scale[-1])) if not language.accepts(w)][:10]
    if rejected:
        failures.append(f"greedy representations rejected: {', '.join(rejected)}")
    limit = min(depth, 14)
    not_greedy: list[str] = []
    for word in iter_words(language):
        if len(word) > limit or len(not_greedy) >= 10:
            break
        if not is_greedy(sys, word):
            not_greedy.append(format_word(word) or "ε")
    if not_greedy:
        failures.append(f"accepted words that are not greedy: {', '.join(not_greedy)}")
    report = ValidationReport(not failures, tuple(failures), tuple(rejected + not_greedy))
    logger.debug("validation at depth %d: %s", depth, report)
    return report


def bertrand_from_dbeta(spec: BertrandSpec, depth: int = 32) -> PositionalSystem:
    """Bertrand system of ``d*_β(1)``: ``U_i = t_1 U_{i-1} + ... + t_i U_0 + 1``.

    The recurrence is recovered from ``depth`` terms and the language is the
    canonical automaton comparing every suffix with ``d*_β(1)``.
    """
    max_order = spec.length + 1
    if depth < 2 * max_order:
        raise ConstructionError(f"depth {depth} is too small, at least {2 * max_order} terms are needed")
    scale = [1]
    for i in range(1, depth):
        scale.append(sum(spec.digit(j) * scale[i - j] for j in range(1, i + 1)) + 1)
    fitted = minimal_recurrence(scale, max_order)
    if fitted is None or any(not isinstance(a, int) for a in fitted):
        raise ConstructionError(f"no integer recurrence of order <= {max_order} for {scale[:6]}...")
    coeffs, shift = split_zero_tail(fitted)
    if shift:
        raise ConstructionError(f"the scale {scale[:6]}... only becomes linear recurrent from index {shift}")
    k = len(coeffs)
    c = max(spec.preperiod + spec.period) + 1
    try:
        recurrence = LinearRecurrence(tuple(int(a) for a in coeffs), tuple(scale[:k]))
        return PositionalSystem(recurrence, c, bertrand_automaton(spec))
    except (RecurrenceError, NumerationError) as e:
        raise ConstructionError(f"Bertrand system rejected: {e}") from e


def bertrand_automaton(spec: BertrandSpec) -> Dfa:
    """Greedy words for ``d*_β(1)``; state ``j`` records how many digits of ``d*_β(1)`` the suffix matches."""
    stream = spec.preperiod + spec.period
    c = max(stream) + 1
    alphabet = digit_alphabet(c)
    n = len(stream)
    start = n  # extra initial state forbidding a leading zero

    def target(j: int, digit: int) -> Optional[int]:
        if digit < stream[j]:
            return 0
        if digit == stream[j]:
            return len(spec.preperiod) if j + 1 == n else j + 1
        return None

    rows = [tuple(target(j, x) for x in range(c)) for j in range(n)]
    rows.append(tuple(None if x == 0 else target(0, x) for x in range(c)))
    return minimize(Dfa(alphabet, n + 1, start, frozenset(range(n + 1)), tuple(rows)))


def _congruence_residues_dfa(sys: PositionalSystem, a: int, residues: frozenset[int]) -> Dfa:
    profile = residue_profile(sys.recurrence, a)
    iota, span = profile.preperiod, profile.preperiod + profile.period
    weights = [profile.value_at(s) for s in range(span)]
    # least significant digit first: (r, s) --j--> (j U_s + r mod a, s + 1), s wrapping to iota
    index = {(0, 0): 0}
    states = [(0, 0)]
    rows = []
    for r, s in states:
        nxt_s = s + 1 if s + 1 < span else iota
        row = []
        for j in range(sys.c):
            t = ((j * weights[s] + r) % a, nxt_s)
            if t not in index:
                index[t] = len(states)
                states.append(t)
            row.append(index[t])
        rows.append(tuple(row))
    finals = frozenset(i for i, (r, _) in enumerate(states) if r in residues)
    reversal = Dfa(sys.alphabet, len(states), 0, finals, tuple(rows))
    return reverse_determinize(reversal)


def congruence_dfa(sys: PositionalSystem, a: int, b: int) -> Dfa:
    """Digit words, leading zeros included, whose value is ``b`` modulo ``a``."""
    if a < 1 or not 0 <= b < a:
        raise PreconditionError(f"need 0 <= b < a, got a={a}, b={b}")
    return _congruence_residues_dfa(sys, a, frozenset({b}))


def up_set_dfa(sys: PositionalSystem, x: UpSet) -> Dfa:
    """Automaton of the greedy representations of ``x``."""
    return up_set_automaton(sys, x)


def compute_bounds(
    system: Union[PositionalSystem, LinearRecurrence],
    d: int,
    sharp: bool = False,
    config: Optional[Config] = None,
) -> PositionalBounds:
    """Bounds on the period and preperiod of a set recognized with ``d`` states.

    ``P = Π p_j^{s_j} d`` where ``s_j`` is the least exponent with
    ``N(p_j^{s_j}) > d^k`` (``> d`` when ``sharp``), and ``A = U_ℓ`` with
    ``ℓ = d + max_{m <= P} ι(m)``.

    Raises:
        PreconditionError: ``N(m)`` does not diverge.
        BoundExceededError: an exponent or a modulus exceeds the configured caps.

    """
    config = config or Config()
    if d < 1:
        raise PreconditionError("the automaton has at least one state")
    recurrence = system.recurrence if isinstance(system, PositionalSystem) else system
    reduced = reduce_recurrence(recurrence)
    if not n_growth_criterion(reduced).overall:
        raise PreconditionError(f"N(m) does not diverge for the recurrence {reduced.coeffs}")
    threshold = d if sharp else d**reduced.order
    exponents = tuple(
        (p, smallest_v_exceeding(reduced, p, threshold, config.v_max)) for p in prime_divisors(reduced.coeffs[-1])
    )
    period_bound = d
    for p, s in exponents:
        period_bound *= p**s
    max_preperiod = max_preperiod_below(reduced, period_bound, config.max_modulus)
    preperiod_bound = term(reduced, d + max_preperiod)
    bounds = PositionalBounds(period_bound, preperiod_bound, threshold, exponents, max_preperiod)
    logger.info("bounds for d=%d: P=%d, A=%d", d, period_bound, preperiod_bound)
    return bounds


def _included(x_dfa: Dfa, language: Dfa) -> bool:
    return is_empty(difference(x_dfa, language))


def decide(sys: PositionalSystem, x_dfa: Dfa, config: Optional[Config] = None) -> DecisionVerdict:
    """Decide whether the set of values of the words accepted by ``x_dfa`` is ultimately periodic.

    Systems where ``N(m)`` stays bounded, such as base ``b``, get ``Inapplicable``
    unless ``config.certify_unbounded`` is set.
    """
    config = config or Config()
    if sys.rep_language is None:
        return Inapplicable("the system has no representation language")
    if x_dfa.alphabet != sys.alphabet:
        return Inapplicable(f"automaton alphabet {x_dfa.alphabet!r} is not the digit alphabet {sys.alphabet!r}")
    if not _included(x_dfa, sys.language):
        return Inapplicable("the automaton accepts words that are not greedy representations")
    report = validate(sys, config.validation_depth)
    if not report.passed:
        return Inapplicable(f"system validation failed: {'; '.join(report.failures)}")
    d = max(live_state_count(x_dfa), 1)
    reduced = reduce_recurrence(sys.recurrence)
    if not n_growth_criterion(reduced).overall:
        reason = "N(m) does not diverge for this system"
        if not config.certify_unbounded:
            return Inapplicable(reason)
        logger.info("N(m) does not diverge, trying an unbounded certificate")
        return certify(sys, x_dfa, sys.u(d), reason, config)
    try:
        bounds = compute_bounds(reduced, d, config.sharp_bounds, config)
    except BoundExceededError as e:
        return Inapplicable(str(e))
    return search(sys, x_dfa, bounds.period_bound, bounds.preperiod_bound, config)


def fibonacci_system() -> PositionalSystem:
    """Zeckendorf system ``1, 2, 3, 5, 8, ...`` with the words avoiding ``11``."""
    language = Dfa.from_transitions(
        ("0", "1"), 3, 0, {0, 1, 2}, [(0, "1", 1), (1, "0", 2), (2, "0", 2), (2, "1", 1)]
    )
    return PositionalSystem(LinearRecurrence((1, 1), (1, 2)), 2, language)


def triangular_system() -> PositionalSystem:
    """Scale ``1, 3, 6, 10, ...``; its greedy words do not form a regular language."""
    return PositionalSystem(LinearRecurrence((3, -3, 1), (1, 3, 6)))


def first_bits(sys: PositionalSystem, x_dfa: Dfa, count: int) -> str:
    """Characteristic word of the recognized set, truncated to ``count`` bits."""
    return "".join("1" if x_dfa.accepts(w) else "0" for w in islice(iter_words(sys.language), count))


__all__ = [
    "BertrandSpec",
    "PositionalBounds",
    "PositionalSystem",
    "ValidationReport",
    "bertrand_automaton",
    "bertrand_from_dbeta",
    "compute_bounds",
    "condlim_extension",
    "congruence_dfa",
    "decide",
    "digit_alphabet",
    "fibonacci_system",
    "first_bits",
    "greedy_rep",
    "is_greedy",
    "triangular_system",
    "up_set_dfa",
    "val",
    "validate",
]
