"""Abstract numeration systems.

An abstract system is an infinite regular language ``L`` over an ordered
alphabet; ``n`` is represented by the ``n``-th word of ``L`` in genealogical
order. Values are computed from the path counts ``u_i(q)`` of the minimal
automaton of ``L`` rather than by enumeration:
``val(w) = Σ_i Σ_q β_{q,i}(w) u_{|w|-i}(q)`` where ``β_{q,i}(w)`` counts the
letters smaller than ``w_i`` leading to ``q``, plus one when ``q`` is initial.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections.abc import Iterable
from dataclasses import dataclass
from dataclasses import field
import logging
from math import lcm
from typing import Callable
from typing import Optional

# Import local modules
from numrec.algebra import IntMatrix
from numrec.algebra import IntPoly
from numrec.algebra import annihilates
from numrec.algebra import char_poly
from numrec.algebra import minimal_recurrence
from numrec.algebra import prime_divisors
from numrec.algebra import split_zero_tail
from numrec.automata import Dfa
from numrec.automata import Word
from numrec.automata import difference
from numrec.automata import empty_dfa
from numrec.automata import format_word
from numrec.automata import is_empty
from numrec.automata import is_infinite
from numrec.automata import live_state_count
from numrec.automata import minimize
from numrec.automata import nth_word
from numrec.automata import parse_word
from numrec.config import Config
from numrec.errors import AlgebraError
from numrec.errors import BoundExceededError
from numrec.errors import NonMinimalRecurrenceError
from numrec.errors import NumerationError
from numrec.errors import PreconditionError
from numrec.errors import WordNotAcceptedError
from numrec.linrec import Bounded
from numrec.linrec import GrowthVerdict
from numrec.linrec import LinearRecurrence
from numrec.linrec import eventual_profile
from numrec.linrec import n_growth_criterion
from numrec.linrec import smallest_v_exceeding
from numrec.linrec import term
from numrec.periodic import DecisionVerdict
from numrec.periodic import Inapplicable
from numrec.periodic import UpSet
from numrec.periodic import certify
from numrec.periodic import search
from numrec.periodic import up_set_automaton


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbstractSystem:
    """Infinite regular language read through its minimal trim automaton."""

    language: Dfa
    _rows: list[list[int]] = field(default_factory=list, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "language", minimize(self.language))
        if not is_infinite(self.language):
            raise NumerationError("an abstract numeration system needs an infinite language")
        self._rows.append([int(q in self.language.finals) for q in range(self.language.state_count)])

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.language.alphabet

    @property
    def state_count(self) -> int:
        return self.language.state_count

    @property
    def initial(self) -> int:
        return self.language.initial

    def u_row(self, i: int) -> list[int]:
        """``[u_i(q) for q in states]``."""
        rows = self._rows
        table = self.language.table
        while len(rows) <= i:
            previous = rows[-1]
            rows.append([sum(previous[t] for t in row if t is not None) for row in table])
        return rows[i]

    def v(self, i: int, q: Optional[int] = None) -> int:
        """``v_i(q)``, words of length at most ``i`` accepted from ``q`` (the initial state by default)."""
        state = self.initial if q is None else q
        return sum(self.u_row(j)[state] for j in range(i + 1))

    def rep(self, n: int) -> Word:
        return rep_s(self, n)

    def value(self, word: Iterable[str]) -> int:
        return val_s(self, word)

    def periodic_dfa(self, modulus: int, residues: frozenset[int]) -> Dfa:
        return residue_automaton(self, modulus, residues)


@dataclass(frozen=True)
class CountTable:
    """Path counts of the initial state and the recurrence of ``v(q_0)``.

    ``v_recurrence`` generates ``v_{i + v_shift}(q_0)``; ``v_shift`` is nonzero
    only when ``v(q_0)`` satisfies its minimal recurrence from some index on.
    """

    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    v_recurrence: LinearRecurrence
    v_shift: int
    char_poly: IntPoly


@dataclass(frozen=True)
class ValExpansion:
    """``coefficients[i - 1][q] = β_{q,i}(word)``."""

    word: Word
    coefficients: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HypothesisReport:
    passed: bool
    failures: tuple[str, ...]
    u_positive: bool
    u_diverges: bool
    criterion: Optional[GrowthVerdict]


@dataclass(frozen=True)
class AnsBounds:
    threshold: int
    c_bound: int
    prime_exponents: tuple[tuple[int, int], ...]
    max_preperiod: int
    period_bound: int
    preperiod_bound: int


def _word(s: AbstractSystem, word: Iterable[str]) -> Word:
    return parse_word(s.alphabet, word) if isinstance(word, str) else tuple(word)


def rep_s(s: AbstractSystem, n: int) -> Word:
    return nth_word(s.language, n)


def val_expansion(s: AbstractSystem, word: Iterable[str]) -> ValExpansion:
    """Coefficients ``β_{q,i}`` of an accepted word."""
    w = _word(s, word)
    if not s.language.accepts(w):
        raise WordNotAcceptedError(f"word {format_word(w)!r} is not in the language")
    table = s.language.table
    coefficients = []
    state = s.initial
    for symbol in w:
        beta = [0] * s.state_count
        beta[s.initial] += 1
        index = s.language.symbol_index(symbol)
        for target in table[state][:index]:
            if target is not None:
                beta[target] += 1
        coefficients.append(tuple(beta))
        nxt = table[state][index]
        assert nxt is not None
        state = nxt
    return ValExpansion(w, tuple(coefficients))


def val_s(s: AbstractSystem, word: Iterable[str]) -> int:
    """Genealogical index of ``word`` from the closed formula."""
    expansion = val_expansion(s, word)
    n = len(expansion.word)
    return sum(
        b * count
        for i, beta in enumerate(expansion.coefficients, start=1)
        for b, count in zip(beta, s.u_row(n - i))
    )


def adjacency(s: AbstractSystem) -> IntMatrix:
    rows = [[0] * s.state_count for _ in range(s.state_count)]
    for p, row in enumerate(s.language.table):
        for target in row:
            if target is not None:
                rows[p][target] += 1
    return IntMatrix.of(rows)


def count_recurrence(s: AbstractSystem, depth: Optional[int] = None) -> CountTable:
    """Count tables up to ``depth`` and the minimal recurrence of ``v(q_0)``.

    The recurrence is cross-checked against ``(x - 1) χ(x)`` where ``χ`` is the
    characteristic polynomial of the adjacency matrix.
    """
    k = s.state_count
    depth = 2 * (k + 2) if depth is None else depth
    if depth < 2 * (k + 2):
        raise PreconditionError(f"depth {depth} is below 2 * (states + 2) = {2 * (k + 2)}")
    u = tuple(tuple(s.u_row(i)) for i in range(depth + 1))
    v_rows = []
    running = [0] * k
    for row in u:
        running = [a + b for a, b in zip(running, row)]
        v_rows.append(tuple(running))
    v0 = [row[s.initial] for row in v_rows]
    chi = char_poly(adjacency(s))
    if not annihilates(IntPoly((-1, 1)) * chi, v0):
        raise AlgebraError("count sequence is not annihilated by (x - 1) χ(x)")
    coeffs = minimal_recurrence(v0, k + 1)
    if coeffs is None or any(not isinstance(c, int) for c in coeffs):
        raise AlgebraError(f"no integer recurrence of order <= {k + 1} for v(q_0)")
    values, shift = split_zero_tail([int(c) for c in coeffs])
    recurrence = LinearRecurrence(tuple(int(c) for c in values), tuple(v0[shift : shift + len(values)]))
    logger.debug("v(q0) recurrence %s shifted by %d", recurrence.coeffs, shift)
    return CountTable(u, tuple(v_rows), recurrence, shift, chi)


def _diverges(values: list[int], window: int) -> bool:
    late = values[-window:]
    early = values[-3 * window : -2 * window]
    return min(late) > max(early)


def hypothesis_check(s: AbstractSystem, depth: int = 64) -> HypothesisReport:
    """Check the hypotheses of the decision procedure up to ``depth``.

    ``u_i(q) -> ∞`` is judged by comparing a late window of counts with an early
    one, for every state.
    """
    k = s.state_count
    window = 4 * k
    depth = max(depth, 3 * window + 1, 2 * (k + 2))
    failures: list[str] = []
    rows = [s.u_row(i) for i in range(depth + 1)]
    u_positive = all(row[s.initial] > 0 for row in rows)
    if not u_positive:
        first = next(i for i, row in enumerate(rows) if row[s.initial] == 0)
        failures.append(f"no word of length {first} in the language")
    stalled = [q for q in range(k) if not _diverges([row[q] for row in rows], window)]
    if stalled:
        failures.append(f"u_i(q) does not diverge for states {stalled}")
    criterion: Optional[GrowthVerdict] = None
    table = count_recurrence(s, depth)
    try:
        criterion = n_growth_criterion(table.v_recurrence)
    except NonMinimalRecurrenceError as e:
        failures.append(str(e))
    if criterion is not None and not criterion.overall:
        bounded = [v.prime for v in criterion.primes if isinstance(v, Bounded)]
        failures.append(f"N_v(p^s) stays bounded for p in {bounded}")
    report = HypothesisReport(not failures, tuple(failures), u_positive, not stalled, criterion)
    logger.debug("hypotheses: %s", report)
    return report


def _vector_step(s: AbstractSystem, m: int) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
    table = s.language.table

    def step(vector: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(vector[t] for t in row if t is not None) % m for row in table)

    return step


def _start_vector(s: AbstractSystem, m: int) -> tuple[int, ...]:
    return tuple(c % m for c in s.u_row(0))


def state_preperiod(s: AbstractSystem, m: int) -> int:
    """``I(m) = max_q ι_{u(q)}(m)``."""
    step = _vector_step(s, m)
    start = _start_vector(s, m)
    return max(len(eventual_profile(start, step, lambda vec, q=q: vec[q])[0]) for q in range(s.state_count))


def state_period(s: AbstractSystem, m: int) -> int:
    """``lcm_q π_{u(q)}(m)``."""
    step = _vector_step(s, m)
    start = _start_vector(s, m)
    return lcm(*(len(eventual_profile(start, step, lambda vec, q=q: vec[q])[1]) for q in range(s.state_count)))


def residue_automaton(s: AbstractSystem, m: int, residues: frozenset[int]) -> Dfa:
    """Words of ``L`` whose value modulo ``m`` lies in ``residues``.

    A state pairs a state of the language automaton with the function
    ``g(j) = value mod m of the prefix read so far if j more letters follow``,
    stored on ``0 .. ι + π - 1`` where ``(ι, π)`` is the profile of the vectors
    ``(u_j(q) mod m)_q``.
    """
    if m < 1:
        raise PreconditionError("modulus must be positive")
    if not residues:
        return empty_dfa(s.alphabet)
    preperiod, period = eventual_profile(_start_vector(s, m), _vector_step(s, m), lambda vec: vec)
    vectors = preperiod + period
    iota, span = len(preperiod), len(vectors)
    table = s.language.table
    increments: dict[tuple[int, int], tuple[int, ...]] = {}
    for p, row in enumerate(table):
        for index, target in enumerate(row):
            if target is None:
                continue
            beta = [0] * s.state_count
            beta[s.initial] += 1
            for smaller in row[:index]:
                if smaller is not None:
                    beta[smaller] += 1
            increments[p, index] = tuple(sum(b * c for b, c in zip(beta, vec)) % m for vec in vectors)

    start = (s.initial, (0,) * span)
    index_of = {start: 0}
    states = [start]
    rows = []
    for p, g in states:
        out: list[Optional[int]] = []
        for index, target in enumerate(table[p]):
            if target is None:
                out.append(None)
                continue
            inc = increments[p, index]
            shifted = g[1:] + (g[iota],)
            nxt = (target, tuple((a + b) % m for a, b in zip(shifted, inc)))
            if nxt not in index_of:
                index_of[nxt] = len(states)
                states.append(nxt)
            out.append(index_of[nxt])
        rows.append(tuple(out))
    finals = frozenset(
        i for i, (p, g) in enumerate(states) if p in s.language.finals and g[0] % m in residues
    )
    logger.debug("residue automaton mod %d: %d states before minimization", m, len(states))
    return minimize(Dfa(s.alphabet, len(states), 0, finals, tuple(rows)))


def up_set_dfa_ans(s: AbstractSystem, x: UpSet) -> Dfa:
    return up_set_automaton(s, x)


def _v_term(s: AbstractSystem, table: CountTable, i: int) -> int:
    if i < len(table.v):
        return table.v[i][s.initial]
    return term(table.v_recurrence, i - table.v_shift)


def _zero_multiplicity(poly: IntPoly) -> int:
    return next(i for i, c in enumerate(poly.coeffs) if c)


def compute_bounds_ans(
    s: AbstractSystem,
    d: int,
    sharp: bool = False,
    config: Optional[Config] = None,
) -> AnsBounds:
    """Period and preperiod bounds for sets recognized with ``d`` states.

    ``T = (d #Q)^k`` (``d #Q`` when ``sharp``), ``c <= v_{T+1}(q_0)``,
    ``P = Π p_j^{s_j} c`` with ``N_v(p_j^{s_j}) > T`` and
    ``A = v_{d #Q + I}(q_0) + 1`` where ``I`` bounds ``I(m)`` for ``m <= P``.

    Raises:
        PreconditionError: the hypotheses fail.
        BoundExceededError: an exponent or a modulus exceeds the configured caps.

    """
    config = config or Config()
    if d < 1:
        raise PreconditionError("the automaton has at least one state")
    report = hypothesis_check(s, config.max_depth)
    if not report.passed:
        raise PreconditionError(f"hypotheses fail: {'; '.join(report.failures)}")
    table = count_recurrence(s)
    recurrence = table.v_recurrence
    states = s.state_count
    threshold = d * states if sharp else (d * states) ** recurrence.order
    c_bound = _v_term(s, table, threshold + 1)
    exponents = tuple(
        (p, smallest_v_exceeding(recurrence, p, threshold, config.v_max))
        for p in prime_divisors(recurrence.coeffs[-1])
    )
    period_bound = c_bound
    for p, e in exponents:
        period_bound *= p**e
    # u(q) is purely periodic from index e0 modulo any m coprime to g(0), χ = x^{e0} g
    e0 = _zero_multiplicity(table.char_poly)
    g0 = table.char_poly.coeffs[e0]
    max_preperiod = e0
    for p in prime_divisors(g0):
        if p > period_bound:
            continue
        power = p
        while power * p <= period_bound:
            power *= p
        if power > config.max_modulus:
            raise BoundExceededError(f"modulus {power} exceeds the configured maximum {config.max_modulus}")
        max_preperiod = max(max_preperiod, state_preperiod(s, power))
    preperiod_bound = _v_term(s, table, d * states + max_preperiod) + 1
    bounds = AnsBounds(threshold, c_bound, exponents, max_preperiod, period_bound, preperiod_bound)
    logger.info("bounds for d=%d: P=%d, A=%d", d, period_bound, preperiod_bound)
    return bounds


def decide_ans(s: AbstractSystem, x_dfa: Dfa, config: Optional[Config] = None) -> DecisionVerdict:
    """Decide whether ``{val_s(w) : w ∈ L(x_dfa)}`` is ultimately periodic.

    A system failing ``hypothesis_check`` gets ``Inapplicable`` unless
    ``config.certify_unbounded`` is set.
    """
    config = config or Config()
    if x_dfa.alphabet != s.alphabet:
        return Inapplicable(f"automaton alphabet {x_dfa.alphabet!r} is not the system alphabet {s.alphabet!r}")
    if not is_empty(difference(x_dfa, s.language)):
        return Inapplicable("the automaton accepts words outside the language")
    d = max(live_state_count(x_dfa), 1)
    report = hypothesis_check(s, config.max_depth)
    if not report.passed:
        reason = f"hypotheses fail: {'; '.join(report.failures)}"
        if not config.certify_unbounded:
            return Inapplicable(reason)
        logger.info("hypotheses fail, trying an unbounded certificate")
        return certify(s, x_dfa, s.v(d), reason, config)
    try:
        bounds = compute_bounds_ans(s, d, config.sharp_bounds, config)
    except BoundExceededError as e:
        return Inapplicable(str(e))
    return search(s, x_dfa, bounds.period_bound, bounds.preperiod_bound, config)
