"""Ultimately periodic sets and the candidate search shared by the decision procedures.

A set ``X`` of naturals is ultimately periodic when its characteristic word is
``u v^ω``. Given bounds ``P`` on the period and ``A`` on the preperiod of any
ultimately periodic set recognizable with ``d`` states, :func:`search` tries one
candidate per period ``p <= P``: the periodic set whose bits are read off the
input automaton from ``A`` on. A cheap comparison of shifted bit windows
discards most candidates; survivors are checked exactly by automaton
equivalence beyond ``A``.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice
import logging
from typing import Optional
from typing import Union

# Import third-party modules
from typing_extensions import Protocol

# Import local modules
from numrec.automata import Dfa
from numrec.automata import Equal
from numrec.automata import Word
from numrec.automata import at_least
from numrec.automata import difference
from numrec.automata import equivalent
from numrec.automata import from_words
from numrec.automata import intersect
from numrec.automata import is_empty
from numrec.automata import iter_words
from numrec.automata import language_size
from numrec.automata import minimize
from numrec.automata import nth_word
from numrec.automata import union
from numrec.config import Config
from numrec.errors import PreconditionError


logger = logging.getLogger(__name__)


class Numeration(Protocol):
    """What a decision procedure needs from a numeration system.

    ``language`` lists the representations in increasing order of value, so
    ``nth_word(language, n)`` is ``rep(n)``.
    """

    @property
    def alphabet(self) -> tuple[str, ...]: ...

    @property
    def language(self) -> Dfa: ...

    def rep(self, n: int) -> Word: ...

    def value(self, word: Iterable[str]) -> int: ...

    def periodic_dfa(self, modulus: int, residues: frozenset[int]) -> Dfa:
        """Representations of the ``n`` with ``n mod modulus`` in ``residues``."""
        ...


def _primitive_length(bits: str) -> int:
    n = len(bits)
    return next(d for d in range(1, n + 1) if n % d == 0 and bits == bits[:d] * (n // d))


@dataclass(frozen=True)
class UpSet:
    """Ultimately periodic set with characteristic word ``u v^ω`` in least form.

    Attributes:
        u: Preperiod bits, ``"0"``/``"1"``.
        v: Period bits, nonempty and primitive. When ``u`` is nonempty its last
            bit differs from the last bit of ``v``.

    """

    u: str
    v: str

    def __post_init__(self) -> None:
        if not self.v:
            raise PreconditionError("the period of an ultimately periodic set is nonempty")
        if set(self.u + self.v) - {"0", "1"}:
            raise PreconditionError("characteristic words are made of 0 and 1")
        if _primitive_length(self.v) != len(self.v) or (self.u and self.u[-1] == self.v[-1]):
            raise PreconditionError(f"({self.u!r}, {self.v!r}) is not minimal, use UpSet.normalized")

    @classmethod
    def normalized(cls, u: str, v: str) -> UpSet:
        """Return the least form of ``u v^ω``."""
        if not v:
            raise PreconditionError("the period of an ultimately periodic set is nonempty")
        v = v[: _primitive_length(v)]
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1] + v[:-1]
        return cls(u, v)

    @classmethod
    def progression(cls, residue: int, modulus: int) -> UpSet:
        """``{residue + k * modulus : k >= 0}``."""
        if modulus < 1 or residue < 0:
            raise PreconditionError("a progression needs a positive modulus and a natural start")
        return cls.normalized("0" * residue, "1" + "0" * (modulus - 1))

    @classmethod
    def from_members(cls, members: Iterable[int], preperiod: int, period: int) -> UpSet:
        """Set that agrees with ``members`` below ``preperiod + period`` and repeats the last ``period`` bits."""
        chosen = set(members)
        bits = "".join("1" if n in chosen else "0" for n in range(preperiod + period))
        return cls.normalized(bits[:preperiod], bits[preperiod:])

    @property
    def preperiod(self) -> int:
        return len(self.u)

    @property
    def period(self) -> int:
        return len(self.v)

    @property
    def residues(self) -> frozenset[int]:
        """Residues ``r`` modulo the period with ``n ∈ X ⟺ n mod period ∈ residues`` for ``n >= preperiod``."""
        return frozenset((self.preperiod + j) % self.period for j, bit in enumerate(self.v) if bit == "1")

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.preperiod:
            return self.u[n] == "1"
        return self.v[(n - self.preperiod) % self.period] == "1"

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and self.contains(n)

    def bits(self, count: int) -> str:
        """First ``count`` bits of the characteristic word."""
        return "".join("1" if self.contains(n) else "0" for n in range(count))


@dataclass(frozen=True)
class UltimatelyPeriodic:
    up: UpSet


@dataclass(frozen=True)
class NotUltimatelyPeriodic:
    period_bound: int
    preperiod_bound: int


@dataclass(frozen=True)
class Inapplicable:
    reason: str


DecisionVerdict = Union[UltimatelyPeriodic, NotUltimatelyPeriodic, Inapplicable]


def up_set_automaton(numeration: Numeration, x: UpSet) -> Dfa:
    """Automaton of the representations of ``x``.

    The periodic part comes from ``numeration.periodic_dfa``; the representations
    of the numbers below the preperiod on which it disagrees with ``x`` are
    added or removed explicitly.
    """
    residues = x.residues
    periodic = numeration.periodic_dfa(x.period, residues)
    extra: list[Word] = []
    spurious: list[Word] = []
    for n in range(x.preperiod):
        wanted = x.u[n] == "1"
        if wanted != (n % x.period in residues):
            (extra if wanted else spurious).append(numeration.rep(n))
    result = periodic
    if spurious:
        result = difference(result, from_words(numeration.alphabet, spurious))
    if extra:
        result = union(result, from_words(numeration.alphabet, extra))
    return minimize(result)


def _read_bits(numeration: Numeration, x_dfa: Dfa, start: int, count: int) -> bytes:
    return bytes(x_dfa.accepts(word) for word in islice(iter_words(numeration.language, start), count))


def _candidate(window: bytes, start: int, p: int) -> frozenset[int]:
    return frozenset((start + j) % p for j in range(p) if window[j])


def _last_disagreement(numeration: Numeration, a: Dfa, b: Dfa) -> int:
    """One plus the largest value on which two automata with a finite symmetric difference disagree."""
    diff = union(difference(a, b), difference(b, a))
    size = language_size(diff)
    if size is None:
        raise PreconditionError("the symmetric difference is infinite")
    if size == 0:
        return 0
    return numeration.value(nth_word(diff, size - 1)) + 1


def _least_form(numeration: Numeration, x_dfa: Dfa, periodic: Dfa, p: int, residues: frozenset[int]) -> UpSet:
    cycle = [int(r in residues) for r in range(p)]
    q = next(d for d in range(1, p + 1) if p % d == 0 and all(cycle[j] == cycle[(j + d) % p] for j in range(p)))
    a = _last_disagreement(numeration, x_dfa, periodic)
    u = "".join(str(bit) for bit in _read_bits(numeration, x_dfa, 0, a))
    v = "".join(str(cycle[(a + j) % p]) for j in range(q))
    return UpSet.normalized(u, v)


class _Verifier:
    """Exact check of one candidate period beyond the preperiod bound."""

    def __init__(self, numeration: Numeration, x_dfa: Dfa, start: int) -> None:
        self.numeration = numeration
        self.x_dfa = x_dfa
        self.start = start
        self.tail = intersect(numeration.language, at_least(numeration.alphabet, numeration.rep(start)))
        self.x_tail = intersect(x_dfa, self.tail)

    def __call__(self, p: int, residues: frozenset[int]) -> Optional[Dfa]:
        periodic = self.numeration.periodic_dfa(p, residues)
        if isinstance(equivalent(self.x_tail, intersect(periodic, self.tail)), Equal):
            return periodic
        return None


def _run_certificate(numeration: Numeration, x_dfa: Dfa, start: int, length: int, budget: int) -> bool:
    """Look for ``length`` consecutive equal bits beyond ``start`` in a set that changes value beyond ``start``.

    Such a run rules out every period ``p <= length`` with preperiod at most ``start``.
    """
    tail = intersect(numeration.language, at_least(numeration.alphabet, numeration.rep(start)))
    members = intersect(x_dfa, tail)
    others = difference(tail, x_dfa)
    if is_empty(members) or is_empty(others):
        return False
    for side in (members, others):
        previous = start - 1
        for word in islice(iter_words(side), budget):
            n = numeration.value(word)
            if n - previous - 1 >= length:
                logger.info("found a run of %d equal bits between %d and %d", n - previous - 1, previous, n)
                return True
            previous = n
    return False


def search(
    numeration: Numeration,
    x_dfa: Dfa,
    period_bound: int,
    preperiod_bound: int,
    config: Optional[Config] = None,
) -> DecisionVerdict:
    """Decide whether ``x_dfa`` recognizes an ultimately periodic set.

    Args:
        numeration: The numeration system; ``L(x_dfa)`` must be included in its language.
        x_dfa: Automaton of the representations of ``X``.
        period_bound: ``P``, every possible period of ``X`` is at most ``P``.
        preperiod_bound: ``A``, every possible preperiod of ``X`` is at most ``A``.
        config: Search limits.

    Returns:
        ``UltimatelyPeriodic`` with the least ``(u, v)``, ``NotUltimatelyPeriodic``
        when every candidate fails, or ``Inapplicable`` when ``P`` exceeds
        ``config.max_period`` and no run certificate settles the question.

    """
    config = config or Config()
    start = preperiod_bound
    examined = min(period_bound, config.max_period)
    sample = config.sample_window
    window = _read_bits(numeration, x_dfa, start, examined + sample)
    logger.info("searching periods up to %d beyond %d (bound %d)", examined, start, period_bound)

    survivors = []
    for p in range(1, examined + 1):
        if window[:sample] == window[p : p + sample]:
            survivors.append(p)
        else:
            logger.debug("period %d rejected by the bit window", p)
    verify = _Verifier(numeration, x_dfa, start)

    found: Optional[tuple[int, frozenset[int], Dfa]] = None
    if config.parallel and len(survivors) > 1:
        with ThreadPoolExecutor(max_workers=config.thread_count) as pool:
            futures = [(p, pool.submit(verify, p, _candidate(window, start, p))) for p in survivors]
            for p, future in futures:
                periodic = future.result()
                if periodic is not None:
                    found = (p, _candidate(window, start, p), periodic)
                    break
            for _, future in futures:
                future.cancel()
    else:
        for p in survivors:
            residues = _candidate(window, start, p)
            periodic = verify(p, residues)
            logger.debug("period %d: %s", p, "verified" if periodic is not None else "refuted")
            if periodic is not None:
                found = (p, residues, periodic)
                break

    if found is not None:
        p, residues, periodic = found
        up = _least_form(numeration, x_dfa, periodic, p, residues)
        logger.info("ultimately periodic with preperiod %d and period %d", up.preperiod, up.period)
        return UltimatelyPeriodic(up)
    if period_bound <= config.max_period:
        logger.info("no period up to %d, not ultimately periodic", period_bound)
        return NotUltimatelyPeriodic(period_bound, preperiod_bound)
    if _run_certificate(numeration, x_dfa, start, period_bound, config.gap_scan_budget):
        return NotUltimatelyPeriodic(period_bound, preperiod_bound)
    return Inapplicable(
        f"period bound {period_bound} exceeds max_period={config.max_period} and no run of "
        f"{period_bound} equal bits was found"
    )


def certify(
    numeration: Numeration,
    x_dfa: Dfa,
    preperiod_guess: int,
    reason: str,
    config: Optional[Config] = None,
) -> DecisionVerdict:
    """Try to prove periodicity without proven bounds.

    Only an exactly verified ``UltimatelyPeriodic`` is returned; anything else
    becomes ``Inapplicable(reason)``.
    """
    config = config or Config()
    verdict = search(numeration, x_dfa, config.max_period, preperiod_guess, config)
    if isinstance(verdict, UltimatelyPeriodic):
        return verdict
    return Inapplicable(reason)
