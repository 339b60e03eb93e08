"""Integer linear recurrences and their behaviour modulo m.

A recurrence ``U_{i+k} = a_1 U_{i+k-1} + ... + a_k U_i`` is reduced modulo
``m`` to an eventually periodic sequence; :func:`residue_profile` returns its
minimal preperiod ``ι``, minimal period ``π`` and the number ``N`` of residues
taken infinitely often. :func:`n_growth_criterion` decides whether ``N(p^v)``
grows without bound for the primes ``p | a_k`` by extracting the cyclotomic
part of ``P_U(x) = 1 - a_1 x - ... - a_k x^k``.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections import deque
from collections.abc import Hashable
from collections.abc import Iterator
from dataclasses import dataclass
import logging
from typing import Callable
from typing import Optional
from typing import TypeVar
from typing import Union

# Import local modules
from numrec.algebra import IntPoly
from numrec.algebra import congruent_to_one
from numrec.algebra import cyclotomic_part
from numrec.algebra import hankel_determinant
from numrec.algebra import minimal_recurrence
from numrec.algebra import prime_divisors
from numrec.algebra import split_zero_tail
from numrec.errors import BoundExceededError
from numrec.errors import NonMinimalRecurrenceError
from numrec.errors import PreconditionError
from numrec.errors import RecurrenceError


logger = logging.getLogger(__name__)

S = TypeVar("S", bound=Hashable)
T = TypeVar("T")


@dataclass(frozen=True)
class LinearRecurrence:
    """``U_{i+k} = a_1 U_{i+k-1} + ... + a_k U_i`` with initial terms ``U_0 .. U_{k-1}``."""

    coeffs: tuple[int, ...]
    initial: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        object.__setattr__(self, "initial", tuple(int(u) for u in self.initial))
        if not self.coeffs:
            raise RecurrenceError("a recurrence needs at least one coefficient")
        if self.coeffs[-1] == 0:
            raise RecurrenceError("the last coefficient a_k must be nonzero")
        if len(self.initial) != len(self.coeffs):
            raise RecurrenceError(f"expected {len(self.coeffs)} initial terms, got {len(self.initial)}")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def char_poly(self) -> IntPoly:
        """``x^k - a_1 x^{k-1} - ... - a_k``."""
        return IntPoly(tuple(-a for a in reversed(self.coeffs)) + (1,))

    def reciprocal_poly(self) -> IntPoly:
        """``P_U(x) = x^k χ_U(1/x) = 1 - a_1 x - ... - a_k x^k``."""
        return IntPoly((1,) + tuple(-a for a in self.coeffs))


def iter_terms(r: LinearRecurrence) -> Iterator[int]:
    window = deque(r.initial, maxlen=r.order)
    yield from r.initial
    while True:
        nxt = sum(a * u for a, u in zip(r.coeffs, reversed(window)))
        window.append(nxt)
        yield nxt


def terms(r: LinearRecurrence, count: int) -> list[int]:
    """First ``count`` terms."""
    result: list[int] = []
    for value in iter_terms(r):
        if len(result) >= count:
            break
        result.append(value)
    return result


def term(r: LinearRecurrence, i: int) -> int:
    if i < 0:
        raise ValueError("term index must be non-negative")
    return terms(r, i + 1)[i]


@dataclass(frozen=True)
class ResidueProfile:
    """The sequence modulo ``modulus`` as ``preperiod_values`` followed by ``period_values`` repeated."""

    modulus: int
    preperiod_values: tuple[int, ...]
    period_values: tuple[int, ...]

    @property
    def preperiod(self) -> int:
        return len(self.preperiod_values)

    @property
    def period(self) -> int:
        return len(self.period_values)

    @property
    def recurring_count(self) -> int:
        """``N``: number of residues taken infinitely often."""
        return len(set(self.period_values))

    def value_at(self, i: int) -> int:
        if i < self.preperiod:
            return self.preperiod_values[i]
        return self.period_values[(i - self.preperiod) % self.period]


def eventual_profile(
    start: S,
    step: Callable[[S], S],
    project: Callable[[S], T],
    limit: Optional[int] = None,
) -> tuple[list[T], list[T]]:
    """Minimal preperiod and period of ``project(s_i)`` for the orbit ``s_{i+1} = step(s_i)``.

    The orbit is followed until a hidden state repeats; the period is then
    reduced to the least rotation invariant of the value cycle and the
    preperiod shortened from the right.

    Returns:
        ``(preperiod_values, period_values)``.

    """
    seen = {start: 0}
    states = [start]
    while True:
        nxt = step(states[-1])
        if nxt in seen:
            break
        seen[nxt] = len(states)
        states.append(nxt)
        if limit is not None and len(states) > limit:
            raise BoundExceededError(f"no repetition within {limit} steps")
    first = seen[nxt]
    cycle = len(states) - first
    values = [project(s) for s in states]

    def value_at(i: int) -> T:
        return values[i] if i < len(values) else values[first + (i - first) % cycle]

    period = next(
        d
        for d in range(1, cycle + 1)
        if cycle % d == 0 and all(values[first + j] == value_at(first + j + d) for j in range(cycle))
    )
    preperiod = first
    while preperiod > 0 and values[preperiod - 1] == value_at(preperiod - 1 + period):
        preperiod -= 1
    return values[:preperiod], [value_at(preperiod + j) for j in range(period)]


def residue_profile(r: LinearRecurrence, m: int, limit: Optional[int] = None) -> ResidueProfile:
    """Profile of ``(U_i mod m)`` found by hashing successive k-tuples of residues."""
    if m < 1:
        raise ValueError("modulus must be positive")
    coeffs = r.coeffs

    def step(state: tuple[int, ...]) -> tuple[int, ...]:
        nxt = sum(a * u for a, u in zip(coeffs, reversed(state))) % m
        return state[1:] + (nxt,)

    start = tuple(u % m for u in r.initial)
    preperiod, period = eventual_profile(start, step, lambda state: state[0], limit)
    return ResidueProfile(m, tuple(preperiod), tuple(period))


def recurring_values(r: LinearRecurrence, m: int) -> frozenset[int]:
    return frozenset(residue_profile(r, m).period_values)


def reduce_recurrence(r: LinearRecurrence) -> LinearRecurrence:
    """Return the minimal recurrence of the sequence generated by ``r``.

    ``2k`` terms determine it: any recurrence of order ``j <= k`` fitting
    ``j + k`` terms holds for the whole sequence.
    """
    prefix = terms(r, 2 * r.order)
    fitted = minimal_recurrence(prefix, r.order)
    if not fitted:
        raise RecurrenceError("the sequence is identically zero")
    if any(not isinstance(c, int) for c in fitted):
        raise RecurrenceError(f"minimal recurrence {fitted} is not integral")
    coeffs, shift = split_zero_tail(fitted)
    if shift:
        raise RecurrenceError(f"minimal recurrence {fitted} only holds from index {shift}")
    if len(coeffs) == r.order:
        return r
    logger.info("reduced recurrence of order %d to order %d", r.order, len(coeffs))
    return LinearRecurrence(tuple(int(c) for c in coeffs), tuple(prefix[: len(coeffs)]))


@dataclass(frozen=True)
class Divergent:
    """``N(p^v) -> ∞`` as ``v -> ∞``."""

    prime: int


@dataclass(frozen=True)
class Bounded:
    """``N(p^v)`` stays bounded; ``a * b = P_U`` with ``a`` squarefree cyclotomic and ``b ≡ 1 (mod p)``."""

    prime: int
    a: IntPoly
    b: IntPoly
    orders: tuple[int, ...]


PrimeVerdict = Union[Divergent, Bounded]


@dataclass(frozen=True)
class GrowthVerdict:
    """Per-prime verdicts for the primes dividing ``a_k``.

    ``overall`` is true when every prime is divergent, which is exactly when
    ``N(m) -> ∞`` as ``m -> ∞``; it is vacuously true when ``a_k = ±1``.
    """

    primes: tuple[PrimeVerdict, ...]
    overall: bool

    @property
    def diverges_for_all_m(self) -> bool:
        return self.overall


def is_minimal(r: LinearRecurrence) -> bool:
    return hankel_determinant(terms(r, 2 * r.order - 1), r.order) != 0


def n_growth_criterion(r: LinearRecurrence) -> GrowthVerdict:
    """Decide, for each prime ``p | a_k``, whether ``N(p^v)`` is unbounded.

    Raises:
        NonMinimalRecurrenceError: the Hankel determinant of ``r`` vanishes.

    """
    if not is_minimal(r):
        raise NonMinimalRecurrenceError(f"recurrence {r.coeffs} is not minimal for its initial terms")
    part = cyclotomic_part(r.reciprocal_poly(), r.order)
    a, b = part.a, part.b
    if a.constant == -1:
        a, b = -a, -b
    verdicts: list[PrimeVerdict] = []
    for p in prime_divisors(r.coeffs[-1]):
        if part.squarefree and congruent_to_one(b, p):
            verdicts.append(Bounded(p, a, b, part.orders))
        else:
            verdicts.append(Divergent(p))
    verdict = GrowthVerdict(tuple(verdicts), all(isinstance(v, Divergent) for v in verdicts))
    logger.debug("growth criterion for %s: %s", r.coeffs, verdict)
    return verdict


def engstrom_index(r: LinearRecurrence, p: int) -> Optional[int]:
    """Number ``s(p)`` of trailing coefficients divisible by ``p``, ``None`` when all are."""
    if r.coeffs[-1] % p:
        raise PreconditionError(f"{p} does not divide a_k = {r.coeffs[-1]}")
    s = 0
    while s < r.order and r.coeffs[r.order - 1 - s] % p == 0:
        s += 1
    return None if s == r.order else s


def smallest_v_exceeding(r: LinearRecurrence, p: int, threshold: int, v_max: int = 64) -> int:
    """Least ``s`` with ``N(p^s) > threshold``.

    Raises:
        BoundExceededError: no such ``s <= v_max``.

    """
    for v in range(1, v_max + 1):
        count = residue_profile(r, p**v).recurring_count
        logger.debug("N(%d^%d) = %d", p, v, count)
        if count > threshold:
            return v
    raise BoundExceededError(f"N({p}^v) stays <= {threshold} for all v <= {v_max}")


def max_preperiod_below(r: LinearRecurrence, limit: int, max_modulus: Optional[int] = None) -> int:
    """``max_{m <= limit} ι(m)``, computed on prime powers of the primes dividing ``a_k``.

    Residues modulo ``m`` are periodic from index ``i`` iff they are modulo each
    prime power dividing ``m``, the preperiod grows with the exponent, and moduli
    coprime to ``a_k`` give purely periodic sequences.
    """
    best = 0
    for p in prime_divisors(r.coeffs[-1]):
        if p > limit:
            continue
        power = p
        while power * p <= limit:
            power *= p
        if max_modulus is not None and power > max_modulus:
            raise BoundExceededError(f"modulus {power} exceeds the configured maximum {max_modulus}")
        best = max(best, residue_profile(r, power).preperiod)
    return best
