"""Exact integer polynomial and matrix algebra on top of sympy.

Polynomials are stored as ascending integer coefficient tuples so that they
serialize directly to JSON; computations are delegated to ``sympy.Poly`` and
``sympy.Matrix``.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections.abc import Iterable
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
import logging
from math import lcm
from typing import Any
from typing import Optional
from typing import Union

# Import third-party modules
from sympy import Matrix
from sympy import Poly
from sympy import Symbol
from sympy import ZZ
from sympy import cyclotomic_poly
from sympy import primefactors
from sympy import totient

# Import local modules
from numrec.errors import AlgebraError
from numrec.errors import InsufficientTermsError


logger = logging.getLogger(__name__)

X = Symbol("x")

Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial with ascending coefficients; the zero polynomial is ``()``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_sympy(cls, poly: Poly) -> IntPoly:
        descending = poly.all_coeffs()
        if any(not c.is_integer for c in descending):
            raise AlgebraError(f"polynomial {poly.as_expr()} has non-integer coefficients")
        return cls(tuple(int(c) for c in reversed(descending)))

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], X, domain=ZZ)

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __add__(self, other: IntPoly) -> IntPoly:
        size = max(len(self.coeffs), len(other.coeffs))
        left = self.coeffs + (0,) * (size - len(self.coeffs))
        right = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPoly(tuple(a + b for a, b in zip(left, right)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        return IntPoly.from_sympy(self.to_sympy() * other.to_sympy())

    def __pow__(self, exponent: int) -> IntPoly:
        return IntPoly.from_sympy(self.to_sympy() ** exponent)

    def __call__(self, value: int) -> int:
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


ONE = IntPoly((1,))


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(len(row) != len(self.rows) for row in self.rows):
            raise AlgebraError("matrix must be square")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_sympy(self) -> Matrix:
        return Matrix([list(row) for row in self.rows])


@dataclass(frozen=True)
class CyclotomicPart:
    """Split ``f = a * b`` where ``a`` collects every admissible cyclotomic factor.

    Attributes:
        a: Product of the ``Φ_d^{m_d}`` dividing ``f``.
        squarefree: True when every multiplicity is at most one.
        b: The cofactor ``f / a``.
        multiplicities: ``(d, m_d)`` pairs with ``m_d >= 1``.

    """

    a: IntPoly
    squarefree: bool
    b: IntPoly
    multiplicities: tuple[tuple[int, int], ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.multiplicities)

    @property
    def root_order(self) -> int:
        """Least ``D`` with ``a | x^D - 1`` when ``a`` is squarefree."""
        return lcm(1, *self.orders)


def poly_div_exact(f: IntPoly, g: IntPoly) -> Optional[IntPoly]:
    """Return ``q`` with ``f = q * g`` over the integers, or ``None`` if no such ``q`` exists."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    quotient, remainder = f.to_sympy().div(g.to_sympy())
    if not remainder.is_zero:
        return None
    if any(not c.is_integer for c in quotient.all_coeffs()):
        return None
    return IntPoly(tuple(int(c) for c in reversed(quotient.all_coeffs())))


def cyclotomic(d: int) -> IntPoly:
    """Return the ``d``-th cyclotomic polynomial."""
    if d < 1:
        raise ValueError("cyclotomic polynomials are indexed from 1")
    return IntPoly.from_sympy(cyclotomic_poly(d, X, polys=True))


def euler_phi(n: int) -> int:
    return int(totient(n))


def prime_divisors(n: int) -> list[int]:
    """Primes dividing ``|n|``; empty for ``n = ±1``."""
    if n == 0:
        raise ValueError("zero has infinitely many divisors")
    return [int(p) for p in primefactors(abs(n))]


def cyclotomic_part(f: IntPoly, k: int) -> CyclotomicPart:
    """Extract every ``Φ_d`` with ``φ(d) <= k`` from ``f``, with exact multiplicities.

    Since ``φ(d) >= sqrt(d / 2)``, the candidates ``d <= 2k²`` are enough.
    """
    rest = f
    a = ONE
    found: list[tuple[int, int]] = []
    for d in range(1, 2 * k * k + 1):
        if euler_phi(d) > k:
            continue
        phi = cyclotomic(d)
        multiplicity = 0
        while rest.degree >= phi.degree:
            quotient = poly_div_exact(rest, phi)
            if quotient is None:
                break
            rest = quotient
            multiplicity += 1
        if multiplicity:
            a = a * phi**multiplicity
            found.append((d, multiplicity))
    logger.debug("cyclotomic part of %s: %s", f, found)
    return CyclotomicPart(a, all(m <= 1 for _, m in found), rest, tuple(found))


def congruent_to_one(b: IntPoly, p: int) -> bool:
    """Whether ``b ≡ 1 (mod p Z[x])``, decided coefficientwise."""
    return b.constant == 1 and all(c % p == 0 for c in b.coeffs[1:])


def char_poly(m: IntMatrix) -> IntPoly:
    """Characteristic polynomial ``det(xI - M)`` (Berkowitz, division-free)."""
    if m.size == 0:
        return ONE
    return IntPoly.from_sympy(Poly(m.to_sympy().charpoly(X).as_expr(), X, domain=ZZ))


def hankel_determinant(terms: Sequence[int], k: int) -> int:
    """Determinant of the ``k x k`` Hankel matrix ``(terms[i + j])``."""
    if len(terms) < 2 * k - 1:
        raise InsufficientTermsError(f"a {k}x{k} Hankel determinant needs {2 * k - 1} terms, got {len(terms)}")
    if k == 0:
        return 1
    return int(Matrix(k, k, lambda i, j: int(terms[i + j])).det(method="bareiss"))


def _as_coefficient(value: Any) -> Coefficient:
    if value.is_integer:
        return int(value)
    return Fraction(int(value.p), int(value.q))


def _free_choice(last: Any, params: list[Any]) -> dict[Any, int]:
    zero = {p: 0 for p in params}
    if last.xreplace(zero) != 0:
        return zero
    for p in params:
        trial = {**zero, p: 1}
        if last.xreplace(trial) != 0:
            return trial
    return zero


def minimal_recurrence(terms: Sequence[int], max_order: int) -> Optional[tuple[Coefficient, ...]]:
    """Shortest homogeneous recurrence ``(a_1, ..., a_k)`` satisfied by all ``terms``.

    Each order is tried in turn by exact Gaussian elimination over the rationals
    on every available equation ``U_{i+k} = a_1 U_{i+k-1} + ... + a_k U_i``.
    Free parameters of an underdetermined system are set to zero, except that one
    of them is set to 1 when that is needed for a nonzero ``a_k``. A zero ``a_k``
    is returned only when every fitting recurrence of order ``k`` has one; see
    ``split_zero_tail``.

    Returns:
        The coefficients, integers where integral, or ``None`` if no recurrence of
        order at most ``max_order`` fits.

    """
    values = [int(t) for t in terms]
    if len(values) < 2 * max_order:
        raise InsufficientTermsError(f"order {max_order} needs {2 * max_order} terms, got {len(values)}")
    if all(v == 0 for v in values):
        return ()
    for k in range(1, max_order + 1):
        equations = len(values) - k
        system = Matrix(equations, k, lambda i, j: values[i + k - 1 - j])
        rhs = Matrix(equations, 1, lambda i, _: values[i + k])
        try:
            solution, params = system.gauss_jordan_solve(rhs)
        except ValueError:
            continue
        if params.shape[0]:
            solution = solution.xreplace(_free_choice(solution[-1], list(params)))
        coeffs = tuple(_as_coefficient(c) for c in solution)
        logger.debug("minimal recurrence of order %d: %s", k, coeffs)
        return coeffs
    return None


def annihilates(poly: IntPoly, sequence: Sequence[int]) -> bool:
    """Whether ``sum_j c_j s_{i+j} = 0`` for every window inside ``sequence``."""
    c = poly.coeffs
    return all(sum(c[j] * sequence[i + j] for j in range(len(c))) == 0 for i in range(len(sequence) - len(c) + 1))


def split_zero_tail(coeffs: Sequence[Coefficient]) -> tuple[tuple[Coefficient, ...], int]:
    """Drop the zero trailing coefficients of a recurrence.

    ``(a_1, ..., a_j, 0, ..., 0)`` with ``s`` zeros fits the same terms as
    ``(a_1, ..., a_j)`` from index ``s`` on; returns ``((a_1, ..., a_j), s)``.
    """
    values = tuple(coeffs)
    shift = 0
    while values and values[-1] == 0:
        values = values[:-1]
        shift += 1
    return values, shift
