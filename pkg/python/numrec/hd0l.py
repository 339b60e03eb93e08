"""Ultimate periodicity of morphic words ``f(g^ω(a))``.

The fixed point of a prolongable morphism ``g`` is automatic in a canonical
abstract numeration system: digits ``0 .. M - 1`` index the letters of the
images, and ``w_n`` is the output of the automaton reading the ``n``-th word of
``L = {ε} ∪ {paths from a not starting with 0}``. The word is ultimately
periodic iff every fiber ``{n : w_n = b}`` is.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections.abc import Iterable
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import islice
import logging
from math import lcm
from typing import Optional

# Import local modules
from numrec.ans import AbstractSystem
from numrec.ans import decide_ans
from numrec.automata import Dfa
from numrec.automata import Dfao
from numrec.automata import intersect
from numrec.automata import iter_words
from numrec.automata import minimize
from numrec.config import Config
from numrec.errors import ConstructionError
from numrec.errors import UnknownLetterError
from numrec.periodic import DecisionVerdict
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.periodic import UltimatelyPeriodic


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    """Letter-to-word map; letters are single characters.

    Attributes:
        images: ``(letter, image)`` pairs in domain order.
        codomain: Output alphabet, the letters of the images when omitted.

    """

    images: tuple[tuple[str, str], ...]
    codomain: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        letters = [letter for letter, _ in self.images]
        if len(set(letters)) != len(letters):
            raise ConstructionError(f"letters {letters} are not distinct")
        if any(not image for _, image in self.images):
            raise ConstructionError("erasing morphisms are not supported")
        used = sorted({c for _, image in self.images for c in image})
        if not self.codomain:
            object.__setattr__(self, "codomain", tuple(used))
        missing = [c for c in used if c not in self.codomain]
        if missing:
            raise ConstructionError(f"image letters {missing} are outside the codomain {self.codomain}")

    @classmethod
    def of(cls, images: Mapping[str, str], codomain: Optional[Iterable[str]] = None) -> Morphism:
        return cls(tuple(images.items()), tuple(codomain or ()))

    @classmethod
    def identity(cls, letters: Iterable[str]) -> Morphism:
        return cls(tuple((c, c) for c in letters))

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(letter for letter, _ in self.images)

    def image(self, letter: str) -> str:
        for source, image in self.images:
            if source == letter:
                return image
        raise ConstructionError(f"letter {letter!r} is outside the domain {self.domain}")

    def apply(self, word: str) -> str:
        return "".join(self.image(c) for c in word)

    @property
    def is_coding(self) -> bool:
        return all(len(image) == 1 for _, image in self.images)


@dataclass(frozen=True)
class AutomaticPresentation:
    system: AbstractSystem
    output_machine: Dfao
    codomain: tuple[str, ...]


@dataclass(frozen=True)
class Hd0lVerdict:
    """Per-letter verdicts; ``overall`` is ``None`` when some fiber is undecided and none is aperiodic."""

    letters: tuple[tuple[str, DecisionVerdict], ...]
    overall: Optional[bool]

    @property
    def period(self) -> Optional[int]:
        """Least common multiple of the fiber periods when the word is ultimately periodic."""
        if not self.overall:
            return None
        return lcm(*(v.up.period for _, v in self.letters if isinstance(v, UltimatelyPeriodic)))


def fixed_point_prefix(g: Morphism, a: str, n: int) -> str:
    """First ``n`` letters of ``g^ω(a)``."""
    start = g.image(a)
    if len(start) < 2 or start[0] != a:
        raise ConstructionError(f"g is not prolongable on {a!r}: g({a}) = {start!r}")
    word = a
    while len(word) < n:
        word = g.apply(word)
    return word[:n]


def build_presentation(
    f: Optional[Morphism],
    g: Morphism,
    a: str,
    letters: int = 500,
) -> AutomaticPresentation:
    """Canonical system and output automaton for ``f(g^ω(a))``, checked against ``letters`` letters.

    Raises:
        ConstructionError: ``g`` is not prolongable, ``f`` is not a coding, or the
            presentation disagrees with the iterated word.

    """
    f = f or Morphism.identity(g.domain)
    if not f.is_coding:
        raise ConstructionError("f must map every letter to a single letter")
    missing = [c for c in g.domain if c not in f.domain]
    if missing:
        raise ConstructionError(f"f is undefined on {missing}")
    prefix = fixed_point_prefix(g, a, letters)
    width = max(len(image) for _, image in g.images)
    alphabet = tuple(str(j) for j in range(width))
    position = {letter: i for i, letter in enumerate(g.domain)}
    start = len(position)

    def edge(letter: str, j: int) -> Optional[int]:
        image = g.image(letter)
        return position[image[j]] if j < len(image) else None

    rows = [tuple(edge(letter, j) for j in range(width)) for letter in g.domain]
    rows.append(tuple(None if j == 0 else edge(a, j) for j in range(width)))
    machine = Dfa(alphabet, start + 1, start, frozenset(range(start + 1)), tuple(rows))
    output = tuple(f.image(letter) for letter in g.domain) + (f.image(a),)
    presentation = AutomaticPresentation(AbstractSystem(minimize(machine)), Dfao(machine, output), f.codomain)

    expected = f.apply(prefix)
    for n, word in enumerate(islice(iter_words(presentation.system.language), letters)):
        produced = presentation.output_machine.output_of(word)
        if produced != expected[n]:
            raise ConstructionError(f"presentation gives {produced!r} at position {n}, expected {expected[n]!r}")
    logger.info("presentation over %d digits validated on %d letters", width, letters)
    return presentation


def fiber_dfa(presentation: AutomaticPresentation, b: str) -> Dfa:
    """Representations of the positions ``n`` with ``w_n = b``."""
    if b not in presentation.codomain:
        raise UnknownLetterError(b)
    machine = presentation.output_machine
    finals = [q for q, out in enumerate(machine.output) if out == b]
    return intersect(machine.dfa.with_finals(finals), presentation.system.language)


def decide_hd0l(
    f: Optional[Morphism],
    g: Morphism,
    a: str,
    config: Optional[Config] = None,
) -> Hd0lVerdict:
    """Decide every fiber of ``f(g^ω(a))``."""
    config = config or Config()
    presentation = build_presentation(f, g, a, config.hd0l_validation_letters)
    verdicts = []
    for b in presentation.codomain:
        verdict = decide_ans(presentation.system, fiber_dfa(presentation, b), config)
        logger.info("fiber %r: %s", b, type(verdict).__name__)
        verdicts.append((b, verdict))
    if any(isinstance(v, NotUltimatelyPeriodic) for _, v in verdicts):
        overall: Optional[bool] = False
    elif any(isinstance(v, Inapplicable) for _, v in verdicts):
        overall = None
    else:
        overall = True
    return Hd0lVerdict(tuple(verdicts), overall)
