"""Versioned JSON documents.

Every top-level document carries ``"format": 1``; it may be omitted on input
and is always written on output.
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
import json
from pathlib import Path
from typing import Literal
from typing import Optional
from typing import TypeVar
from typing import Union

# Import third-party modules
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

# Import local modules
from numrec.ans import AbstractSystem
from numrec.ans import AnsBounds
from numrec.automata import Dfa
from numrec.errors import SchemaError
from numrec.hd0l import Hd0lVerdict
from numrec.hd0l import Morphism
from numrec.linrec import Bounded
from numrec.linrec import GrowthVerdict
from numrec.linrec import LinearRecurrence
from numrec.linrec import ResidueProfile
from numrec.periodic import DecisionVerdict
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.periodic import UltimatelyPeriodic
from numrec.positional import BertrandSpec
from numrec.positional import PositionalBounds
from numrec.positional import PositionalSystem
from numrec.positional import bertrand_from_dbeta


FORMAT = 1

Model = TypeVar("Model", bound=BaseModel)


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    format: Literal[1] = FORMAT


class DfaModel(Document):
    alphabet: list[str]
    states: int = Field(..., ge=1)
    initial: int = 0
    finals: list[int]
    transitions: list[tuple[int, str, int]]

    def to_dfa(self) -> Dfa:
        return Dfa.from_transitions(self.alphabet, self.states, self.initial, self.finals, self.transitions)

    @classmethod
    def from_dfa(cls, d: Dfa) -> DfaModel:
        transitions = sorted((q, s, t) for (q, s), t in d.transitions.items())
        return cls(
            alphabet=list(d.alphabet),
            states=d.state_count,
            initial=d.initial,
            finals=sorted(d.finals),
            transitions=transitions,
        )


class RecurrenceModel(Document):
    coeffs: list[int] = Field(..., min_length=1)
    initial: list[int]

    def to_recurrence(self) -> LinearRecurrence:
        return LinearRecurrence(tuple(self.coeffs), tuple(self.initial))


class BertrandModel(BaseModel):
    preperiod: list[int] = Field(default_factory=list)
    period: list[int] = Field(..., min_length=1)


class AnsModel(BaseModel):
    language: DfaModel


class SystemModel(Document):
    """``recurrence`` (with optional ``C`` and ``language``), ``bertrand`` or ``ans``."""

    recurrence: Optional[RecurrenceModel] = None
    digit_bound: Optional[int] = Field(None, alias="C", ge=1)
    language: Optional[DfaModel] = None
    bertrand: Optional[BertrandModel] = None
    ans: Optional[AnsModel] = None

    @model_validator(mode="after")
    def _one_kind(self) -> SystemModel:
        kinds = [k for k in ("recurrence", "bertrand", "ans") if getattr(self, k) is not None]
        if len(kinds) != 1:
            raise ValueError(f"exactly one of recurrence, bertrand, ans is required, got {kinds or 'none'}")
        if self.recurrence is None and (self.language is not None or self.digit_bound is not None):
            raise ValueError("C and language only apply to recurrence systems")
        return self

    def build(self) -> Union[PositionalSystem, AbstractSystem]:
        if self.ans is not None:
            return AbstractSystem(self.ans.language.to_dfa())
        if self.bertrand is not None:
            return bertrand_from_dbeta(BertrandSpec(tuple(self.bertrand.preperiod), tuple(self.bertrand.period)))
        assert self.recurrence is not None
        language = self.language.to_dfa() if self.language is not None else None
        return PositionalSystem(self.recurrence.to_recurrence(), self.digit_bound, language)


class MorphismModel(Document):
    g: dict[str, str]
    f: Optional[dict[str, str]] = None
    start: str
    codomain: Optional[list[str]] = None

    def morphisms(self) -> tuple[Morphism, Morphism]:
        """``(f, g)``; ``f`` defaults to the identity coding."""
        g = Morphism.of(self.g)
        f = Morphism.of(self.f or {c: c for c in g.domain}, self.codomain)
        return f, g


class VerdictModel(Document):
    verdict: Literal["ultimately_periodic", "not_ultimately_periodic", "inapplicable"]
    preperiod_bits: Optional[str] = None
    period_bits: Optional[str] = None
    period_bound: Optional[int] = None
    preperiod_bound: Optional[int] = None
    reason: Optional[str] = None

    @classmethod
    def of(cls, verdict: DecisionVerdict) -> VerdictModel:
        if isinstance(verdict, UltimatelyPeriodic):
            return cls(verdict="ultimately_periodic", preperiod_bits=verdict.up.u, period_bits=verdict.up.v)
        if isinstance(verdict, NotUltimatelyPeriodic):
            return cls(
                verdict="not_ultimately_periodic",
                period_bound=verdict.period_bound,
                preperiod_bound=verdict.preperiod_bound,
            )
        assert isinstance(verdict, Inapplicable)
        return cls(verdict="inapplicable", reason=verdict.reason)


class ResidueProfileModel(Document):
    modulus: int
    preperiod: int
    period: int
    preperiod_values: list[int]
    period_values: list[int]
    recurring_count: int

    @classmethod
    def of(cls, profile: ResidueProfile) -> ResidueProfileModel:
        return cls(
            modulus=profile.modulus,
            preperiod=profile.preperiod,
            period=profile.period,
            preperiod_values=list(profile.preperiod_values),
            period_values=list(profile.period_values),
            recurring_count=profile.recurring_count,
        )


class PrimeVerdictModel(BaseModel):
    prime: int
    verdict: Literal["Divergent", "Bounded"]
    a: Optional[list[int]] = None
    b: Optional[list[int]] = None


class GrowthVerdictModel(Document):
    primes: list[PrimeVerdictModel]
    overall: bool

    @classmethod
    def of(cls, verdict: GrowthVerdict) -> GrowthVerdictModel:
        primes = []
        for v in verdict.primes:
            if isinstance(v, Bounded):
                primes.append(
                    PrimeVerdictModel(prime=v.prime, verdict="Bounded", a=list(v.a.coeffs), b=list(v.b.coeffs))
                )
            else:
                primes.append(PrimeVerdictModel(prime=v.prime, verdict="Divergent"))
        return cls(primes=primes, overall=verdict.overall)


class BoundsModel(Document):
    kind: Literal["positional", "ans"]
    period_bound: int
    preperiod_bound: int
    threshold: int
    prime_exponents: list[tuple[int, int]]
    max_preperiod: int
    c_bound: Optional[int] = None

    @classmethod
    def of(cls, bounds: Union[PositionalBounds, AnsBounds]) -> BoundsModel:
        common = {
            "period_bound": bounds.period_bound,
            "preperiod_bound": bounds.preperiod_bound,
            "threshold": bounds.threshold,
            "prime_exponents": list(bounds.prime_exponents),
            "max_preperiod": bounds.max_preperiod,
        }
        if isinstance(bounds, AnsBounds):
            return cls(kind="ans", c_bound=bounds.c_bound, **common)
        return cls(kind="positional", **common)


class IndexedWord(BaseModel):
    index: int
    word: str


class EnumerationModel(Document):
    words: list[IndexedWord]


class Hd0lVerdictModel(Document):
    letters: dict[str, VerdictModel]
    overall: Optional[bool] = None

    @classmethod
    def of(cls, verdict: Hd0lVerdict) -> Hd0lVerdictModel:
        return cls(letters={b: VerdictModel.of(v) for b, v in verdict.letters}, overall=verdict.overall)


def parse(model: type[Model], text: str) -> Model:
    """Validate ``text`` against ``model``.

    Raises:
        SchemaError: malformed JSON or a schema violation.

    """
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError(f"invalid {model.__name__}: {e}") from e


def load(model: type[Model], path: Union[str, Path]) -> Model:
    return parse(model, Path(path).read_text(encoding="utf-8"))


def dump(document: BaseModel) -> str:
    """Serialize an output document, checking that it parses back."""
    text = document.model_dump_json(by_alias=True, exclude_none=True)
    type(document).model_validate(json.loads(text))
    return text
