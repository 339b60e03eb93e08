"""Exception hierarchy for numrec.

Every error raised on purpose by the library derives from :class:`NumrecError`,
so callers can catch the whole family at once. Most also derive from the
matching built-in exception (``ValueError``, ``IndexError``, ``KeyError``).
"""


class NumrecError(Exception):
    """Base class for all numrec errors."""


class AutomatonError(NumrecError):
    """Malformed automaton or invalid automaton operation."""


class AlphabetMismatchError(AutomatonError, ValueError):
    """Two automata combined in one operation have different alphabets."""


class WordNotAcceptedError(AutomatonError, ValueError):
    """A word expected to belong to a language is rejected."""


class IndexOutOfLanguageError(AutomatonError, IndexError):
    """A genealogical index exceeds the size of a finite language."""


class AlgebraError(NumrecError):
    """Base class for polynomial and matrix failures."""


class InsufficientTermsError(AlgebraError, ValueError):
    """Not enough sequence terms to detect a recurrence of the requested order."""


class RecurrenceError(NumrecError, ValueError):
    """Invalid linear recurrence."""


class NonMinimalRecurrenceError(RecurrenceError):
    """A procedure requiring the minimal recurrence got a reducible one."""


class BoundExceededError(NumrecError):
    """A configured search cap was exceeded before an answer was found."""


class PreconditionError(NumrecError, ValueError):
    """An operation was called outside its domain."""


class NumerationError(NumrecError, ValueError):
    """Invalid numeration system or digit word."""


class ConstructionError(NumrecError):
    """A derived system could not be built or failed its validation."""


class UnknownLetterError(NumrecError, KeyError):
    """A letter outside the output alphabet was requested."""


class SchemaError(NumrecError, ValueError):
    """A JSON document does not match its schema."""
