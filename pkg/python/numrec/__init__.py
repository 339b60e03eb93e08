"""numrec: ultimate periodicity of sets of integers recognized in numeration systems.

Sets are given by deterministic automata reading representations, either in a
positional system built on a linear recurrence or in an abstract numeration
system defined by a regular language. Morphic words are handled through their
automatic presentation.

Example:
    >>> import numrec
    >>> fib = numrec.fibonacci_system()
    >>> numrec.format_word(numrec.greedy_rep(fib, 15))
    '100010'

"""

# Import built-in modules
import logging

# Import local modules
from numrec.__version__ import __version__
from numrec.ans import AbstractSystem
from numrec.ans import compute_bounds_ans
from numrec.ans import count_recurrence
from numrec.ans import decide_ans
from numrec.ans import hypothesis_check
from numrec.ans import rep_s
from numrec.ans import residue_automaton
from numrec.ans import val_s
from numrec.automata import Dfa
from numrec.automata import Dfao
from numrec.automata import Nfa
from numrec.automata import format_word
from numrec.automata import minimize
from numrec.automata import nth_word
from numrec.automata import parse_word
from numrec.automata import word_index
from numrec.config import Config
from numrec.errors import NumrecError
from numrec.hd0l import Morphism
from numrec.hd0l import decide_hd0l
from numrec.linrec import LinearRecurrence
from numrec.linrec import n_growth_criterion
from numrec.linrec import residue_profile
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.periodic import UltimatelyPeriodic
from numrec.periodic import UpSet
from numrec.positional import PositionalSystem
from numrec.positional import bertrand_from_dbeta
from numrec.positional import compute_bounds
from numrec.positional import decide
from numrec.positional import fibonacci_system
from numrec.positional import greedy_rep
from numrec.positional import val


__all__ = [
    # Systems
    "AbstractSystem",
    "PositionalSystem",
    "LinearRecurrence",
    "Morphism",
    "bertrand_from_dbeta",
    "fibonacci_system",
    # Automata
    "Dfa",
    "Dfao",
    "Nfa",
    "format_word",
    "minimize",
    "nth_word",
    "parse_word",
    "word_index",
    # Representations
    "greedy_rep",
    "rep_s",
    "val",
    "val_s",
    # Recurrences
    "count_recurrence",
    "hypothesis_check",
    "n_growth_criterion",
    "residue_profile",
    "residue_automaton",
    # Decisions
    "compute_bounds",
    "compute_bounds_ans",
    "decide",
    "decide_ans",
    "decide_hd0l",
    "Inapplicable",
    "NotUltimatelyPeriodic",
    "UltimatelyPeriodic",
    "UpSet",
    # Configuration
    "Config",
    "NumrecError",
    "configure_logging",
    "__version__",
]


def configure_logging(level: str = "INFO") -> None:
    """Configure logging for numrec.

    Replaces any handler installed by an earlier call.

    Args:
        level: Logging level ("DEBUG", "INFO", "WARNING", "ERROR")

    """
    logger = logging.getLogger("numrec")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, level.upper()))
