"""Deterministic finite automata over ordered alphabets.

Transitions are partial: a missing transition leads to an implicit dead sink.
The alphabet tuple fixes the total order on symbols, which in turn fixes the
genealogical (radix) order on words used for enumeration: shorter words first,
words of equal length compared lexicographically.

Basic usage:
    >>> from numrec.automata import Dfa, nth_word, word_index
    >>> fib = Dfa.from_transitions(("0", "1"), 3, 0, {0, 1, 2}, [(0, "1", 1), (1, "0", 2), (2, "0", 2), (2, "1", 1)])
    >>> nth_word(fib, 4)
    ('1', '0', '1')
    >>> word_index(fib, ("1", "0", "1"))
    4
"""

# Import future modules
from __future__ import annotations

# Import built-in modules
from collections import deque
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import field
import logging
from typing import Callable
from typing import Optional
from typing import Union

# Import local modules
from numrec.errors import AlphabetMismatchError
from numrec.errors import AutomatonError
from numrec.errors import IndexOutOfLanguageError
from numrec.errors import WordNotAcceptedError


logger = logging.getLogger(__name__)

Word = tuple[str, ...]
Row = tuple[Optional[int], ...]

BOOLEAN_OPS = ("intersect", "union", "difference")


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with partial transitions.

    Attributes:
        alphabet: Distinct symbols; their order is the alphabet order.
        state_count: Number of states, numbered ``0 .. state_count - 1``.
        initial: Initial state.
        finals: Accepting states.
        table: ``table[state][i]`` is the target on ``alphabet[i]`` or ``None``.

    """

    alphabet: tuple[str, ...]
    state_count: int
    initial: int
    finals: frozenset[int]
    table: tuple[Row, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError(f"duplicate symbols in alphabet {self.alphabet!r}")
        if self.state_count < 1:
            raise AutomatonError("an automaton needs at least one state")
        if not 0 <= self.initial < self.state_count:
            raise AutomatonError(f"initial state {self.initial} out of range")
        if any(not 0 <= q < self.state_count for q in self.finals):
            raise AutomatonError(f"final states {sorted(self.finals)} out of range")
        if len(self.table) != self.state_count:
            raise AutomatonError("transition table must have one row per state")
        for row in self.table:
            if len(row) != len(self.alphabet):
                raise AutomatonError("transition rows must have one entry per symbol")
            for target in row:
                if target is not None and not 0 <= target < self.state_count:
                    raise AutomatonError(f"transition target {target} out of range")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.alphabet)})

    @classmethod
    def from_transitions(
        cls,
        alphabet: Iterable[str],
        state_count: int,
        initial: int,
        finals: Iterable[int],
        transitions: Iterable[tuple[int, str, int]],
    ) -> Dfa:
        """Build a Dfa from ``(source, symbol, target)`` triples."""
        symbols = tuple(alphabet)
        index = {s: i for i, s in enumerate(symbols)}
        rows: list[list[Optional[int]]] = [[None] * len(symbols) for _ in range(max(state_count, 0))]
        for source, symbol, target in transitions:
            if symbol not in index:
                raise AutomatonError(f"symbol {symbol!r} is not in the alphabet")
            if not 0 <= source < state_count:
                raise AutomatonError(f"transition source {source} out of range")
            if rows[source][index[symbol]] is not None:
                raise AutomatonError(f"two transitions from state {source} on {symbol!r}")
            rows[source][index[symbol]] = target
        return cls(symbols, state_count, initial, frozenset(finals), tuple(tuple(row) for row in rows))

    @property
    def transitions(self) -> dict[tuple[int, str], int]:
        """Partial transition mapping ``(state, symbol) -> state``."""
        return {
            (q, self.alphabet[i]): target
            for q, row in enumerate(self.table)
            for i, target in enumerate(row)
            if target is not None
        }

    def symbol_index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AutomatonError(f"symbol {symbol!r} is not in the alphabet {self.alphabet!r}") from None

    def step(self, state: Optional[int], symbol: str) -> Optional[int]:
        if state is None:
            return None
        return self.table[state][self.symbol_index(symbol)]

    def run(self, word: Iterable[str], start: Optional[int] = None) -> Optional[int]:
        """Return the state reached on ``word`` or ``None`` if the run dies."""
        state: Optional[int] = self.initial if start is None else start
        for symbol in word:
            state = self.step(state, symbol)
            if state is None:
                return None
        return state

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.finals

    def with_finals(self, finals: Iterable[int]) -> Dfa:
        return Dfa(self.alphabet, self.state_count, self.initial, frozenset(finals), self.table)

    def reverse(self) -> Nfa:
        """Return the automaton with every edge reversed and initial/final roles swapped."""
        moves: list[list[set[int]]] = [[set() for _ in self.alphabet] for _ in range(self.state_count)]
        for q, row in enumerate(self.table):
            for i, target in enumerate(row):
                if target is not None:
                    moves[target][i].add(q)
        return Nfa(
            self.alphabet,
            self.state_count,
            frozenset(self.finals),
            frozenset({self.initial}),
            tuple(tuple(frozenset(cell) for cell in row) for row in moves),
        )


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton, used as the intermediate of a reversal."""

    alphabet: tuple[str, ...]
    state_count: int
    initials: frozenset[int]
    finals: frozenset[int]
    moves: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self) -> None:
        referenced = set(self.initials) | set(self.finals)
        for row in self.moves:
            for cell in row:
                referenced |= cell
        if any(not 0 <= q < self.state_count for q in referenced):
            raise AutomatonError("nondeterministic automaton references a state out of range")

    @property
    def transitions(self) -> dict[tuple[int, str], frozenset[int]]:
        return {
            (q, self.alphabet[i]): cell for q, row in enumerate(self.moves) for i, cell in enumerate(row) if cell
        }

    def determinize(self) -> Dfa:
        """Subset construction; the empty subset is the implicit dead sink."""
        start = frozenset(self.initials)
        if not start:
            return empty_dfa(self.alphabet)
        index = {start: 0}
        subsets = [start]
        rows: list[Row] = []
        for subset in subsets:
            row: list[Optional[int]] = []
            for i in range(len(self.alphabet)):
                target = frozenset(t for q in subset for t in self.moves[q][i])
                if not target:
                    row.append(None)
                    continue
                if target not in index:
                    index[target] = len(subsets)
                    subsets.append(target)
                row.append(index[target])
            rows.append(tuple(row))
        finals = frozenset(k for k, subset in enumerate(subsets) if subset & self.finals)
        return Dfa(self.alphabet, len(subsets), 0, finals, tuple(rows))


@dataclass(frozen=True)
class Dfao:
    """Automaton with one output letter per state; every state is accepting."""

    dfa: Dfa
    output: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.output) != self.dfa.state_count:
            raise AutomatonError("output must be defined for every state")

    def output_of(self, word: Iterable[str]) -> Optional[str]:
        state = self.dfa.run(word)
        return None if state is None else self.output[state]


@dataclass(frozen=True)
class Equal:
    """Both automata accept the same language."""


@dataclass(frozen=True)
class Differ:
    """The languages differ; ``witness`` is the genealogically first word in the symmetric difference."""

    witness: Word


Equivalence = Union[Equal, Differ]


def parse_word(alphabet: Iterable[str], text: str) -> Word:
    """Split ``text`` into symbols of ``alphabet``.

    Single-character alphabets are read character by character, others are split
    on whitespace. ``""`` and ``"ε"`` both denote the empty word.
    """
    symbols = tuple(alphabet)
    if text in ("", "ε"):
        return ()
    if all(len(s) == 1 for s in symbols):
        word = tuple(text)
    else:
        word = tuple(text.split())
    unknown = [s for s in word if s not in symbols]
    if unknown:
        raise AutomatonError(f"symbols {unknown!r} are not in the alphabet {symbols!r}")
    return word


def format_word(word: Iterable[str]) -> str:
    symbols = tuple(word)
    if all(len(s) == 1 for s in symbols):
        return "".join(symbols)
    return " ".join(symbols)


def genealogical_key(alphabet: Iterable[str]) -> Callable[[Word], tuple[int, tuple[int, ...]]]:
    """Return a sort key realizing the genealogical order over ``alphabet``."""
    position = {s: i for i, s in enumerate(alphabet)}
    return lambda word: (len(word), tuple(position[s] for s in word))


def empty_dfa(alphabet: Iterable[str]) -> Dfa:
    symbols = tuple(alphabet)
    return Dfa(symbols, 1, 0, frozenset(), ((None,) * len(symbols),))


def all_words(alphabet: Iterable[str]) -> Dfa:
    symbols = tuple(alphabet)
    return Dfa(symbols, 1, 0, frozenset({0}), ((0,) * len(symbols),))


def from_words(alphabet: Iterable[str], words: Iterable[Iterable[str]]) -> Dfa:
    """Minimal automaton of a finite language."""
    symbols = tuple(alphabet)
    index = {s: i for i, s in enumerate(symbols)}
    rows: list[list[Optional[int]]] = [[None] * len(symbols)]
    finals: set[int] = set()
    for word in words:
        state = 0
        for symbol in word:
            if symbol not in index:
                raise AutomatonError(f"symbol {symbol!r} is not in the alphabet {symbols!r}")
            target = rows[state][index[symbol]]
            if target is None:
                target = len(rows)
                rows.append([None] * len(symbols))
                rows[state][index[symbol]] = target
            state = target
        finals.add(state)
    return minimize(Dfa(symbols, len(rows), 0, frozenset(finals), tuple(tuple(row) for row in rows)))


def at_least(alphabet: Iterable[str], word: Iterable[str]) -> Dfa:
    """Automaton of all words genealogically greater than or equal to ``word``."""
    symbols = tuple(alphabet)
    index = {s: i for i, s in enumerate(symbols)}
    bound = tuple(word)
    for symbol in bound:
        if symbol not in index:
            raise AutomatonError(f"symbol {symbol!r} is not in the alphabet {symbols!r}")
    n = len(bound)
    # state 3*i + c tracks the comparison c (0 equal, 1 smaller, 2 greater) after i symbols
    longer = 3 * (n + 1)
    rows: list[Row] = []
    for i in range(n + 1):
        for cmp in range(3):
            if i == n:
                rows.append((longer,) * len(symbols))
            elif cmp == 0:
                expected = index[bound[i]]
                rows.append(
                    tuple(3 * (i + 1) + (0 if j == expected else 1 if j < expected else 2) for j in range(len(symbols)))
                )
            else:
                rows.append((3 * (i + 1) + cmp,) * len(symbols))
    rows.append((longer,) * len(symbols))
    finals = frozenset({3 * n, 3 * n + 2, longer})
    return minimize(Dfa(symbols, len(rows), 0, finals, tuple(rows)))


def _reachable(d: Dfa) -> set[int]:
    seen = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for target in d.table[q]:
            if target is not None and target not in seen:
                seen.add(target)
                stack.append(target)
    return seen


def _coreachable(d: Dfa) -> set[int]:
    incoming: list[list[int]] = [[] for _ in range(d.state_count)]
    for q, row in enumerate(d.table):
        for target in row:
            if target is not None:
                incoming[target].append(q)
    seen = set(d.finals)
    stack = list(d.finals)
    while stack:
        q = stack.pop()
        for source in incoming[q]:
            if source not in seen:
                seen.add(source)
                stack.append(source)
    return seen


def _canonical(d: Dfa) -> Dfa:
    """Renumber states in breadth-first order over the ordered alphabet."""
    order = {d.initial: 0}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for target in d.table[q]:
            if target is not None and target not in order:
                order[target] = len(order)
                queue.append(target)
    states = sorted(order, key=order.__getitem__)
    rows = tuple(tuple(None if t is None else order[t] for t in d.table[q]) for q in states)
    finals = frozenset(order[q] for q in d.finals if q in order)
    return Dfa(d.alphabet, len(states), 0, finals, rows)


def minimize(d: Dfa) -> Dfa:
    """Return the canonical minimal trim automaton of ``L(d)``.

    Unreachable and dead states are dropped, the remaining states are merged by
    partition refinement, and the result is renumbered breadth-first. The empty
    language is represented by a single non-accepting state without transitions.
    """
    keep = _reachable(d) & _coreachable(d)
    if d.initial not in keep:
        return empty_dfa(d.alphabet)
    states = sorted(keep)
    block = {q: int(q in d.finals) for q in states}
    count = len(set(block.values()))
    while True:
        signatures: dict[tuple[int, ...], int] = {}
        refined: dict[int, int] = {}
        for q in states:
            signature = (block[q],) + tuple(block[t] if t in keep else -1 for t in d.table[q])
            refined[q] = signatures.setdefault(signature, len(signatures))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)
    representative: dict[int, int] = {}
    for q in states:
        representative.setdefault(block[q], q)
    rows = tuple(
        tuple(block[t] if t in keep else None for t in d.table[representative[b]]) for b in range(count)
    )
    finals = frozenset(block[q] for q in states if q in d.finals)
    return _canonical(Dfa(d.alphabet, count, block[d.initial], finals, rows))


def is_empty(d: Dfa) -> bool:
    return not (_reachable(d) & set(d.finals))


def live_state_count(d: Dfa) -> int:
    """Number of states of the minimal trim automaton (0 for the empty language)."""
    reduced = minimize(d)
    return reduced.state_count if reduced.finals else 0


def is_infinite(d: Dfa) -> bool:
    """Whether ``L(d)`` is infinite, i.e. some useful state lies on a cycle."""
    keep = _reachable(d) & _coreachable(d)
    colour = dict.fromkeys(keep, 0)
    for root in keep:
        if colour[root]:
            continue
        colour[root] = 1
        stack: list[tuple[int, Iterator[Optional[int]]]] = [(root, iter(d.table[root]))]
        while stack:
            q, targets = stack[-1]
            advanced = False
            for target in targets:
                if target is None or target not in keep:
                    continue
                if colour[target] == 1:
                    return True
                if colour[target] == 0:
                    colour[target] = 1
                    stack.append((target, iter(d.table[target])))
                    advanced = True
                    break
            if not advanced:
                colour[q] = 2
                stack.pop()
    return False


def _check_alphabets(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: {a.alphabet!r} vs {b.alphabet!r}")


def boolean_ops(a: Dfa, b: Dfa, op: str) -> Dfa:
    """Product construction for ``intersect``, ``union`` or ``difference``; the result is minimized."""
    _check_alphabets(a, b)
    if op not in BOOLEAN_OPS:
        raise ValueError(f"unknown boolean operation {op!r}, expected one of {BOOLEAN_OPS}")
    start = (a.initial, b.initial)
    index: dict[tuple[Optional[int], Optional[int]], int] = {start: 0}
    pairs: list[tuple[Optional[int], Optional[int]]] = [start]
    rows: list[Row] = []
    for p, q in pairs:
        row: list[Optional[int]] = []
        for i in range(len(a.alphabet)):
            p2 = None if p is None else a.table[p][i]
            q2 = None if q is None else b.table[q][i]
            if op == "intersect":
                viable = p2 is not None and q2 is not None
            elif op == "union":
                viable = p2 is not None or q2 is not None
            else:
                viable = p2 is not None
            if not viable:
                row.append(None)
                continue
            target = (p2, q2)
            if target not in index:
                index[target] = len(pairs)
                pairs.append(target)
            row.append(index[target])
        rows.append(tuple(row))
    finals = set()
    for k, (p, q) in enumerate(pairs):
        in_a = p in a.finals
        in_b = q in b.finals
        if (op == "intersect" and in_a and in_b) or (op == "union" and (in_a or in_b)):
            finals.add(k)
        elif op == "difference" and in_a and not in_b:
            finals.add(k)
    return minimize(Dfa(a.alphabet, len(pairs), 0, frozenset(finals), tuple(rows)))


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return boolean_ops(a, b, "intersect")


def union(a: Dfa, b: Dfa) -> Dfa:
    return boolean_ops(a, b, "union")


def difference(a: Dfa, b: Dfa) -> Dfa:
    return boolean_ops(a, b, "difference")


def equivalent(a: Dfa, b: Dfa) -> Equivalence:
    """Compare two languages.

    Pairs of states are explored breadth-first over the ordered alphabet, so the
    first pair found with different acceptance is reached by the genealogically
    smallest word of the symmetric difference.
    """
    _check_alphabets(a, b)
    start: tuple[Optional[int], Optional[int]] = (a.initial, b.initial)
    seen = {start}
    queue: deque[tuple[tuple[Optional[int], Optional[int]], Word]] = deque([(start, ())])
    while queue:
        (p, q), word = queue.popleft()
        if (p in a.finals) != (q in b.finals):
            return Differ(word)
        for i, symbol in enumerate(a.alphabet):
            target = (None if p is None else a.table[p][i], None if q is None else b.table[q][i])
            if target == (None, None) or target in seen:
                continue
            seen.add(target)
            queue.append((target, word + (symbol,)))
    return Equal()


def reverse_determinize(d: Dfa) -> Dfa:
    """Minimal automaton of the reversals of the words of ``L(d)``."""
    return minimize(d.reverse().determinize())


class _PathCounts:
    """Rows ``u_i(q)`` of accepted words of length ``i`` per state, grown on demand."""

    def __init__(self, d: Dfa) -> None:
        self._dfa = d
        self._rows = [[int(q in d.finals) for q in range(d.state_count)]]

    def row(self, length: int) -> list[int]:
        table = self._dfa.table
        while len(self._rows) <= length:
            previous = self._rows[-1]
            self._rows.append(
                [sum(previous[t] for t in table[q] if t is not None) for q in range(self._dfa.state_count)]
            )
        return self._rows[length]


def count_table(d: Dfa, depth: int) -> list[list[int]]:
    """Return ``rows`` with ``rows[i][q] = u_i(q)`` for ``i <= depth``."""
    counts = _PathCounts(d)
    return [list(counts.row(i)) for i in range(depth + 1)]


def count_from(d: Dfa, q: int, i: int) -> tuple[int, int]:
    """Return ``(u_i(q), v_i(q))``: words of length ``i`` (resp. at most ``i``) accepted from ``q``."""
    if not 0 <= q < d.state_count:
        raise AutomatonError(f"state {q} out of range")
    if i < 0:
        raise ValueError("length must be non-negative")
    counts = _PathCounts(d)
    column = [counts.row(j)[q] for j in range(i + 1)]
    return column[-1], sum(column)


def language_size(d: Dfa) -> Optional[int]:
    """Number of accepted words, ``None`` for an infinite language."""
    if is_infinite(d):
        return None
    counts = _PathCounts(d)
    return sum(counts.row(i)[d.initial] for i in range(d.state_count))


def rank(d: Dfa, word: Iterable[str]) -> int:
    """Number of words of ``L(d)`` genealogically smaller than ``word``."""
    w = tuple(word)
    counts = _PathCounts(d)
    total = sum(counts.row(j)[d.initial] for j in range(len(w)))
    state: Optional[int] = d.initial
    for pos, symbol in enumerate(w):
        assert state is not None
        index = d.symbol_index(symbol)
        remaining = len(w) - pos - 1
        for i in range(index):
            target = d.table[state][i]
            if target is not None:
                total += counts.row(remaining)[target]
        state = d.table[state][index]
        if state is None:
            break
    return total


def word_index(d: Dfa, word: Iterable[str]) -> int:
    """Genealogical index of an accepted word."""
    w = tuple(word)
    if not d.accepts(w):
        raise WordNotAcceptedError(f"word {format_word(w)!r} is not accepted")
    return rank(d, w)


def _least_completion(d: Dfa, counts: _PathCounts, state: int, length: int) -> Word:
    word: list[str] = []
    for remaining in range(length - 1, -1, -1):
        for i, target in enumerate(d.table[state]):
            if target is not None and counts.row(remaining)[target] > 0:
                word.append(d.alphabet[i])
                state = target
                break
    return tuple(word)


def nth_word(d: Dfa, n: int) -> Word:
    """Return the ``n``-th accepted word (0-indexed) in genealogical order."""
    if n < 0:
        raise ValueError("index must be non-negative")
    if not is_infinite(d):
        size = language_size(d)
        if size is None or n >= size:
            raise IndexOutOfLanguageError(f"index {n} is beyond a language of {size} words")
    counts = _PathCounts(d)
    remaining = n
    length = 0
    while remaining >= counts.row(length)[d.initial]:
        remaining -= counts.row(length)[d.initial]
        length += 1
    word: list[str] = []
    state = d.initial
    for pos in range(length):
        rest = length - pos - 1
        for i, target in enumerate(d.table[state]):
            if target is None:
                continue
            available = counts.row(rest)[target]
            if remaining < available:
                word.append(d.alphabet[i])
                state = target
                break
            remaining -= available
    return tuple(word)


def iter_words(d: Dfa, start: int = 0) -> Iterator[Word]:
    """Yield the words of ``L(d)`` in genealogical order, beginning at index ``start``."""
    size = language_size(d)
    if size is not None and start >= size:
        return
    counts = _PathCounts(d)
    word = nth_word(d, start)
    produced = start
    while True:
        yield word
        produced += 1
        if size is not None and produced >= size:
            return
        word = _next_word(d, counts, word)


def _next_word(d: Dfa, counts: _PathCounts, word: Word) -> Word:
    path: list[int] = [d.initial]
    for symbol in word:
        target = d.table[path[-1]][d.symbol_index(symbol)]
        assert target is not None
        path.append(target)
    n = len(word)
    for pos in range(n - 1, -1, -1):
        remaining = n - pos - 1
        for i in range(d.symbol_index(word[pos]) + 1, len(d.alphabet)):
            target = d.table[path[pos]][i]
            if target is not None and counts.row(remaining)[target] > 0:
                return word[:pos] + (d.alphabet[i],) + _least_completion(d, counts, target, remaining)
    length = n + 1
    while counts.row(length)[d.initial] == 0:
        length += 1
    return _least_completion(d, counts, d.initial, length)


def to_dot(d: Dfa, name: str = "dfa") -> str:
    """Render ``d`` in Graphviz DOT format, merging parallel edges into one label."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point, label=""];', f"  start -> {d.initial};"]
    for q in range(d.state_count):
        shape = "doublecircle" if q in d.finals else "circle"
        lines.append(f"  {q} [shape={shape}];")
    for q, row in enumerate(d.table):
        labels: dict[int, list[str]] = {}
        for i, target in enumerate(row):
            if target is not None:
                labels.setdefault(target, []).append(d.alphabet[i])
        for target, symbols in labels.items():
            label = ",".join(symbols).replace('"', '\\"')
            lines.append(f'  {q} -> {target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def relabel_outputs(d: Dfa, output: Mapping[int, str]) -> Dfao:
    """Attach per-state outputs to ``d`` with every state made accepting."""
    missing = [q for q in range(d.state_count) if q not in output]
    if missing:
        raise AutomatonError(f"no output for states {missing}")
    machine = d.with_finals(range(d.state_count))
    return Dfao(machine, tuple(output[q] for q in range(d.state_count)))
