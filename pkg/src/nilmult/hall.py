"""Bracket trees over an ordered alphabet and Hall's basic commutators.

Order of commutators: lighter ones come first; within a weight, ``[a, b]``
is compared lexicographically on ``(a, b)``; letters follow alphabet position.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError, ParseError, ResourceLimitError
from .witt import witt


class Alphabet:
    """Distinct generator names; the total order is sequence position."""

    __slots__ = ("symbols", "_index", "_hash")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"alphabet symbols must be distinct: {symbols}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}
        self._hash = hash(symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not in {self!r}") from None

    def letter(self, name: str) -> "Commutator":
        return Commutator.leaf(self, name)

    def letters(self) -> tuple["Commutator", ...]:
        return tuple(Commutator.leaf(self, s) for s in self.symbols)

    def sub(self, names: Iterable[str]) -> "Alphabet":
        """Sub-alphabet carrying the induced order."""
        keep = set(names)
        for s in keep:
            self.index(s)
        return Alphabet(s for s in self.symbols if s in keep)


class Commutator:
    """Immutable binary bracket tree; leaves are alphabet letters.

    Any bracketing can be represented; :func:`is_basic` tells whether it is
    one of Hall's basic commutators.
    """

    __slots__ = ("alphabet", "letter_index", "left", "right", "weight", "key", "_hash")

    def __init__(self, alphabet, letter_index, left, right):
        self.alphabet = alphabet
        self.letter_index = letter_index
        self.left = left
        self.right = right
        if left is None:
            self.weight = 1
            self.key = (1, letter_index)
        else:
            self.weight = left.weight + right.weight
            self.key = (self.weight, left.key, right.key)
        self._hash = hash((alphabet, self.key))

    @classmethod
    def leaf(cls, alphabet: Alphabet, name: str) -> "Commutator":
        return cls(alphabet, alphabet.index(name), None, None)

    @classmethod
    def bracket(cls, left: "Commutator", right: "Commutator") -> "Commutator":
        _check_same(left, right)
        return cls(left.alphabet, None, left, right)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def name(self) -> str:
        if not self.is_leaf:
            raise AttributeError("only leaves have a name")
        return self.alphabet.symbols[self.letter_index]

    def __eq__(self, other):
        if not isinstance(other, Commutator):
            return NotImplemented
        return self.key == other.key and self.alphabet == other.alphabet

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        _check_same(self, other)
        return self.key < other.key

    def __le__(self, other):
        _check_same(self, other)
        return self.key <= other.key

    def __gt__(self, other):
        _check_same(self, other)
        return self.key > other.key

    def __ge__(self, other):
        _check_same(self, other)
        return self.key >= other.key

    def __str__(self):
        if self.is_leaf:
            return self.name
        return f"[{self.left},{self.right}]"

    def __repr__(self):
        return f"Commutator({self})"


def _check_same(a: Commutator, b: Commutator) -> None:
    if a.alphabet is not b.alphabet and a.alphabet != b.alphabet:
        raise AlphabetMismatchError(f"{a} and {b} live over different alphabets")


def compare(a: Commutator, b: Commutator) -> int:
    """Three-way comparison: -1, 0 or 1."""
    _check_same(a, b)
    return (a.key > b.key) - (a.key < b.key)


def support(b: Commutator) -> frozenset[str]:
    """Names of the letters occurring in ``b``."""
    if b.is_leaf:
        return frozenset((b.name,))
    return support(b.left) | support(b.right)


def is_basic(b: Commutator) -> bool:
    """Check Hall's conditions recursively, independently of :func:`enumerate_basic`."""
    if b.is_leaf:
        return True
    u, v = b.left, b.right
    if not (is_basic(u) and is_basic(v)):
        return False
    if not u > v:
        return False
    return u.is_leaf or v >= u.right


@lru_cache(maxsize=None)
def _layers(alphabet: Alphabet, weight: int) -> tuple[tuple[Commutator, ...], ...]:
    if weight == 1:
        return ((), alphabet.letters())
    layers = _layers(alphabet, weight - 1)
    found = []
    for wl in range(1, weight):
        for u in layers[wl]:
            for v in layers[weight - wl]:
                if u.key > v.key and (u.is_leaf or v.key >= u.right.key):
                    found.append(Commutator(alphabet, None, u, v))
    found.sort(key=lambda t: t.key)
    return layers + (tuple(found),)


def enumerate_basic(
    alphabet: Alphabet | Sequence[str], weight: int, max_count: int | None = None
) -> tuple[Commutator, ...]:
    """All basic commutators of exactly ``weight``, in increasing order.

    ``max_count`` guards against huge layers: the Witt count is checked before
    any enumeration happens.
    """
    if weight < 1:
        raise ValueError(f"weight must be positive, got {weight}")
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    if max_count is not None:
        predicted = witt(weight, len(alphabet))
        if predicted > max_count:
            raise ResourceLimitError(
                f"basic commutators of weight {weight} on {len(alphabet)} letters",
                predicted,
                max_count,
            )
    return _layers(alphabet, weight)[weight]


_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|([A-Za-z_][A-Za-z0-9_]*))")


def parse_bracket(text: str, alphabet: Alphabet) -> Commutator:
    """Parse bracket notation such as ``[[y1,x1],x2]``.

    ``[a,b,c]`` is read left-normed as ``[[a,b],c]``.
    """
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        tokens.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()

    i = 0

    def expr():
        nonlocal i
        if i >= len(tokens):
            raise ParseError("unexpected end of input", text, len(text))
        kind, value, at = tokens[i]
        if kind == 4:
            i += 1
            if value not in alphabet:
                raise ParseError(f"letter {value!r} is not in the alphabet", text, at)
            return Commutator.leaf(alphabet, value)
        if kind != 1:
            raise ParseError(f"unexpected {value!r}", text, at)
        i += 1
        parts = [expr()]
        while i < len(tokens) and tokens[i][0] == 3:
            i += 1
            parts.append(expr())
        if i >= len(tokens) or tokens[i][0] != 2:
            raise ParseError("expected ']'", text, tokens[i][2] if i < len(tokens) else len(text))
        if len(parts) < 2:
            raise ParseError("a bracket needs at least two entries", text, at)
        i += 1
        tree = parts[0]
        for p in parts[1:]:
            tree = Commutator.bracket(tree, p)
        return tree

    tree = expr()
    if i != len(tokens):
        raise ParseError("trailing input", text, tokens[i][2])
    return tree
