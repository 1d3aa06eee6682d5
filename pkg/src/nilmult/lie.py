"""Homogeneous layers of the free Lie ring in Hall-basis coordinates.

Any bracketing of letters is rewritten into an integer combination of basic
commutators using bilinearity, ``[u,u] = 0``, antisymmetry and the Jacobi
identity ``[[a,b],v] = [[a,v],b] + [a,[b,v]]``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import RewriteError
from .hall import Alphabet, Commutator, _check_same

MAX_REWRITE_DEPTH = 200


class LieVector:
    """Integer combination of basic commutators of one weight."""

    __slots__ = ("weight", "coefficients")

    def __init__(self, weight: int, coefficients: Mapping[Commutator, int] | None = None):
        self.weight = weight
        coeffs = {}
        for b, k in (coefficients or {}).items():
            if b.weight != weight:
                raise ValueError(f"{b} has weight {b.weight}, expected {weight}")
            if k:
                coeffs[b] = coeffs.get(b, 0) + k
        self.coefficients = {b: k for b, k in coeffs.items() if k}

    @classmethod
    def unit(cls, b: Commutator) -> "LieVector":
        return cls(b.weight, {b: 1})

    @classmethod
    def _from_pairs(cls, weight, pairs):
        v = cls.__new__(cls)
        v.weight = weight
        acc = {}
        for b, k in pairs:
            acc[b] = acc.get(b, 0) + k
        v.coefficients = {b: k for b, k in acc.items() if k}
        return v

    def __bool__(self):
        return bool(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, b):
        return self.coefficients.get(b, 0)

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].key)

    def _check(self, other):
        if not isinstance(other, LieVector):
            return NotImplemented
        if other.weight != self.weight and self and other:
            raise ValueError(f"cannot combine weights {self.weight} and {other.weight}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LieVector._from_pairs(
            self.weight if self else other.weight,
            list(self.coefficients.items()) + list(other.coefficients.items()),
        )

    def __neg__(self):
        return LieVector._from_pairs(self.weight, ((b, -k) for b, k in self.coefficients.items()))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        return LieVector._from_pairs(self.weight, ((b, k * scalar) for b, k in self.coefficients.items()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieVector):
            return NotImplemented
        return self.coefficients == other.coefficients and (
            self.weight == other.weight or not self.coefficients
        )

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for b, k in self.items():
            sign = "-" if k < 0 else "+"
            mag = "" if abs(k) == 1 else f"{abs(k)}*"
            parts.append(f"{sign} {mag}{b}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"LieVector({self})"

    def coordinates(self, index: Mapping[Commutator, int], dim: int) -> list[int]:
        """Dense coordinates with respect to an indexed basis."""
        row = [0] * dim
        for b, k in self.coefficients.items():
            row[index[b]] = k
        return row


_depth = 0


@lru_cache(maxsize=None)
def _bracket_basic(u: Commutator, v: Commutator) -> tuple[tuple[Commutator, int], ...]:
    # u, v basic; returns Hall coordinates of [u, v]
    global _depth
    if u.key == v.key:
        return ()
    if u.key < v.key:
        return tuple((b, -k) for b, k in _bracket_basic(v, u))
    if u.is_leaf or v.key >= u.right.key:
        return ((Commutator(u.alphabet, None, u, v), 1),)
    if _depth >= MAX_REWRITE_DEPTH:
        raise RewriteError(f"rewriting [{u},{v}] exceeded depth {MAX_REWRITE_DEPTH}")
    _depth += 1
    try:
        a, b = u.left, u.right
        # [[a,b],v] = [[a,v],b] + [a,[b,v]]
        first = _bracket_pairs(_bracket_basic(a, v), ((b, 1),))
        second = _bracket_pairs(((a, 1),), _bracket_basic(b, v))
    finally:
        _depth -= 1
    acc: dict[Commutator, int] = {}
    for t, k in first + second:
        acc[t] = acc.get(t, 0) + k
    return tuple((t, k) for t, k in acc.items() if k)


def _bracket_pairs(xs, ys):
    out = []
    for p, i in xs:
        for q, j in ys:
            for t, k in _bracket_basic(p, q):
                out.append((t, i * j * k))
    return tuple(out)


def bracket(x: LieVector, y: LieVector) -> LieVector:
    """Lie bracket of two homogeneous vectors, expanded in the Hall basis."""
    if not x or not y:
        return LieVector(x.weight + y.weight)
    for p in x.coefficients:
        for q in y.coefficients:
            _check_same(p, q)
            break
        break
    return LieVector._from_pairs(
        x.weight + y.weight,
        _bracket_pairs(tuple(x.coefficients.items()), tuple(y.coefficients.items())),
    )


def expand(tree: Commutator) -> LieVector:
    """Hall-basis expansion of an arbitrary bracket tree."""
    if tree.is_leaf:
        return LieVector.unit(tree)
    return bracket(expand(tree.left), expand(tree.right))


def left_normed(head: Commutator | str, tail: Sequence[Commutator | str], alphabet: Alphabet | None = None) -> LieVector:
    """Expansion of ``[head, t1, ..., tc] = [...[[head, t1], t2]..., tc]``.

    Letters may be given as names when ``alphabet`` is supplied.
    """
    if not tail:
        raise ValueError("left-normed commutator needs a nonempty tail")

    def as_letter(x):
        if isinstance(x, Commutator):
            return x
        if alphabet is None:
            raise TypeError("letter names need an alphabet")
        return Commutator.leaf(alphabet, x)

    vec = LieVector.unit(as_letter(head))
    for t in tail:
        vec = bracket(vec, LieVector.unit(as_letter(t)))
    return vec


def combine(vectors: Iterable[tuple[int, LieVector]]) -> LieVector:
    """Integer linear combination ``sum(k * v)``."""
    pairs = []
    weight = None
    for k, v in vectors:
        if v:
            if weight is not None and v.weight != weight:
                raise ValueError("cannot combine vectors of different weights")
            weight = v.weight
        pairs.extend((b, k * c) for b, c in v.coefficients.items())
    return LieVector._from_pairs(weight or 0, pairs)
