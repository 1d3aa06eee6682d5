"""Finitely generated abelian groups, pair specifications and computed structures."""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ParseError
from .hall import Alphabet


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (smallest first) of a direct sum of cyclic groups."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for r in orders:
        if r < 2:
            raise ValueError(f"cyclic orders must be >= 2, got {r}")
        for p, e in _factorize(r).items():
            by_prime[p].append(p**e)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[length - 1 - i] *= q
    return tuple(factors)


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError(f"free rank must be nonnegative, got {self.free_rank}")
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"{fs} is not a divisibility chain")

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "FgAbelianGroup":
        return parse_group_spec(text)

    @classmethod
    def from_json(cls, data: dict) -> "FgAbelianGroup":
        return normalize(data.get("torsion", []), data.get("free_rank", 0))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def summands(self) -> tuple[int, ...]:
        """Cyclic summand orders, free ones first encoded as 0."""
        return (0,) * self.free_rank + self.invariant_factors

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return normalize(self.invariant_factors + other.invariant_factors, self.free_rank + other.free_rank)

    def __str__(self):
        terms = []
        if self.free_rank == 1:
            terms.append("Z")
        elif self.free_rank > 1:
            terms.append(f"Z^{self.free_rank}")
        terms.extend(f"Z/{d}" for d in self.invariant_factors)
        return " * ".join(terms) if terms else "1"


def normalize(cyclic_orders: Iterable[int], free_rank: int = 0) -> FgAbelianGroup:
    """Invariant-factor form of ``Z^free_rank`` plus the given cyclic groups."""
    return FgAbelianGroup(free_rank, invariant_factors(cyclic_orders))


def direct_sum(*groups: FgAbelianGroup) -> FgAbelianGroup:
    out = FgAbelianGroup()
    for g in groups:
        out = out + g
    return out


def d(g: FgAbelianGroup) -> int:
    """Minimal number of generators."""
    return g.free_rank + len(g.invariant_factors)


def exp(g: FgAbelianGroup) -> int:
    """Exponent; 0 stands for an infinite group."""
    if g.free_rank:
        return 0
    return g.invariant_factors[-1] if g.invariant_factors else 1


def order(g: FgAbelianGroup) -> int | float:
    if g.free_rank:
        return math.inf
    return math.prod(g.invariant_factors)


def format_exp(e: int) -> str:
    return "∞" if e == 0 else str(e)


_TERM = re.compile(r"Z(?:\^(-?\d+)|/(-?\d+))?")


def parse_group_spec(text: str) -> FgAbelianGroup:
    """Parse ``1`` or ``Z^a * Z/r1 * Z/r2 ...`` (whitespace-insensitive)."""
    compact = []
    positions = []
    for i, ch in enumerate(text):
        if not ch.isspace():
            compact.append(ch)
            positions.append(i)
    s = "".join(compact)
    if not s:
        raise ParseError("empty group spec", text, 0)
    if s == "1":
        return FgAbelianGroup()
    free = 0
    orders = []
    pos = 0
    while True:
        m = _TERM.match(s, pos)
        if not m:
            at = positions[pos] if pos < len(positions) else len(text)
            raise ParseError("expected 'Z', 'Z^k' or 'Z/r'", text, at)
        exponent, modulus = m.group(1), m.group(2)
        at = positions[pos]
        if modulus is not None:
            r = int(modulus)
            if r <= 1:
                raise ParseError(f"cyclic order must be >= 2, got {r}", text, at)
            orders.append(r)
        elif exponent is not None:
            k = int(exponent)
            if k < 0:
                raise ParseError(f"free rank must be >= 0, got {k}", text, at)
            free += k
        else:
            free += 1
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] in "/^":
            raise ParseError(f"expected an integer after {s[pos]!r}", text, positions[pos])
        if s[pos] != "*":
            raise ParseError("expected '*'", text, positions[pos])
        pos += 1
    return normalize(orders, free)


@dataclass(frozen=True)
class PairSpec:
    """The pair ``(G, N)`` with ``G = N + K``.

    Generators: ``y1..yl`` free in N, ``y(l+1)..ym`` free in K, ``x1..xt``
    torsion in N and ``x(t+1)..xn`` torsion in K, each torsion block following
    the invariant factors of its summand.  Default order:
    ``y1 < ... < ym < x1 < ... < xn``.
    """

    N: FgAbelianGroup
    K: FgAbelianGroup = field(default_factory=FgAbelianGroup)

    @property
    def G(self) -> FgAbelianGroup:
        return self.N + self.K

    @property
    def l(self) -> int:  # noqa: E743
        return self.N.free_rank

    @property
    def s(self) -> int:
        return self.K.free_rank

    @property
    def m(self) -> int:
        return self.l + self.s

    @property
    def t(self) -> int:
        return len(self.N.invariant_factors)

    @property
    def n(self) -> int:
        return self.t + len(self.K.invariant_factors)

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        """``r_1, ..., r_n``: N's invariant factors followed by K's."""
        return self.N.invariant_factors + self.K.invariant_factors

    @cached_property
    def Y1(self) -> tuple[str, ...]:
        return tuple(f"y{i}" for i in range(1, self.l + 1))

    @cached_property
    def Y2(self) -> tuple[str, ...]:
        return tuple(f"y{i}" for i in range(self.l + 1, self.m + 1))

    @cached_property
    def X1(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.t + 1))

    @cached_property
    def X2(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(self.t + 1, self.n + 1))

    @property
    def generators(self) -> tuple[str, ...]:
        return self.Y1 + self.Y2 + self.X1 + self.X2

    @property
    def n_part(self) -> frozenset[str]:
        """Generators of N, i.e. ``X1 + Y1``."""
        return frozenset(self.Y1 + self.X1)

    @cached_property
    def orders(self) -> dict[str, int]:
        """Order of each generator, 0 for free ones."""
        out = {y: 0 for y in self.Y1 + self.Y2}
        out.update(zip(self.X1 + self.X2, self.torsion_orders))
        return out

    def alphabet(self, order: Sequence[str] | None = None) -> Alphabet:
        if order is None:
            return Alphabet(self.generators)
        if sorted(order) != sorted(self.generators):
            raise ValueError(f"{list(order)} is not a permutation of {list(self.generators)}")
        return Alphabet(order)

    def has_global_chain(self) -> bool:
        """Whether ``r_1 | r_2 | ... | r_n`` holds with N's torsion first."""
        rs = self.torsion_orders
        return all(b % a == 0 for a, b in zip(rs, rs[1:]))

    def __str__(self):
        return f"(G, N) with N = {self.N}, K = {self.K}"


@dataclass(frozen=True)
class AbelianStructure:
    """A computed group: ``Z^free_rank`` plus the cyclic groups in ``primary_form``.

    ``primary_form`` keeps the orders as a pipeline produced them (one per
    basic commutator for the counting pipelines); ``labels`` optionally names
    the source of each entry.  Equality compares canonical forms only.
    """

    free_rank: int
    primary_form: tuple[int, ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "primary_form", tuple(self.primary_form))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.labels and len(self.labels) != len(self.primary_form):
            raise ValueError("labels must match primary_form entry for entry")

    @cached_property
    def canonical(self) -> FgAbelianGroup:
        return normalize(self.primary_form, self.free_rank)

    @property
    def is_trivial(self) -> bool:
        return self.canonical.is_trivial

    def __eq__(self, other):
        if not isinstance(other, AbelianStructure):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return str(self.canonical)

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion_primary": sorted(self.primary_form),
            "invariant_factors": list(self.canonical.invariant_factors),
        }
