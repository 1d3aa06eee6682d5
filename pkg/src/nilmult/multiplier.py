"""The c-nilpotent multiplier of a pair of finitely generated abelian groups.

Three independent routes are provided:

* :func:`closed_form` evaluates the Witt-count formula (torsion orders must form
  one divisibility chain, N's before K's);
* :func:`count_general` walks the weight ``c+1`` basic commutators and gives
  each one meeting N a cyclic factor of order ``gcd`` of the torsion orders in
  its support;
* :func:`oracle` builds the lattices ``[S,_cF]`` and ``[T,_cF]`` modulo
  ``gamma_{c+2}(F)`` from left-normed commutators and reads the quotient off
  Smith normal form.

:func:`pair_multiplier` runs the applicable ones and insists they agree.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence

from .errors import PipelineDisagreement, ResourceLimitError
from .groups import AbelianStructure, FgAbelianGroup, PairSpec
from .hall import Alphabet, Commutator, enumerate_basic, support
from .lattice import hnf, quotient_invariants
from .lie import left_normed
from .witt import witt

log = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 2000
DEFAULT_MAX_TUPLES = 200_000


@dataclass(frozen=True)
class MultiplierRequest:
    pair: PairSpec
    c: int
    max_dim: int = DEFAULT_MAX_DIM
    max_tuples: int = DEFAULT_MAX_TUPLES

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")

    @property
    def ambient_dim(self) -> int:
        return witt(self.c + 1, self.pair.m + self.pair.n)

    @property
    def tuple_count(self) -> int:
        k = self.pair.m + self.pair.n
        return k ** (self.c + 1)

    def check_dim(self) -> None:
        if self.ambient_dim > self.max_dim:
            raise ResourceLimitError(
                f"weight-{self.c + 1} layer on {self.pair.m + self.pair.n} generators",
                self.ambient_dim,
                self.max_dim,
            )

    def check_tuples(self) -> None:
        if self.tuple_count > self.max_tuples:
            raise ResourceLimitError(
                f"left-normed commutators of weight {self.c + 1}", self.tuple_count, self.max_tuples
            )


def closed_form(req: MultiplierRequest) -> AbelianStructure:
    """Witt-count formula; falls back to :func:`count_general` off the chain case."""
    pair, c = req.pair, req.c
    if not pair.has_global_chain():
        log.warning(
            "torsion orders %s do not form one chain; using the counting pipeline",
            pair.torsion_orders,
        )
        return count_general(req)
    w = c + 1
    m, n, l, t = pair.m, pair.n, pair.l, pair.t

    def chi(k: int) -> int:
        return witt(w, k)

    free = chi(m) - chi(m - l)
    orders, labels = [], []
    for i, r in enumerate(pair.torsion_orders, start=1):
        f = chi(m + n - i + 1) - chi(m + n - i)
        if i <= t:
            mult = f
        else:
            mult = f - (chi(m + n - l - i + 1) - chi(m + n - l - i))
        orders.extend([r] * mult)
        labels.extend([f"x{i}"] * mult)
    return AbelianStructure(free, tuple(orders), tuple(labels))


def count_general(req: MultiplierRequest) -> AbelianStructure:
    """One cyclic factor per basic commutator of weight ``c+1`` that meets N."""
    req.check_dim()
    pair = req.pair
    orders = pair.orders
    inside = pair.n_part
    free = 0
    primary, labels = [], []
    for b in enumerate_basic(pair.alphabet(), req.c + 1):
        supp = support(b)
        if not supp & inside:
            continue
        g = reduce(gcd, (orders[x] for x in supp if orders[x]), 0)
        if g == 0:
            free += 1
        elif g > 1:
            primary.append(g)
            labels.append(str(b))
    return AbelianStructure(free, tuple(primary), tuple(labels))


@lru_cache(maxsize=None)
def _layer_index(alphabet: Alphabet, weight: int) -> dict[Commutator, int]:
    return {b: i for i, b in enumerate(enumerate_basic(alphabet, weight))}


@lru_cache(maxsize=65536)
def _left_normed_row(alphabet: Alphabet, head: str, tail: tuple[str, ...]) -> tuple[int, ...]:
    index = _layer_index(alphabet, len(tail) + 1)
    return tuple(left_normed(head, tail, alphabet).coordinates(index, len(index)))


def _generated_rows(alphabet: Alphabet, heads, c: int) -> list[tuple[int, ...]]:
    # rows for scale * [head, g1, ..., gc] over every c-tuple of generators
    rows = set()
    for head, scale in heads:
        for tail in itertools.product(alphabet.symbols, repeat=c):
            row = _left_normed_row(alphabet, head, tail)
            if any(row):
                rows.add(tuple(scale * x for x in row))
    return sorted(rows)


def _torsion_lattice_rows(pair: PairSpec, alphabet: Alphabet, c: int):
    return _generated_rows(alphabet, [(x, pair.orders[x]) for x in pair.X1 + pair.X2], c)


def oracle(req: MultiplierRequest, order: Sequence[str] | None = None) -> AbelianStructure:
    """Quotient ``([S,_cF] + [T,_cF]) / [T,_cF]`` in the weight ``c+1`` layer.

    ``order`` optionally permutes the total order of the generators.
    """
    req.check_dim()
    req.check_tuples()
    pair, c = req.pair, req.c
    alphabet = pair.alphabet(order)
    dim = req.ambient_dim
    small = _torsion_lattice_rows(pair, alphabet, c)
    s_rows = _generated_rows(alphabet, [(u, 1) for u in pair.Y1 + pair.X1], c)
    inv = quotient_invariants(s_rows + small, small, dim)
    return AbelianStructure(inv.free_rank, inv.torsion)


def pair_multiplier(req: MultiplierRequest, verify: bool = False) -> tuple[AbelianStructure, dict]:
    """Compute ``M^(c)(G, N)``, cross-checking every applicable pipeline.

    Raises :class:`PipelineDisagreement` if any two results differ.
    """
    results = {"count_general": count_general(req)}
    if req.pair.has_global_chain():
        results["closed_form"] = closed_form(req)
    if verify:
        results["oracle"] = oracle(req)
    canon = {name: str(r.canonical) for name, r in results.items()}
    if len(set(canon.values())) != 1:
        raise PipelineDisagreement(canon)
    report = {
        "ran": sorted(results),
        "agree": True,
        "results": {name: canon.get(name) for name in ("closed_form", "count_general", "oracle")},
    }
    return results["count_general"], report


def nilpotent_multiplier(g: FgAbelianGroup, c: int, verify: bool = False, **limits) -> AbelianStructure:
    """``M^(c)(G)``, the pair case ``N = G``; ``c = 1`` gives the Schur multiplier."""
    req = MultiplierRequest(PairSpec(g, FgAbelianGroup()), c, **limits)
    return pair_multiplier(req, verify)[0]


def schur_multiplier(g: FgAbelianGroup, verify: bool = False) -> AbelianStructure:
    return nilpotent_multiplier(g, 1, verify)


def _relabel(tree: Commutator, alphabet: Alphabet) -> Commutator:
    if tree.is_leaf:
        return Commutator.leaf(alphabet, tree.name)
    return Commutator.bracket(_relabel(tree.left, alphabet), _relabel(tree.right, alphabet))


def lemma23_basis(req: MultiplierRequest) -> list[list[int]]:
    """Rows ``r_i * b`` for ``b`` basic on ``{x_i..x_n} + Y`` involving ``x_i``."""
    pair, w = req.pair, req.c + 1
    alphabet = pair.alphabet()
    index = _layer_index(alphabet, w)
    xs = pair.X1 + pair.X2
    ys = pair.Y1 + pair.Y2
    rows = []
    for i, (x, r) in enumerate(zip(xs, pair.torsion_orders)):
        sub = alphabet.sub(ys + xs[i:])
        for b in enumerate_basic(sub, w):
            if x in support(b):
                row = [0] * len(index)
                row[index[_relabel(b, alphabet)]] = r
                rows.append(row)
    return rows


def lemma23_verify(req: MultiplierRequest) -> tuple[bool, dict | None]:
    """Compare the explicit basis of ``[T,_cF]`` with the lattice it should span.

    Returns ``(True, None)`` on equality, otherwise ``(False, witness)`` where
    the witness holds the first pair of differing HNF rows.
    """
    pair = req.pair
    if not pair.has_global_chain():
        raise ValueError(f"torsion orders {pair.torsion_orders} do not form a divisibility chain")
    req.check_dim()
    req.check_tuples()
    dim = req.ambient_dim
    claimed = hnf(lemma23_basis(req), dim)
    generated = hnf(_torsion_lattice_rows(pair, pair.alphabet(), req.c), dim)
    if claimed == generated:
        return True, None
    for k in range(max(len(claimed), len(generated))):
        a = claimed[k] if k < len(claimed) else None
        b = generated[k] if k < len(generated) else None
        if a != b:
            return False, {"row": k, "claimed": a, "generated": b}
    raise AssertionError("unreachable")
