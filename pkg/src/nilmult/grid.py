"""Instance grids used for self-verification."""

from __future__ import annotations

import itertools
import math
from typing import Iterator

from .groups import FgAbelianGroup, PairSpec, normalize

CHAIN_ORDERS = (2, 3, 4, 8, 9, 12)
TRIPLE_ORDERS = (2, 3, 4, 8, 9)


def divisibility_chains(values, length: int) -> Iterator[tuple[int, ...]]:
    values = sorted(values)
    if length == 0:
        yield ()
        return
    for chain in divisibility_chains(values, length - 1):
        for v in values:
            if not chain or v % chain[-1] == 0:
                yield chain + (v,)


def chain_pairs(max_generators: int, orders=CHAIN_ORDERS) -> Iterator[PairSpec]:
    """Pairs whose torsion orders form one chain (N's first), up to ``max_generators``."""
    for total in range(max_generators + 1):
        for l, s in itertools.product(range(total + 1), repeat=2):
            n = total - l - s
            if n < 0:
                continue
            for chain in divisibility_chains(orders, n):
                for t in range(n + 1):
                    yield PairSpec(FgAbelianGroup(l, chain[:t]), FgAbelianGroup(s, chain[t:]))


def chain_grid(max_gens: dict[int, int] | None = None) -> Iterator[tuple[PairSpec, int]]:
    """The default grid: ``c`` in 1..3, at most 5 generators for ``c <= 2`` and 4 for ``c = 3``."""
    max_gens = max_gens or {1: 5, 2: 5, 3: 4}
    for c, k in sorted(max_gens.items()):
        for pair in chain_pairs(k):
            yield pair, c


def _multisets(orders, budget: int) -> Iterator[tuple[int, ...]]:
    # nondecreasing tuples from ``orders`` with product <= budget
    def rec(start, prod, acc):
        yield tuple(acc)
        for i in range(start, len(orders)):
            if prod * orders[i] <= budget:
                acc.append(orders[i])
                yield from rec(i, prod * orders[i], acc)
                acc.pop()

    yield from rec(0, 1, [])


def finite_triples(max_order: int = 256, orders=TRIPLE_ORDERS):
    """``(K, L, K')`` of finite groups built from cyclic summands with ``|G| <= max_order``.

    Each of the three parts is a multiset of summand orders; duplicates up to
    isomorphism of the parts are removed.
    """
    from .analysis import TripleSpec

    seen = set()
    for ks in _multisets(orders, max_order):
        pk = math.prod(ks)
        for ls in _multisets(orders, max_order // pk):
            pl = math.prod(ls)
            for cs in _multisets(orders, max_order // (pk * pl)):
                key = (normalize(ks), normalize(ls), normalize(cs))
                if key in seen:
                    continue
                seen.add(key)
                yield TripleSpec(*key)
