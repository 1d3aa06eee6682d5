"""Exact integer row lattices: Hermite/Smith normal forms and quotient invariants.

Matrices are plain lists of integer rows; every routine works with Python
integers, so there is no overflow and no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import ContainmentError

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*a + t*b = g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _width(m: Sequence[Sequence[int]], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not m:
        return 0
    widths = {len(r) for r in m}
    if len(widths) != 1:
        raise ValueError(f"rows have differing lengths {sorted(widths)}")
    return widths.pop()


def hnf(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style Hermite normal form with zero rows removed.

    Pivots are positive and strictly move right; entries above a pivot lie in
    ``[0, pivot)``.  The result depends only on the row lattice.
    """
    width = _width(m, ncols)
    pivots: dict[int, list[int]] = {}
    for raw in m:
        if len(raw) != width:
            raise ValueError(f"row {list(raw)} has length {len(raw)}, expected {width}")
        row = list(raw)
        col = 0
        while True:
            while col < width and row[col] == 0:
                col += 1
            if col == width:
                break
            piv = pivots.get(col)
            if piv is None:
                if row[col] < 0:
                    row = [-x for x in row]
                pivots[col] = row
                break
            a, b = piv[col], row[col]
            if b % a == 0:
                q = b // a
                row = [x - q * y for x, y in zip(row, piv)]
            else:
                g, s, t = _xgcd(a, b)
                new_piv = [s * x + t * y for x, y in zip(piv, row)]
                row = [(a // g) * y - (b // g) * x for x, y in zip(piv, row)]
                pivots[col] = new_piv
    cols = sorted(pivots)
    rows = [pivots[c] for c in cols]
    for k, c in enumerate(cols):
        p = rows[k][c]
        for i in range(k):
            q = rows[i][c] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[k])]
    return rows


def pivot_columns(h: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for row in h:
        out.append(next(i for i, x in enumerate(row) if x))
    return out


def coordinates(h: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Express ``v`` in the rows of an HNF basis ``h``; ``None`` if not in the lattice."""
    v = list(v)
    coeffs = []
    for row in h:
        c = next(i for i, x in enumerate(row) if x)
        if any(v[:c]):
            return None
        q, r = divmod(v[c], row[c])
        if r:
            return None
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coeffs


def contains(h: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return coordinates(h, v) is not None


def _diagonalize(a: Matrix) -> list[int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                ri = a[i]
                for j in range(t, cols):
                    x = ri[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                diag.extend([0] * (min(rows, cols) - t))
                return diag
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            if j != t:
                for r in a:
                    r[t], r[j] = r[j], r[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        clean = False
            if clean:
                break
        diag.append(abs(a[t][t]))
    return diag


def _chain(diag: list[int]) -> list[int]:
    # enforce d1 | d2 | ... with zeros last, keeping the multiset of gcd/lcm data
    d = list(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d[i], d[j]
            if a == 0 and b == 0:
                continue
            g = gcd(a, b)
            lcm = 0 if a == 0 or b == 0 else a // g * b
            d[i], d[j] = g, lcm
    return d


def snf_diagonal(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Smith normal form diagonal ``d1 | d2 | ...``, padded with zeros to ``min(rows, cols)``."""
    width = _width(m, ncols)
    size = min(len(m), width)
    h = hnf(m, width)
    diag = _diagonalize([list(r) for r in h]) if h else []
    diag = _chain(diag)
    return diag + [0] * (size - len(diag))


def rank(m: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(hnf(m, ncols))


@dataclass(frozen=True)
class QuotientInvariants:
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion entries must be >= 2: {self.torsion}")


def quotient_invariants(
    gens_big: Sequence[Sequence[int]],
    gens_small: Sequence[Sequence[int]],
    ncols: int | None = None,
) -> QuotientInvariants:
    """Invariants of ``L_big / L_small`` for row lattices ``L_small <= L_big``.

    Raises :class:`ContainmentError` if some generator of ``L_small`` is not in
    ``L_big``.
    """
    if ncols is None:
        ncols = _width(list(gens_big) + list(gens_small), None)
    basis = hnf(gens_big, ncols)
    coords = []
    for k, v in enumerate(gens_small):
        c = coordinates(basis, v)
        if c is None:
            raise ContainmentError(k, v)
        coords.append(c)
    diag = snf_diagonal(coords, len(basis)) if basis else []
    small_rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return QuotientInvariants(len(basis) - small_rank, torsion)


def dump_matrix(m: Iterable[Sequence[int]]) -> str:
    """Plain row-major text: one row per line, entries separated by spaces."""
    return "".join(" ".join(str(x) for x in row) + "\n" for row in m)


def load_matrix(text: str) -> Matrix:
    return [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
