"""Möbius function and the Witt count of basic commutators."""

from __future__ import annotations


def _divisors(n: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def mobius(m: int) -> int:
    """Return mu(m): 0 if m has a square factor, else (-1)**(number of primes)."""
    if m <= 0:
        raise ValueError(f"mobius is defined for positive integers, got {m}")
    sign = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    if m > 1:
        sign = -sign
    return sign


def witt(n: int, d: int) -> int:
    """Number of basic commutators of weight ``n`` on ``d`` generators.

    >>> witt(6, 2)
    9
    """
    if n <= 0:
        raise ValueError(f"weight must be positive, got {n}")
    if d < 0:
        raise ValueError(f"alphabet size must be nonnegative, got {d}")
    total = sum(mobius(k) * d ** (n // k) for k in _divisors(n))
    if total % n:
        raise ArithmeticError(f"Witt sum {total} not divisible by {n}")
    return total // n
