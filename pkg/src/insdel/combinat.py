"""Exact integer combinatorics used by every bound formula.

All quantities are arbitrary-precision Python ints; rationals elsewhere are
``fractions.Fraction``.  The binomial convention throughout the package is
C(n, k) = 0 for k < 0 or k > n.
"""

from __future__ import annotations

import math
from collections.abc import Iterator


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: tuple[int, ...]) -> int:
    """n! / (a_1! ... a_i! (n - sum)!) for nonnegative parts summing to <= n."""
    if n < 0:
        raise ValueError(f"multinomial requires n >= 0, got n={n}")
    if any(a < 0 for a in parts):
        raise ValueError(f"multinomial parts must be nonnegative, got {parts}")
    rest = n - sum(parts)
    if rest < 0:
        raise ValueError(f"multinomial parts sum to more than n={n}: {parts}")
    out = 1
    remaining = n
    for a in parts:
        out *= math.comb(remaining, a)
        remaining -= a
    return out


def surjection_count(m: int, j: int) -> int:
    """Number of surjections from an m-set onto a j-set.

    Computed by inclusion-exclusion, sum_{i=0}^{j} (-1)^i C(j,i) (j-i)^m,
    which equals the sum of multinomials over positive compositions of m into
    j parts (the enumeration is kept as a test oracle).  Zero when j > m.
    """
    if m < 0 or j < 0:
        raise ValueError(f"surjection_count requires m, j >= 0, got m={m}, j={j}")
    total = 0
    for i in range(j + 1):
        total += (-1) ** i * math.comb(j, i) * (j - i) ** m
    return total


def positive_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime_power(n: int) -> bool:
    """True iff n = p^e for a prime p and e >= 1."""
    if n < 2:
        return False
    for p in range(2, n + 1):
        if p * p > n:
            return True  # n itself is prime
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False
