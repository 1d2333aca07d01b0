"""
Multi-indices: length-n vectors of non-negative integers, with factorials
and binomial coefficients taken componentwise.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence, Tuple

from src.utils.errors import ArityMismatchError

MultiIndex = Tuple[int, ...]


def multi_index(entries: Iterable[int], n: int = -1) -> MultiIndex:
    """Validate and freeze a multi-index; n = -1 skips the length check."""
    value = tuple(int(e) for e in entries)
    if n >= 0 and len(value) != n:
        raise ArityMismatchError(len(value), n, "multi-index and algebra")
    if any(e < 0 for e in value):
        raise ValueError(f"Multi-index entries must be non-negative: {value}")
    return value


def unit_index(i: int, n: int) -> MultiIndex:
    """epsilon_i: 1 in slot i (0-based), 0 elsewhere."""
    return tuple(1 if j == i else 0 for j in range(n))


def zero_index(n: int) -> MultiIndex:
    return (0,) * n


def add(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def norm1(a: Sequence[int]) -> int:
    """||alpha|| = sum of entries."""
    return sum(a)


def box(upper: Sequence[int]) -> Iterator[MultiIndex]:
    """Every gamma with 0 <= gamma <= upper componentwise."""
    return itertools.product(*(range(u + 1) for u in upper))


@lru_cache(maxsize=4096)
def binom(n: int, k: int) -> int:
    """C(n, k) with the convention 0 when k < 0 or k > n (including n < 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multi_binom(alpha: Sequence[int], beta: Sequence[int]) -> int:
    if len(alpha) != len(beta):
        raise ArityMismatchError(len(alpha), len(beta), "multi-indices")
    return prod(binom(a, b) for a, b in zip(alpha, beta))


def multi_factorial(alpha: Sequence[int]) -> int:
    return prod(factorial(a) for a in alpha)


def falling_factorial(m: int, k: int) -> int:
    """m (m-1) ... (m-k+1); zero when 0 <= m < k."""
    return prod(range(m - k + 1, m + 1)) if k else 1
