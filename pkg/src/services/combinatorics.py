"""
Primitive combinatorie esatte e polinomi ausiliari delle famiglie di Gram.

Binomials and factorials come from src.models.multi_index; this module adds
Stirling numbers of the second kind, Fubini (ordered Bell) numbers, the
eta sums, and the polynomial families mu, d and d-tilde.
"""
import logging
from math import factorial
from typing import Dict, Tuple

from src.cache import get_cache
from src.models.matrix import ExactMatrix
from src.models.multi_index import binom, falling_factorial, multi_binom, multi_factorial
from src.models.polynomial import MultiPoly

logger = logging.getLogger(__name__)

__all__ = [
    "binom", "multi_binom", "multi_factorial", "falling_factorial",
    "stirling2", "stirling2_row", "fubini", "fubini_recurrence",
    "eta", "eta_rewritten", "mu_poly", "d_poly", "d_tilde_poly", "build_M1",
]


def _build_stirling_row(k: int) -> Tuple[int, ...]:
    row = [1]
    for m in range(1, k + 1):
        nxt = [0] * (m + 1)
        for j in range(1, m + 1):
            above = row[j] if j < len(row) else 0
            nxt[j] = j * above + row[j - 1]
        row = nxt
    return tuple(row)


def stirling2_row(k: int) -> Tuple[int, ...]:
    """(s(k,0), ..., s(k,k)); rows are memoized and shared between threads."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return get_cache("stirling2").get_or_compute(k, lambda: _build_stirling_row(k))


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind, s(k,j)=j*s(k-1,j)+s(k-1,j-1)."""
    if j < 0 or j > k:
        return 0
    return stirling2_row(k)[j]


def fubini(k: int) -> int:
    """Number of ordered set partitions: sum_j s(k,j) j!."""
    return sum(s * factorial(j) for j, s in enumerate(stirling2_row(k)))


def fubini_recurrence(k: int) -> int:
    """Fub(k) = sum_{i=1..k} C(k,i) Fub(k-i); independent of the Stirling route."""
    values = [1]
    for m in range(1, k + 1):
        values.append(sum(binom(m, i) * values[m - i] for i in range(1, m + 1)))
    return values[k]


def eta(a: int, b: int, i: int, j: int) -> int:
    top = b + i
    return sum(
        binom(top, i1) * binom(b + j, i1) * factorial(i1) * factorial(a + b + i + j - i1)
        for i1 in range(top + 1)
    )


def eta_rewritten(a: int, i: int, j: int) -> int:
    """(a+i)! j! sum_i1 C(i,i1) C(a+i+j-i1, a+i), the b = 0 rewriting of eta."""
    inner = sum(binom(i, i1) * binom(a + i + j - i1, a + i) for i1 in range(i + 1))
    return factorial(a + i) * factorial(j) * inner


def mu_poly(a: int, i: int, j: int) -> MultiPoly:
    """sum_{i1=0..i} C(i,i1) C(a+j, a+i1) t^i1, univariate in t."""
    return MultiPoly(1, {(i1,): binom(i, i1) * binom(a + j, a + i1) for i1 in range(i + 1)})


_X = MultiPoly.variable(0, 3)
_Y = MultiPoly.variable(1, 3)
_Z = MultiPoly.variable(2, 3)
_XY_PLUS_Z = _X * _Y + _Z


def d_poly(a: int, b: int, c: int) -> MultiPoly:
    """sum_i C(b,i) C(a+b-i, b+c) x^(a-i) y^(b-i) z^i over 0 <= i <= min(a,b)."""
    terms: Dict[Tuple[int, int, int], int] = {}
    for i in range(min(a, b) + 1):
        coeff = binom(b, i) * binom(a + b - i, b + c)
        if coeff:
            terms[(a - i, b - i, i)] = coeff
    return MultiPoly(3, terms)


def d_tilde_poly(a: int, b: int, c: int) -> MultiPoly:
    """sum_i C(b,i) C(a,i+c) x^(a-i) y^(b-i) (z+xy)^i over 0 <= i <= min(a,b)."""
    total = MultiPoly.zero(3)
    for i in range(min(a, b) + 1):
        coeff = binom(b, i) * binom(a, i + c)
        if coeff:
            total = total + MultiPoly.monomial((a - i, b - i, 0), coeff) * _XY_PLUS_Z ** i
    return total


def build_M1(k: int) -> ExactMatrix:
    """Lower unitriangular ((-1)^(i+j) C(i,j)), determinant 1."""
    return ExactMatrix.from_function(k + 1, lambda i, j: (-1) ** (i + j) * binom(i, j), ring="int",
                                     header={"family": "M1", "k": k})


def homogenize_mu(a: int, i: int, j: int) -> MultiPoly:
    """x^(a+j) y^i mu_{i,j}(1 + z/(xy)) with denominators cleared."""
    total = MultiPoly.zero(3)
    for (i1,), coeff in mu_poly(a, i, j).items():
        # nonzero coefficient forces i1 <= j, so both exponents stay non-negative
        total = total + MultiPoly.monomial((a + j - i1, i - i1, 0), coeff) * _XY_PLUS_Z ** i1
    return total

