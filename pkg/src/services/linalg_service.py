"""
Determinanti esatti, minori principali e criterio di Sylvester.

Integer, rational and Q[sqrt2] matrices use fraction-free (Bareiss)
elimination; polynomial matrices use a memoized cofactor expansion up to
dimension 8 and Bareiss with exact polynomial division beyond that.
"""
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List

from src.models.matrix import ExactMatrix
from src.models.polynomial import MultiPoly
from src.models.scalars import QSqrt2, qsqrt2_sign, rat_sign
from src.utils.errors import AsymmetricMatrixError, ExactDivisionError

logger = logging.getLogger(__name__)

COFACTOR_MAX_DIM = 8


def _is_zero(value: Any) -> bool:
    if isinstance(value, MultiPoly):
        return value.is_zero()
    return value == 0


def _int_exact_div(num: int, den: int) -> int:
    quotient, remainder = divmod(num, den)
    if remainder:
        raise ExactDivisionError(f"{num} is not divisible by {den}")
    return quotient


def _divider(ring: str) -> Callable[[Any, Any], Any]:
    if ring == "int":
        return _int_exact_div
    if ring == "poly":
        return lambda num, den: num.exact_div(den)
    return lambda num, den: num / den


def bareiss_det(m: ExactMatrix) -> Any:
    """Fraction-free elimination; every division is exact."""
    m.require_square()
    size = m.rows
    a = m.to_rows()
    one = m.one()
    if size == 1:
        return a[0][0]
    divide = _divider(m.ring)
    prev = one
    sign = 1
    for k in range(size - 1):
        if _is_zero(a[k][k]):
            pivot = next((r for r in range(k + 1, size) if not _is_zero(a[r][k])), None)
            if pivot is None:
                return m.zero()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    result = a[size - 1][size - 1]
    return result if sign > 0 else -result


def _cofactor_det(m: ExactMatrix) -> MultiPoly:
    """Laplace expansion along rows with minors memoized by column mask."""
    size = m.rows
    memo: Dict[int, MultiPoly] = {}
    zero = m.zero()

    def minor(row: int, mask: int) -> MultiPoly:
        if row == size:
            return m.one()
        cached = memo.get(mask)
        if cached is not None:
            return cached
        total = zero
        position = 0
        for col in range(size):
            bit = 1 << col
            if not mask & bit:
                continue
            entry = m[row, col]
            if not _is_zero(entry):
                term = entry * minor(row + 1, mask & ~bit)
                total = total - term if position % 2 else total + term
            position += 1
        memo[mask] = total
        return total

    return minor(0, (1 << size) - 1)


def poly_det(m: ExactMatrix) -> MultiPoly:
    """Exact determinant of a square polynomial matrix."""
    m.require_square()
    if m.ring != "poly":
        m = m.map(lambda e: e, ring="poly")
    if m.rows <= COFACTOR_MAX_DIM:
        return _cofactor_det(m)
    return bareiss_det(m)


def det(m: ExactMatrix) -> Any:
    """Exact determinant in the matrix's own ring."""
    m.require_square()
    if m.ring == "poly":
        return poly_det(m)
    return bareiss_det(m)


def leading_minors(m: ExactMatrix) -> List[Any]:
    """Determinants of the top-left 1x1, 2x2, ... full submatrices."""
    m.require_square()
    return [det(m.leading_block(size)) for size in range(1, m.rows + 1)]


def exact_sign(value: Any) -> int:
    if isinstance(value, QSqrt2):
        return qsqrt2_sign(value)
    if isinstance(value, (int, Fraction)):
        return rat_sign(Fraction(value))
    raise TypeError(f"No exact sign for {type(value).__name__}")


def is_positive_definite(m: ExactMatrix) -> bool:
    """Sylvester's criterion on a symmetric int/rat/qsqrt2 matrix."""
    m.require_square()
    if m.ring == "poly":
        raise ValueError("Positive definiteness needs an ordered ring, not polynomials")
    if not m.is_symmetric():
        raise AsymmetricMatrixError("Sylvester's criterion requires a symmetric matrix")
    for size, minor in enumerate(leading_minors(m), start=1):
        if exact_sign(minor) <= 0:
            logger.debug(f"Leading minor {size} is not positive: {minor}")
            return False
    return True
