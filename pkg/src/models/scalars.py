"""
Exact scalars: rationals (BigRat) and the ordered field Q[sqrt 2].

BigRat is fractions.Fraction, which is always kept in lowest terms with a
positive denominator. QSqrt2 stores a + b*sqrt2 as two rationals, so
equality is componentwise and the sign is decidable with a single
comparison of a^2 against 2*b^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Union

import mpmath

from src.utils.errors import EncodingError

BigRat = Fraction
Scalar = Union[int, Fraction]


def to_rat(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, "p/q" string or Fraction to a BigRat."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def rat_to_json(value: Fraction) -> Dict[str, str]:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rat_from_json(data: Dict[str, Any]) -> Fraction:
    try:
        return Fraction(int(data["num"]), int(data["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise EncodingError(f"Invalid rational {data!r}: expected {{num, den}} with den != 0") from e


def rat_sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class QSqrt2:
    """Exact value rat + irr*sqrt2 with rational components."""

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", to_rat(self.rat))
        object.__setattr__(self, "irr", to_rat(self.irr))

    @classmethod
    def of(cls, value: Union["QSqrt2", Scalar]) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        return cls(to_rat(value), Fraction(0))

    @classmethod
    def zero(cls) -> "QSqrt2":
        return cls()

    @classmethod
    def one(cls) -> "QSqrt2":
        return cls(Fraction(1))

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def is_rational(self) -> bool:
        return self.irr == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Union["QSqrt2", Scalar]) -> "QSqrt2":
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        other = QSqrt2.of(other)
        return QSqrt2(self.rat + other.rat, self.irr + other.irr)

    __radd__ = __add__

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self.rat, -self.irr)

    def __sub__(self, other: Union["QSqrt2", Scalar]) -> "QSqrt2":
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        return self + (-QSqrt2.of(other))

    def __rsub__(self, other: Scalar) -> "QSqrt2":
        return QSqrt2.of(other) - self

    def __mul__(self, other: Union["QSqrt2", Scalar]) -> "QSqrt2":
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        other = QSqrt2.of(other)
        # (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        return QSqrt2(
            self.rat * other.rat + 2 * self.irr * other.irr,
            self.rat * other.irr + self.irr * other.rat,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        """Galois conjugate a - b√2."""
        return QSqrt2(self.rat, -self.irr)

    def field_norm(self) -> Fraction:
        """a^2 - 2 b^2, the product with the conjugate."""
        return self.rat * self.rat - 2 * self.irr * self.irr

    def inverse(self) -> "QSqrt2":
        norm = self.field_norm()
        if norm == 0:
            # √2 irrational: the norm vanishes only at zero
            raise ZeroDivisionError("QSqrt2 division by zero")
        conj = self.conjugate()
        return QSqrt2(conj.rat / norm, conj.irr / norm)

    def __truediv__(self, other: Union["QSqrt2", Scalar]) -> "QSqrt2":
        if not isinstance(other, (QSqrt2, int, Fraction)):
            return NotImplemented
        return self * QSqrt2.of(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "QSqrt2":
        return QSqrt2.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QSqrt2":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QSqrt2.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSqrt2):
            return self.rat == other.rat and self.irr == other.irr
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def sign(self) -> int:
        return qsqrt2_sign(self)

    def __lt__(self, other: Union["QSqrt2", Scalar]) -> bool:
        return qsqrt2_sign(self - QSqrt2.of(other)) < 0

    def __le__(self, other: Union["QSqrt2", Scalar]) -> bool:
        return qsqrt2_sign(self - QSqrt2.of(other)) <= 0

    def __gt__(self, other: Union["QSqrt2", Scalar]) -> bool:
        return qsqrt2_sign(self - QSqrt2.of(other)) > 0

    def __ge__(self, other: Union["QSqrt2", Scalar]) -> bool:
        return qsqrt2_sign(self - QSqrt2.of(other)) >= 0

    def approx(self, digits: int = 20) -> str:
        """Decimal rendering for display only; never used in decisions."""
        with mpmath.workdps(digits + 5):
            value = mpmath.mpf(self.rat.numerator) / self.rat.denominator
            value += mpmath.mpf(self.irr.numerator) / self.irr.denominator * mpmath.sqrt(2)
            return mpmath.nstr(value, digits)

    def __str__(self) -> str:
        if self.irr == 0:
            return format_rat(self.rat)
        magnitude = abs(self.irr)
        irr = "sqrt2" if magnitude == 1 else f"{format_rat(magnitude)}*sqrt2"
        if self.rat == 0:
            return f"-{irr}" if self.irr < 0 else irr
        joiner = "-" if self.irr < 0 else "+"
        return f"{format_rat(self.rat)} {joiner} {irr}"

    def __repr__(self) -> str:
        return f"QSqrt2({format_rat(self.rat)}, {format_rat(self.irr)})"

    def to_dict(self) -> Dict[str, Any]:
        return {"rat": rat_to_json(self.rat), "sqrt2": rat_to_json(self.irr)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QSqrt2":
        try:
            return cls(rat_from_json(data["rat"]), rat_from_json(data["sqrt2"]))
        except (KeyError, TypeError) as e:
            raise EncodingError(f"Invalid Q[sqrt2] value {data!r}: expected {{rat, sqrt2}}") from e


def sqrt2_power(l: int) -> QSqrt2:
    """Exact value of √2 raised to an integer power."""
    if l >= 0:
        if l % 2 == 0:
            return QSqrt2(Fraction(2 ** (l // 2)), Fraction(0))
        return QSqrt2(Fraction(0), Fraction(2 ** ((l - 1) // 2)))
    # √2^(-m) = √2^m / 2^m
    m = -l
    positive = sqrt2_power(m)
    scale = Fraction(1, 2 ** m)
    return QSqrt2(positive.rat * scale, positive.irr * scale)


def qsqrt2_sign(s: QSqrt2) -> int:
    """Sign of a + b√2 under the real embedding, computed exactly."""
    a_sign = rat_sign(s.rat)
    b_sign = rat_sign(s.irr)
    if a_sign >= 0 and b_sign >= 0:
        return 1 if (a_sign or b_sign) else 0
    if a_sign <= 0 and b_sign <= 0:
        return -1
    # opposite signs: the component with the larger square wins
    dominance = rat_sign(s.rat * s.rat - 2 * s.irr * s.irr)
    return a_sign * dominance if dominance else 0


def qsqrt2_add(a: QSqrt2, b: QSqrt2) -> QSqrt2:
    return a + b


def qsqrt2_mul(a: QSqrt2, b: QSqrt2) -> QSqrt2:
    return a * b


def qsqrt2_neg(a: QSqrt2) -> QSqrt2:
    return -a


def power_of_two(l: int) -> Fraction:
    """2^l as an exact rational, negative l allowed."""
    return Fraction(2) ** l
