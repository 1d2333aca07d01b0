"""
Unit tests for exact scalars: BigRat helpers and the field Q[sqrt2].
"""
from fractions import Fraction

import pytest

from src.models.scalars import (
    QSqrt2, format_rat, power_of_two, qsqrt2_add, qsqrt2_mul, qsqrt2_neg, qsqrt2_sign,
    rat_from_json, rat_to_json, sqrt2_power, to_rat,
)

pytestmark = pytest.mark.unit


class TestBigRat:
    """Rational helpers on top of fractions.Fraction."""

    def test_to_rat_accepts_strings_and_ints(self):
        """Strings like "p/q" and integers become reduced fractions."""
        assert to_rat("6/4") == Fraction(3, 2)
        assert to_rat(5) == Fraction(5)

    def test_json_uses_decimal_strings(self):
        """Numerator and denominator are strings so big values survive JSON."""
        value = Fraction(-(10 ** 30), 7)
        data = rat_to_json(value)
        assert data == {"num": str(-(10 ** 30)), "den": "7"}
        assert rat_from_json(data) == value

    def test_format_rat(self):
        """Integers print bare, fractions as p/q."""
        assert format_rat(Fraction(4)) == "4"
        assert format_rat(Fraction(-1, 2)) == "-1/2"

    def test_power_of_two_negative(self):
        """2^-3 is exact."""
        assert power_of_two(-3) == Fraction(1, 8)
        assert power_of_two(5) == 32


class TestQSqrt2:
    """Arithmetic and ordering in Q[sqrt2]."""

    def test_sqrt2_squared_is_two(self):
        """sqrt2 * sqrt2 == 2 exactly."""
        root = QSqrt2(0, 1)
        assert root * root == 2

    def test_sqrt2_power_examples(self):
        """Even powers are rational, odd powers are rational multiples of sqrt2."""
        assert sqrt2_power(0) == QSqrt2(1, 0)
        assert sqrt2_power(3) == QSqrt2(0, 2)
        assert sqrt2_power(-1) == QSqrt2(0, Fraction(1, 2))
        assert sqrt2_power(-2) == QSqrt2(Fraction(1, 2), 0)

    def test_sqrt2_power_inverse(self):
        """sqrt2^l * sqrt2^-l == 1 for a range of l."""
        for l in range(-6, 7):
            assert sqrt2_power(l) * sqrt2_power(-l) == 1

    def test_sign_mixed_components(self):
        """Sign is decided by comparing a^2 with 2 b^2."""
        assert qsqrt2_sign(QSqrt2(3, -2)) == 1      # 3 - 2.83
        assert qsqrt2_sign(QSqrt2(-3, 2)) == -1
        assert qsqrt2_sign(QSqrt2(1, -1)) == -1     # 1 - 1.41
        assert qsqrt2_sign(QSqrt2(-1, 1)) == 1
        assert qsqrt2_sign(QSqrt2(0, 0)) == 0

    def test_sign_matches_float(self):
        """Exact sign agrees with the float value away from zero."""
        for a in range(-7, 8):
            for b in range(-5, 6):
                value = a + b * 2 ** 0.5
                expected = (value > 0) - (value < 0)
                assert qsqrt2_sign(QSqrt2(a, b)) == expected

    def test_inverse_and_division(self):
        """(1 + sqrt2)^-1 = sqrt2 - 1."""
        value = QSqrt2(1, 1)
        assert value.inverse() == QSqrt2(-1, 1)
        assert value / value == 1

    def test_division_by_zero(self):
        """The zero element has no inverse."""
        with pytest.raises(ZeroDivisionError):
            QSqrt2.zero().inverse()

    def test_ordering(self):
        """Comparisons use the real embedding."""
        assert QSqrt2(0, 1) > Fraction(7, 5)
        assert QSqrt2(0, 1) < Fraction(3, 2)
        assert QSqrt2(1, 0) <= 1

    def test_plumbing_functions(self):
        """Module level add, mul and neg agree with the operators."""
        a, b = QSqrt2(1, 2), QSqrt2(Fraction(1, 3), -1)
        assert qsqrt2_add(a, b) == a + b
        assert qsqrt2_mul(a, b) == QSqrt2(Fraction(1, 3) - 4, Fraction(2, 3) - 1)
        assert qsqrt2_neg(a) == QSqrt2(-1, -2)

    def test_equality_with_rationals(self):
        """A value with no sqrt2 part equals the plain rational and hashes like it."""
        assert QSqrt2(3, 0) == 3
        assert hash(QSqrt2(3, 0)) == hash(Fraction(3))
        assert QSqrt2(3, 1) != 3

    def test_text_and_dict(self):
        """Readable text and lossless dictionary form."""
        assert str(QSqrt2(1, -2)) == "1 - 2*sqrt2"
        assert str(QSqrt2(0, 1)) == "sqrt2"
        assert str(QSqrt2(3, 0)) == "3"
        value = QSqrt2(Fraction(1, 2), -3)
        assert QSqrt2.from_dict(value.to_dict()) == value

    def test_approx_is_display_only(self):
        """The decimal rendering starts with the expected digits."""
        assert QSqrt2(0, 1).approx(10).startswith("1.41421356")
