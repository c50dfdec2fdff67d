"""
Unit tests for exact decimal values.
"""

import random
from fractions import Fraction

import pytest

from numtrans_py.errors import NumeralParseError
from numtrans_py.numeral import (
    Comparison,
    NumericValue,
    value_compare,
    value_from_decimal_string,
    value_scale,
)


class TestNumericValue:
    """Test cases for NumericValue construction and arithmetic."""

    def test_normalized_storage(self):
        """Trailing zeros move into the exponent."""
        v = NumericValue.from_parts(False, 2820, 6)
        assert v == NumericValue(1, 282, 7)

    def test_zero_is_unique(self):
        """Negative zero collapses to +0."""
        assert NumericValue.from_parts(True, 0, 5) == NumericValue()
        with pytest.raises(ValueError):
            NumericValue(-1, 0, 0)

    def test_unnormalized_rejected(self):
        """Significands with trailing zeros are refused."""
        with pytest.raises(ValueError):
            NumericValue(1, 10, 0)

    def test_of_coerces(self):
        """of() accepts ints and decimal strings, not bools or floats."""
        assert NumericValue.of(150) == NumericValue(1, 15, 1)
        assert NumericValue.of("-0.25") == NumericValue(-1, 25, -2)
        with pytest.raises(TypeError):
            NumericValue.of(True)
        with pytest.raises(TypeError):
            NumericValue.of(1.5)

    def test_arithmetic_is_exact(self):
        """Sums and products carry no binary rounding."""
        a = NumericValue.of("0.1")
        b = NumericValue.of("0.2")
        assert a + b == NumericValue.of("0.3")
        assert NumericValue.of("1.5") * NumericValue.of(4) == NumericValue.of(6)
        assert NumericValue.of(3) - NumericValue.of(5) == NumericValue.of(-2)

    def test_plain_string(self):
        """str() gives the plain decimal without trailing zeros."""
        assert str(NumericValue.of("2820000000")) == "2820000000"
        assert str(NumericValue.of("-0.143")) == "-0.143"
        assert str(NumericValue.of("1.050")) == "1.05"

    def test_to_fraction(self):
        """to_fraction is the exact rational value."""
        assert NumericValue.of("3.525").to_fraction() == Fraction(141, 40)

    def test_to_int_rejects_decimals(self):
        """Only whole values convert to int."""
        with pytest.raises(ValueError):
            NumericValue.of("2.5").to_int()


class TestValueFromDecimalString:
    """Test cases for parsing digit strings."""

    @pytest.mark.parametrize("text,expected", [
        ("2,820,000,000", 2820000000),
        ("00326264", 326264),
        ("+7", 7),
        ("-105", -105),
    ])
    def test_integers(self, text, expected):
        """Grouped, zero-led and signed digit strings."""
        assert value_from_decimal_string(text).to_int() == expected

    def test_grouped_decimal(self):
        """Grouping commas and a decimal point together."""
        assert value_from_decimal_string("1,234.5") == NumericValue(1, 12345, -1)

    @pytest.mark.parametrize("text,offset", [
        ("1,23", 1),
        ("12,3456", 2),
        (",123", 0),
        ("1.", 2),
        ("12a", 2),
        ("", 0),
    ])
    def test_errors_point_at_offender(self, text, offset):
        """Errors carry the offset of the first bad character."""
        with pytest.raises(NumeralParseError) as exc:
            value_from_decimal_string(text)
        assert exc.value.offset == offset


class TestScaleAndCompare:
    """Test cases for value_scale and value_compare."""

    def test_scale_shifts_decimal_point(self):
        """Scaling moves the decimal point both ways."""
        assert value_scale(NumericValue.of("2.82"), 9) == NumericValue.of(2820000000)
        assert value_scale(NumericValue.of(134), -2) == NumericValue.of("1.34")

    def test_scale_matches_string_shift(self, rng):
        """Scaling agrees with moving the decimal point in the digit string."""
        for _ in range(200):
            digits = str(rng.randint(1, 10 ** 6))
            places = rng.randint(0, len(digits) - 1)
            k = rng.randint(0, 12)
            text = digits[:len(digits) - places] + ("." + digits[len(digits) - places:] if places else "")
            expected = int(digits) * 10 ** k
            scaled = value_scale(value_from_decimal_string(text), k)
            assert scaled.to_fraction() * 10 ** places == expected

    def test_compare_large_unit_mistranslation(self):
        """13.4 billion is greater than 3.4 billion."""
        assert value_compare(NumericValue.of(13400000000), NumericValue.of(3400000000)) is Comparison.GREATER

    def test_compare_against_fractions(self):
        """value_compare agrees with Fraction ordering."""
        rnd = random.Random(7)
        for _ in range(500):
            a = NumericValue.from_scaled_int(rnd.randint(-10 ** 6, 10 ** 6), rnd.randint(-6, 6))
            b = NumericValue.from_scaled_int(rnd.randint(-10 ** 6, 10 ** 6), rnd.randint(-6, 6))
            fa, fb = a.to_fraction(), b.to_fraction()
            expected = Comparison.LESS if fa < fb else Comparison.GREATER if fa > fb else Comparison.EQUAL
            assert value_compare(a, b) is expected
            assert (a < b) == (fa < fb)
