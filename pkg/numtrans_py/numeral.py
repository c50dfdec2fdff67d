"""
Exact decimal values.

NumericValue stores a sign, an arbitrary-precision significand and a base-10
exponent. Values are always normalized (no trailing zeros in the significand,
no negative zero) so equality is structural and ordering is exact. Nothing in
this module touches binary floating point.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

from .errors import NumeralParseError

ASCII_DIGITS = "0123456789"


class Comparison(Enum):
    """Result of comparing two NumericValues."""
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@total_ordering
@dataclass(frozen=True)
class NumericValue:
    """An exact signed decimal: sign * significand * 10**exponent."""

    sign: int = 1
    significand: int = 0
    exponent: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be 1 or -1, got {self.sign}")
        if self.significand < 0:
            raise ValueError("significand must be a natural number")
        if self.significand == 0:
            if self.sign != 1 or self.exponent != 0:
                raise ValueError("zero must be stored as +0e0")
        elif self.significand % 10 == 0:
            raise ValueError(f"significand {self.significand} is not normalized")

    @classmethod
    def from_parts(cls, negative: bool, significand: int, exponent: int) -> "NumericValue":
        """Build a normalized value from raw parts."""
        if significand == 0:
            return cls(1, 0, 0)
        while significand % 10 == 0:
            significand //= 10
            exponent += 1
        return cls(-1 if negative else 1, significand, exponent)

    @classmethod
    def from_scaled_int(cls, scaled: int, exponent: int = 0) -> "NumericValue":
        """Build scaled * 10**exponent."""
        return cls.from_parts(scaled < 0, abs(scaled), exponent)

    @classmethod
    def of(cls, value: Union[int, str, "NumericValue"]) -> "NumericValue":
        """Coerce an int, a decimal string or a NumericValue."""
        if isinstance(value, NumericValue):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not numeric values")
        if isinstance(value, int):
            return cls.from_scaled_int(value)
        if isinstance(value, str):
            return value_from_decimal_string(value)
        raise TypeError(f"cannot build NumericValue from {type(value).__name__}")

    # Predicates

    @property
    def is_zero(self) -> bool:
        return self.significand == 0

    @property
    def is_negative(self) -> bool:
        return self.sign < 0

    def is_integer(self) -> bool:
        return self.exponent >= 0

    def decimal_places(self) -> int:
        """Number of digits after the decimal point in the shortest spelling."""
        return max(0, -self.exponent)

    # Arithmetic

    def _aligned(self, other: "NumericValue") -> Tuple[int, int, int]:
        exponent = min(self.exponent, other.exponent)
        a = self.sign * self.significand * 10 ** (self.exponent - exponent)
        b = other.sign * other.significand * 10 ** (other.exponent - exponent)
        return a, b, exponent

    def __add__(self, other: "NumericValue") -> "NumericValue":
        if not isinstance(other, NumericValue):
            return NotImplemented
        a, b, exponent = self._aligned(other)
        return NumericValue.from_scaled_int(a + b, exponent)

    def __sub__(self, other: "NumericValue") -> "NumericValue":
        if not isinstance(other, NumericValue):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NumericValue":
        if self.is_zero:
            return self
        return NumericValue(-self.sign, self.significand, self.exponent)

    def __abs__(self) -> "NumericValue":
        if self.sign > 0:
            return self
        return NumericValue(1, self.significand, self.exponent)

    def __mul__(self, other: "NumericValue") -> "NumericValue":
        if not isinstance(other, NumericValue):
            return NotImplemented
        return NumericValue.from_parts(
            self.sign * other.sign < 0,
            self.significand * other.significand,
            self.exponent + other.exponent,
        )

    def scaled(self, k: int) -> "NumericValue":
        """Return self * 10**k."""
        if self.is_zero:
            return self
        return NumericValue(self.sign, self.significand, self.exponent + k)

    def __lt__(self, other: "NumericValue") -> bool:
        if not isinstance(other, NumericValue):
            return NotImplemented
        return value_compare(self, other) is Comparison.LESS

    # Conversions

    def to_fraction(self) -> Fraction:
        """Exact rational value."""
        if self.exponent >= 0:
            return Fraction(self.sign * self.significand * 10 ** self.exponent)
        return Fraction(self.sign * self.significand, 10 ** -self.exponent)

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.sign * self.significand * 10 ** self.exponent

    def integer_part(self) -> int:
        """Magnitude of the integer part (truncated)."""
        if self.exponent >= 0:
            return self.significand * 10 ** self.exponent
        return self.significand // 10 ** -self.exponent

    def fraction_digits(self) -> str:
        """Digits after the decimal point, empty for integers."""
        places = self.decimal_places()
        if places == 0:
            return ""
        return str(self.significand % 10 ** places).rjust(places, "0")

    def to_plain_string(self) -> str:
        """Shortest ungrouped spelling, e.g. '-0.143' or '2820000000'."""
        body = str(self.integer_part())
        fraction = self.fraction_digits()
        if fraction:
            body = f"{body}.{fraction}"
        return f"-{body}" if self.is_negative else body

    def __str__(self) -> str:
        return self.to_plain_string()


ZERO = NumericValue()
ONE = NumericValue(1, 1, 0)


def value_from_decimal_string(text: str) -> NumericValue:
    """Parse a digit string with optional sign, grouping commas and decimal point.

    Grouping commas are ignored for the value; leading zeros are ignored too
    (opaque digit strings are the parsers' concern, not this function's).

    Raises:
        NumeralParseError: pointing at the first offending character.
    """
    pos = 0
    length = len(text)
    negative = False
    if pos < length and text[pos] in "+-":
        negative = text[pos] == "-"
        pos += 1

    digits = []
    group_len = 0
    seen_comma = False
    while pos < length and (text[pos] in ASCII_DIGITS or text[pos] == ","):
        if text[pos] == ",":
            if not digits:
                raise NumeralParseError("grouping comma before any digit", text, pos)
            if (seen_comma and group_len != 3) or (not seen_comma and group_len > 3):
                raise NumeralParseError("misplaced grouping comma", text, pos)
            seen_comma = True
            group_len = 0
        else:
            digits.append(text[pos])
            group_len += 1
        pos += 1

    if not digits:
        raise NumeralParseError("expected digits", text, pos)
    if seen_comma and group_len != 3:
        raise NumeralParseError("misplaced grouping comma", text, pos - group_len - 1)

    fraction = ""
    if pos < length and text[pos] == ".":
        pos += 1
        start = pos
        while pos < length and text[pos] in ASCII_DIGITS:
            pos += 1
        if pos == start:
            raise NumeralParseError("expected digits after decimal point", text, pos)
        fraction = text[start:pos]

    if pos < length:
        raise NumeralParseError(f"unexpected character {text[pos]!r}", text, pos)

    return NumericValue.from_parts(negative, int("".join(digits) + fraction), -len(fraction))


def value_scale(v: NumericValue, k: int) -> NumericValue:
    """Exact v * 10**k."""
    return v.scaled(k)


def value_compare(a: NumericValue, b: NumericValue) -> Comparison:
    """Exact three-way comparison."""
    x, y, _ = a._aligned(b)
    if x < y:
        return Comparison.LESS
    if x > y:
        return Comparison.GREATER
    return Comparison.EQUAL
