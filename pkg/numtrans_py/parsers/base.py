"""
Machinery shared by the Chinese and English parsers.

Parsing a phrase runs a list of priority tiers. Each tier holds productions;
a production returns a CanonicalNumeral, a list of readings, or None, and may
raise NumeralParseError when the phrase is not of its shape. The first tier
that yields a reading wins; two different readings in one tier are reported as
ambiguous instead of being guessed.
"""

import logging
import re
from typing import Callable, List, Optional, Sequence, Union

from ..errors import AmbiguousNumeralError, NumeralParseError
from ..models import CanonicalNumeral, NumericType
from ..numeral import value_from_decimal_string

logger = logging.getLogger(__name__)

Reading = Union[CanonicalNumeral, List[CanonicalNumeral], None]
Production = Callable[[str], Reading]

LEADING_ZERO = re.compile(r"0\d+(?:-\d+)*")
HYPHEN_DIGITS = re.compile(r"\d+(?:-\d+)+")
CODE = re.compile(r"(?=[A-Za-z0-9-]*[A-Za-z])(?=[A-Za-z0-9-]*\d)[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*")
# Letter-bearing spellings that are numbers, not codes.
NUMERIC_WITH_LETTERS = re.compile(
    r"\d+(?:st|nd|rd|th)"
    r"|\d+(?:\.\d+)?(?:\s*-?\s*)(?:mp|megapixels?)"
    r"|\d+(?:\.\d+)?\s*[x×]\s*\d+(?:\.\d+)?(?:\s*[x×]\s*\d+(?:\.\d+)?)*"
    r"|\d+(?:\.\d+)?-?fold",
    re.IGNORECASE,
)

SYMBOLIC_FRACTION = re.compile(r"(-?\d+(?:\.\d+)?)\s*/\s*(\d+(?:\.\d+)?)")
LATEX_FRACTION = re.compile(r"\$?\\frac\{(-?\d+(?:\.\d+)?)\}\{(\d+(?:\.\d+)?)\}\$?")
VULGAR_FRACTIONS = {"½": (1, 2), "¼": (1, 4), "¾": (3, 4), "⅓": (1, 3), "⅔": (2, 3)}

IDENTIFIER_CUE = re.compile(
    r"(?:(?<![A-Za-z])(?:ID|No\.?|number|code|phone)|#|工号|编号|号码|电话|账号|卡号|序列号|专利号)"
    r"\s*(?:is|was|:|为|是)?\s*$",
    re.IGNORECASE,
)
UNGROUPED_RUN = re.compile(r"\d{6,}")


def number_string_literal(text: str) -> Optional[CanonicalNumeral]:
    """Opaque digit strings: leading zeros, non-range hyphen groups, codes."""
    if LEADING_ZERO.fullmatch(text):
        return CanonicalNumeral.number_string(text)
    if HYPHEN_DIGITS.fullmatch(text):
        groups = text.split("-")
        is_range = (
            len(groups) == 2
            and not any(len(g) > 1 and g.startswith("0") for g in groups)
            and int(groups[0]) <= int(groups[1])
        )
        return None if is_range else CanonicalNumeral.number_string(text)
    if CODE.fullmatch(text) and not NUMERIC_WITH_LETTERS.fullmatch(text):
        return CanonicalNumeral.number_string(text)
    return None


def symbolic_fraction(text: str) -> Optional[CanonicalNumeral]:
    """Fractions written with symbols: 1/2, ½, \\frac{1}{2}."""
    if text in VULGAR_FRACTIONS:
        return CanonicalNumeral.fraction(*VULGAR_FRACTIONS[text])
    match = SYMBOLIC_FRACTION.fullmatch(text) or LATEX_FRACTION.fullmatch(text)
    if match:
        return CanonicalNumeral.fraction(
            value_from_decimal_string(match.group(1)),
            value_from_decimal_string(match.group(2)),
        )
    return None


def resolve(text: str, phrase: str, tiers: Sequence[Sequence[Production]]) -> CanonicalNumeral:
    """Run the priority tiers over a normalized phrase.

    Args:
        text: The caller's original phrase, used in error messages
        phrase: The normalized phrase the productions see
        tiers: Productions grouped by priority, highest first

    Raises:
        AmbiguousNumeralError: a tier produced two different readings
        NumeralParseError: no production accepted the phrase
    """
    furthest = 0
    for tier in tiers:
        readings: List[CanonicalNumeral] = []
        for production in tier:
            try:
                result = production(phrase)
            except ValueError as e:
                if isinstance(e, NumeralParseError) and e.text == phrase:
                    furthest = max(furthest, e.offset)
                continue
            if result is None:
                continue
            for reading in result if isinstance(result, list) else [result]:
                if reading not in readings:
                    readings.append(reading)
        if len(readings) == 1:
            return readings[0]
        if len(readings) > 1:
            raise AmbiguousNumeralError(text, readings)
    raise NumeralParseError("not a numeric phrase", text, furthest)


def split_points(phrase: str, separator: str):
    """Yield (left, right) for every occurrence of separator."""
    start = phrase.find(separator, 1)
    while start > 0:
        left, right = phrase[:start].strip(), phrase[start + len(separator):].strip()
        if left and right:
            yield left, right
        start = phrase.find(separator, start + 1)


def identifier_reading(text: str, start: int, end: int,
                       canonical: CanonicalNumeral) -> CanonicalNumeral:
    """Long ungrouped digit runs right after an ID cue are opaque strings."""
    surface = text[start:end]
    if (canonical.type is not NumericType.NUMBER_STRING
            and UNGROUPED_RUN.fullmatch(surface)
            and IDENTIFIER_CUE.search(text[max(0, start - 24):start])):
        logger.debug(f"Reading {surface!r} as an identifier")
        return CanonicalNumeral.number_string(surface)
    return canonical
