"""
English numeral parser and scanner.
"""

import logging
import re
from typing import Dict, List, Optional, Tuple

import regex

from ..errors import AmbiguousNumeralError, NumeralParseError
from ..models import CanonicalNumeral, Measure, Span, SpannedExpression
from ..numeral import NumericValue, ONE, ZERO, value_from_decimal_string
from ..utils import NumtransUtils
from .base import identifier_reading, number_string_literal, resolve, split_points, symbolic_fraction

logger = logging.getLogger(__name__)

ONES = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
    "thirteen": 13, "fourteen": 14, "fifteen": 15, "sixteen": 16,
    "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
}
SCALES = {"thousand": 3, "million": 6, "billion": 9, "trillion": 12}
IRREGULAR_ORDINALS = {
    "one": "first", "two": "second", "three": "third", "five": "fifth",
    "eight": "eighth", "nine": "ninth", "twelve": "twelfth",
}


def _ordinal_word(cardinal: str) -> str:
    if cardinal in IRREGULAR_ORDINALS:
        return IRREGULAR_ORDINALS[cardinal]
    if cardinal.endswith("y"):
        return cardinal[:-1] + "ieth"
    return cardinal + "th"


ORDINAL_TO_CARDINAL: Dict[str, str] = {
    _ordinal_word(w): w for w in list(ONES) + list(TENS) + ["hundred"] + list(SCALES)
}
NOT_DENOMINATORS = {"first", "firsts", "second", "seconds"}

ARABIC = re.compile(r"\d+(?:,\d{3})*(?:\.\d+)?")
DIGIT_ORDINAL = re.compile(r"(\d+(?:,\d{3})*)(?:st|nd|rd|th)", re.IGNORECASE)
WORD_SPLIT = re.compile(r"\s+|(?<=[a-z])-(?=[a-z])")
OUT_OF = re.compile(r"(.+?)\s+(?:in|out\s+of)\s+(.+)")
PERCENT = re.compile(r"(.+?)\s*(?:%|per\s?cent)")
BETWEEN = re.compile(r"between\s+(.+)")
FROM = re.compile(r"from\s+(.+)")
FOLD = re.compile(r"(.+?)(?:\s*-\s*|\s+)?fold")
MEGAPIXEL = re.compile(r"(.+?)\s*-?\s*(?:mp|mega-?pixels?)")
FORMULA_SPLIT = re.compile(
    r"(\+|\*|×|(?<=\d)\s*x\s*(?=\d)|\s+x\s+|\s+(?:plus|times|minus|multiplied\s+by|divided\s+by)\s+)"
)
FORMULA_OPERATORS = {"+": "+", "*": "*", "×": "*", "x": "*", "plus": "+", "times": "*",
                     "minus": "-", "multiplied by": "*", "divided by": "/"}
NEGATIVE_PREFIXES = ("minus ", "negative ", "-")


# Cardinals


def parse_en_amount(text: str) -> Tuple[NumericValue, bool]:
    """Parse an unsigned English amount: digits, words, or digits with scale words.

    Returns:
        The value and whether a scale word (thousand..trillion) took part.
    """
    phrase = text.strip().lower()
    words = [w for w in WORD_SPLIT.split(phrase) if w]
    if not words:
        raise NumeralParseError("empty numeral", text, 0)

    def fail(message: str, word: str):
        raise NumeralParseError(message, text, max(0, phrase.find(word)))

    total = ZERO
    last_scale = 99
    has_scale = False
    hundreds: Optional[int] = None
    rest: Optional[int] = None
    rest_kind: Optional[str] = None
    arabic: Optional[NumericValue] = None
    decimal: Optional[NumericValue] = None

    def group_empty() -> bool:
        return hundreds is None and rest is None and arabic is None and decimal is None

    def group_value() -> NumericValue:
        if arabic is not None:
            return arabic
        if decimal is not None:
            return decimal
        return NumericValue.of((hundreds or 0) * 100 + (rest or 0))

    i = 0
    while i < len(words):
        word = words[i]
        previous = words[i - 1] if i else None
        if word in ("a", "an") and i == 0 and i + 1 < len(words) and (
                words[i + 1] == "hundred" or words[i + 1] in SCALES):
            word = "one"
        if word == "and":
            if previous != "hundred" and previous not in SCALES or i + 1 == len(words):
                fail("misplaced 'and'", word)
        elif ARABIC.fullmatch(word):
            if not group_empty():
                fail("digits after number words", word)
            arabic = value_from_decimal_string(word)
        elif word in TENS:
            if arabic is not None or decimal is not None or rest is not None:
                fail("unexpected tens word", word)
            rest, rest_kind = TENS[word], "tens"
        elif word in ONES:
            value = ONES[word]
            if arabic is not None or decimal is not None:
                fail("unexpected number word", word)
            if rest is None:
                if hundreds is not None and value == 0:
                    fail("zero after hundred", word)
                rest, rest_kind = value, "units"
            elif rest_kind == "tens" and 1 <= value <= 9:
                rest, rest_kind = rest + value, "units"
            else:
                fail("two number words without a scale", word)
        elif word == "hundred":
            if arabic is not None and hundreds is None and arabic.is_integer() \
                    and 0 < arabic.to_int() < 100:
                hundreds, arabic = arabic.to_int(), None
            elif hundreds is None and arabic is None and decimal is None and rest:
                hundreds, rest, rest_kind = rest, None, None
            else:
                fail("misplaced 'hundred'", word)
        elif word in SCALES:
            scale = SCALES[word]
            if group_empty() or scale >= last_scale:
                fail(f"misplaced '{word}'", word)
            if decimal is not None and has_scale:
                fail(f"decimal before '{word}' after a larger scale", word)
            value = group_value()
            if value.is_zero:
                fail("zero coefficient", word)
            total = total + value.scaled(scale)
            hundreds = rest = rest_kind = arabic = decimal = None
            last_scale = scale
            has_scale = True
        elif word == "point":
            # "forty-eight thousand point four": the group after a scale word may be empty
            if arabic is not None or decimal is not None or (
                    group_empty() and previous not in SCALES):
                fail("misplaced 'point'", word)
            digits = []
            while i + 1 < len(words) and ONES.get(words[i + 1], 10) < 10:
                i += 1
                digits.append(str(ONES[words[i]]))
            if not digits:
                fail("expected digit words after 'point'", word)
            integer = (hundreds or 0) * 100 + (rest or 0)
            fraction = "".join(digits)
            decimal = NumericValue.from_parts(False, int(f"{integer}{fraction}"), -len(fraction))
            hundreds = rest = rest_kind = None
        else:
            fail(f"unknown word {word!r}", word)
        i += 1

    if words[-1] == "and":
        fail("dangling 'and'", "and")
    if not group_empty():
        total = total + group_value()
    elif not has_scale:
        fail("no number", words[0])
    return total, has_scale


def _signed_amount(text: str) -> Tuple[NumericValue, bool]:
    lowered = text.lower()
    for prefix in NEGATIVE_PREFIXES:
        if lowered.startswith(prefix):
            value, has_scale = parse_en_amount(text[len(prefix):])
            return -value, has_scale
    return parse_en_amount(text)


def _integer(text: str) -> NumericValue:
    value, _ = parse_en_amount(text)
    if not value.is_integer():
        raise NumeralParseError("expected a whole number", text, 0)
    return value


def _ordinal_to_cardinal(word: str) -> Optional[str]:
    """'sixty-second' -> 'sixty-two'; None when the last part is no ordinal."""
    head, _, last = word.rpartition("-")
    cardinal = ORDINAL_TO_CARDINAL.get(last)
    if cardinal is None:
        return None
    return f"{head}-{cardinal}" if head else cardinal


def _denominator(word: str) -> Optional[Tuple[NumericValue, bool]]:
    """Denominator word -> (value, plural)."""
    if word in ("half", "halves"):
        return NumericValue.of(2), word == "halves"
    if word in ("quarter", "quarters"):
        return NumericValue.of(4), word == "quarters"
    if word in NOT_DENOMINATORS:
        return None
    plural = word.endswith("s")
    cardinal = _ordinal_to_cardinal(word[:-1] if plural else word)
    if cardinal is None:
        return None
    if cardinal in SCALES or cardinal == "hundred":
        cardinal = f"one {cardinal}"
    return _integer(cardinal), plural


# Productions


def _fraction(phrase: str) -> Optional[CanonicalNumeral]:
    lowered = phrase.lower()
    if lowered == "half":
        return CanonicalNumeral.fraction(1, 2)
    if lowered == "quarter":
        return CanonicalNumeral.fraction(1, 4)
    symbolic = symbolic_fraction(phrase)
    if symbolic is not None:
        return symbolic
    match = OUT_OF.fullmatch(lowered)
    if match:
        return CanonicalNumeral.fraction(_integer(match.group(1)), _integer(match.group(2)))
    match = PERCENT.fullmatch(lowered)
    if match:
        return CanonicalNumeral.fraction(_signed_amount(match.group(1))[0], 100)

    head, sep, last = lowered.rpartition(" ")
    if not sep:
        head, sep, last = lowered.rpartition("-")
    if not sep:
        return None
    denominator = _denominator(last)
    if denominator is None:
        return None
    value, plural = denominator
    numerator = ONE if head.strip() in ("a", "an") else _integer(head)
    if not plural and numerator != ONE:
        return None
    return CanonicalNumeral.fraction(numerator, value)


def _ratio(phrase: str) -> List[CanonicalNumeral]:
    readings = []
    for left, right in split_points(phrase, ":"):
        try:
            readings.append(CanonicalNumeral.ratio(parse_en_amount(left)[0], parse_en_amount(right)[0]))
        except NumeralParseError:
            continue
    return readings


def _with_shared_scale(low: NumericValue, low_scaled: bool, high_text: str,
                       high_scaled: bool) -> NumericValue:
    """'3 to 5 million': a bare low end borrows the high end's scale word."""
    if low_scaled or not high_scaled:
        return low
    head, _, last = high_text.strip().lower().rpartition(" ")
    if last not in SCALES or not head:
        return low
    try:
        mantissa, _ = _signed_amount(head)
    except NumeralParseError:
        return low
    return low.scaled(SCALES[last]) if low <= mantissa else low


def _endpoints(left: str, right: str) -> Tuple[NumericValue, NumericValue]:
    low, low_scaled = _signed_amount(left)
    high, high_scaled = _signed_amount(right)
    return _with_shared_scale(low, low_scaled, right, high_scaled), high


def _range(phrase: str) -> List[CanonicalNumeral]:
    lowered = phrase.lower()
    readings = []
    pairs = []
    for pattern, separator in ((BETWEEN, " and "), (FROM, " to ")):
        match = pattern.fullmatch(lowered)
        if match:
            pairs.extend((left, right, separator == " to ")
                         for left, right in split_points(match.group(1), separator))
    pairs.extend((left, right, False) for left, right in split_points(lowered, "~"))
    for left, right in split_points(lowered, "-"):
        if left[-1].isdigit() and (right[0].isdigit() or right[:2].startswith("-")):
            pairs.append((left, right, False))
    for left, right, spelled_to in pairs:
        try:
            low, high = _endpoints(left, right)
        except NumeralParseError:
            continue
        # descending "from 9 to 5" is also a ratio, like "9 to 5"
        candidates = [CanonicalNumeral.range(low, high)]
        if spelled_to and high < low:
            candidates.insert(0, CanonicalNumeral.ratio(low, high))
        for reading in candidates:
            if reading not in readings:
                readings.append(reading)
    return readings


def _to_phrase(phrase: str) -> List[CanonicalNumeral]:
    """'X to Y': a range when ascending; descending also reads as a ratio."""
    lowered = phrase.lower()
    if lowered.startswith("from "):
        return []
    readings = []
    for left, right in split_points(lowered, " to "):
        try:
            a, b = _endpoints(left, right)
        except NumeralParseError:
            continue
        if b < a:
            readings.append(CanonicalNumeral.ratio(a, b))
        readings.append(CanonicalNumeral.range(a, b))
    return readings


def _formula(phrase: str) -> Optional[CanonicalNumeral]:
    parts = FORMULA_SPLIT.split(phrase.lower())
    if len(parts) < 3:
        return None
    operands = [parse_en_amount(p)[0] for p in parts[0::2]]
    operators = [FORMULA_OPERATORS[" ".join(p.split())] for p in parts[1::2]]
    return CanonicalNumeral.formula(operands, operators)


def _ordinal(phrase: str) -> Optional[CanonicalNumeral]:
    match = DIGIT_ORDINAL.fullmatch(phrase)
    if match:
        return CanonicalNumeral.ordinal(value_from_decimal_string(match.group(1)))
    lowered = phrase.lower()
    head, _, last = lowered.rpartition(" ")
    cardinal = _ordinal_to_cardinal(last)
    if cardinal is None:
        return None
    if not head and (cardinal in SCALES or cardinal == "hundred"):
        cardinal = f"one {cardinal}"
    return CanonicalNumeral.ordinal(_integer(f"{head} {cardinal}"))


def _special(phrase: str) -> Optional[CanonicalNumeral]:
    lowered = phrase.lower()
    match = FOLD.fullmatch(lowered)
    if match:
        return CanonicalNumeral.special(parse_en_amount(match.group(1))[0], Measure.FOLD)
    match = MEGAPIXEL.fullmatch(lowered)
    if match:
        return CanonicalNumeral.special(parse_en_amount(match.group(1))[0], Measure.MEGAPIXEL)
    return None


def _amount(phrase: str) -> CanonicalNumeral:
    value, has_scale = _signed_amount(phrase)
    return CanonicalNumeral.scalar(value, large_unit=has_scale)


TIERS = (
    (number_string_literal,),
    (_fraction, _ratio, _range, _to_phrase, _formula),
    (_ordinal,),
    (_special,),
    (_amount,),
)


def parse_en_number(text: str) -> CanonicalNumeral:
    """Parse one English numeric phrase.

    Raises:
        NumeralParseError: the phrase is not numeric, with the offending offset
        AmbiguousNumeralError: two readings of equal priority, e.g. "3 to 1"
    """
    phrase = " ".join(NumtransUtils.normalize_width(text).split())
    if not phrase:
        raise NumeralParseError("empty numeric phrase", text, 0)
    return resolve(text, phrase, TIERS)


# Scanning

TOKEN = regex.compile(
    r"""
    \$?\\frac\{\d+(?:\.\d+)?\}\{\d+(?:\.\d+)?\}\$?
    | (?:[A-Za-z]+-?)?\d+(?:[.,]\d+)*(?:[A-Za-z]+\d*(?:[.,]\d+)*)*(?:-[A-Za-z0-9]+(?:[.,]\d+)*)*
    | [A-Za-z]+(?:['’-][A-Za-z]+)*
    | [:~/+*×½¼¾⅓⅔%-]
    """,
    regex.VERBOSE,
)
CONNECTORS = {
    "and", "to", "between", "from", "in", "out", "of", "point", "minus",
    "negative", "plus", "times", "x", "multiplied", "divided", "by", "a", "an",
    ":", "~", "/", "+", "*", "×", "-",
}
VOCABULARY = (
    set(ONES) | set(TENS) | set(SCALES) | {"hundred", "half", "halves", "quarter", "quarters",
                                           "fold", "mp", "megapixel", "megapixels",
                                           "%", "percent", "per", "cent"}
    | set(ORDINAL_TO_CARDINAL) | {w + "s" for w in ORDINAL_TO_CARDINAL} | CONNECTORS
)
STARTERS = (set(ONES) | set(TENS) | set(ORDINAL_TO_CARDINAL)
            | {"half", "quarter", "between", "from", "minus", "negative", "a", "an", "-"})
MAX_TOKENS = 12


def _is_numeric_token(token: str) -> bool:
    lowered = token.lower()
    if any(c.isdigit() for c in lowered) or lowered.startswith(("\\", "$")):
        return True
    if lowered in VOCABULARY:
        return True
    if lowered.endswith("fold") and (lowered[:-4] in VOCABULARY or lowered[:-4].rstrip("-") in VOCABULARY):
        return True
    return all(part in VOCABULARY for part in lowered.split("-"))


def _is_starter(token: str) -> bool:
    lowered = token.lower()
    if any(c.isdigit() for c in lowered) or lowered.startswith(("\\", "$")) or lowered in "½¼¾⅓⅔":
        return True
    return lowered in STARTERS or lowered.split("-")[0] in STARTERS


def scan_en(text: str) -> List[SpannedExpression]:
    """Find numeric expressions in an English sentence.

    Tokens are grouped into windows of numeric vocabulary separated only by
    whitespace; the longest parseable window at each start wins.
    """
    normalized = NumtransUtils.normalize_width(text)
    tokens = list(TOKEN.finditer(normalized))
    found: List[SpannedExpression] = []
    i = 0
    while i < len(tokens):
        if not (_is_numeric_token(tokens[i].group()) and _is_starter(tokens[i].group())):
            i += 1
            continue
        last = i
        while (last + 1 < len(tokens) and last + 1 - i < MAX_TOKENS
               and _is_numeric_token(tokens[last + 1].group())
               and not normalized[tokens[last].end():tokens[last + 1].start()].strip()):
            last += 1

        match = None
        for j in range(last, i - 1, -1):
            if j > i and tokens[j].group().lower() in CONNECTORS:
                continue
            start, end = tokens[i].start(), tokens[j].end()
            try:
                canonical = parse_en_number(normalized[start:end])
            except AmbiguousNumeralError as e:
                logger.debug(f"Skipping ambiguous phrase: {e}")
                continue
            except NumeralParseError:
                continue
            match = (j, start, end, canonical)
            break

        if match is None:
            i += 1
            continue
        j, start, end, canonical = match
        canonical = identifier_reading(normalized, start, end, canonical)
        found.append(SpannedExpression(Span(start, end), text[start:end], canonical))
        i = j + 1
    logger.debug(f"scan_en found {len(found)} expressions")
    return found
