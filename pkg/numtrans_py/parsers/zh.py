"""
Chinese numeral parser and scanner.

Amounts follow the usual four-digit grouping: a section below 10^4 is built
from digit words and the place words 十/百/千, 万 joins two sections and 亿
joins two 万-groups, so 万亿 falls out as 10^12 without a rule of its own.
Arabic digits may stand in for any section ("28亿2千万").
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import AmbiguousNumeralError, NumeralParseError
from ..models import CanonicalNumeral, Measure, Span, SpannedExpression
from ..numeral import NumericValue, ZERO
from ..utils import NumtransUtils
from .base import identifier_reading, number_string_literal, resolve, split_points, symbolic_fraction

logger = logging.getLogger(__name__)

DIGIT_WORDS = {
    "零": 0, "〇": 0, "一": 1, "二": 2, "两": 2, "三": 3, "四": 4,
    "五": 5, "六": 6, "七": 7, "八": 8, "九": 9,
}
PLACE_WORDS = {"十": 1, "百": 2, "千": 3}
UNIT_WORDS = {"万": 4, "亿": 8}
UNSUPPORTED_UNITS = "兆京"

# Denominators that may omit their leading 一, as in 百分之五.
BARE_DENOMINATORS = {"百": 100, "千": 1000, "万": 10 ** 4, "十万": 10 ** 5,
                     "百万": 10 ** 6, "千万": 10 ** 7, "亿": 10 ** 8}

ARABIC = re.compile(r"\d+(?:,\d{3})*(?:\.\d+)?")
FORMULA_SPLIT = re.compile(r"(\+|\*|×|(?<=\d)\s*[xX]\s*(?=\d)|加|减|乘以|乘|除以)")
FORMULA_OPERATORS = {"+": "+", "*": "*", "×": "*", "x": "*", "X": "*",
                     "加": "+", "减": "-", "乘以": "*", "乘": "*", "除以": "/"}
RANGE_SEPARATORS = ("到", "至", "~", "-")
TRAILING_UNITS = ("万亿", "亿", "万")

START_CHARS = set("0123456789") | set(DIGIT_WORDS) | set("十百千万第负半-\\$½¼¾⅓⅔")
RUN_CHARS = (START_CHARS | set(PLACE_WORDS) | set(UNIT_WORDS)
             | set("点分之比:到至~+*×/xX.,%加减乘以除倍像素 {}")
             | set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"))
MAX_RUN = 48

# Numerals inside these words are not numbers.
IDIOMS = {
    "一些", "一起", "一样", "一直", "一定", "一般", "一切", "一旦", "统一", "唯一",
    "万一", "之一", "一致", "同一", "一次", "一边", "一下", "一点", "一面", "半导",
    "十分", "万分", "万万", "一方面", "一向", "一再", "一律", "一共", "一同", "一齐",
    "一番", "一味", "一概", "一贯", "不一", "一生", "一口气", "一会儿", "十足",
    "三心二意", "七上八下", "一模一样", "独一无二", "乱七八糟", "一五一十", "十全十美",
    "九牛一毛", "五花八门", "四面八方", "一举两得", "一心一意", "三番五次", "千方百计",
}
# Longer words that keep their numeral despite containing an idiom.
IDIOM_EXCEPTIONS = {"十分钟"}


@dataclass(frozen=True)
class _Token:
    kind: str  # num, digit, place, unit, point
    value: object
    offset: int
    raw: str


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        match = ARABIC.match(text, pos)
        if match:
            raw = match.group(0)
            tokens.append(_Token("num", NumericValue.of(raw.replace(",", "")), pos, raw))
            pos = match.end()
            continue
        if ch in DIGIT_WORDS:
            tokens.append(_Token("digit", DIGIT_WORDS[ch], pos, ch))
        elif ch in PLACE_WORDS:
            tokens.append(_Token("place", PLACE_WORDS[ch], pos, ch))
        elif ch in UNIT_WORDS:
            tokens.append(_Token("unit", UNIT_WORDS[ch], pos, ch))
        elif ch == "点":
            tokens.append(_Token("point", None, pos, ch))
        elif ch in UNSUPPORTED_UNITS:
            raise NumeralParseError(f"unsupported unit {ch}", text, pos)
        else:
            raise NumeralParseError(f"unexpected character {ch!r}", text, pos)
        pos += 1
    return tokens


def _is_single_digit(token: _Token) -> bool:
    if token.kind == "digit":
        return token.value != 0
    return token.kind == "num" and len(token.raw) == 1 and token.raw != "0"


def _parse_section(tokens: List[_Token], text: str) -> NumericValue:
    """Parse a group below 10^4, or a lone Arabic number."""
    if not tokens:
        raise NumeralParseError("missing number before unit", text, 0)
    if len(tokens) == 1 and tokens[0].kind == "num":
        return tokens[0].value

    acc = 0
    pending: Optional[int] = None
    last_place = 4
    zero_seen = False
    for i, token in enumerate(tokens):
        if token.kind in ("digit", "num"):
            if token.kind == "num" and not token.value.is_integer():
                raise NumeralParseError("decimal inside a composite number", text, token.offset)
            value = token.value if token.kind == "digit" else token.value.to_int()
            if token.kind == "digit" and value == 0:
                if pending is not None:
                    raise NumeralParseError("unexpected 零", text, token.offset)
                zero_seen = True
                continue
            if pending is not None:
                raise NumeralParseError("two digits without a place word", text, token.offset)
            pending = value
        elif token.kind == "place":
            if token.value >= last_place:
                raise NumeralParseError("place words out of order", text, token.offset)
            if pending is None:
                if token.value == 1 and acc == 0 and not zero_seen:
                    pending = 1
                else:
                    raise NumeralParseError("place word without a digit", text, token.offset)
            acc += pending * 10 ** token.value
            last_place = token.value
            pending = None
            zero_seen = False
        elif token.kind == "point":
            rest = tokens[i + 1:]
            if not rest or any(t.kind != "digit" for t in rest):
                raise NumeralParseError("expected digit words after 点", text, token.offset)
            integer = acc + (pending or 0)
            fraction = "".join(str(t.value) for t in rest)
            return NumericValue.from_parts(False, int(f"{integer}{fraction}"), -len(fraction))
        else:
            raise NumeralParseError(f"unexpected {token.raw}", text, token.offset)

    if pending is not None:
        # 三千五 abbreviates 三千五百
        if zero_seen or last_place in (1, 4):
            acc += pending
        else:
            acc += pending * 10 ** (last_place - 1)
    return NumericValue.of(acc)


def _parse_tail(tokens: List[_Token], text: str, unit: int) -> NumericValue:
    """The part after 万 or 亿; must stay below the unit."""
    if not tokens:
        return ZERO
    zero_led = tokens[0].kind == "digit" and tokens[0].value == 0
    if zero_led:
        tokens = tokens[1:]
        if not tokens:
            raise NumeralParseError("dangling 零", text, len(text) - 1)
    elif len(tokens) == 1 and _is_single_digit(tokens[0]):
        # 一万一 is 11000, 一亿五 is 150000000
        digit = tokens[0].value if tokens[0].kind == "digit" else tokens[0].value.to_int()
        return NumericValue.of(digit).scaled(unit - 1)
    if unit == 8:
        value, _ = _parse_wan(tokens, text)
    else:
        value = _parse_section(tokens, text)
    if value >= NumericValue.of(10 ** unit):
        raise NumeralParseError("lower group does not fit below its unit", text, tokens[0].offset)
    return value


def _parse_wan(tokens: List[_Token], text: str) -> Tuple[NumericValue, bool]:
    marks = [i for i, t in enumerate(tokens) if t.kind == "unit" and t.value == 4]
    if len(marks) > 1:
        raise NumeralParseError("repeated 万", text, tokens[marks[1]].offset)
    if not marks:
        return _parse_section(tokens, text), False
    k = marks[0]
    head = _parse_section(tokens[:k], text) if k else None
    if head is None:
        raise NumeralParseError("万 without a coefficient", text, tokens[k].offset)
    return head.scaled(4) + _parse_tail(tokens[k + 1:], text, 4), True


def parse_zh_amount(text: str) -> Tuple[NumericValue, bool]:
    """Parse an unsigned Chinese amount.

    Returns:
        The value and whether a unit word (万/亿) took part.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise NumeralParseError("empty numeral", text, 0)
    marks = [i for i, t in enumerate(tokens) if t.kind == "unit" and t.value == 8]
    if len(marks) > 1:
        raise NumeralParseError("repeated 亿", text, tokens[marks[1]].offset)
    if not marks:
        return _parse_wan(tokens, text)
    k = marks[0]
    if k == 0:
        raise NumeralParseError("亿 without a coefficient", text, tokens[0].offset)
    head, _ = _parse_wan(tokens[:k], text)
    return head.scaled(8) + _parse_tail(tokens[k + 1:], text, 8), True


def _signed_amount(text: str) -> Tuple[NumericValue, bool]:
    if text[:1] in ("负", "-"):
        value, has_unit = parse_zh_amount(text[1:].strip())
        return -value, has_unit
    return parse_zh_amount(text)


def _strip_unit(text: str) -> Optional[Tuple[str, int]]:
    for word in TRAILING_UNITS:
        if text.endswith(word) and len(text) > len(word):
            return text[: -len(word)], 12 if word == "万亿" else UNIT_WORDS[word]
    return None


# Productions


def _fraction(phrase: str) -> Optional[CanonicalNumeral]:
    if phrase in ("半", "一半"):
        return CanonicalNumeral.fraction(1, 2)
    if phrase.endswith("%"):
        return CanonicalNumeral.fraction(_signed_amount(phrase[:-1].strip())[0], 100)
    if "分之" in phrase:
        den_text, num_text = phrase.split("分之", 1)
        if den_text in BARE_DENOMINATORS:
            denominator = NumericValue.of(BARE_DENOMINATORS[den_text])
        else:
            denominator, _ = parse_zh_amount(den_text)
        numerator, _ = parse_zh_amount(num_text)
        return CanonicalNumeral.fraction(numerator, denominator)
    return symbolic_fraction(phrase)


def _ratio(phrase: str) -> List[CanonicalNumeral]:
    readings = []
    for separator in ("比", ":"):
        for left, right in split_points(phrase, separator):
            try:
                a, _ = parse_zh_amount(left)
                b, _ = parse_zh_amount(right)
            except NumeralParseError:
                continue
            readings.append(CanonicalNumeral.ratio(a, b))
    return readings


def _range(phrase: str) -> List[CanonicalNumeral]:
    readings = []
    for separator in RANGE_SEPARATORS:
        for left, right in split_points(phrase, separator):
            try:
                low, low_unit = _signed_amount(left)
                high, high_unit = _signed_amount(right)
            except NumeralParseError:
                continue
            stripped = _strip_unit(right)
            if not low_unit and high_unit and stripped:
                # 3到5万: the bare left end shares the unit when that keeps it below
                try:
                    mantissa, _ = _signed_amount(stripped[0])
                except NumeralParseError:
                    mantissa = None
                if mantissa is not None and low <= mantissa:
                    low = low.scaled(stripped[1])
            readings.append(CanonicalNumeral.range(low, high))
    return readings


def _formula(phrase: str) -> Optional[CanonicalNumeral]:
    parts = FORMULA_SPLIT.split(phrase)
    if len(parts) < 3:
        return None
    operands = [parse_zh_amount(p.strip())[0] for p in parts[0::2]]
    operators = [FORMULA_OPERATORS[p.strip()] for p in parts[1::2]]
    return CanonicalNumeral.formula(operands, operators)


def _ordinal(phrase: str) -> Optional[CanonicalNumeral]:
    if not phrase.startswith("第"):
        return None
    value, _ = parse_zh_amount(phrase[1:].strip())
    return CanonicalNumeral.ordinal(value)


def _special(phrase: str) -> Optional[CanonicalNumeral]:
    if phrase.endswith("倍"):
        value, _ = parse_zh_amount(phrase[:-1].strip())
        return CanonicalNumeral.special(value, Measure.FOLD)
    if phrase.endswith("像素"):
        value, has_unit = parse_zh_amount(phrase[:-2].strip())
        if not has_unit:
            raise NumeralParseError("pixel counts need 万 or 亿", phrase, 0)
        return CanonicalNumeral.special(value.scaled(-6), Measure.MEGAPIXEL)
    return None


def _amount(phrase: str) -> CanonicalNumeral:
    value, has_unit = _signed_amount(phrase)
    return CanonicalNumeral.scalar(value, large_unit=has_unit)


TIERS = (
    (number_string_literal,),
    (_fraction, _ratio, _range, _formula),
    (_ordinal,),
    (_special,),
    (_amount,),
)


def parse_zh_number(text: str) -> CanonicalNumeral:
    """Parse one Chinese numeric phrase.

    Raises:
        NumeralParseError: the phrase is not numeric, with the offending offset
        AmbiguousNumeralError: two readings of equal priority
    """
    phrase = NumtransUtils.normalize_zh(text).strip()
    if not phrase:
        raise NumeralParseError("empty numeric phrase", text, 0)
    return resolve(text, phrase, TIERS)


def _inside_ascii_word(text: str, pos: int) -> bool:
    """True when pos splits two ASCII letters or digits."""
    return (0 < pos < len(text)
            and text[pos - 1].isascii() and text[pos - 1].isalnum()
            and text[pos].isascii() and text[pos].isalnum())


def _covered(text: str, start: int, end: int, words) -> bool:
    """True when one of words occurs in text around the whole of [start, end)."""
    for word in words:
        pos = text.find(word, max(0, end - len(word)))
        while pos != -1 and pos <= start:
            if pos + len(word) >= end:
                return True
            pos = text.find(word, pos + 1)
    return False


def _is_idiom(text: str, start: int, candidate: str) -> bool:
    end = start + len(candidate)
    return _covered(text, start, end, IDIOMS) and not _covered(text, start, end, IDIOM_EXCEPTIONS)


def scan_zh(text: str) -> List[SpannedExpression]:
    """Find numeric expressions in a Chinese sentence.

    Left to right, longest candidate first at every start position. Phrases
    that fail to parse or are ambiguous are skipped.
    """
    normalized = NumtransUtils.normalize_zh(text)
    found: List[SpannedExpression] = []
    i = 0
    n = len(normalized)
    while i < n:
        ch = normalized[i]
        startable = ch in START_CHARS or (ch.isascii() and ch.isalpha())
        if not startable or _inside_ascii_word(normalized, i):
            i += 1
            continue
        end = i
        while end < n and normalized[end] in RUN_CHARS and end - i < MAX_RUN:
            end += 1

        match = None
        for j in range(end, i, -1):
            candidate = normalized[i:j]
            if candidate != candidate.strip() or _inside_ascii_word(normalized, j):
                continue
            try:
                canonical = parse_zh_number(candidate)
            except AmbiguousNumeralError as e:
                logger.debug(f"Skipping ambiguous phrase: {e}")
                continue
            except NumeralParseError:
                continue
            if _is_idiom(normalized, i, candidate):
                continue
            match = (j, canonical)
            break

        if match is None:
            i += 1
            continue
        j, canonical = match
        canonical = identifier_reading(normalized, i, j, canonical)
        found.append(SpannedExpression(Span(i, j), text[i:j], canonical))
        i = j
    logger.debug(f"scan_zh found {len(found)} expressions")
    return found
