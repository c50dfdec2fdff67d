"""
Rendering canonical numerals back into text.

render_digits gives the one canonical digit spelling used for post-edits,
render_large_unit the "13.4 billion" / "134亿" spelling, and render_forms the
whole set of spellings accepted as correct for a value. Every string that
render_forms returns parses back to the numeral it came from.
"""

from typing import Callable, Dict, List, Set, Tuple

from .errors import UnsupportedTypeError
from .models import CanonicalNumeral, Language, Measure, NumericType
from .numeral import NumericValue
from .parsers.en import _ordinal_word

EN_ONES = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
    "seventeen", "eighteen", "nineteen",
]
EN_TENS = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]
EN_SCALES = [(12, "trillion"), (9, "billion"), (6, "million"), (3, "thousand")]
ZH_DIGITS = "零一二三四五六七八九"
ZH_UNITS = [(12, "万亿"), (8, "亿"), (4, "万")]
EN_UNITS = [(12, "trillion"), (9, "billion"), (6, "million")]

WORD_LIMIT = 10 ** 15
MAX_UNIT_PLACES = 4
MIN_MANTISSA = NumericValue.of("0.001")
MAX_MANTISSA = NumericValue.of(10 ** 4)
PERCENT_BASE = NumericValue.of(100)
VULGAR = {(1, 2): "½", (1, 4): "¼", (3, 4): "¾", (1, 3): "⅓", (2, 3): "⅔"}


# English words


def _en_below_100(n: int) -> str:
    if n < 20:
        return EN_ONES[n]
    tens, units = divmod(n, 10)
    return EN_TENS[tens] + (f"-{EN_ONES[units]}" if units else "")


def _en_below_1000(n: int, use_and: bool) -> str:
    hundreds, rest = divmod(n, 100)
    parts = []
    if hundreds:
        parts.append(f"{EN_ONES[hundreds]} hundred")
    if rest:
        if hundreds and use_and:
            parts.append("and")
        parts.append(_en_below_100(rest))
    return " ".join(parts)


def en_words(n: int, use_and: bool = False) -> str:
    """Spell a non-negative integer below 10^15 in English words."""
    if n < 0 or n >= WORD_LIMIT:
        raise ValueError(f"no word form for {n}")
    if n == 0:
        return "zero"
    parts = []
    for exp, name in EN_SCALES:
        group = n // 10 ** exp % 1000
        if group:
            parts.append(f"{_en_below_1000(group, use_and)} {name}")
    if n % 1000:
        parts.append(_en_below_1000(n % 1000, use_and))
    return " ".join(parts)


def en_ordinal_words(n: int) -> str:
    """'sixty-second'; round hundreds and scales drop their 'one' ('hundredth')."""
    words = en_words(n)
    if words.startswith("one ") and " " not in words[4:]:
        words = words[4:]
    head, _, last = words.rpartition(" ")
    stem, dash, final = last.rpartition("-")
    last = f"{stem}{dash}{_ordinal_word(final)}"
    return f"{head} {last}" if head else last


def _en_value_words(v: NumericValue, use_and: bool = False) -> str:
    words = en_words(v.integer_part(), use_and)
    fraction = v.fraction_digits()
    if fraction:
        words += " point " + " ".join(EN_ONES[int(d)] for d in fraction)
    return words


# Chinese words


def _zh_section(n: int, liang: bool, leading: bool) -> str:
    out = ""
    zero_pending = False
    started = False
    for exp, place in ((3, "千"), (2, "百"), (1, "十"), (0, "")):
        d = n // 10 ** exp % 10
        if d == 0:
            zero_pending = started
            continue
        if zero_pending:
            out += "零"
            zero_pending = False
        if exp == 1 and d == 1 and leading and not started:
            out += "十"
        else:
            out += ("两" if liang and d == 2 and exp >= 2 else ZH_DIGITS[d]) + place
        started = True
    return out


def _zh_unit_head(n: int, liang: bool, leading: bool) -> str:
    return "两" if liang and n == 2 else _zh_section(n, liang, leading)


def _zh_words8(n: int, liang: bool, leading: bool) -> str:
    high, low = divmod(n, 10 ** 4)
    if not high:
        return _zh_section(low, liang, leading)
    out = _zh_unit_head(high, liang, leading) + "万"
    if low:
        out += ("零" if low < 1000 else "") + _zh_section(low, liang, False)
    return out


def zh_words(n: int, liang: bool = False) -> str:
    """Spell a non-negative integer below 10^16 in Chinese numerals.

    Args:
        n: The integer
        liang: Use 两 instead of 二 before 千/百 and before a bare unit
    """
    if n < 0 or n >= 10 ** 16:
        raise ValueError(f"no word form for {n}")
    if n == 0:
        return "零"
    high, low = divmod(n, 10 ** 8)
    if not high:
        return _zh_words8(low, liang, True)
    out = ("两" if liang and high == 2 else _zh_words8(high, liang, True)) + "亿"
    if low:
        out += ("零" if low < 10 ** 7 else "") + _zh_words8(low, liang, False)
    return out


def _zh_value_words(v: NumericValue, liang: bool = False) -> str:
    words = zh_words(v.integer_part(), liang)
    fraction = v.fraction_digits()
    if fraction:
        words += "点" + "".join(ZH_DIGITS[int(d)] for d in fraction)
    return words


def _zh_mixed_section(n: int, compact: bool) -> str:
    nonzero = [(exp, d) for exp, d in enumerate(reversed(str(n))) if d != "0"]
    if compact and len(nonzero) == 1 and nonzero[0][0] > 0:
        exp, d = nonzero[0]
        return d + "十百千"[exp - 1]
    return str(n)


def zh_mixed(n: int, compact: bool = True) -> str:
    """Arabic groups joined by units: 28亿2千万 (compact) or 28亿2000万."""
    yi, wan, rest = n // 10 ** 8, n // 10 ** 4 % 10 ** 4, n % 10 ** 4
    out = f"{yi}亿" if yi else ""
    if wan:
        out += ("零" if yi and wan < 1000 else "") + _zh_mixed_section(wan, compact) + "万"
    if rest:
        needs_zero = (yi or wan) and (rest < 1000 or not wan)
        out += ("零" if needs_zero else "") + _zh_mixed_section(rest, compact)
    return out or "0"


# Digits


def _group(v: NumericValue) -> str:
    body = f"{v.integer_part():,}"
    fraction = v.fraction_digits()
    if fraction:
        body += f".{fraction}"
    return f"-{body}" if v.is_negative else body


def _digits(v: NumericValue, lang: Language) -> str:
    if lang is Language.EN and v.is_integer() and v.integer_part() >= 10 ** 4:
        return _group(v)
    return v.to_plain_string()


def ordinal_suffix(n: int) -> str:
    if n % 100 in (11, 12, 13):
        return "th"
    return {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")


def render_digits(c: CanonicalNumeral, lang: Language) -> str:
    """Canonical digit spelling.

    Raises:
        UnsupportedTypeError: for formulas, which have no single digit form
    """
    kind = c.type
    if kind is NumericType.NUMBER_STRING:
        return c.literal
    if kind is NumericType.FORMULA:
        raise UnsupportedTypeError("formulas have no canonical digit form")
    if kind.is_scalar:
        return _digits(c.value, lang)
    if kind is NumericType.RANGE:
        return f"{_digits(c.values[0], lang)}-{_digits(c.values[1], lang)}"
    if kind is NumericType.RATIO:
        return f"{_digits(c.values[0], lang)}:{_digits(c.values[1], lang)}"
    if kind is NumericType.FRACTION:
        return f"{c.values[0]}/{c.values[1]}"
    if kind is NumericType.ORDINAL:
        n = c.value.to_int()
        return f"{n}{ordinal_suffix(n)}" if lang is Language.EN else f"第{n}"
    # Special
    v = c.value
    if c.measure is Measure.FOLD:
        return f"{v}-fold" if lang is Language.EN else f"{v}倍"
    return f"{v} MP" if lang is Language.EN else f"{v.scaled(2)}万像素"


def _unit_mantissas(v: NumericValue, lang: Language) -> List[Tuple[NumericValue, str]]:
    """(mantissa, unit word) pairs that spell |v| exactly with a readable mantissa."""
    magnitude = abs(v)
    units = list(ZH_UNITS if lang is Language.ZH else EN_UNITS)
    if lang is Language.EN and magnitude < NumericValue.of(10 ** 6):
        units.append((3, "thousand"))
    out = []
    for exp, word in units:
        mantissa = magnitude.scaled(-exp)
        if (MIN_MANTISSA <= mantissa < MAX_MANTISSA
                and mantissa.decimal_places() <= MAX_UNIT_PLACES):
            out.append((mantissa, word))
    return out


def _unit_text(mantissa: str, word: str, lang: Language) -> str:
    return f"{mantissa} {word}" if lang is Language.EN else f"{mantissa}{word}"


def render_large_unit(c: CanonicalNumeral, lang: Language) -> str:
    """Decimal mantissa times the largest unit that keeps it exact and at least 1.

    Falls back to render_digits when no unit fits.

    Raises:
        UnsupportedTypeError: for non-scalar numerals
    """
    if not c.type.is_scalar:
        raise UnsupportedTypeError(f"{c.type.value} has no large-unit form")
    v = c.value
    units = ZH_UNITS if lang is Language.ZH else EN_UNITS
    for exp, word in units:
        mantissa = abs(v).scaled(-exp)
        if mantissa >= NumericValue.of(1) and mantissa.decimal_places() <= MAX_UNIT_PLACES:
            sign = "-" if v.is_negative else ""
            return sign + _unit_text(str(mantissa), word, lang)
    return render_digits(c, lang)


# Form sets


def _magnitude_forms(m: NumericValue, lang: Language) -> Dict[str, Set[str]]:
    """Digit, unit and word spellings of a non-negative value."""
    digits = {m.to_plain_string()}
    if m.integer_part() >= 1000:
        digits.add(_group(m))
    units = set()
    words = set()
    small = m.integer_part() < WORD_LIMIT
    for mantissa, word in _unit_mantissas(m, lang):
        units.add(_unit_text(str(mantissa), word, lang))
        if lang is Language.EN:
            # scale words only descend, so "thousand" cannot precede the unit
            if mantissa.integer_part() < 1000:
                words.add(f"{_en_value_words(mantissa)} {word}")
        else:
            words.add(_zh_value_words(mantissa) + word)
            if mantissa == NumericValue.of(2):
                words.add("两" + word)
    if small:
        if lang is Language.EN:
            words.add(_en_value_words(m))
            words.add(_en_value_words(m, use_and=True))
        else:
            words.add(_zh_value_words(m))
            words.add(_zh_value_words(m, liang=True))
    if lang is Language.ZH and m.is_integer() and 10 ** 4 <= m.integer_part() < 10 ** 16:
        n = m.integer_part()
        units.add(zh_mixed(n, compact=True))
        units.add(zh_mixed(n, compact=False))
    return {"digits": digits, "units": units, "words": words}


def _scalar_forms(v: NumericValue, lang: Language) -> Set[str]:
    forms = _magnitude_forms(abs(v), lang)
    if not v.is_negative:
        return set().union(*forms.values())
    if lang is Language.EN:
        numeric_prefixes, word_prefixes = ("-", "minus ", "negative "), ("minus ", "negative ")
    else:
        numeric_prefixes, word_prefixes = ("-", "负"), ("负",)
    out = set()
    for text in forms["digits"] | forms["units"]:
        out.update(p + text for p in numeric_prefixes)
    for text in forms["words"]:
        out.update(p + text for p in word_prefixes)
    return out


def _words(v: NumericValue, lang: Language) -> str:
    return _en_value_words(v) if lang is Language.EN else _zh_value_words(v)


def _has_words(*values: NumericValue) -> bool:
    return all(not v.is_negative and v.integer_part() < WORD_LIMIT for v in values)


def _range_forms(low: NumericValue, high: NumericValue, lang: Language) -> Set[str]:
    def joined(a: str, b: str, spelled: bool = False) -> Set[str]:
        if lang is Language.ZH:
            out = {f"{a}到{b}", f"{a}至{b}"}
            if not spelled:
                out.add(f"{a}~{b}")
        else:
            out = {f"{a} to {b}", f"between {a} and {b}", f"from {a} to {b}"}
            if not spelled:
                out.add(f"{a}~{b}")
        hyphen_ok = lang is Language.ZH or (a[-1].isdigit() and b[:1].isdigit())
        if not spelled and not low.is_negative and hyphen_ok:
            out.add(f"{a}-{b}")
        return out

    forms = joined(_digits(low, lang), _digits(high, lang))
    forms |= joined(low.to_plain_string(), high.to_plain_string())
    low_unit = render_large_unit(CanonicalNumeral.scalar(low), lang)
    high_unit = render_large_unit(CanonicalNumeral.scalar(high), lang)
    if low_unit != _digits(low, lang) and high_unit != _digits(high, lang):
        forms |= joined(low_unit, high_unit)
    if _has_words(low, high):
        low_words, high_words = _words(low, lang), _words(high, lang)
        # "three to five million" reads as 3-5 million
        if not _borrows_unit(low_words, high_words, lang):
            forms |= joined(low_words, high_words, spelled=True)
    return forms


def _borrows_unit(low_text: str, high_text: str, lang: Language) -> bool:
    if lang is Language.ZH:
        return high_text.endswith(("万", "亿")) and not any(u in low_text for u in "万亿")
    scales = {name for _, name in EN_SCALES}
    return high_text.split()[-1] in scales and not scales & set(low_text.split())


def _ratio_forms(a: NumericValue, b: NumericValue, lang: Language) -> Set[str]:
    forms = {f"{a}:{b}"}
    if lang is Language.ZH:
        forms.add(f"{a}比{b}")
        if _has_words(a, b):
            forms.add(f"{_zh_value_words(a)}比{_zh_value_words(b)}")
    return forms


def _en_denominator_word(d: int, plural: bool) -> List[str]:
    if d == 2:
        return ["halves" if plural else "half"]
    words = [en_ordinal_words(d) + ("s" if plural else "")]
    if d == 4:
        words.append("quarters" if plural else "quarter")
    return [w for w in words if " " not in w]


def _percent_forms(n: NumericValue, lang: Language) -> Set[str]:
    """n/100 written as a percentage."""
    forms = {f"{n}%"}
    if lang is Language.ZH:
        if not n.is_negative:
            forms.add(f"百分之{n}")
        if _has_words(n):
            forms.add(f"百分之{_zh_value_words(n)}")
        return forms
    forms.add(f"{n} percent")
    if _has_words(n):
        forms.add(f"{_en_value_words(n)} percent")
    return forms


def _fraction_forms(n: NumericValue, d: NumericValue, lang: Language) -> Set[str]:
    latex = f"\\frac{{{n}}}{{{d}}}"
    forms = {f"{n}/{d}", latex, f"${latex}$"}
    integral = n.is_integer() and d.is_integer()
    key = (n.integer_part(), d.integer_part()) if integral else None
    if key in VULGAR:
        forms.add(VULGAR[key])
    if d == PERCENT_BASE:
        forms |= _percent_forms(n, lang)
    if lang is Language.ZH:
        if not n.is_negative:
            forms.add(f"{d}分之{n}")
        if _has_words(n, d):
            forms.add(f"{_zh_value_words(d)}分之{_zh_value_words(n)}")
        if key == (1, 2):
            forms.add("一半")
        return forms

    if not integral or not _has_words(n, d):
        return forms
    num, den = key
    forms |= {f"{num} in {den}", f"{num} out of {den}"}
    forms |= {f"{en_words(num)} in {en_words(den)}", f"{en_words(num)} out of {en_words(den)}"}
    if den < 2:
        return forms
    if num == 1:
        for word in _en_denominator_word(den, plural=False):
            forms |= {f"one {word}", f"a {word}"}
            if "-" not in word:
                forms.add(f"one-{word}")
        if den in (2, 4):
            forms.add("half" if den == 2 else "quarter")
    elif num > 1:
        spelled = en_words(num)
        for word in _en_denominator_word(den, plural=True):
            forms.add(f"{spelled} {word}")
            if " " not in spelled and "-" not in word:
                forms.add(f"{spelled}-{word}")
    return forms


def _ordinal_forms(n: int, lang: Language) -> Set[str]:
    if lang is Language.ZH:
        forms = {f"第{n}"}
        if n < WORD_LIMIT:
            forms.add(f"第{zh_words(n)}")
        return forms
    forms = {f"{n}{ordinal_suffix(n)}"}
    if n < WORD_LIMIT:
        forms.add(en_ordinal_words(n))
    return forms


def _fold_forms(v: NumericValue, lang: Language) -> Set[str]:
    spelled = _has_words(v)
    if lang is Language.ZH:
        forms = {f"{v}倍"}
        if spelled:
            forms.add(f"{_zh_value_words(v)}倍")
        if v == NumericValue.of(2):
            forms.add("两倍")
        return forms
    forms = {f"{v}-fold", f"{v} fold"}
    if spelled and v.is_integer():
        words = en_words(v.integer_part())
        forms.add(f"{words}-fold")
        if " " not in words and "-" not in words:
            forms.add(f"{words}fold")
    return forms


def _megapixel_forms(v: NumericValue, lang: Language) -> Set[str]:
    if lang is Language.ZH:
        pixels = v.scaled(6)
        forms = set()
        for exp, unit in ((4, "万"), (8, "亿")):
            mantissa = pixels.scaled(-exp)
            if exp == 8 and mantissa < NumericValue.of(1):
                continue
            forms.add(f"{mantissa}{unit}像素")
            if _has_words(mantissa):
                forms.add(f"{_zh_value_words(mantissa)}{unit}像素")
        return forms
    spellings = [str(v)]
    if v.is_integer():
        spellings.append(f"{v}.0")
    forms = set()
    for s in spellings:
        forms |= {f"{s} MP", f"{s}MP", f"{s} megapixels", f"{s} megapixel", f"{s}-megapixel"}
    if _has_words(v) and v.is_integer():
        forms.add(f"{en_words(v.integer_part())} megapixels")
    return forms


FORMULA_SYMBOLS = [{"+": "+", "*": "*"}, {"+": " + ", "*": " * "}, {"+": "+", "*": "x"},
                      {"+": " + ", "*": " x "}, {"+": "+", "*": "×"}, {"+": " + ", "*": " × "}]
FORMULA_WORDS_ZH = [{"+": "加", "-": "减", "*": "乘以", "/": "除以"},
                    {"+": "加", "-": "减", "*": "乘", "/": "除以"}]
FORMULA_WORDS_EN = [{"+": " plus ", "-": " minus ", "*": " times ", "/": " divided by "},
                    {"+": " plus ", "-": " minus ", "*": " multiplied by ", "/": " divided by "}]


def _formula_forms(c: CanonicalNumeral, lang: Language) -> Set[str]:
    def join(operands: List[str], table: Dict[str, str]) -> str:
        out = operands[0]
        for op, operand in zip(c.operators, operands[1:]):
            out += table[op] + operand
        return out

    digits = [_digits(v, lang) for v in c.values]
    forms = set()
    if set(c.operators) <= {"+", "*"}:
        forms |= {join(digits, table) for table in FORMULA_SYMBOLS}
    word_tables = FORMULA_WORDS_ZH if lang is Language.ZH else FORMULA_WORDS_EN
    spellings = [digits]
    if _has_words(*c.values):
        spellings.append([_words(v, lang) for v in c.values])
    for operands in spellings:
        forms |= {join(operands, table) for table in word_tables}
    return forms


FORM_RENDERERS: Dict[NumericType, Callable[[CanonicalNumeral, Language], Set[str]]] = {
    NumericType.RANGE: lambda c, lang: _range_forms(c.values[0], c.values[1], lang),
    NumericType.RATIO: lambda c, lang: _ratio_forms(c.values[0], c.values[1], lang),
    NumericType.FRACTION: lambda c, lang: _fraction_forms(c.values[0], c.values[1], lang),
    NumericType.ORDINAL: lambda c, lang: _ordinal_forms(c.value.to_int(), lang),
    NumericType.NUMBER_STRING: lambda c, lang: {c.literal},
    NumericType.FORMULA: _formula_forms,
}


def render_forms(c: CanonicalNumeral, lang: Language) -> Set[str]:
    """Every accepted spelling of c in lang; each one parses back to c."""
    if c.type.is_scalar:
        return _scalar_forms(c.value, lang)
    if c.type is NumericType.SPECIAL:
        if c.measure is Measure.FOLD:
            return _fold_forms(c.value, lang)
        return _megapixel_forms(c.value, lang)
    return FORM_RENDERERS[c.type](c, lang)
