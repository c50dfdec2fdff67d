"""
Numeral parsers for Chinese and English text.
"""

from typing import Callable, Dict, List

from ..models import CanonicalNumeral, Language, SpannedExpression
from .en import parse_en_amount, parse_en_number, scan_en
from .zh import parse_zh_amount, parse_zh_number, scan_zh

PARSERS: Dict[Language, Callable[[str], CanonicalNumeral]] = {
    Language.ZH: parse_zh_number,
    Language.EN: parse_en_number,
}
SCANNERS: Dict[Language, Callable[[str], List[SpannedExpression]]] = {
    Language.ZH: scan_zh,
    Language.EN: scan_en,
}


def parse_number(text: str, lang: Language) -> CanonicalNumeral:
    """Parse one numeric phrase in the given language."""
    return PARSERS[lang](text)


def scan(text: str, lang: Language) -> List[SpannedExpression]:
    """Scan a sentence in the given language."""
    return SCANNERS[lang](text)


__all__ = [
    "parse_number", "scan",
    "parse_zh_number", "parse_zh_amount", "scan_zh",
    "parse_en_number", "parse_en_amount", "scan_en",
]
