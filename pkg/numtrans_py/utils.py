"""
Utility functions for text normalization and JSON-lines handling.

The width normalization used by the scanners maps one character to one
character, so spans found in normalized text index the original text too.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, TextIO, Tuple, Union

from .errors import DatasetError


def _build_width_table() -> Dict[int, str]:
    table = {code: chr(code - 0xFEE0) for code in range(0xFF01, 0xFF5F)}
    # Full-width comma and full stop stay CJK punctuation: "1000，200" is two numbers.
    del table[0xFF0C]
    del table[0xFF0E]
    table[0x3000] = " "
    for dash in "‐‑‒–—−﹣":
        table[ord(dash)] = "-"
    table[0x301C] = "~"
    return table


WIDTH_TABLE = _build_width_table()

ZH_ALIASES = str.maketrans({
    "壹": "一", "贰": "二", "貳": "二", "叁": "三", "參": "三", "肆": "四",
    "伍": "五", "陆": "六", "陸": "六", "柒": "七", "捌": "八", "玖": "九",
    "拾": "十", "佰": "百", "仟": "千", "萬": "万", "億": "亿", "兩": "两",
})

DASHES_FOR_MATCH = str.maketrans({"~": "-"})
WHITESPACE_RUN = re.compile(r"\s+")


class NumtransUtils:
    """Utility class for numtrans text handling."""

    @staticmethod
    def normalize_width(text: str) -> str:
        """Fold full-width forms and dash variants; length preserving."""
        return text.translate(WIDTH_TABLE)

    @staticmethod
    def normalize_zh(text: str) -> str:
        """Width folding plus capital/traditional numeral aliases; length preserving."""
        return text.translate(WIDTH_TABLE).translate(ZH_ALIASES)

    @staticmethod
    def normalize_for_match(text: str) -> str:
        """Normalization applied before reference containment checks.

        Full-width to half-width, dash and tilde variants unified, internal
        whitespace collapsed.
        """
        folded = text.translate(WIDTH_TABLE).translate(DASHES_FOR_MATCH)
        return WHITESPACE_RUN.sub(" ", folded).strip()

    @staticmethod
    def read_jsonl(source: Union[str, Path, TextIO]) -> Iterator[Tuple[int, Dict[str, Any]]]:
        """Yield (line number, object) for each non-blank line."""
        if isinstance(source, (str, Path)):
            path = Path(source)
            if not path.exists():
                raise FileNotFoundError(f"File not found: {path}")
            with open(path, "r", encoding="utf-8") as f:
                yield from NumtransUtils._iter_jsonl(f)
        else:
            yield from NumtransUtils._iter_jsonl(source)

    @staticmethod
    def _iter_jsonl(stream: Iterable[str]) -> Iterator[Tuple[int, Dict[str, Any]]]:
        for line_no, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise DatasetError(f"invalid JSON ({e.msg})", line_no) from e
            if not isinstance(obj, dict):
                raise DatasetError("expected a JSON object", line_no)
            yield line_no, obj

    @staticmethod
    def to_json_line(obj: Dict[str, Any]) -> str:
        """Serialize one record for JSON-lines output."""
        return json.dumps(obj, ensure_ascii=False, sort_keys=True)
