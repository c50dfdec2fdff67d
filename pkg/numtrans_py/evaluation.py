"""
Pass-rate evaluation of numeric translation.

A hypothesis passes an item when, for every numeric span of the source, at
least one reference spelling occurs in the hypothesis after normalization.
Rates are kept as exact fractions; floats appear only in reports.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, TextIO, Union

from .errors import DatasetError, EvaluationError
from .formatter import render_forms
from .models import (
    DatasetItem,
    Direction,
    EvalResult,
    JudgeResult,
    NumericType,
    Span,
    TargetEntry,
    TypeTally,
)
from .parsers import parse_number
from .utils import NumtransUtils

logger = logging.getLogger(__name__)

Source = Union[str, Path, TextIO]

TYPE_ORDER = list(NumericType)
DIRECTION_ORDER = [Direction.EN_ZH, Direction.ZH_EN]


def _require(obj: Dict[str, Any], key: str, kind: type, line: int, field: Optional[str] = None):
    if key not in obj:
        raise DatasetError("missing field", line, field or key)
    value = obj[key]
    if not isinstance(value, kind) or (kind is str and not value.strip()):
        raise DatasetError(f"expected non-empty {kind.__name__}", line, field or key)
    return value


def _target_entry(raw: Any, index: int, source: str, line: int) -> TargetEntry:
    where = f"targets[{index}]"
    if not isinstance(raw, dict):
        raise DatasetError("expected an object", line, where)
    span = raw.get("span")
    if (not isinstance(span, list) or len(span) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in span)):
        raise DatasetError("expected [start, end]", line, f"{where}.span")
    start, end = span
    if not 0 <= start < end <= len(source):
        raise DatasetError(f"span [{start}, {end}) outside source", line, f"{where}.span")
    references = _require(raw, "references", list, line, f"{where}.references")
    if not references or not all(isinstance(r, str) and r.strip() for r in references):
        raise DatasetError("expected a non-empty list of strings", line, f"{where}.references")
    return TargetEntry(Span(start, end), tuple(references))


def parse_item(obj: Dict[str, Any], line: int = 0) -> DatasetItem:
    """Validate one dataset record.

    Raises:
        DatasetError: the record violates the schema
    """
    item_id = _require(obj, "id", str, line)
    try:
        direction = Direction.parse(_require(obj, "direction", str, line))
    except ValueError as e:
        raise DatasetError(str(e), line, "direction") from e
    try:
        kind = NumericType(_require(obj, "type", str, line))
    except ValueError as e:
        raise DatasetError(f"unknown numeric type {obj['type']!r}", line, "type") from e
    source = _require(obj, "source", str, line)
    targets = _require(obj, "targets", list, line)
    if not targets:
        raise DatasetError("at least one target entry is required", line, "targets")
    entries = tuple(_target_entry(t, i, source, line) for i, t in enumerate(targets))
    return DatasetItem(item_id, direction, kind, source, entries)


def load_dataset(source: Source) -> List[DatasetItem]:
    """Load a JSON-lines dataset.

    Raises:
        FileNotFoundError: the path does not exist
        DatasetError: a line is not valid JSON, violates the schema or repeats an id
    """
    items: List[DatasetItem] = []
    seen: Dict[str, int] = {}
    for line, obj in NumtransUtils.read_jsonl(source):
        item = parse_item(obj, line)
        if item.id in seen:
            raise DatasetError(f"duplicate id {item.id!r} (first on line {seen[item.id]})", line, "id")
        seen[item.id] = line
        items.append(item)
    logger.debug(f"Loaded {len(items)} dataset items")
    return items


def load_hypotheses(source: Source) -> Dict[str, str]:
    """Load {"id", "hypothesis"} lines into an id -> text mapping.

    Raises:
        DatasetError: a line lacks either field or repeats an id
    """
    hypotheses: Dict[str, str] = {}
    for line, obj in NumtransUtils.read_jsonl(source):
        item_id = _require(obj, "id", str, line)
        if "hypothesis" not in obj or not isinstance(obj["hypothesis"], str):
            raise DatasetError("expected a string", line, "hypothesis")
        if item_id in hypotheses:
            raise DatasetError(f"duplicate id {item_id!r}", line, "id")
        hypotheses[item_id] = obj["hypothesis"]
    return hypotheses


def judge(item: DatasetItem, hypothesis: str) -> JudgeResult:
    """Pass iff every target entry has a reference contained in the hypothesis."""
    text = NumtransUtils.normalize_for_match(hypothesis)
    unmet = []
    details = []
    for index, entry in enumerate(item.targets):
        if any(NumtransUtils.normalize_for_match(ref) in text for ref in entry.references):
            continue
        unmet.append(index)
        details.append(
            f"{entry.span.slice(item.source)!r}: none of {list(entry.references)} found"
        )
    return JudgeResult(item.id, not unmet, tuple(unmet), tuple(details))


def pass_rate(items: Sequence[DatasetItem], hypotheses: Mapping[str, str]) -> EvalResult:
    """Judge every item and tally pass rates per direction and type.

    Raises:
        EvaluationError: item ids and hypothesis ids differ
    """
    item_ids = [item.id for item in items]
    if len(set(item_ids)) != len(item_ids):
        raise EvaluationError("duplicate item ids")
    missing = sorted(set(item_ids) - set(hypotheses))
    extra = sorted(set(hypotheses) - set(item_ids))
    if missing or extra:
        raise EvaluationError(f"ids do not align: missing hypotheses {missing}, unknown ids {extra}")

    result = EvalResult()
    for item in sorted(items, key=lambda i: i.id):
        verdict = judge(item, hypotheses[item.id])
        result.verdicts[item.id] = verdict
        tally = result.per_type.setdefault((item.direction, item.type), TypeTally())
        tally.total += 1
        result.total += 1
        if verdict.passed:
            tally.passed += 1
            result.passed += 1
    result.per_type = dict(sorted(
        result.per_type.items(),
        key=lambda kv: (DIRECTION_ORDER.index(kv[0][0]), TYPE_ORDER.index(kv[0][1])),
    ))
    logger.info(f"Pass rate {result.passed}/{result.total}")
    return result


def _rate(passed: int, total: int) -> Dict[str, Any]:
    return {
        "passed": passed,
        "total": total,
        "rate": f"{passed}/{total}",
        "rate_float": round(passed / total, 4) if total else 0.0,
    }


def report_to_dict(result: EvalResult) -> Dict[str, Any]:
    """Machine-readable report; key order is deterministic."""
    by_direction = {}
    by_type: Dict[str, Dict[str, Any]] = {}
    for direction in DIRECTION_ORDER:
        tally = result.direction_tally(direction)
        if not tally.total:
            continue
        by_direction[direction.value] = _rate(tally.passed, tally.total)
        by_type[direction.value] = {
            kind.value: _rate(t.passed, t.total)
            for (d, kind), t in result.per_type.items() if d is direction
        }
    return {
        "overall": _rate(result.passed, result.total),
        "by_direction": by_direction,
        "by_type": by_type,
        "items": [
            {"id": v.item_id, "passed": v.passed, "unmet": list(v.unmet)}
            for v in result.verdicts.values()
        ],
    }


def report_rows(result: EvalResult) -> List[List[str]]:
    """Rows of a type × direction table, percentages with one decimal, plus an average row."""
    def cell(tally: Optional[TypeTally]) -> str:
        if tally is None or not tally.total:
            return "-"
        return f"{100 * tally.passed / tally.total:.1f}"

    rows = []
    for kind in TYPE_ORDER:
        tallies = [result.per_type.get((d, kind)) for d in DIRECTION_ORDER]
        if any(t is not None for t in tallies):
            rows.append([kind.value] + [cell(t) for t in tallies])
    rows.append(["Avg."] + [cell(result.direction_tally(d)) for d in DIRECTION_ORDER])
    return rows


def build_reference_item(item_id: str, direction: Direction, phrase: str) -> DatasetItem:
    """Dataset item for a lone numeric phrase, references from render_forms.

    Raises:
        NumeralParseError: the phrase does not parse in the source language
    """
    canonical = parse_number(phrase, direction.source)
    references = tuple(sorted(render_forms(canonical, direction.target)))
    return DatasetItem(item_id, direction, canonical.type, phrase,
                       (TargetEntry(Span(0, len(phrase)), references),))


def generate_hypotheses(items: Iterable[DatasetItem], strategy, client=None, config=None,
                        postedit: bool = False, style: str = "digits",
                        max_workers: int = 4) -> Dict[str, str]:
    """Translate every item with an LLM strategy, optionally post-editing the output."""
    from .llm_client import LlmClient, LlmConfig
    from .pipeline import post_edit, process_batch_parallel

    client = client or LlmClient(config or LlmConfig.from_env())
    items = list(items)

    def run(item: DatasetItem) -> str:
        hypothesis = client.translate(item.source, item.direction, strategy)
        if postedit:
            hypothesis = post_edit(item.source, hypothesis, item.direction, style).edited
        return hypothesis

    outputs = process_batch_parallel(items, run, max_workers=max_workers)
    return {item.id: text for item, text in zip(items, outputs)}


__all__ = [
    "load_dataset", "load_hypotheses", "parse_item", "judge", "pass_rate",
    "report_to_dict", "report_rows", "build_reference_item", "generate_hypotheses",
]
