"""
Numeric verification and post-editing of translations.

post_edit runs a three-step pipeline: extract numeric pairs, give each pair a
verdict, and rewrite the target spans whose numbers disagree with the source.
"""

import logging
from typing import List, Sequence, Tuple, Union

from ..errors import UnsupportedTypeError
from ..formatter import PERCENT_BASE, render_digits, render_forms, render_large_unit
from ..models import (
    CanonicalNumeral,
    Direction,
    Language,
    NumericPair,
    NumericType,
    PostEditReport,
    Verdict,
    VerdictKind,
)
from .core import ProcessingContext, create_pipeline, process_batch_parallel
from .extractors import PairExtractor, get_extractor, same_meaning

logger = logging.getLogger(__name__)

STYLES = ("digits", "large_unit")


def _direction(direction: Union[Direction, str]) -> Direction:
    return direction if isinstance(direction, Direction) else Direction.parse(direction)


def extract_pairs(source: str, target: str, direction: Union[Direction, str],
                  extractor: Union[str, PairExtractor] = "rules",
                  **extractor_options) -> List[NumericPair]:
    """Aligned numeric pairs of a sentence pair, verdicts unset.

    Raises:
        ValueError: unknown extractor name
        LlmError: the llm extractor could not get or read an answer
    """
    if isinstance(extractor, str):
        extractor = get_extractor(extractor, **extractor_options)
    return extractor.extract(source, target, _direction(direction))


def verify_pair(pair: NumericPair) -> NumericPair:
    """Set the verdict of one pair."""
    source, target = pair.source, pair.target
    if source is None:
        verdict = Verdict.spurious()
    elif target is None:
        verdict = Verdict.omitted()
    elif source.canonical is None:
        verdict = Verdict.unverifiable(f"source: {source.error or 'not parsed'}")
    elif target.canonical is None or target.span is None:
        verdict = Verdict.unverifiable(f"target: {target.error or 'not located'}")
    elif same_meaning(source, target):
        verdict = Verdict.match()
    else:
        verdict = Verdict.mismatch(source.canonical)
    return NumericPair(source, target, verdict)


def render_replacement(expected: CanonicalNumeral, lang: Language, style: str = "digits") -> str:
    """Text written over a mismatched target span."""
    if style == "large_unit" and expected.type.is_scalar:
        return render_large_unit(expected, lang)
    if expected.type is NumericType.FRACTION and expected.values[1] == PERCENT_BASE:
        return f"{expected.values[0]}%"
    try:
        return render_digits(expected, lang)
    except UnsupportedTypeError:
        # Formulas have no digit form; use their shortest spelling.
        return min(render_forms(expected, lang), key=lambda text: (len(text), text))


def apply_edits(target: str, pairs: Sequence[NumericPair], lang: Language,
                style: str = "digits") -> Tuple[str, int]:
    """Rewrite Mismatch spans right to left; returns (edited, replacements)."""
    edits = [
        (p.target.span, render_replacement(p.verdict.expected, lang, style))
        for p in pairs
        if p.verdict is not None and p.verdict.kind is VerdictKind.MISMATCH
        and p.target is not None and p.target.span is not None
    ]
    edited = target
    for span, text in sorted(edits, key=lambda e: e[0].start, reverse=True):
        edited = edited[:span.start] + text + edited[span.end:]
    return edited, len(edits)


def unresolved_count(pairs: Sequence[NumericPair]) -> int:
    return sum(
        1 for p in pairs
        if p.verdict is not None and p.verdict.kind in (VerdictKind.OMITTED, VerdictKind.UNVERIFIABLE)
    )


def post_edit(source: str, target: str, direction: Union[Direction, str],
              style: str = "digits", extractor: Union[str, PairExtractor] = "rules",
              **extractor_options) -> PostEditReport:
    """Detect and correct mistranslated numbers in target.

    Omitted and Unverifiable pairs are reported, never rewritten.

    Raises:
        ValueError: unknown style or extractor
        LlmError: the llm extractor failed
    """
    if style not in STYLES:
        raise ValueError(f"Unknown style: {style} (expected one of {STYLES})")
    pipeline = (create_pipeline("post_edit", "Extract, verify and correct numeric pairs")
                .extract_pairs(extractor, **extractor_options)
                .verify_pairs()
                .apply_edits()
                .configure(continue_on_error=False)
                .build())
    context = ProcessingContext(source=source, target=target,
                                direction=_direction(direction), style=style)
    context = pipeline.execute(context)
    report = PostEditReport(
        edited=context.edited if context.edited is not None else target,
        pairs=list(context.pairs),
        edit_count=context.edit_count,
        unresolved=unresolved_count(context.pairs),
    )
    logger.debug(f"post_edit: {context.get_status_summary()}")
    return report


def post_edit_batch(items: Sequence[Tuple[str, str]], direction: Union[Direction, str],
                    style: str = "digits", extractor: Union[str, PairExtractor] = "rules",
                    max_workers: int = 4, **extractor_options) -> List[PostEditReport]:
    """post_edit over many (source, target) pairs; results keep input order.

    One extractor serves the whole batch, so an LLM client's parallelism
    bound holds across workers.
    """
    direction = _direction(direction)
    if isinstance(extractor, str):
        extractor = get_extractor(extractor, **extractor_options)
    return process_batch_parallel(
        list(items),
        lambda item: post_edit(item[0], item[1], direction, style, extractor),
        max_workers=max_workers,
    )


def check_translation(source: str, target: str, direction: Union[Direction, str],
                      extractor: Union[str, PairExtractor] = "rules",
                      **extractor_options) -> List[NumericPair]:
    """extract_pairs followed by verify_pair on every pair."""
    pairs = extract_pairs(source, target, direction, extractor, **extractor_options)
    return [verify_pair(p) for p in pairs]
