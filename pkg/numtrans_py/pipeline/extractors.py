"""
Pair Extractors for Post-Editing

An extractor turns a (source, translation) sentence pair into aligned numeric
pairs. The rule-based extractor scans both sentences and aligns what it finds;
the LLM extractor asks a chat model for the pairs and locates them in the text.
"""

import logging
import threading
from abc import ABC, abstractmethod
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import AmbiguousNumeralError, NumeralParseError
from ..llm_client import LlmClient, LlmConfig
from ..models import (
    CanonicalNumeral,
    Direction,
    Language,
    NumericPair,
    NumericType,
    Span,
    SpannedExpression,
)
from ..parsers import parse_number, scan
from ..parsers.base import identifier_reading
from ..utils import NumtransUtils

SCALAR_LIKE = frozenset({
    NumericType.DECIMAL, NumericType.LARGE_UNIT, NumericType.NEGATIVE_NUMBER,
    NumericType.ORDINAL, NumericType.SPECIAL,
})


def comparison_group(canonical: Optional[CanonicalNumeral]) -> str:
    """Bucket used to pair leftovers whose values differ."""
    if canonical is None:
        return "unknown"
    if canonical.type in SCALAR_LIKE:
        return "scalar"
    return canonical.type.value


def same_meaning(source: SpannedExpression, target: SpannedExpression) -> bool:
    """Type-aware equality of a source expression and its translation."""
    a, b = source.canonical, target.canonical
    if a is None or b is None:
        return False
    if a.type is NumericType.NUMBER_STRING:
        return b == a or target.surface.strip() == a.literal
    if a == b:
        return True
    specials = [c for c in (a, b) if c.type is NumericType.SPECIAL]
    if len(specials) == 1:
        other = b if specials[0] is a else a
        return other.type.is_scalar and other.value == specials[0].value
    return False


def align_expressions(sources: Sequence[SpannedExpression],
                      targets: Sequence[SpannedExpression]) -> List[NumericPair]:
    """Pair source and target expressions.

    Value anchors bind first. Leftovers pair by position when their counts
    agree, otherwise by position inside each comparison group whose counts
    agree. Anything still unpaired becomes a one-sided pair. Output follows
    source order, then unpaired targets in target order.
    """
    partner: Dict[int, int] = {}
    used = set()
    for i, s in enumerate(sources):
        for j, t in enumerate(targets):
            if j not in used and same_meaning(s, t):
                partner[i] = j
                used.add(j)
                break

    left = [i for i in range(len(sources)) if i not in partner]
    right = [j for j in range(len(targets)) if j not in used]
    if left and len(left) == len(right):
        partner.update(zip(left, right))
        used.update(right)
    elif left and right:
        by_group: Dict[str, Tuple[List[int], List[int]]] = defaultdict(lambda: ([], []))
        for i in left:
            by_group[comparison_group(sources[i].canonical)][0].append(i)
        for j in right:
            by_group[comparison_group(targets[j].canonical)][1].append(j)
        for group_sources, group_targets in by_group.values():
            if len(group_sources) == len(group_targets):
                partner.update(zip(group_sources, group_targets))
                used.update(group_targets)

    pairs = [
        NumericPair(s, targets[partner[i]] if i in partner else None)
        for i, s in enumerate(sources)
    ]
    pairs.extend(NumericPair(None, t) for j, t in enumerate(targets) if j not in used)
    return pairs


class PairExtractor(ABC):
    """Abstract base class for pair extractors."""

    def __init__(self, name: str):
        self.name = name
        self.logger = logging.getLogger(f"extractor.{name}")

    @abstractmethod
    def extract(self, source: str, target: str, direction: Direction) -> List[NumericPair]:
        """Aligned numeric pairs of a sentence pair, verdicts unset."""


class RuleBasedExtractor(PairExtractor):
    """Scan both sentences with the rule-based parsers and align the results."""

    def __init__(self):
        super().__init__("rules")

    def extract(self, source: str, target: str, direction: Direction) -> List[NumericPair]:
        sources = scan(source, direction.source)
        targets = scan(target, direction.target)
        pairs = align_expressions(sources, targets)
        self.logger.debug(f"{len(sources)} source / {len(targets)} target expressions -> {len(pairs)} pairs")
        return pairs


class LlmExtractor(PairExtractor):
    """Ask a chat model for the numeric pairs, then locate and parse them."""

    def __init__(self, config: Optional[LlmConfig] = None, client: Optional[LlmClient] = None):
        super().__init__("llm")
        self.config = config
        self._client = client
        self._lock = threading.Lock()

    @property
    def client(self) -> LlmClient:
        with self._lock:
            if self._client is None:
                self._client = LlmClient(self.config or LlmConfig.from_env())
            return self._client

    def extract(self, source: str, target: str, direction: Direction) -> List[NumericPair]:
        answer = self.client.extract_pairs(source, target)
        self.logger.debug(f"Model returned {len(answer)} pairs")
        source_used: List[Span] = []
        target_used: List[Span] = []
        pairs = []
        for source_surface, target_surface in answer:
            s = locate_expression(source, source_surface, direction.source, source_used)
            t = locate_expression(target, target_surface, direction.target, target_used)
            if s is None and t is None:
                continue
            pairs.append(NumericPair(s, t))
        return pairs


def _find_free(sentence: str, surface: str, used: List[Span]) -> Optional[Span]:
    start = sentence.find(surface)
    while start != -1:
        span = Span(start, start + len(surface))
        if not any(span.overlaps(u) for u in used):
            return span
        start = sentence.find(surface, start + 1)
    return None


def locate_expression(sentence: str, surface: str, lang: Language,
                      used: List[Span]) -> Optional[SpannedExpression]:
    """Find a reported surface in its sentence and parse it.

    Occurrences already claimed by earlier pairs are skipped. Returns None
    for an empty surface; a surface that cannot be found or parsed comes back
    without span or canonical, with the reason in error.
    """
    surface = surface.strip()
    if not surface:
        return None
    normalized = NumtransUtils.normalize_width(sentence)
    span = _find_free(sentence, surface, used) or _find_free(
        normalized, NumtransUtils.normalize_width(surface), used)
    errors = []
    if span is None:
        errors.append("surface not found in sentence")
    else:
        used.append(span)

    canonical = None
    try:
        canonical = parse_number(surface, lang)
    except AmbiguousNumeralError as e:
        errors.append(f"ambiguous: {e}")
    except NumeralParseError as e:
        errors.append(f"unparseable: {e}")
    if canonical is not None and span is not None:
        canonical = identifier_reading(normalized, span.start, span.end, canonical)
    return SpannedExpression(
        span,
        sentence[span.start:span.end] if span else surface,
        canonical,
        error="; ".join(errors) or None,
    )


EXTRACTOR_TYPES = {
    "rules": RuleBasedExtractor,
    "llm": LlmExtractor,
}


class ExtractorRegistry:
    """Registry for managing pair extractors."""

    def __init__(self):
        self.extractors: Dict[str, PairExtractor] = {}
        self.logger = logging.getLogger("extractor.registry")

    def register(self, extractor: PairExtractor):
        """Register an extractor."""
        self.extractors[extractor.name] = extractor
        self.logger.debug(f"Registered extractor: {extractor.name}")

    def get(self, name: str) -> Optional[PairExtractor]:
        return self.extractors.get(name)

    def get_all(self) -> List[PairExtractor]:
        return list(self.extractors.values())

    def register_defaults(self):
        """Register one extractor of every built-in kind."""
        for factory in EXTRACTOR_TYPES.values():
            self.register(factory())


# Global registry instance
extractor_registry = ExtractorRegistry()
extractor_registry.register_defaults()


def get_extractor(name: str, **options) -> PairExtractor:
    """The registered extractor, or a fresh one when options are given.

    Raises:
        ValueError: unknown extractor name
    """
    if options:
        if name not in EXTRACTOR_TYPES:
            raise ValueError(f"Unknown extractor: {name}")
        return EXTRACTOR_TYPES[name](**options)
    extractor = extractor_registry.get(name)
    if extractor is None:
        raise ValueError(f"Unknown extractor: {name}")
    return extractor


def get_all_extractors() -> List[PairExtractor]:
    return extractor_registry.get_all()
