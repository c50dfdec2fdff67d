"""
Concrete Pipeline Steps

The three steps of post-editing: pair extraction, verification and span
replacement.
"""

from typing import Union

from .core import PipelineStep, ProcessingContext
from .extractors import PairExtractor, get_extractor
from .verifier import apply_edits, unresolved_count, verify_pair


class ExtractPairsStep(PipelineStep):
    """Extract aligned numeric pairs from the sentence pair."""

    def __init__(self,
                 extractor: Union[str, PairExtractor] = "rules",
                 name: str = "extract_pairs",
                 **extractor_options):
        super().__init__(name, "Extract numeric pairs")
        if isinstance(extractor, str):
            extractor = get_extractor(extractor, **extractor_options)
        self.extractor = extractor

    def execute(self, context: ProcessingContext) -> ProcessingContext:
        context.pairs = self.extractor.extract(context.source, context.target, context.direction)
        context.properties["extractor"] = self.extractor.name
        self.logger.debug(f"Extracted {len(context.pairs)} pairs with {self.extractor.name}")
        return context


class VerifyPairsStep(PipelineStep):
    """Give every extracted pair a verdict."""

    requires = ("extract_pairs",)

    def __init__(self, name: str = "verify_pairs"):
        super().__init__(name, "Verify numeric pairs")

    def execute(self, context: ProcessingContext) -> ProcessingContext:
        context.pairs = [verify_pair(p) for p in context.pairs]
        return context


class ApplyEditsStep(PipelineStep):
    """Replace mismatched target spans with the source value."""

    requires = ("verify_pairs",)

    def __init__(self, name: str = "apply_edits"):
        super().__init__(name, "Rewrite mismatched spans")

    def can_execute(self, context: ProcessingContext) -> bool:
        return all(p.verdict is not None for p in context.pairs)

    def execute(self, context: ProcessingContext) -> ProcessingContext:
        context.edited, context.edit_count = apply_edits(
            context.target, context.pairs, context.direction.target, context.style)
        context.properties["unresolved"] = unresolved_count(context.pairs)
        if context.edit_count:
            self.logger.info(f"Rewrote {context.edit_count} numeric spans")
        return context
