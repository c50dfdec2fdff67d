"""
Post-Editing Pipeline System

Checks the numbers of a translation against its source in stages:
- Extract aligned numeric pairs (rule-based scanning or an LLM extractor)
- Verify each pair by comparing canonical values
- Rewrite mismatched target spans with the correct value

Batches of sentence pairs run with bounded, order-preserving parallelism.
"""

# Core pipeline components
from .core import (
    Pipeline, PipelineStep, ProcessingContext, PipelineBuilder,
    create_pipeline, process_batch_parallel
)

# Pair extraction
from .extractors import (
    PairExtractor, RuleBasedExtractor, LlmExtractor, ExtractorRegistry,
    align_expressions, comparison_group, same_meaning, locate_expression,
    extractor_registry, get_extractor, get_all_extractors
)

# Verification and post-editing
from .verifier import (
    STYLES, extract_pairs, verify_pair, check_translation, apply_edits,
    render_replacement, post_edit, post_edit_batch
)

# Pipeline steps
from .steps import ExtractPairsStep, VerifyPairsStep, ApplyEditsStep

__all__ = [
    # Core
    'Pipeline', 'PipelineStep', 'ProcessingContext', 'PipelineBuilder',
    'create_pipeline', 'process_batch_parallel',

    # Extractors
    'PairExtractor', 'RuleBasedExtractor', 'LlmExtractor', 'ExtractorRegistry',
    'align_expressions', 'comparison_group', 'same_meaning', 'locate_expression',
    'extractor_registry', 'get_extractor', 'get_all_extractors',

    # Verifier
    'STYLES', 'extract_pairs', 'verify_pair', 'check_translation', 'apply_edits',
    'render_replacement', 'post_edit', 'post_edit_batch',

    # Steps
    'ExtractPairsStep', 'VerifyPairsStep', 'ApplyEditsStep',
]
