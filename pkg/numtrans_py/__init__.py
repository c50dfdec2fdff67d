"""
Numtrans Python Library

Parses Chinese and English numeric expressions into exact canonical values,
renders every accepted spelling of a value, checks and post-edits the numbers
of a translation against its source, and scores translations with the
pass-rate metric.
"""

from importlib.util import find_spec

from .errors import (
    NumtransError, NumeralParseError, AmbiguousNumeralError, UnsupportedTypeError,
    ConfigError, LlmError, LlmTransportError, LlmTimeoutError, LlmHttpError,
    LlmResponseError, LlmEmptyCompletionError, ExtractionParseError,
    DatasetError, EvaluationError
)
from .numeral import (
    NumericValue, Comparison,
    value_from_decimal_string, value_scale, value_compare
)
from .models import (
    NumericType, Measure, Language, Direction,
    CanonicalNumeral, Span, SpannedExpression,
    Verdict, VerdictKind, NumericPair, PostEditReport,
    DatasetItem, TargetEntry, JudgeResult, TypeTally, EvalResult
)
from .utils import NumtransUtils
from .parsers import (
    parse_number, scan,
    parse_zh_number, parse_zh_amount, scan_zh,
    parse_en_number, parse_en_amount, scan_en
)
from .formatter import (
    render_digits, render_forms, render_large_unit,
    en_words, en_ordinal_words, zh_words
)
from .llm_client import (
    LlmConfig, Strategy, LlmClient, MockLlmClient,
    llm_translate, llm_extract_pairs, parse_pair_list
)
from .pipeline import (
    Pipeline, PipelineStep, ProcessingContext, PipelineBuilder, create_pipeline,
    PairExtractor, RuleBasedExtractor, LlmExtractor, ExtractorRegistry, get_extractor,
    extract_pairs, verify_pair, check_translation, post_edit, post_edit_batch
)
from .evaluation import (
    load_dataset, load_hypotheses, judge, pass_rate, report_to_dict,
    build_reference_item, generate_hypotheses
)

# The CLI needs the optional click/rich extras
CLI_AVAILABLE = all(find_spec(name) is not None for name in ("click", "rich"))

__version__ = "0.1.0"
__author__ = "Julio Ona"
__email__ = "thinmanj@gmail.com"

__all__ = [
    # Errors
    "NumtransError", "NumeralParseError", "AmbiguousNumeralError", "UnsupportedTypeError",
    "ConfigError", "LlmError", "LlmTransportError", "LlmTimeoutError", "LlmHttpError",
    "LlmResponseError", "LlmEmptyCompletionError", "ExtractionParseError",
    "DatasetError", "EvaluationError",
    # Values and models
    "NumericValue", "Comparison", "value_from_decimal_string", "value_scale", "value_compare",
    "NumericType", "Measure", "Language", "Direction",
    "CanonicalNumeral", "Span", "SpannedExpression",
    "Verdict", "VerdictKind", "NumericPair", "PostEditReport",
    "DatasetItem", "TargetEntry", "JudgeResult", "TypeTally", "EvalResult",
    "NumtransUtils",
    # Parsing and rendering
    "parse_number", "scan",
    "parse_zh_number", "parse_zh_amount", "scan_zh",
    "parse_en_number", "parse_en_amount", "scan_en",
    "render_digits", "render_forms", "render_large_unit",
    "en_words", "en_ordinal_words", "zh_words",
    # LLM client
    "LlmConfig", "Strategy", "LlmClient", "MockLlmClient",
    "llm_translate", "llm_extract_pairs", "parse_pair_list",
    # Post-editing
    "Pipeline", "PipelineStep", "ProcessingContext", "PipelineBuilder", "create_pipeline",
    "PairExtractor", "RuleBasedExtractor", "LlmExtractor", "ExtractorRegistry", "get_extractor",
    "extract_pairs", "verify_pair", "check_translation", "post_edit", "post_edit_batch",
    # Evaluation
    "load_dataset", "load_hypotheses", "judge", "pass_rate", "report_to_dict",
    "build_reference_item", "generate_hypotheses",
    "CLI_AVAILABLE",
]
