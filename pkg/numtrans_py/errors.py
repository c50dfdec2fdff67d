"""
Exception hierarchy for numtrans.

Every error raised by the library derives from NumtransError so callers
(and the CLI) can catch the whole family in one place.
"""

from typing import Any, List, Optional


class NumtransError(Exception):
    """Base class for all numtrans errors."""


class NumeralParseError(NumtransError, ValueError):
    """A numeric phrase could not be parsed.

    Args:
        message: Human readable reason
        text: The phrase being parsed
        offset: Character offset of the first offending character
    """

    def __init__(self, message: str, text: str = "", offset: int = 0):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} (at offset {offset} in {text!r})")


class AmbiguousNumeralError(NumeralParseError):
    """A phrase has more than one reading of equal priority."""

    def __init__(self, text: str, candidates: List[Any]):
        self.candidates = list(candidates)
        readings = ", ".join(str(c) for c in self.candidates)
        NumtransError.__init__(self, f"ambiguous numeric phrase {text!r}: {readings}")
        self.text = text
        self.offset = 0


class UnsupportedTypeError(NumtransError, TypeError):
    """A formatter was asked to render a type it does not support."""


class ConfigError(NumtransError, ValueError):
    """Invalid or incomplete configuration."""


class LlmError(NumtransError):
    """Base class for chat-completion client failures."""


class LlmTransportError(LlmError):
    """The endpoint could not be reached."""


class LlmTimeoutError(LlmTransportError):
    """The request exceeded the configured timeout."""


class LlmHttpError(LlmError):
    """The endpoint answered with a non-success status."""

    def __init__(self, status_code: int, body: str = ""):
        self.status_code = status_code
        self.body = body
        super().__init__(f"HTTP {status_code}: {body[:200]}")


class LlmResponseError(LlmError):
    """The response envelope was not a chat-completion object."""


class LlmEmptyCompletionError(LlmError):
    """The model returned no text."""


class ExtractionParseError(LlmError, ValueError):
    """The extraction answer did not contain a readable pair list."""

    def __init__(self, message: str, raw: str):
        self.raw = raw
        super().__init__(f"{message}: {raw[:200]!r}")


class DatasetError(NumtransError, ValueError):
    """A dataset line violates the schema."""

    def __init__(self, message: str, line: int, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = f"line {line}" + (f", field '{field}'" if field else "")
        super().__init__(f"{where}: {message}")


class EvaluationError(NumtransError, ValueError):
    """Items and hypotheses cannot be aligned."""
