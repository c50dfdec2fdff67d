"""
Chat-completion client for LLM translation and numeric pair extraction.

Speaks the OpenAI-compatible chat-completion wire format over requests,
with bounded retries, a parallelism cap and a deterministic mock for tests.
"""

import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import requests
import yaml

from .errors import (
    ConfigError,
    ExtractionParseError,
    LlmEmptyCompletionError,
    LlmHttpError,
    LlmResponseError,
    LlmTimeoutError,
    LlmTransportError,
)
from .models import Direction, Language

LANGUAGE_NAMES = {Language.EN: "English", Language.ZH: "Chinese"}

DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"
DEFAULT_MODEL = "gpt-4o-mini"

# Statuses worth another attempt; other 4xx answers are final.
RETRY_STATUSES = frozenset({408, 429, 500, 502, 503, 504})
BACKOFF_BASE = 1.0
BACKOFF_CAP = 30.0

BASE_PROMPT = (
    "You are a good translator. Help me translate the {source} sentence into {target} sentence."
)
ICL_PROMPT = (
    "You are a good translator. Help me translate the {source} sentence into {target} sentence "
    "based on the given unit conversion principle.\n"
    "Unit Convesion Principle:\n"
    "1 million = 100 万\n"
    "1 billion = 10 亿\n"
    "1 trillion = 1 万亿\n"
    "1 万 = 10 thousand\n"
    "1 亿 = 100 million"
)
COT_PROMPT = (
    "You are a good translator. Help me translate the {source} sentence into {target} sentence "
    "step by step.\n"
    "Please pay attention to the unit conversion between Chinese and English and first translate "
    "the numerical parts, and then translate the sentence."
)
SENTENCE_LINE = "\n{source} sentence: {sentence}"

EXTRACTION_PROMPT = (
    "You are an excellent extractor of numerical translation pairs. Please extract all the "
    "numerical translation pairs from the given [Source]-[Target] translation pairs. Please "
    "output the extracted numerical translation pairs in the form of list without giving any "
    "explanation. Here is an example: [Source]: It will provide EUR 72.2 billion over 7 years "
    "in funding. [Target]: 它将在7年内提供722亿欧元的资金。\n"
    "output:[(\"72.2 billion\", \"722亿\")]. Here is the [Source]-[Target] translation pair you "
    "need to extract: {source}, {target}"
)


class Strategy(Enum):
    """Prompting strategies for LLM translation."""
    BASE = "base"
    ICL = "icl"
    COT = "cot"

    @property
    def template(self) -> str:
        return STRATEGY_TEMPLATES[self]


STRATEGY_TEMPLATES = {
    Strategy.BASE: BASE_PROMPT,
    Strategy.ICL: ICL_PROMPT,
    Strategy.COT: COT_PROMPT,
}


def build_translation_prompt(source: str, direction: Direction, strategy: Strategy) -> str:
    """Fill a strategy template for one sentence."""
    names = {
        "source": LANGUAGE_NAMES[direction.source],
        "target": LANGUAGE_NAMES[direction.target],
    }
    return strategy.template.format(**names) + SENTENCE_LINE.format(
        source=names["source"], sentence=source
    )


def build_extraction_prompt(source: str, target: str) -> str:
    return EXTRACTION_PROMPT.format(source=source, target=target)


ENV_FIELDS = {
    "endpoint": "NUMTRANS_LLM_ENDPOINT",
    "model": "NUMTRANS_LLM_MODEL",
    "api_key": "NUMTRANS_LLM_API_KEY",
    "timeout": "NUMTRANS_LLM_TIMEOUT",
    "max_retries": "NUMTRANS_LLM_MAX_RETRIES",
    "parallelism": "NUMTRANS_LLM_PARALLELISM",
    "seed": "NUMTRANS_LLM_SEED",
    "temperature": "NUMTRANS_LLM_TEMPERATURE",
}


@dataclass(frozen=True)
class LlmConfig:
    """Endpoint settings for the chat-completion client."""

    endpoint: str = DEFAULT_ENDPOINT
    model: str = DEFAULT_MODEL
    api_key: Optional[str] = field(default=None, repr=False)
    timeout: float = 60.0
    max_retries: int = 3
    temperature: float = 0.0
    seed: Optional[int] = 0
    parallelism: int = 4
    verbose: bool = False

    def validate(self) -> "LlmConfig":
        """Check the settings; returns self so calls can chain.

        Raises:
            ConfigError: a setting is out of range or missing
        """
        if not self.endpoint:
            raise ConfigError("endpoint must not be empty")
        if not self.model:
            raise ConfigError("model must not be empty")
        if self.timeout <= 0:
            raise ConfigError(f"timeout must be positive, got {self.timeout}")
        if self.max_retries < 0:
            raise ConfigError(f"max_retries must be >= 0, got {self.max_retries}")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be >= 1, got {self.parallelism}")
        return self

    @classmethod
    def _coerce(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        types = {f.name: f.type for f in fields(cls)}
        coerced: Dict[str, Any] = {}
        for key, raw in values.items():
            if key not in types:
                raise ConfigError(f"unknown config key: {key!r}")
            if raw is None or key in ("endpoint", "model", "api_key"):
                coerced[key] = raw
                continue
            try:
                if key in ("timeout", "temperature"):
                    coerced[key] = float(raw)
                elif key == "verbose":
                    coerced[key] = raw if isinstance(raw, bool) else str(raw).lower() in ("1", "true", "yes")
                else:
                    coerced[key] = int(raw)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"invalid value for {key}: {raw!r}") from e
        return coerced

    @classmethod
    def from_file(cls, path: Union[str, Path], base: Optional["LlmConfig"] = None) -> "LlmConfig":
        """Load settings from a YAML mapping whose keys are field names."""
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ConfigError(f"invalid YAML in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must hold a mapping of settings")
        return replace(base or cls(), **cls._coerce(data))

    @classmethod
    def from_env(cls, base: Optional["LlmConfig"] = None,
                 environ: Optional[Dict[str, str]] = None) -> "LlmConfig":
        """Overlay NUMTRANS_LLM_* environment variables on base (or defaults)."""
        env = os.environ if environ is None else environ
        values = {name: env[var] for name, var in ENV_FIELDS.items() if env.get(var)}
        if "api_key" not in values and env.get("OPENAI_API_KEY"):
            values["api_key"] = env["OPENAI_API_KEY"]
        return replace(base or cls(), **cls._coerce(values))


class LlmClient:
    """Chat-completion client.

    Immutable after construction. Each thread gets its own requests.Session,
    and at most cfg.parallelism requests are in flight at once.
    """

    def __init__(self, config: LlmConfig):
        self.config = config.validate()
        self.logger = logging.getLogger("llm.client")
        self._local = threading.local()
        self._slots = threading.BoundedSemaphore(config.parallelism)

    @property
    def session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            session.headers.update({"Content-Type": "application/json"})
            self._local.session = session
        return session

    def build_body(self, prompt: str) -> bytes:
        """Request body for one user prompt; byte-stable for fixed inputs."""
        payload: Dict[str, Any] = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
        }
        if self.config.seed is not None:
            payload["seed"] = self.config.seed
        return json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")

    def _headers(self) -> Dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.config.api_key:
            headers["Authorization"] = f"Bearer {self.config.api_key}"
        return headers

    def complete(self, prompt: str) -> str:
        """Send one prompt and return the completion text.

        Raises:
            LlmTimeoutError / LlmTransportError: the endpoint was unreachable
            LlmHttpError: a non-success status after the retry budget
            LlmResponseError: the body was not a chat-completion object
            LlmEmptyCompletionError: the model answered with no text
        """
        body = self.build_body(prompt)
        if self.config.verbose:
            headers = dict(self._headers())
            if "Authorization" in headers:
                headers["Authorization"] = "Bearer ***"
            self.logger.debug(f"POST {self.config.endpoint} headers={headers} body={body.decode('utf-8')}")

        with self._slots:
            text = self._send(body)

        if self.config.verbose:
            self.logger.debug(f"Response text: {text!r}")
        if not text or not text.strip():
            raise LlmEmptyCompletionError("model returned an empty completion")
        return text

    def _send(self, body: bytes) -> str:
        """POST with retries; returns the raw completion content."""
        attempts = self.config.max_retries + 1
        last_error: Optional[Exception] = None
        for attempt in range(attempts):
            delay = None
            try:
                response = self.session.post(
                    self.config.endpoint,
                    data=body,
                    headers=self._headers(),
                    timeout=self.config.timeout,
                )
            except requests.Timeout as e:
                last_error = LlmTimeoutError(f"request timed out after {self.config.timeout}s")
                last_error.__cause__ = e
            except requests.RequestException as e:
                last_error = LlmTransportError(f"request failed: {e}")
                last_error.__cause__ = e
            else:
                if 200 <= response.status_code < 300:
                    return self._content(response)
                last_error = LlmHttpError(response.status_code, response.text)
                if response.status_code not in RETRY_STATUSES:
                    raise last_error
                delay = self._retry_after(response)

            if attempt + 1 < attempts:
                wait = delay if delay is not None else min(BACKOFF_BASE * 2 ** attempt, BACKOFF_CAP)
                self.logger.warning(f"Attempt {attempt + 1}/{attempts} failed ({last_error}); retrying in {wait:.1f}s")
                time.sleep(wait)

        raise last_error

    @staticmethod
    def _retry_after(response: requests.Response) -> Optional[float]:
        if response.status_code not in (429, 503):
            return None
        value = response.headers.get("Retry-After")
        try:
            return min(max(float(value), 0.0), BACKOFF_CAP) if value is not None else None
        except ValueError:
            return None

    @staticmethod
    def _content(response: requests.Response) -> str:
        try:
            data = response.json()
            content = data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as e:
            raise LlmResponseError(f"unexpected response body: {response.text[:200]!r}") from e
        if content is not None and not isinstance(content, str):
            raise LlmResponseError(f"completion content is not text: {content!r}")
        return content or ""

    def translate(self, source: str, direction: Direction, strategy: Strategy) -> str:
        return self.complete(build_translation_prompt(source, direction, strategy))

    def extract_pairs(self, source: str, target: str) -> List[Tuple[str, str]]:
        raw = self.complete(build_extraction_prompt(source, target))
        return parse_pair_list(raw)


Responder = Union[str, Callable[[str], str], None]


class MockLlmClient(LlmClient):
    """Offline client: echoes the prompt, returns fixed text, or calls a function.

    Every request body is kept in `requests` so tests can compare it with
    golden prompts.
    """

    def __init__(self, responder: Responder = None, config: Optional[LlmConfig] = None):
        super().__init__(config or LlmConfig(endpoint="mock://llm", model="mock"))
        self.responder = responder
        self.requests: List[bytes] = []
        self._lock = threading.Lock()

    def _send(self, body: bytes) -> str:
        with self._lock:
            self.requests.append(body)
        prompt = json.loads(body)["messages"][0]["content"]
        if self.responder is None:
            return prompt
        if callable(self.responder):
            return self.responder(prompt)
        return self.responder

    @property
    def prompts(self) -> List[str]:
        return [json.loads(body)["messages"][0]["content"] for body in self.requests]


def llm_translate(source: str, direction: Direction, strategy: Strategy,
                  config: Optional[LlmConfig] = None, client: Optional[LlmClient] = None) -> str:
    """Translate one sentence with the given prompting strategy."""
    client = client or LlmClient(config or LlmConfig.from_env())
    return client.translate(source, direction, strategy)


def llm_extract_pairs(source: str, target: str, config: Optional[LlmConfig] = None,
                      client: Optional[LlmClient] = None) -> List[Tuple[str, str]]:
    """Ask the model for the numeric pairs of a translation pair."""
    client = client or LlmClient(config or LlmConfig.from_env())
    return client.extract_pairs(source, target)


# Answer parsing

QUOTES = {'"': '"', "'": "'", "“": "”", "‘": "’", "「": "」"}
OPENERS = {"(": ")", "[": "]"}


class _PairScanner:
    """Reads a list of 2-tuples of strings out of free text."""

    def __init__(self, raw: str):
        self.raw = raw
        self.pos = 0

    def fail(self, message: str):
        raise ExtractionParseError(f"{message} at offset {self.pos}", self.raw)

    def skip_space(self):
        while self.pos < len(self.raw) and self.raw[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.raw[self.pos] if self.pos < len(self.raw) else ""

    def expect(self, char: str):
        if self.peek() != char:
            self.fail(f"expected {char!r}")
        self.pos += 1

    def string(self) -> str:
        opener = self.peek()
        if opener not in QUOTES:
            self.fail("expected a quoted string")
        closer = QUOTES[opener]
        self.pos += 1
        chars = []
        while self.pos < len(self.raw):
            char = self.raw[self.pos]
            if char == "\\" and self.pos + 1 < len(self.raw):
                chars.append(self.raw[self.pos + 1])
                self.pos += 2
                continue
            if char == closer:
                self.pos += 1
                return "".join(chars)
            chars.append(char)
            self.pos += 1
        self.fail("unterminated string")

    def pair(self) -> Tuple[str, str]:
        opener = self.peek()
        if opener not in OPENERS:
            self.fail("expected a pair")
        closer = OPENERS[opener]
        self.pos += 1
        left = self.string()
        self.expect(",")
        right = self.string()
        if self.peek() == ",":
            self.pos += 1
        self.expect(closer)
        return left, right

    def pair_list(self) -> List[Tuple[str, str]]:
        self.expect("[")
        pairs = []
        while self.peek() != "]":
            if not self.peek():
                self.fail("unterminated list")
            pairs.append(self.pair())
            if self.peek() == ",":
                self.pos += 1
        self.pos += 1
        return pairs


def parse_pair_list(raw: str) -> List[Tuple[str, str]]:
    """Parse a model answer such as 'output:[("72.2 billion", "722亿")]'.

    Prose around the list, either quote style, curly quotes, tuples or
    two-element lists and trailing commas are accepted. The first bracket
    that opens a readable list wins.

    Raises:
        ExtractionParseError: no readable pair list in the answer
    """
    if not isinstance(raw, str):
        raise ExtractionParseError("answer is not text", repr(raw))
    start = raw.find("[")
    while start != -1:
        scanner = _PairScanner(raw)
        scanner.pos = start
        try:
            return scanner.pair_list()
        except ExtractionParseError:
            start = raw.find("[", start + 1)
    raise ExtractionParseError("no pair list found", raw)


def format_pair_list(pairs: List[Tuple[str, str]]) -> str:
    """Serialize pairs the way the extraction prompt's example does."""
    body = ", ".join(
        "(" + ", ".join(json.dumps(s, ensure_ascii=False) for s in pair) + ")" for pair in pairs
    )
    return f"[{body}]"
