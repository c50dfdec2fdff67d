"""
Unit tests for the chat-completion client, prompts and answer parsing.
"""

import json
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import Mock, patch

import pytest
import requests

from numtrans_py.errors import (
    ConfigError,
    ExtractionParseError,
    LlmEmptyCompletionError,
    LlmHttpError,
    LlmResponseError,
    LlmTimeoutError,
    LlmTransportError,
)
from numtrans_py.llm_client import (
    LlmClient,
    LlmConfig,
    MockLlmClient,
    Strategy,
    build_extraction_prompt,
    format_pair_list,
    llm_extract_pairs,
    llm_translate,
    parse_pair_list,
)
from numtrans_py.models import Direction

ENDPOINT = "https://llm.example.test/v1/chat/completions"


def make_response(status: int = 200, content="ok", headers=None, body=None) -> Mock:
    """A requests.Response stand-in carrying a chat-completion envelope."""
    response = Mock(spec=requests.Response)
    response.status_code = status
    response.headers = headers or {}
    if body is None:
        body = {"choices": [{"message": {"role": "assistant", "content": content}}]}
    if isinstance(body, Exception):
        response.json.side_effect = body
        response.text = "<html>bad gateway</html>"
    else:
        response.json.return_value = body
        response.text = json.dumps(body)
    return response


@pytest.fixture
def config():
    return LlmConfig(endpoint=ENDPOINT, model="test-model", api_key="sk-secret", max_retries=2)


@pytest.fixture
def no_sleep():
    with patch("numtrans_py.llm_client.time.sleep") as sleep:
        yield sleep


class TestPrompts:
    """The prompts sent for each strategy are fixed byte for byte."""

    def test_base(self, echo_client, report_pair, golden):
        """The base prompt matches its golden file."""
        source, _, direction = report_pair
        assert echo_client.translate(source, direction, Strategy.BASE) == golden("base_zh_en.txt")
        assert echo_client.prompts == [golden("base_zh_en.txt")]

    def test_icl(self, echo_client, report_pair, golden):
        """The ICL prompt carries the unit conversion hints."""
        source, _, direction = report_pair
        prompt = llm_translate(source, direction, Strategy.ICL, client=echo_client)
        assert prompt == golden("icl_zh_en.txt")
        assert "1 billion = 10 亿" in prompt

    def test_cot(self, echo_client, funding_pair, golden):
        """The chain-of-thought prompt asks for numbers first."""
        source, _, direction = funding_pair
        prompt = llm_translate(source, direction, Strategy.COT, client=echo_client)
        assert prompt == golden("cot_en_zh.txt")
        assert "first translate the numerical parts" in prompt

    def test_extraction(self, echo_client, funding_pair, golden):
        """The extraction prompt matches its golden file and parses."""
        source, target, _ = funding_pair
        assert build_extraction_prompt(source, target) == golden("extraction.txt")
        # the echoed prompt carries its own example answer
        pairs = llm_extract_pairs(source, target, client=echo_client)
        assert pairs == [("72.2 billion", "722亿")]
        assert echo_client.prompts == [golden("extraction.txt")]

    def test_strategy_names(self):
        """Strategies are looked up by name."""
        assert Strategy("icl") is Strategy.ICL
        assert [s.value for s in Strategy] == ["base", "icl", "cot"]

    def test_fixed_answer(self, report_pair):
        """A fixed mock answer is returned for any prompt."""
        client = MockLlmClient("Revenue exceeded $100 billion.")
        source, _, direction = report_pair
        assert client.translate(source, direction, Strategy.BASE) == "Revenue exceeded $100 billion."

    def test_callable_answer(self):
        """A callable mock answer sees the prompt."""
        client = MockLlmClient(lambda prompt: prompt.upper())
        assert client.complete("abc") == "ABC"


class TestRequestBody:
    """Test cases for build_body."""

    def test_byte_stable(self, config):
        """Request bodies are sorted and byte stable."""
        client = LlmClient(config)
        assert client.build_body("x") == client.build_body("x")
        assert client.build_body("x") == (
            b'{"messages": [{"content": "x", "role": "user"}], '
            b'"model": "test-model", "seed": 0, "temperature": 0.0}'
        )

    def test_seed_omitted_when_unset(self):
        """No seed is sent when none is configured."""
        client = MockLlmClient(config=LlmConfig(endpoint="mock://llm", model="m", seed=None))
        assert "seed" not in json.loads(client.build_body("x"))

    def test_non_ascii_kept(self, echo_client):
        """Chinese text is sent as UTF-8, not escaped."""
        assert "亿".encode("utf-8") in echo_client.build_body("722亿")


class TestLlmConfig:
    """Test cases for LlmConfig."""

    @pytest.mark.parametrize("overrides", [
        {"timeout": 0},
        {"max_retries": -1},
        {"parallelism": 0},
        {"model": ""},
        {"endpoint": ""},
    ])
    def test_validate(self, overrides):
        """Out-of-range settings raise ConfigError."""
        with pytest.raises(ConfigError):
            LlmConfig(**overrides).validate()
        with pytest.raises(ConfigError):
            LlmClient(LlmConfig(**overrides))

    def test_key_hidden_from_repr(self, config):
        """The API key never appears in repr."""
        assert "sk-secret" not in repr(config)

    def test_from_file(self, temp_dir):
        """YAML values are coerced over the defaults."""
        path = temp_dir / "llm.yaml"
        path.write_text("model: gpt-x\ntimeout: 5\nmax_retries: '2'\nverbose: yes\n", encoding="utf-8")
        config = LlmConfig.from_file(path)
        assert config.model == "gpt-x"
        assert config.timeout == 5.0
        assert config.max_retries == 2
        assert config.verbose is True
        assert config.endpoint == LlmConfig().endpoint

    def test_from_file_over_base(self, temp_dir, config):
        """A file overrides only the keys it names."""
        path = temp_dir / "llm.yaml"
        path.write_text("parallelism: 8\n", encoding="utf-8")
        merged = LlmConfig.from_file(path, base=config)
        assert merged.parallelism == 8
        assert merged.model == "test-model"

    def test_empty_file_keeps_defaults(self, temp_dir):
        """An empty file keeps the defaults."""
        path = temp_dir / "llm.yaml"
        path.write_text("", encoding="utf-8")
        assert LlmConfig.from_file(path) == LlmConfig()

    @pytest.mark.parametrize("text", ["colour: red\n", "- a\n- b\n", "model: [unclosed\n", "timeout: soon\n"])
    def test_bad_files(self, temp_dir, text):
        """Unknown keys, non-mappings, bad YAML and bad values raise ConfigError."""
        path = temp_dir / "llm.yaml"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ConfigError):
            LlmConfig.from_file(path)

    def test_missing_file(self, temp_dir):
        """A missing config file raises ConfigError."""
        with pytest.raises(ConfigError):
            LlmConfig.from_file(temp_dir / "absent.yaml")

    def test_from_env(self):
        """Environment variables override settings."""
        config = LlmConfig.from_env(environ={
            "NUMTRANS_LLM_MODEL": "m2",
            "NUMTRANS_LLM_PARALLELISM": "8",
            "NUMTRANS_LLM_SEED": "7",
            "OPENAI_API_KEY": "sk-env",
        })
        assert (config.model, config.parallelism, config.seed, config.api_key) == ("m2", 8, 7, "sk-env")

    def test_own_key_wins(self):
        """NUMTRANS_LLM_API_KEY beats OPENAI_API_KEY."""
        config = LlmConfig.from_env(environ={"NUMTRANS_LLM_API_KEY": "sk-own", "OPENAI_API_KEY": "sk-env"})
        assert config.api_key == "sk-own"

    def test_env_bad_value(self):
        """A malformed environment value raises ConfigError."""
        with pytest.raises(ConfigError):
            LlmConfig.from_env(environ={"NUMTRANS_LLM_TIMEOUT": "soon"})


class TestTransport:
    """Test cases for the HTTP exchange and its retries."""

    def test_success(self, config, no_sleep):
        """A completion is posted with endpoint, body, auth and timeout."""
        client = LlmClient(config)
        with patch("requests.Session.post", return_value=make_response(content="二十八亿")) as post:
            assert client.complete("hello") == "二十八亿"
        _, kwargs = post.call_args
        assert post.call_args[0][0] == ENDPOINT
        assert kwargs["data"] == client.build_body("hello")
        assert kwargs["headers"]["Authorization"] == "Bearer sk-secret"
        assert kwargs["timeout"] == config.timeout
        no_sleep.assert_not_called()

    def test_retries_with_backoff(self, config, no_sleep):
        """Server errors are retried with doubling delays."""
        client = LlmClient(config)
        responses = [make_response(503), make_response(500), make_response(content="done")]
        with patch("requests.Session.post", side_effect=responses) as post:
            assert client.complete("hello") == "done"
        assert post.call_count == 3
        assert [c.args[0] for c in no_sleep.call_args_list] == [1.0, 2.0]

    def test_retry_after_header(self, config, no_sleep):
        """Retry-After sets the delay."""
        client = LlmClient(config)
        responses = [make_response(429, headers={"Retry-After": "3"}), make_response(content="done")]
        with patch("requests.Session.post", side_effect=responses):
            assert client.complete("hello") == "done"
        no_sleep.assert_called_once_with(3.0)

    def test_retry_budget_exhausted(self, config, no_sleep):
        """The last server error is raised after the retries."""
        client = LlmClient(config)
        with patch("requests.Session.post", return_value=make_response(502)) as post:
            with pytest.raises(LlmHttpError) as exc:
                client.complete("hello")
        assert exc.value.status_code == 502
        assert post.call_count == 3
        assert no_sleep.call_count == 2

    def test_client_errors_are_final(self, config, no_sleep):
        """Client errors are not retried."""
        client = LlmClient(config)
        with patch("requests.Session.post", return_value=make_response(401)) as post:
            with pytest.raises(LlmHttpError) as exc:
                client.complete("hello")
        assert exc.value.status_code == 401
        assert post.call_count == 1
        no_sleep.assert_not_called()

    def test_timeout(self, config, no_sleep):
        """Timeouts are retried, then raised."""
        client = LlmClient(config)
        with patch("requests.Session.post", side_effect=requests.Timeout("slow")) as post:
            with pytest.raises(LlmTimeoutError):
                client.complete("hello")
        assert post.call_count == 3

    def test_connection_error(self, no_sleep):
        """Connection failures raise LlmTransportError."""
        client = LlmClient(LlmConfig(endpoint=ENDPOINT, max_retries=0))
        with patch("requests.Session.post", side_effect=requests.ConnectionError("refused")):
            with pytest.raises(LlmTransportError):
                client.complete("hello")

    def test_bad_envelope(self, config, no_sleep):
        """Unreadable responses raise LlmResponseError."""
        client = LlmClient(config)
        with patch("requests.Session.post", return_value=make_response(body=ValueError("not json"))):
            with pytest.raises(LlmResponseError):
                client.complete("hello")
        with patch("requests.Session.post", return_value=make_response(body={"choices": []})):
            with pytest.raises(LlmResponseError):
                client.complete("hello")

    @pytest.mark.parametrize("content", ["", "   ", None])
    def test_empty_completion(self, config, no_sleep, content):
        """Blank completions raise LlmEmptyCompletionError."""
        client = LlmClient(config)
        with patch("requests.Session.post", return_value=make_response(content=content)):
            with pytest.raises(LlmEmptyCompletionError):
                client.complete("hello")

    def test_session_per_thread(self, config):
        """Each thread gets its own HTTP session."""
        client = LlmClient(config)
        main = client.session
        assert client.session is main
        with ThreadPoolExecutor(max_workers=1) as executor:
            other = executor.submit(lambda: client.session).result()
        assert other is not main

    def test_parallelism_cap(self):
        """Concurrent requests stay within the parallelism limit."""
        active = []
        peak = []
        lock = threading.Lock()

        def responder(prompt):
            with lock:
                active.append(prompt)
                peak.append(len(active))
            time.sleep(0.01)
            with lock:
                active.remove(prompt)
            return prompt

        client = MockLlmClient(responder, LlmConfig(endpoint="mock://llm", model="m", parallelism=2))
        with ThreadPoolExecutor(max_workers=8) as executor:
            list(executor.map(client.complete, [f"p{i}" for i in range(16)]))
        assert max(peak) <= 2
        assert len(client.requests) == 16

    def test_verbose_log_redacts_key(self, caplog):
        """Verbose logging masks the bearer token."""
        client = MockLlmClient("ok", LlmConfig(endpoint="mock://llm", model="m",
                                               api_key="sk-secret", verbose=True))
        with caplog.at_level(logging.DEBUG, logger="llm.client"):
            client.complete("hello")
        assert "Bearer ***" in caplog.text
        assert "sk-secret" not in caplog.text


class TestParsePairList:
    """Test cases for parse_pair_list."""

    @pytest.mark.parametrize("raw,expected", [
        ('output:[("72.2 billion", "722亿")]', [("72.2 billion", "722亿")]),
        ("[('a', 'b'), ['c', 'd']]", [("a", "b"), ("c", "d")]),
        ('[(“3”, “三”)]', [("3", "三")]),
        ('[("1", "一",), ]', [("1", "一")]),
        ('[Source] and [Target] give [("1", "一")] here', [("1", "一")]),
        ('[("say \\"hi\\"", "x")]', [('say "hi"', "x")]),
        ("[]", []),
        ("Sure!\n[\n  (\"7\", \"7\")\n]\nDone.", [("7", "7")]),
    ])
    def test_tolerant(self, raw, expected):
        """Pair lists are read through common LLM formatting noise."""
        assert parse_pair_list(raw) == expected

    @pytest.mark.parametrize("raw", ["no list here", "[(1, 2)]", '[("a")]', '[("a", "b")', ""])
    def test_garbage(self, raw):
        """Text without a pair list raises ExtractionParseError."""
        with pytest.raises(ExtractionParseError):
            parse_pair_list(raw)

    def test_not_text(self):
        """Non-text answers raise ExtractionParseError."""
        with pytest.raises(ExtractionParseError):
            parse_pair_list(None)

    def test_reads_what_format_writes(self, rng):
        """Formatted pair lists parse back, with prefixes and trailing commas."""
        alphabet = "0123456789.,:~-+*/% ()[]'\"\\亿万千百十零一二三billion millionthousand"
        for _ in range(1000):
            pairs = [
                tuple("".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12))) for _ in range(2))
                for _ in range(rng.randint(0, 4))
            ]
            text = format_pair_list(pairs)
            variant = rng.choice([
                text,
                "output:" + text,
                text.replace(")", ",)") if ")" not in "".join(sum(pairs, ())) else text,
                text[:-1] + ", ]" if pairs else text,
            ])
            assert parse_pair_list(variant) == pairs, variant

    def test_single_quotes(self, rng):
        """Single-quoted pair lists with escapes parse."""
        alphabet = "0123456789.亿万 abc\"'\\"
        for _ in range(200):
            pairs = [
                tuple("".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8))) for _ in range(2))
                for _ in range(rng.randint(1, 3))
            ]
            quoted = ["'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'" for pair in pairs for s in pair]
            body = ", ".join(f"({a}, {b})" for a, b in zip(quoted[0::2], quoted[1::2]))
            assert parse_pair_list(f"[{body}]") == pairs
