"""
Shared test configuration and fixtures for numtrans tests.
"""

import json
import random
from pathlib import Path
from typing import Dict, List

import pytest

from numtrans_py.llm_client import MockLlmClient
from numtrans_py.models import Direction

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# Company report sentence pair with four large-unit amounts; the English
# output gets three of them wrong by a factor of ten or more.
REPORT_SOURCE = "某公司去年的年收入超过了1000亿美元，净利润达到5000万美元，总资产达到三千五百亿美元，其中包括134亿美元的现金储备。"
REPORT_MISTRANSLATION = (
    "A company's revenue last year exceeded $10 billion, net profit reached $50 million, "
    "and total assets reached $35 billion, including $3.4 billion in cash reserves."
)
FUNDING_SOURCE = "It will provide EUR 72.2 billion over 7 years in funding."
FUNDING_TARGET = "它将在7年内提供722亿欧元的资金。"


@pytest.fixture
def temp_dir(tmp_path) -> Path:
    """Per-test scratch directory."""
    return tmp_path


@pytest.fixture
def reference_set_path() -> Path:
    return FIXTURES_DIR / "reference_set.jsonl"


@pytest.fixture
def reference_hyps_path() -> Path:
    return FIXTURES_DIR / "reference_hyps.jsonl"


@pytest.fixture
def reference_labels(reference_hyps_path) -> Dict[str, bool]:
    """Hand-assigned pass/fail labels of the shipped hypotheses."""
    with open(reference_hyps_path, encoding="utf-8") as f:
        records = [json.loads(line) for line in f if line.strip()]
    return {r["id"]: r["label"] for r in records}


@pytest.fixture
def report_pair():
    return REPORT_SOURCE, REPORT_MISTRANSLATION, Direction.ZH_EN


@pytest.fixture
def funding_pair():
    return FUNDING_SOURCE, FUNDING_TARGET, Direction.EN_ZH


@pytest.fixture
def golden():
    """Read a golden file from tests/golden."""
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding="utf-8").rstrip("\n")
    return read


@pytest.fixture
def echo_client() -> MockLlmClient:
    """Mock client that answers with its own prompt."""
    return MockLlmClient()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240615)


@pytest.fixture
def write_jsonl():
    """Write records as JSON lines and return the path."""
    def write(path: Path, records: List[dict]) -> Path:
        path.write_text(
            "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8"
        )
        return path
    return write


# Pytest marks
def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")


def pytest_collection_modifyitems(config, items):
    """Mark tests by directory."""
    for item in items:
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)
        elif "integration" in str(item.fspath) or "test_cli" in str(item.fspath):
            item.add_marker(pytest.mark.integration)
