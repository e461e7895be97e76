import json
import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def golden():
    with open(os.path.join(FIXTURES, "golden_witnesses.json"), "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture
def cache_path(tmp_path):
    return str(tmp_path / "witnesses.jsonl")


@pytest.fixture(autouse=True)
def _single_worker(monkeypatch):
    # keep scans in-process unless a test asks otherwise
    monkeypatch.setenv("DIGITWITNESS_SCAN_WORKERS", "1")
