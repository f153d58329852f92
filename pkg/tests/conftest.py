"""Shared test fixtures: synthetic corpora, canned LLM replies, wired runtimes."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from gensearch.service.config import LlmConfig, ServiceConfig
from gensearch.service.runtime import Runtime

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def write_corpus(directory: Path, count: int = 12, size: int = 32, seed: int = 7) -> Path:
    """Synthetic PNG corpus plus manifest; returns the manifest path."""
    directory.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    lines = []
    for i in range(count):
        pixels = rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8)
        name = f"img-{i:03d}.png"
        Image.fromarray(pixels, "RGB").save(directory / name)
        lines.append(
            json.dumps(
                {
                    "id": f"img-{i:03d}",
                    "uri": name,
                    "description": f"poster design number {i} with mountain scenery",
                }
            )
        )
    manifest = directory / "manifest.jsonl"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


@pytest.fixture
def corpus_manifest(tmp_path: Path) -> Path:
    return write_corpus(tmp_path / "corpus")


def make_runtime(tmp_path: Path, manifest: Path, **overrides) -> Runtime:
    config = ServiceConfig(
        corpus_path=str(manifest),
        data_dir=str(tmp_path / "data"),
        llm=LlmConfig(kind="fixture", fixture_dir=str(FIXTURES / "llm")),
        **overrides,
    )
    runtime = Runtime(config)
    runtime.ingest()
    return runtime


@pytest.fixture
def runtime(tmp_path: Path, corpus_manifest: Path) -> Runtime:
    return make_runtime(tmp_path, corpus_manifest)


@pytest.fixture
def client(runtime: Runtime):
    from fastapi.testclient import TestClient

    from gensearch.service.app import create_app

    return TestClient(create_app(runtime))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per acceptance criterion at the end of the run."""
    lines = {}
    for status, verdict in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and "::" in nodeid:
                lines[nodeid.split("::")[-1]] = verdict
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines):
            terminalreporter.write_line(f"ACCEPTANCE {name}: {lines[name]}")
