"""Service configuration.

Loaded from a YAML (or JSON) file, then overlaid with environment variables
so deployments can point at live provider endpoints without editing the file.
Every provider defaults to its deterministic stub, which is what the test
suite and the offline demo run against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from gensearch.retrieval.embedding import DEFAULT_DIMENSION

DEFAULT_PORT = 8000
DEFAULT_PAGE_SIZE = 20
# Paper-fixed UI contract numbers; override only deliberately.
DEFAULT_PREVIEW_K = 8
DEFAULT_SUGGESTION_COUNT = 5

ENV_PREFIX = "GENSEARCH_"


@dataclass
class EmbeddingConfig:
    kind: str = "stub"  # "stub" | "remote"
    seed: int = 0
    dimension: int = DEFAULT_DIMENSION
    endpoint: str | None = None


@dataclass
class LlmConfig:
    kind: str = "fixture"  # "fixture" | "remote"
    fixture_dir: str | None = None
    endpoint: str | None = None
    api_key: str | None = None


@dataclass
class SegmentationConfig:
    kind: str = "stub"  # "stub" | "remote"
    rows: int = 4
    cols: int = 4
    endpoint: str | None = None


@dataclass
class GenerationConfig:
    kind: str = "stub"  # "stub" | "remote"
    seed: int = 0
    reference_endpoint: str | None = None
    keyword_endpoint: str | None = None


@dataclass
class ServiceConfig:
    corpus_path: str
    data_dir: str
    port: int = DEFAULT_PORT
    page_size: int = DEFAULT_PAGE_SIZE
    preview_k: int = DEFAULT_PREVIEW_K
    suggestion_count: int = DEFAULT_SUGGESTION_COUNT
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    llm: LlmConfig = field(default_factory=LlmConfig)
    segmentation: SegmentationConfig = field(default_factory=SegmentationConfig)
    generation: GenerationConfig = field(default_factory=GenerationConfig)


def _section(raw: dict, key: str) -> dict:
    value = raw.get(key) or {}
    if not isinstance(value, dict):
        raise ValueError(f"config section {key!r} must be a mapping")
    return value


def load_config(path: str | Path, env: dict[str, str] | None = None) -> ServiceConfig:
    """Parse a config file and apply environment overrides."""
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    if not isinstance(raw, dict):
        raise ValueError("config root must be a mapping")

    base_dir = Path(path).resolve().parent

    def resolve(p: str | None) -> str | None:
        if p is None:
            return None
        candidate = Path(p)
        return str(candidate if candidate.is_absolute() else base_dir / candidate)

    config = ServiceConfig(
        corpus_path=resolve(raw.get("corpus_path")) or "",
        data_dir=resolve(raw.get("data_dir")) or str(base_dir / "data"),
        port=int(raw.get("port", DEFAULT_PORT)),
        page_size=int(raw.get("page_size", DEFAULT_PAGE_SIZE)),
        preview_k=int(raw.get("preview_k", DEFAULT_PREVIEW_K)),
        suggestion_count=int(raw.get("suggestion_count", DEFAULT_SUGGESTION_COUNT)),
        embedding=EmbeddingConfig(**_section(raw, "embedding")),
        llm=LlmConfig(**_section(raw, "llm")),
        segmentation=SegmentationConfig(**_section(raw, "segmentation")),
        generation=GenerationConfig(**_section(raw, "generation")),
    )
    if config.llm.fixture_dir is not None:
        config.llm.fixture_dir = resolve(config.llm.fixture_dir)
    return apply_env_overrides(config, env if env is not None else dict(os.environ))


def apply_env_overrides(config: ServiceConfig, env: dict[str, str]) -> ServiceConfig:
    """Environment wins over the file; endpoint vars flip the provider to remote."""

    def get(name: str) -> str | None:
        return env.get(ENV_PREFIX + name)

    if get("PORT"):
        config.port = int(get("PORT"))
    if get("CORPUS_PATH"):
        config.corpus_path = get("CORPUS_PATH")
    if get("DATA_DIR"):
        config.data_dir = get("DATA_DIR")
    if get("EMBEDDING_ENDPOINT"):
        config.embedding.endpoint = get("EMBEDDING_ENDPOINT")
        config.embedding.kind = "remote"
    if get("LLM_ENDPOINT"):
        config.llm.endpoint = get("LLM_ENDPOINT")
        config.llm.kind = "remote"
    if get("LLM_API_KEY"):
        config.llm.api_key = get("LLM_API_KEY")
    if get("SEGMENTATION_ENDPOINT"):
        config.segmentation.endpoint = get("SEGMENTATION_ENDPOINT")
        config.segmentation.kind = "remote"
    if get("GENERATION_REFERENCE_ENDPOINT"):
        config.generation.reference_endpoint = get("GENERATION_REFERENCE_ENDPOINT")
        config.generation.kind = "remote"
    if get("GENERATION_KEYWORD_ENDPOINT"):
        config.generation.keyword_endpoint = get("GENERATION_KEYWORD_ENDPOINT")
        config.generation.kind = "remote"
    return config
