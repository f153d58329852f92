"""Builds the full application object graph from a ServiceConfig.

One Runtime owns every long-lived component: corpus, index, search service,
LLM pipelines, modification service, and the session store. Handlers only
ever touch the runtime, never construct components themselves.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from gensearch.concretize import ConcretizePipeline
from gensearch.corpus.records import ImageRecord
from gensearch.corpus.store import CorpusStore, CorpusSummary
from gensearch.errors import CorpusMissing
from gensearch.keywords import KeywordPipeline
from gensearch.llm.providers import ChatProvider, FixtureChatProvider, RemoteChatProvider
from gensearch.modify.generate import (
    ModifyService,
    RemoteKeywordBackend,
    RemoteReferenceBackend,
    StubKeywordBackend,
    StubReferenceBackend,
)
from gensearch.modify.masks import MaskStore
from gensearch.modify.segmentation import GridSegmentationProvider, RemoteSegmentationProvider
from gensearch.retrieval.embedding import (
    EmbeddingProvider,
    RemoteEmbeddingProvider,
    StubEmbeddingProvider,
)
from gensearch.retrieval.index import VectorIndex
from gensearch.retrieval.search import SearchService
from gensearch.service.config import ServiceConfig
from gensearch.session.log import SessionStore


def build_embedding_provider(config: ServiceConfig) -> EmbeddingProvider:
    emb = config.embedding
    if emb.kind == "remote":
        if not emb.endpoint:
            raise ValueError("embedding.kind=remote requires an endpoint")
        return RemoteEmbeddingProvider(emb.endpoint, dimension=emb.dimension)
    return StubEmbeddingProvider(dimension=emb.dimension, seed=emb.seed)


def build_chat_provider(config: ServiceConfig) -> ChatProvider:
    llm = config.llm
    if llm.kind == "remote":
        if not llm.endpoint:
            raise ValueError("llm.kind=remote requires an endpoint")
        return RemoteChatProvider(llm.endpoint, api_key=llm.api_key)
    if not llm.fixture_dir:
        raise ValueError("llm.kind=fixture requires fixture_dir")
    return FixtureChatProvider(llm.fixture_dir)


class Runtime:
    """Everything the HTTP layer needs, wired once at startup."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.embedding = build_embedding_provider(config)
        self.index = VectorIndex(self.embedding.dimension)
        data_dir = Path(config.data_dir)
        self.corpus = CorpusStore(
            dimension=self.embedding.dimension,
            pixel_dir=data_dir / "pixels",
            on_add=self._index_record,
        )
        self.search = SearchService(
            self.index, self.embedding.embed_text, page_size=config.page_size
        )
        self.chat = build_chat_provider(config)
        self.concretize = ConcretizePipeline(self.chat, search=self.search)
        self.keywords = KeywordPipeline(self.chat)
        self.sessions = SessionStore(data_dir / "sessions")

        seg = config.segmentation
        if seg.kind == "remote":
            if not seg.endpoint:
                raise ValueError("segmentation.kind=remote requires an endpoint")
            segmentation = RemoteSegmentationProvider(seg.endpoint)
        else:
            segmentation = GridSegmentationProvider(rows=seg.rows, cols=seg.cols)

        gen = config.generation
        if gen.kind == "remote":
            if not (gen.reference_endpoint and gen.keyword_endpoint):
                raise ValueError("generation.kind=remote requires both endpoints")
            reference_backend = RemoteReferenceBackend(gen.reference_endpoint)
            keyword_backend = RemoteKeywordBackend(gen.keyword_endpoint)
        else:
            reference_backend = StubReferenceBackend()
            keyword_backend = StubKeywordBackend(seed=gen.seed)

        self.masks = MaskStore()
        self.modify = ModifyService(
            corpus=self.corpus,
            segmentation=segmentation,
            reference_backend=reference_backend,
            keyword_backend=keyword_backend,
            embed_pixels=self._embed_pixels,
            masks=self.masks,
        )

    # -- wiring callbacks ---------------------------------------------------

    def _embed_pixels(self, pixels: np.ndarray) -> np.ndarray:
        return self.embedding.embed_image_bytes(np.ascontiguousarray(pixels).tobytes())

    def _index_record(self, record: ImageRecord) -> None:
        """Corpus add hook: embed if the manifest did not, then index.

        Priority for missing embeddings: pixel content when the uri is
        readable, else the description text. Runs under the corpus write
        lock, which keeps record-vs-index ordering consistent.
        """
        if record.embedding is None:
            record.embedding = self._bootstrap_embedding(record)
        self.index.add(record.id, record.embedding)

    def _bootstrap_embedding(self, record: ImageRecord) -> np.ndarray:
        path = Path(record.uri)
        if path.is_file():
            try:
                return self.embedding.embed_image_bytes(path.read_bytes())
            except OSError:
                pass
        return self.embedding.embed_text(record.description)

    # -- lifecycle ------------------------------------------------------------

    def ingest(self) -> CorpusSummary:
        path = Path(self.config.corpus_path)
        if not self.config.corpus_path or not path.exists():
            raise CorpusMissing(self.config.corpus_path or "<unset>")
        return self.corpus.ingest_manifest(path)
