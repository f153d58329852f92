from gensearch.retrieval.embedding import (
    EmbeddingProvider,
    RemoteEmbeddingProvider,
    StubEmbeddingProvider,
    normalize,
)
from gensearch.retrieval.index import VectorIndex
from gensearch.retrieval.search import ResultPage, SearchService

__all__ = [
    "EmbeddingProvider",
    "StubEmbeddingProvider",
    "RemoteEmbeddingProvider",
    "normalize",
    "VectorIndex",
    "SearchService",
    "ResultPage",
]
