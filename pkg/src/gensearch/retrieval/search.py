"""Paginated search over the vector index.

Each text or image search freezes a full ranking under an opaque query token.
"Show more" pages slice that frozen ranking, so later index growth never
reshuffles or re-surfaces results for an existing query; new results only
affect new queries. Earlier results stay put and later pages stack under them.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from gensearch.errors import NotFound, UnknownImage
from gensearch.retrieval.index import VectorIndex

DEFAULT_PAGE_SIZE = 20


@dataclass
class ResultPage:
    """One contiguous slice of a frozen ranking."""

    query_token: str
    items: list[tuple[str, float]]
    offset: int
    exhausted: bool


@dataclass
class _QuerySnapshot:
    ranking: list[tuple[str, float]]
    cursor: int = 0
    kind: str = "text"  # "text" | "image"
    query_image_id: str | None = None
    query_image_source: str | None = None
    served_ids: set[str] = field(default_factory=set)


class SearchService:
    """Text and image search with stable pagination tokens."""

    def __init__(
        self,
        index: VectorIndex,
        embed_text: Callable[[str], np.ndarray],
        page_size: int = DEFAULT_PAGE_SIZE,
    ):
        self.index = index
        self.embed_text = embed_text
        self.page_size = page_size
        self._tokens: dict[str, _QuerySnapshot] = {}
        self._lock = threading.Lock()

    # -- queries ----------------------------------------------------------

    def search_text(self, query_text: str, k: int | None = None, offset: int = 0) -> ResultPage:
        ranking = self.index.rank(self.embed_text(query_text))
        token = self._freeze(ranking, kind="text")
        return self._page(token, offset, k)

    def search_image(
        self,
        image_id: str,
        k: int | None = None,
        offset: int = 0,
        image_source: str | None = None,
    ) -> ResultPage:
        """Similarity search seeded by an indexed image.

        The query image is excluded from its own ranking: with unit vectors it
        would otherwise always be the degenerate top hit at score 1.0.
        """
        try:
            query = self.index.vector(image_id)
        except KeyError:
            raise UnknownImage(image_id) from None
        ranking = self.index.rank(query, exclude={image_id})
        token = self._freeze(
            ranking, kind="image", query_image_id=image_id, query_image_source=image_source
        )
        return self._page(token, offset, k)

    def more(self, token: str, k: int | None = None) -> ResultPage:
        """Next page of an existing query, continuing where the last page ended."""
        snap = self._snapshot(token)
        return self._page(token, snap.cursor, k)

    def snapshot_info(self, token: str) -> _QuerySnapshot:
        return self._snapshot(token)

    # -- internals --------------------------------------------------------

    def _freeze(
        self,
        ranking: list[tuple[str, float]],
        kind: str,
        query_image_id: str | None = None,
        query_image_source: str | None = None,
    ) -> str:
        token = uuid.uuid4().hex
        with self._lock:
            self._tokens[token] = _QuerySnapshot(
                ranking=ranking,
                kind=kind,
                query_image_id=query_image_id,
                query_image_source=query_image_source,
            )
        return token

    def _snapshot(self, token: str) -> _QuerySnapshot:
        with self._lock:
            try:
                return self._tokens[token]
            except KeyError:
                raise NotFound(f"unknown query token {token!r}") from None

    def _page(self, token: str, offset: int, k: int | None) -> ResultPage:
        if offset < 0:
            raise ValueError("offset must be >= 0")
        k = self.page_size if k is None else k
        if k < 1:
            raise ValueError("k must be >= 1")
        snap = self._snapshot(token)
        # A frozen ranking consumed past its end reports exhaustion, never an
        # error: the ranking is a fixed snapshot even if the index has grown.
        items = snap.ranking[offset : offset + k]
        with self._lock:
            snap.cursor = max(snap.cursor, offset + len(items))
            snap.served_ids.update(image_id for image_id, _ in items)
        exhausted = offset + k >= len(snap.ranking)
        return ResultPage(query_token=token, items=items, offset=offset, exhausted=exhausted)
