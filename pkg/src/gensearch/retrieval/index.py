"""Exact cosine kNN over an append-only vector index.

Desk-scale corpora make a full scan cheap, so the index is a dense matrix
scanned per query; no approximate structures. All stored vectors are unit
norm, so cosine similarity reduces to a dot product.
"""

from __future__ import annotations

import threading

import numpy as np

from gensearch.errors import DimensionMismatch, DuplicateId, EmptyIndex
from gensearch.retrieval.embedding import normalize

_NORM_TOLERANCE = 1e-6


class VectorIndex:
    """Append-only id -> unit vector map with exact top-k search.

    Appends are serialized by a lock; queries read a consistent snapshot of
    the (ids, matrix) pair taken under the same lock.
    """

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self._lock = threading.Lock()
        self._ids: list[str] = []
        self._id_set: set[str] = set()
        self._rows: list[np.ndarray] = []
        self._matrix: np.ndarray | None = None  # rebuilt lazily after appends

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, image_id: str) -> bool:
        return image_id in self._id_set

    def add(self, image_id: str, vector: np.ndarray) -> None:
        vec = np.asarray(vector, dtype=np.float64)
        if vec.shape != (self.dimension,):
            raise DimensionMismatch(
                f"vector shape {vec.shape} does not match index dimension {self.dimension}"
            )
        if abs(float(np.linalg.norm(vec)) - 1.0) > _NORM_TOLERANCE:
            vec = normalize(vec)
        with self._lock:
            if image_id in self._id_set:
                raise DuplicateId(image_id)
            self._ids.append(image_id)
            self._id_set.add(image_id)
            self._rows.append(vec)
            self._matrix = None

    def vector(self, image_id: str) -> np.ndarray:
        with self._lock:
            try:
                pos = self._ids.index(image_id)
            except ValueError:
                raise KeyError(image_id) from None
            return self._rows[pos]

    def _snapshot(self) -> tuple[list[str], np.ndarray]:
        with self._lock:
            if self._matrix is None:
                self._matrix = np.vstack(self._rows) if self._rows else np.empty((0, self.dimension))
            return list(self._ids), self._matrix

    def knn(self, query: np.ndarray, k: int, exclude: set[str] | None = None) -> list[tuple[str, float]]:
        """Top-k ids by cosine score, descending; ties broken by ascending id.

        ``exclude`` drops ids from the ranking before the cutoff is applied.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        return self.rank(query, exclude=exclude)[:k]

    def rank(self, query: np.ndarray, exclude: set[str] | None = None) -> list[tuple[str, float]]:
        """Full ranking of every indexed id for ``query`` (score desc, id asc)."""
        ids, matrix = self._snapshot()
        if not ids:
            raise EmptyIndex("no vectors indexed")
        q = np.asarray(query, dtype=np.float64)
        if q.shape != (self.dimension,):
            raise DimensionMismatch(
                f"query shape {q.shape} does not match index dimension {self.dimension}"
            )
        scores = matrix @ q
        order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))
        if exclude:
            return [(ids[i], float(scores[i])) for i in order if ids[i] not in exclude]
        return [(ids[i], float(scores[i])) for i in order]
