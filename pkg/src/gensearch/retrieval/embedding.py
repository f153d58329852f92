"""Embedding providers.

All similarity search runs over unit-norm float vectors of a fixed dimension.
The stub provider maps arbitrary input bytes to a deterministic unit vector,
so the whole stack is testable offline; the remote provider speaks a minimal
HTTP protocol to a real embedding service.
"""

from __future__ import annotations

import hashlib
from typing import Protocol

import numpy as np

from gensearch.errors import ProviderUnavailable

DEFAULT_DIMENSION = 64


def normalize(vec: np.ndarray) -> np.ndarray:
    """Return the unit-norm copy of ``vec`` (float64). Zero vectors are rejected."""
    v = np.asarray(vec, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return v / norm


class EmbeddingProvider(Protocol):
    """Maps text or image bytes to a unit-norm vector of a fixed dimension."""

    dimension: int

    def embed_text(self, text: str) -> np.ndarray: ...

    def embed_image_bytes(self, data: bytes) -> np.ndarray: ...


class StubEmbeddingProvider:
    """Deterministic embedding provider for offline use.

    The input bytes are hashed (together with a configurable seed and a
    kind prefix so text and image inputs never collide), the digest seeds a
    PRNG, and the resulting Gaussian draw is normalized to unit length.
    Identical input always yields the identical vector.
    """

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: int = 0):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self.seed = seed

    def _embed(self, kind: bytes, payload: bytes) -> np.ndarray:
        digest = hashlib.sha256(b"%d:" % self.seed + kind + b":" + payload).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vec = rng.standard_normal(self.dimension)
        return normalize(vec)

    def embed_text(self, text: str) -> np.ndarray:
        return self._embed(b"text", text.encode("utf-8"))

    def embed_image_bytes(self, data: bytes) -> np.ndarray:
        return self._embed(b"image", data)


class RemoteEmbeddingProvider:
    """HTTP embedding provider.

    Protocol: POST {kind: "text"|"image", payload: str|base64} to ``endpoint``,
    response {"vector": [floats]}. Any transport failure or timeout surfaces
    as ProviderUnavailable.
    """

    def __init__(self, endpoint: str, dimension: int = DEFAULT_DIMENSION, timeout: float = 10.0):
        self.endpoint = endpoint
        self.dimension = dimension
        self.timeout = timeout

    def _request(self, kind: str, payload: str) -> np.ndarray:
        import httpx

        try:
            resp = httpx.post(
                self.endpoint,
                json={"kind": kind, "payload": payload},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            vector = resp.json()["vector"]
        except Exception as exc:
            raise ProviderUnavailable(f"embedding endpoint {self.endpoint}: {exc}") from exc
        vec = np.asarray(vector, dtype=np.float64)
        if vec.shape != (self.dimension,):
            from gensearch.errors import DimensionMismatch

            raise DimensionMismatch(
                f"provider returned dimension {vec.shape}, expected ({self.dimension},)"
            )
        return normalize(vec)

    def embed_text(self, text: str) -> np.ndarray:
        return self._request("text", text)

    def embed_image_bytes(self, data: bytes) -> np.ndarray:
        import base64

        return self._request("image", base64.b64encode(data).decode("ascii"))
