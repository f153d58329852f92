"""Pixel IO: loading record pixels and content-addressed storage of outputs.

Generated pixel data is written once to a directory keyed by the SHA-256 of
the raw RGB bytes, so identical outputs share a file and hashes are directly
testable.
"""

from __future__ import annotations

import hashlib
import io
from pathlib import Path

import numpy as np
from PIL import Image

from gensearch.errors import UnreadablePixels


def pixel_hash(pixels: np.ndarray) -> str:
    """SHA-256 of the raw RGB bytes (shape and dtype normalized first)."""
    arr = as_rgb_array(pixels)
    return hashlib.sha256(arr.tobytes()).hexdigest()


def as_rgb_array(pixels: np.ndarray) -> np.ndarray:
    arr = np.asarray(pixels)
    if arr.ndim == 2:
        arr = np.stack([arr] * 3, axis=-1)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected (h, w, 3) pixel array, got shape {arr.shape}")
    return np.ascontiguousarray(arr.astype(np.uint8, copy=False))


def encode_png(pixels: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(as_rgb_array(pixels), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def decode_image(data: bytes) -> np.ndarray:
    with Image.open(io.BytesIO(data)) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def load_pixels(path: str | Path) -> np.ndarray:
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"), dtype=np.uint8)
    except Exception as exc:
        raise UnreadablePixels(f"{path}: {exc}") from exc


def image_size(path: str | Path) -> tuple[int, int]:
    """(width, height) of the image at ``path``."""
    try:
        with Image.open(path) as img:
            return img.size
    except Exception as exc:
        raise UnreadablePixels(f"{path}: {exc}") from exc


class PixelStore:
    """Content-addressed PNG directory for generated images."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def put(self, pixels: np.ndarray) -> Path:
        """Write pixels (if not already present) and return the file path."""
        digest = pixel_hash(pixels)
        path = self.directory / f"{digest}.png"
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(encode_png(pixels))
            tmp.replace(path)
        return path
