"""Per-image object segmentation behind a provider interface.

The grid stub tiles an image into deterministic rectangular segments so the
whole modification pipeline runs offline; a remote provider can return real
object masks over the same protocol ({image_png} -> {segments: [{id, rle}]}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from gensearch.errors import ProviderUnavailable
from gensearch.modify.rle import rle_decode, rle_encode


@dataclass
class Segment:
    segment_id: str
    bitmap: np.ndarray  # bool, image resolution
    area: int

    def to_dict(self) -> dict:
        return {"segment_id": self.segment_id, "rle": rle_encode(self.bitmap), "area": self.area}


@dataclass
class SegmentMap:
    image_id: str
    segments: list[Segment]

    def get(self, segment_id: str) -> Segment | None:
        for segment in self.segments:
            if segment.segment_id == segment_id:
                return segment
        return None

    def to_dict(self) -> dict:
        return {"image_id": self.image_id, "segments": [s.to_dict() for s in self.segments]}


class SegmentationProvider(Protocol):
    def segment(self, pixels: np.ndarray) -> list[Segment]: ...


class GridSegmentationProvider:
    """Tiles the image into a rows x cols grid of rectangles.

    The tiles partition the image exactly (every pixel in exactly one
    segment); trailing rows/columns absorb any remainder.
    """

    def __init__(self, rows: int = 4, cols: int = 4):
        if rows < 1 or cols < 1:
            raise ValueError("grid must be at least 1x1")
        self.rows = rows
        self.cols = cols

    def segment(self, pixels: np.ndarray) -> list[Segment]:
        h, w = pixels.shape[:2]
        row_edges = [round(r * h / self.rows) for r in range(self.rows + 1)]
        col_edges = [round(c * w / self.cols) for c in range(self.cols + 1)]
        segments: list[Segment] = []
        for r in range(self.rows):
            for c in range(self.cols):
                y0, y1 = row_edges[r], row_edges[r + 1]
                x0, x1 = col_edges[c], col_edges[c + 1]
                if y1 <= y0 or x1 <= x0:
                    continue  # image smaller than the grid
                bitmap = np.zeros((h, w), dtype=bool)
                bitmap[y0:y1, x0:x1] = True
                segments.append(
                    Segment(segment_id=f"r{r}c{c}", bitmap=bitmap, area=(y1 - y0) * (x1 - x0))
                )
        return segments


class RemoteSegmentationProvider:
    """HTTP segmentation provider: POST the PNG, read the segment list."""

    def __init__(self, endpoint: str, timeout: float = 30.0):
        self.endpoint = endpoint
        self.timeout = timeout

    def segment(self, pixels: np.ndarray) -> list[Segment]:
        import httpx

        from gensearch.corpus.pixels import encode_png

        try:
            resp = httpx.post(
                self.endpoint,
                content=encode_png(pixels),
                headers={"Content-Type": "image/png"},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            payload = resp.json()
        except Exception as exc:
            raise ProviderUnavailable(f"segmentation endpoint {self.endpoint}: {exc}") from exc
        segments = []
        for item in payload["segments"]:
            bitmap = rle_decode(item["rle"])
            segments.append(
                Segment(
                    segment_id=str(item["id"]),
                    bitmap=bitmap,
                    area=int(bitmap.sum()),
                )
            )
        return segments
