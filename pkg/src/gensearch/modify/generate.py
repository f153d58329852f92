"""Image modification orchestration.

Backends repaint the masked region of an image, guided either by a reference
image or by text keywords; everything outside the mask must come back
byte-identical. The deterministic stub backends make that property (and full
output hashes) directly testable; live model servers plug in over HTTP with
the same contract minus determinism.

Every generation is registered as a new searchable corpus record carrying
full provenance.
"""

from __future__ import annotations

import hashlib
import threading
import time
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from gensearch.corpus.pixels import as_rgb_array
from gensearch.corpus.records import GenerationProvenance, ImageRecord
from gensearch.corpus.store import CorpusStore, compose_generated_description, provenance_now
from gensearch.errors import (
    BackendUnavailable,
    EmptyKeywords,
    MaskMismatch,
    NotFound,
    ProviderUnavailable,
    UnknownImage,
)
from gensearch.modify.masks import MaskSpec, MaskStore
from gensearch.modify.segmentation import SegmentationProvider, SegmentMap

# Live generation calls get a soft deadline with headroom over typical model
# latency; stubs return immediately.
GENERATION_DEADLINE = 10.0
DEFAULT_GENERATION_CONCURRENCY = 2


@dataclass
class GenerationResult:
    pixels: np.ndarray
    provenance: GenerationProvenance
    elapsed: float
    record: ImageRecord


class ReferenceBackend(Protocol):
    backend_id: str

    def generate(self, original: np.ndarray, mask: np.ndarray, reference: np.ndarray) -> np.ndarray: ...


class KeywordBackend(Protocol):
    backend_id: str

    def generate(self, original: np.ndarray, mask: np.ndarray, keywords: list[str]) -> np.ndarray: ...


def _nearest_resize(image: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Nearest-neighbor resample via integer index maps; byte-stable everywhere."""
    in_h, in_w = image.shape[:2]
    yi = (np.arange(out_h) * in_h) // out_h
    xi = (np.arange(out_w) * in_w) // out_w
    return image[yi][:, xi]


class StubReferenceBackend:
    """Pastes the reference into the mask region.

    The reference is nearest-neighbor resampled to the mask's bounding box
    and copied onto exactly the masked pixels; everything else is untouched.
    """

    backend_id = "stub-reference"

    def generate(self, original: np.ndarray, mask: np.ndarray, reference: np.ndarray) -> np.ndarray:
        original = as_rgb_array(original)
        reference = as_rgb_array(reference)
        out = original.copy()
        ys, xs = np.nonzero(mask)
        y0, y1 = int(ys.min()), int(ys.max())
        x0, x1 = int(xs.min()), int(xs.max())
        patch = _nearest_resize(reference, y1 - y0 + 1, x1 - x0 + 1)
        region_mask = mask[y0 : y1 + 1, x0 : x1 + 1]
        region = out[y0 : y1 + 1, x0 : x1 + 1]
        region[region_mask] = patch[region_mask]
        return out


class StubKeywordBackend:
    """Floods the mask region with a color derived from the keywords.

    The fill color is the first three bytes of a seeded hash of the joined
    keywords, so distinct keyword sets give distinct fills and repeated calls
    are byte-identical.
    """

    backend_id = "stub-keywords"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def generate(self, original: np.ndarray, mask: np.ndarray, keywords: list[str]) -> np.ndarray:
        original = as_rgb_array(original)
        digest = hashlib.sha256(f"{self.seed}:{' '.join(keywords)}".encode("utf-8")).digest()
        out = original.copy()
        out[np.asarray(mask, dtype=bool)] = np.frombuffer(digest[:3], dtype=np.uint8)
        return out


class RemoteReferenceBackend:
    """HTTP generation backend: {original_png, mask_png, reference_png} -> {output_png}."""

    backend_id = "remote-reference"

    def __init__(self, endpoint: str, timeout: float = GENERATION_DEADLINE):
        self.endpoint = endpoint
        self.timeout = timeout

    def generate(self, original: np.ndarray, mask: np.ndarray, reference: np.ndarray) -> np.ndarray:
        from gensearch.corpus.pixels import decode_image, encode_png

        import base64
        import httpx

        payload = {
            "original_png": base64.b64encode(encode_png(original)).decode("ascii"),
            "mask_png": base64.b64encode(encode_png(np.where(mask, 255, 0))).decode("ascii"),
            "reference_png": base64.b64encode(encode_png(reference)).decode("ascii"),
        }
        try:
            resp = httpx.post(self.endpoint, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            return decode_image(base64.b64decode(resp.json()["output_png"]))
        except Exception as exc:
            raise BackendUnavailable(f"generation endpoint {self.endpoint}: {exc}") from exc


class RemoteKeywordBackend:
    """HTTP generation backend: {original_png, mask_png, keywords} -> {output_png}."""

    backend_id = "remote-keywords"

    def __init__(self, endpoint: str, timeout: float = GENERATION_DEADLINE):
        self.endpoint = endpoint
        self.timeout = timeout

    def generate(self, original: np.ndarray, mask: np.ndarray, keywords: list[str]) -> np.ndarray:
        from gensearch.corpus.pixels import decode_image, encode_png

        import base64
        import httpx

        payload = {
            "original_png": base64.b64encode(encode_png(original)).decode("ascii"),
            "mask_png": base64.b64encode(encode_png(np.where(mask, 255, 0))).decode("ascii"),
            "keywords": list(keywords),
        }
        try:
            resp = httpx.post(self.endpoint, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            return decode_image(base64.b64decode(resp.json()["output_png"]))
        except Exception as exc:
            raise BackendUnavailable(f"generation endpoint {self.endpoint}: {exc}") from exc


class ModifyService:
    """Segment, mask, generate, and register the result as a searchable image."""

    def __init__(
        self,
        corpus: CorpusStore,
        segmentation: SegmentationProvider,
        reference_backend: ReferenceBackend,
        keyword_backend: KeywordBackend,
        embed_pixels,
        masks: MaskStore | None = None,
        max_concurrency: int = DEFAULT_GENERATION_CONCURRENCY,
    ):
        self.corpus = corpus
        self.segmentation = segmentation
        self.reference_backend = reference_backend
        self.keyword_backend = keyword_backend
        self.embed_pixels = embed_pixels  # pixels -> embedding for registration
        self.masks = masks or MaskStore()
        self._slots = threading.Semaphore(max_concurrency)

    # -- segmentation -------------------------------------------------------

    def segment(self, image_id: str) -> SegmentMap:
        try:
            pixels = self.corpus.get_pixels(image_id)
        except NotFound:
            raise UnknownImage(image_id) from None
        try:
            segments = self.segmentation.segment(pixels)
        except ProviderUnavailable:
            raise
        segment_map = SegmentMap(image_id=image_id, segments=segments)
        self.masks.put_segment_map(segment_map)
        return segment_map

    def segment_map_for(self, image_id: str) -> SegmentMap:
        cached = self.masks.segment_map(image_id)
        return cached if cached is not None else self.segment(image_id)

    # -- masks ---------------------------------------------------------------

    def assemble_mask(self, image_id: str, selected_ids: list[str]) -> MaskSpec:
        return self.masks.create_mask(self.segment_map_for(image_id), selected_ids)

    def _checked_mask(self, image_id: str, mask_id: str) -> MaskSpec:
        mask = self.masks.get_mask(mask_id)
        if mask is None:
            raise NotFound(f"mask {mask_id}")
        if mask.image_id != image_id:
            raise MaskMismatch(f"mask {mask_id} belongs to image {mask.image_id}, not {image_id}")
        return mask

    # -- generation ------------------------------------------------------------

    def generate_by_reference(self, image_id: str, mask_id: str, reference_image_id: str) -> GenerationResult:
        mask = self._checked_mask(image_id, mask_id)
        original = self.corpus.get_pixels(image_id)
        reference = self.corpus.get_pixels(reference_image_id)
        started = time.monotonic()
        with self._slots:
            pixels = self.reference_backend.generate(original, mask.bitmap, reference)
        elapsed = time.monotonic() - started
        provenance = GenerationProvenance(
            parent_image_id=image_id,
            mask_id=mask_id,
            mode="reference",
            backend_id=self.reference_backend.backend_id,
            created_at=provenance_now(),
            reference_image_id=reference_image_id,
        )
        description = compose_generated_description(
            self.corpus.get_image(image_id).description,
            self.corpus.get_image(reference_image_id).description,
        )
        record = self.corpus.add_generated(pixels, provenance, description, self.embed_pixels(pixels))
        return GenerationResult(pixels=pixels, provenance=provenance, elapsed=elapsed, record=record)

    def generate_by_keywords(self, image_id: str, mask_id: str, keywords: list[str]) -> GenerationResult:
        if not keywords:
            raise EmptyKeywords("keyword list is empty")
        mask = self._checked_mask(image_id, mask_id)
        original = self.corpus.get_pixels(image_id)
        started = time.monotonic()
        with self._slots:
            pixels = self.keyword_backend.generate(original, mask.bitmap, list(keywords))
        elapsed = time.monotonic() - started
        provenance = GenerationProvenance(
            parent_image_id=image_id,
            mask_id=mask_id,
            mode="keywords",
            backend_id=self.keyword_backend.backend_id,
            created_at=provenance_now(),
            keywords=tuple(keywords),
        )
        description = compose_generated_description(
            self.corpus.get_image(image_id).description, ", ".join(keywords)
        )
        record = self.corpus.add_generated(pixels, provenance, description, self.embed_pixels(pixels))
        return GenerationResult(pixels=pixels, provenance=provenance, elapsed=elapsed, record=record)
