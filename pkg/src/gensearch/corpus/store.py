"""Image record store: manifest ingest, lookup, and registration of outputs.

The manifest is JSON-lines, one record per line: ``id``, ``uri``,
``description``, optional ``embedding`` (float array), optional ``width`` /
``height``. Pixel data stays out of the store; records point at it by uri and
generated pixels land in a content-addressed directory.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

import numpy as np

from gensearch.corpus.pixels import PixelStore, image_size, load_pixels
from gensearch.corpus.records import GenerationProvenance, ImageRecord
from gensearch.errors import (
    DimensionMismatch,
    DuplicateId,
    NotFound,
    UnknownParent,
    UnreadableManifest,
)


@dataclass
class SkippedLine:
    line_no: int
    reason: str


@dataclass
class CorpusSummary:
    count: int
    dimension: int
    skipped: list[SkippedLine] = field(default_factory=list)


class CorpusStore:
    """In-memory record store with a single-writer discipline.

    Records are immutable once added; reads need no lock. ``on_add`` is called
    for every persisted record and is how the retrieval index stays in sync.
    """

    def __init__(
        self,
        dimension: int,
        pixel_dir: str | Path | None = None,
        on_add: Callable[[ImageRecord], None] | None = None,
    ):
        self.dimension = dimension
        self.pixel_store = PixelStore(pixel_dir) if pixel_dir is not None else None
        self.on_add = on_add
        self._records: dict[str, ImageRecord] = {}
        self._write_lock = threading.Lock()
        self._generated_count = 0

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, image_id: str) -> bool:
        return image_id in self._records

    def ids(self) -> list[str]:
        return list(self._records)

    # -- ingest -----------------------------------------------------------

    def ingest_manifest(self, path: str | Path) -> CorpusSummary:
        """Load every valid manifest line; invalid lines are reported, not fatal."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UnreadableManifest(f"{path}: {exc}") from exc

        base_dir = path.parent
        count = 0
        skipped: list[SkippedLine] = []
        with self._write_lock:
            for line_no, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    record = self._parse_line(line, base_dir)
                    self._insert(record)
                except DuplicateId as exc:
                    skipped.append(SkippedLine(line_no, f"duplicate id: {exc}"))
                except (ValueError, KeyError, TypeError) as exc:
                    skipped.append(SkippedLine(line_no, f"malformed record: {exc}"))
                else:
                    count += 1
        return CorpusSummary(count=count, dimension=self.dimension, skipped=skipped)

    def _parse_line(self, line: str, base_dir: Path) -> ImageRecord:
        raw = json.loads(line)
        if not isinstance(raw, dict):
            raise ValueError("line is not a JSON object")
        for key in ("id", "uri", "description"):
            if key not in raw:
                raise KeyError(key)
        embedding = None
        if raw.get("embedding") is not None:
            embedding = np.asarray(raw["embedding"], dtype=np.float64)
            if embedding.shape != (self.dimension,):
                raise ValueError(
                    f"embedding dimension {embedding.shape} != configured {self.dimension}"
                )
        uri = str(raw["uri"])
        uri_path = Path(uri)
        if not uri_path.is_absolute():
            resolved = base_dir / uri_path
            if resolved.exists():
                uri = str(resolved)
        width, height = raw.get("width"), raw.get("height")
        if (width is None or height is None) and Path(uri).is_file():
            try:
                width, height = image_size(uri)
            except Exception:
                pass  # uri may point at a non-image placeholder; dims stay unknown
        record = ImageRecord(
            id=str(raw["id"]),
            uri=uri,
            description=str(raw["description"]),
            source="corpus",
            embedding=embedding,
            width=width,
            height=height,
        )
        record.validate(self.dimension)
        return record

    def _insert(self, record: ImageRecord) -> None:
        if record.id in self._records:
            raise DuplicateId(record.id)
        self._records[record.id] = record
        if self.on_add is not None:
            self.on_add(record)

    # -- lookup -----------------------------------------------------------

    def get_image(self, image_id: str) -> ImageRecord:
        try:
            return self._records[image_id]
        except KeyError:
            raise NotFound(image_id) from None

    def get_pixels(self, image_id: str) -> np.ndarray:
        record = self.get_image(image_id)
        return load_pixels(record.uri)

    # -- registration of generated images ----------------------------------

    def add_generated(
        self,
        pixels: np.ndarray,
        provenance: GenerationProvenance,
        description: str,
        embedding: np.ndarray,
    ) -> ImageRecord:
        """Persist a generated image; it becomes searchable like any other record."""
        provenance.validate()
        if provenance.parent_image_id not in self._records:
            raise UnknownParent(provenance.parent_image_id)
        if provenance.reference_image_id and provenance.reference_image_id not in self._records:
            raise UnknownParent(provenance.reference_image_id)
        emb = np.asarray(embedding, dtype=np.float64)
        if emb.shape != (self.dimension,):
            raise DimensionMismatch(
                f"embedding shape {emb.shape} != configured dimension {self.dimension}"
            )
        if self.pixel_store is None:
            raise ValueError("store has no pixel directory configured")
        with self._write_lock:
            path = self.pixel_store.put(pixels)
            self._generated_count += 1
            record = ImageRecord(
                id=f"gen-{self._generated_count:04d}",
                uri=str(path),
                description=description,
                source="generated",
                embedding=emb,
                provenance=provenance,
                width=int(pixels.shape[1]),
                height=int(pixels.shape[0]),
            )
            record.validate(self.dimension)
            self._insert(record)
        return record


def compose_generated_description(parent_description: str, detail: str) -> str:
    """Deterministic description for a generated image; no captioning model."""
    return f"{parent_description} modified with {detail}"


def provenance_now() -> str:
    return datetime.now(timezone.utc).isoformat()
