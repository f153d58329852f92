"""Image records and generation provenance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GenerationProvenance:
    """How a generated image came to be.

    Exactly one of the two modes applies: reference mode carries the id of the
    reference image and no keywords; keyword mode carries a non-empty keyword
    list and no reference.
    """

    parent_image_id: str
    mask_id: str
    mode: str  # "reference" | "keywords"
    backend_id: str
    created_at: str
    reference_image_id: str | None = None
    keywords: tuple[str, ...] | None = None

    def validate(self) -> None:
        if self.mode == "reference":
            if not self.reference_image_id or self.keywords:
                raise ValueError("reference mode requires reference_image_id and no keywords")
        elif self.mode == "keywords":
            if not self.keywords or self.reference_image_id:
                raise ValueError("keywords mode requires keywords and no reference_image_id")
        else:
            raise ValueError(f"unknown generation mode {self.mode!r}")

    def to_dict(self) -> dict:
        return {
            "parent_image_id": self.parent_image_id,
            "mask_id": self.mask_id,
            "mode": self.mode,
            "backend_id": self.backend_id,
            "created_at": self.created_at,
            "reference_image_id": self.reference_image_id,
            "keywords": list(self.keywords) if self.keywords is not None else None,
        }


@dataclass
class ImageRecord:
    """A corpus or generated image with its description and embedding.

    Records are immutable after creation, except that a missing embedding may
    be filled exactly once when the image is first indexed.
    """

    id: str
    uri: str
    description: str
    source: str = "corpus"  # "corpus" | "generated"
    embedding: np.ndarray | None = field(default=None, repr=False)
    provenance: GenerationProvenance | None = None
    width: int | None = None
    height: int | None = None

    def validate(self, dimension: int | None = None) -> None:
        if self.source == "generated":
            if self.provenance is None:
                raise ValueError("generated record requires provenance")
            self.provenance.validate()
        elif self.source == "corpus":
            if self.provenance is not None:
                raise ValueError("corpus record must not carry provenance")
        else:
            raise ValueError(f"unknown source {self.source!r}")
        if self.embedding is not None and dimension is not None:
            if self.embedding.shape != (dimension,):
                raise ValueError(
                    f"embedding shape {self.embedding.shape} does not match dimension {dimension}"
                )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "uri": self.uri,
            "description": self.description,
            "source": self.source,
            "embedding": self.embedding.tolist() if self.embedding is not None else None,
            "provenance": self.provenance.to_dict() if self.provenance else None,
            "width": self.width,
            "height": self.height,
        }
