"""Mask assembly: the exact pixelwise union of selected segments."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from gensearch.errors import EmptySelection, UnknownSegment
from gensearch.modify.rle import rle_encode
from gensearch.modify.segmentation import SegmentMap


@dataclass
class MaskSpec:
    mask_id: str
    image_id: str
    selected_segment_ids: frozenset[str]
    bitmap: np.ndarray  # bool, image resolution

    def to_dict(self) -> dict:
        return {
            "mask_id": self.mask_id,
            "image_id": self.image_id,
            "selected_segment_ids": sorted(self.selected_segment_ids),
            "rle": rle_encode(self.bitmap),
        }


def assemble_mask(segment_map: SegmentMap, selected_ids: Iterable[str], mask_id: str) -> MaskSpec:
    """Union the selected segments into one binary mask.

    Selection is a set: duplicates collapse, order is irrelevant. Every id
    must exist in the segment map and the union must cover at least a pixel.
    """
    selection = frozenset(selected_ids)
    if not selection:
        raise EmptySelection("no segments selected")
    bitmap: np.ndarray | None = None
    for segment_id in sorted(selection):
        segment = segment_map.get(segment_id)
        if segment is None:
            raise UnknownSegment(segment_id)
        bitmap = segment.bitmap.copy() if bitmap is None else (bitmap | segment.bitmap)
    assert bitmap is not None
    if not bitmap.any():
        raise EmptySelection("selected segments cover no pixels")
    return MaskSpec(
        mask_id=mask_id,
        image_id=segment_map.image_id,
        selected_segment_ids=selection,
        bitmap=bitmap,
    )


class MaskStore:
    """Registry of assembled masks and cached segment maps."""

    def __init__(self):
        self._masks: dict[str, MaskSpec] = {}
        self._segment_maps: dict[str, SegmentMap] = {}
        self._counter = itertools.count(1)
        self._lock = threading.Lock()

    def put_segment_map(self, segment_map: SegmentMap) -> None:
        with self._lock:
            self._segment_maps[segment_map.image_id] = segment_map

    def segment_map(self, image_id: str) -> SegmentMap | None:
        return self._segment_maps.get(image_id)

    def create_mask(self, segment_map: SegmentMap, selected_ids: Iterable[str]) -> MaskSpec:
        with self._lock:
            mask_id = f"mask-{next(self._counter):04d}"
        mask = assemble_mask(segment_map, selected_ids, mask_id)
        with self._lock:
            self._masks[mask.mask_id] = mask
        return mask

    def get_mask(self, mask_id: str) -> MaskSpec | None:
        return self._masks.get(mask_id)
